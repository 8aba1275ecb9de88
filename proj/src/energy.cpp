#include "ares/energy.hpp"

#include <stdexcept>
#include <string>

namespace ares {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) {
        throw std::domain_error(std::string(name) + " must be > 0");
    }
}

} // namespace

void FrameSpec::validate() const {
    if (width_px <= 0 || height_px <= 0) {
        throw std::domain_error("frame dimensions must be positive");
    }
}

void SensorParams::validate() const {
    require_positive(sensor_resolution_mp, "sensor_resolution_mp");
    require_positive(clock_hz, "clock_hz");
    require_positive(exposure_s, "exposure_s");
    require_positive(idle_power_mw, "idle_power_mw");
    require_positive(active_power_slope_mw_per_mp, "active_power_slope_mw_per_mp");
    require_positive(active_power_offset_mw, "active_power_offset_mw");
}

void IspParams::validate() const {
    require_positive(active_power_mw, "isp active_power_mw");
    require_positive(idle_power_mw, "isp idle_power_mw");
    require_positive(proc_time_slope_s_per_mp, "proc_time_slope_s_per_mp");
    require_positive(proc_time_offset_s, "proc_time_offset_s");
}

void HostParams::validate() const {
    require_positive(active_power_mw, "host active_power_mw");
    require_positive(idle_power_mw, "host idle_power_mw");
    require_positive(app_time_key_s_per_mp, "app_time_key_s_per_mp");
    require_positive(app_time_flow_s_per_mp, "app_time_flow_s_per_mp");
}

void CommParams::validate() const { require_positive(mj_per_mp, "comm mj_per_mp"); }

void EnergyParams::validate() const {
    sensor.validate();
    isp.validate();
    host.validate();
    comm.validate();
}

EnergyBreakdown& EnergyBreakdown::operator+=(const EnergyBreakdown& o) {
    sensor_mj += o.sensor_mj;
    isp_mj += o.isp_mj;
    host_mj += o.host_mj;
    comm_mj += o.comm_mj;
    total_mj = sensor_mj + isp_mj + host_mj + comm_mj;
    return *this;
}

EnergyBreakdown operator+(EnergyBreakdown a, const EnergyBreakdown& b) { return a += b; }

double sensor_energy_mj(const SensorParams& p, const FrameSpec& frame) {
    return p.active_power_mw() * p.readout_s(frame) + p.idle_power_mw * p.exposure_s;
}

double isp_energy_mj(const IspParams& p, const FrameSpec& frame, const SensorParams& sensor,
                     double app_time_s) {
    const double wait_s = sensor.exposure_s + sensor.readout_s(frame) + app_time_s;
    return p.active_power_mw * p.proc_time_s(frame) + p.idle_power_mw * wait_s;
}

double host_energy_mj(const HostParams& p, const FrameSpec& frame, const SensorParams& sensor,
                      const IspParams& isp, bool is_key) {
    const double wait_s = sensor.exposure_s + sensor.readout_s(frame) + isp.proc_time_s(frame);
    return p.active_power_mw * p.app_time_s(frame, is_key) + p.idle_power_mw * wait_s;
}

double comm_energy_mj(const CommParams& p, const FrameSpec& frame) {
    return p.mj_per_mp * frame.megapixels();
}

EnergyBreakdown frame_energy(const EnergyParams& p, const FrameSpec& frame, bool is_key) {
    frame.validate();
    EnergyBreakdown e;
    e.sensor_mj = sensor_energy_mj(p.sensor, frame);
    e.isp_mj = isp_energy_mj(p.isp, frame, p.sensor, p.host.app_time_s(frame, is_key));
    e.host_mj = host_energy_mj(p.host, frame, p.sensor, p.isp, is_key);
    e.comm_mj = comm_energy_mj(p.comm, frame);
    e.total_mj = e.sensor_mj + e.isp_mj + e.host_mj + e.comm_mj;
    return e;
}

} // namespace ares
