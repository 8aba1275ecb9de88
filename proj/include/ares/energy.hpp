#pragma once

#include <cstdint>

namespace ares {

// Units used throughout: power in mW, time in s, energy in mJ, resolution in
// megapixels (1 MP = 1e6 pixels). mW * s = mJ, so no conversion factors appear
// in the formulas below.

struct FrameSpec {
    int width_px = 1280;
    int height_px = 720;

    double megapixels() const { return static_cast<double>(width_px) * height_px * 1e-6; }
    std::int64_t pixels() const { return static_cast<std::int64_t>(width_px) * height_px; }
    void validate() const; // throws std::domain_error on non-positive dims
};

// Rolling-shutter sensor. Active power grows linearly with the native sensor
// resolution; readout time scales with the pixels actually clocked out.
struct SensorParams {
    double sensor_resolution_mp = 8.08192; // native array size (3280x2464)
    double clock_hz = 12.0e6;              // pixel clock
    double exposure_s = 0.020;             // idle integration window per frame
    double idle_power_mw = 141.8;
    double active_power_slope_mw_per_mp = 8.27;
    double active_power_offset_mw = 130.394;

    double active_power_mw() const {
        return active_power_slope_mw_per_mp * sensor_resolution_mp + active_power_offset_mw;
    }
    double readout_s(const FrameSpec& frame) const {
        return static_cast<double>(frame.pixels()) / clock_hz;
    }
    void validate() const;
};

struct IspParams {
    double active_power_mw = 1500.0;
    double idle_power_mw = 150.0;
    double proc_time_slope_s_per_mp = 0.095;
    double proc_time_offset_s = 0.032;

    double proc_time_s(const FrameSpec& frame) const {
        return proc_time_slope_s_per_mp * frame.megapixels() + proc_time_offset_s;
    }
    void validate() const;
};

// Host CPU/GPU running the analytics app. Key frames run the full detector,
// non-key frames run the flow estimator; both app times scale with the
// resolution handed to them.
struct HostParams {
    double active_power_mw = 3000.0;
    double idle_power_mw = 300.0;
    double app_time_key_s_per_mp = 0.5;
    double app_time_flow_s_per_mp = 0.12;

    double app_time_s(const FrameSpec& frame, bool is_key) const {
        return (is_key ? app_time_key_s_per_mp : app_time_flow_s_per_mp) * frame.megapixels();
    }
    void validate() const;
};

struct CommParams {
    double mj_per_mp = 10.0; // interface cost per transferred megapixel

    void validate() const;
};

struct EnergyParams {
    SensorParams sensor;
    IspParams isp;
    HostParams host;
    CommParams comm;

    void validate() const;
};

struct EnergyBreakdown {
    double sensor_mj = 0.0;
    double isp_mj = 0.0;
    double host_mj = 0.0;
    double comm_mj = 0.0;
    double total_mj = 0.0;

    EnergyBreakdown& operator+=(const EnergyBreakdown& o);
};

EnergyBreakdown operator+(EnergyBreakdown a, const EnergyBreakdown& b);

// Per-stage energies for one captured frame. The pipeline stages overlap in
// time, so each stage charges active power for its own work and idle power
// while the other two stages (plus exposure) hold the frame.
double sensor_energy_mj(const SensorParams& p, const FrameSpec& frame);
double isp_energy_mj(const IspParams& p, const FrameSpec& frame, const SensorParams& sensor,
                     double app_time_s);
double host_energy_mj(const HostParams& p, const FrameSpec& frame, const SensorParams& sensor,
                      const IspParams& isp, bool is_key);
double comm_energy_mj(const CommParams& p, const FrameSpec& frame);

// Full per-frame budget: sensor + ISP + host + comm.
EnergyBreakdown frame_energy(const EnergyParams& p, const FrameSpec& frame, bool is_key);

} // namespace ares
