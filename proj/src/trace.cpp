#include "ares/trace.hpp"

#include <ostream>
#include <stdexcept>

#include "ares/csv.hpp"

namespace ares {

double EpisodeTrace::total_energy_mj() const {
    double sum = 0.0;
    for (const TraceRow& r : rows) sum += r.energy.total_mj;
    return sum;
}

double EpisodeTrace::mean_accuracy() const {
    if (rows.empty()) throw std::domain_error("empty trace");
    double sum = 0.0;
    for (const TraceRow& r : rows) sum += r.accuracy;
    return sum / static_cast<double>(rows.size());
}

int EpisodeTrace::key_frame_count() const {
    int n = 0;
    for (const TraceRow& r : rows) n += (r.action == 1) ? 1 : 0;
    return n;
}

double episode_return(const EpisodeTrace& trace, double gamma) {
    if (trace.rows.empty()) throw std::domain_error("empty trace");
    double ret = 0.0;
    double w = 1.0;
    for (const TraceRow& r : trace.rows) {
        ret += w * r.reward;
        w *= gamma;
    }
    return ret;
}

void write_trace_csv(std::ostream& os, const EpisodeTrace& trace) {
    os << "t,action,accuracy,sensor_mj,isp_mj,host_mj,comm_mj,total_mj,reward\n";
    for (const TraceRow& r : trace.rows) {
        os << r.t << ',' << r.action << ',' << fmt_double(r.accuracy) << ','
           << fmt_double(r.energy.sensor_mj) << ',' << fmt_double(r.energy.isp_mj) << ','
           << fmt_double(r.energy.host_mj) << ',' << fmt_double(r.energy.comm_mj) << ','
           << fmt_double(r.energy.total_mj) << ',' << fmt_double(r.reward) << '\n';
    }
}

} // namespace ares
