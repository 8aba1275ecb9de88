#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ares/energy.hpp"

namespace ares {

struct TraceRow {
    int t = 0;      // 1-based frame index within the decided part of the episode
    int action = 1; // 1..4
    double accuracy = 0.0;
    EnergyBreakdown energy; // includes any policy extra energy for this frame
    double reward = 0.0;
};

struct EpisodeTrace {
    std::vector<TraceRow> rows;
    std::uint64_t seed = 0;
    std::string policy_id;
    double lambda = 0.0;

    double total_energy_mj() const;
    double mean_accuracy() const;
    int key_frame_count() const;
};

// Discounted return over the recorded rewards, first row weighted gamma^0.
double episode_return(const EpisodeTrace& trace, double gamma);

void write_trace_csv(std::ostream& os, const EpisodeTrace& trace);

} // namespace ares
