#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <vector>

#include "ares/ddqn.hpp"
#include "ares/energy.hpp"
#include "ares/environment.hpp"
#include "ares/metrics.hpp"
#include "ares/schedulers.hpp"

namespace ares {

// Trainer knobs as they appear in config files. Kept separate from
// TrainConfig so the file schema can stay flat and name the learning rates
// the way operators expect.
struct TrainingSettings {
    int episodes = 800;
    int batch_size = 32;
    int replay_capacity = 10000;
    int target_sync_every = 500;
    double gamma = 0.97;
    double epsilon_start = 0.9;
    double epsilon_end = 0.05;
    double epsilon_fraction = 0.8;
    double learning_rate = 5e-4;
    double learning_rate_end = 1e-4;
    std::vector<int> trunk_dims = {64, 32};
    std::uint64_t seed = 1;
    std::uint64_t scene_seed = 7; // episode k trains on scene mix(scene_seed, k)

    TrainConfig to_train_config() const;
};

// Parameter grids for the baseline schedulers. Adaptive and fixed-interval
// grids are the cross product of their two lists.
struct PolicyGrids {
    std::vector<double> scan_cnstrt = {0.2, 0.4, 0.6, 0.8};
    std::vector<double> adaptive_thresholds = {8.0, 10.0, 12.0};
    std::vector<int> adaptive_nonkey_actions = {2, 3, 4};
    std::vector<int> fixed_intervals = {1, 2, 3};
    std::vector<int> fixed_nonkey_actions = {2, 3, 4};
    std::vector<double> random_key_probs = {0.9, 0.7, 0.5};

    std::size_t size() const;
};

struct AppConfig {
    EnergyParams energy;
    SequenceConfig sequence;
    EnvModelParams model;
    RewardConfig reward;
    TrainingSettings training;
    EvalOptions evaluation;
    PolicyGrids policies;
    double policy_overhead_host_s = 0.0011; // host seconds billed per RL decision

    double inference_overhead_mj() const {
        return policy_overhead_host_s * energy.host.active_power_mw;
    }
};

// Reads and fully validates a JSON config. A relative "energy_preset" path is
// resolved against the config file's directory. Missing files raise IoError;
// malformed or invalid content raises ConfigError.
AppConfig load_app_config(const std::filesystem::path& path);

EnergyParams load_energy_preset(const std::filesystem::path& path);

// Instantiates every baseline point in a stable order: scan, adaptive, fixed
// interval, random.
std::vector<std::unique_ptr<Policy>> build_policy_grid(const PolicyGrids& grids);

} // namespace ares
