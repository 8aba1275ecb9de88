#include "ares/config.hpp"

#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <nlohmann/json.hpp>

#include "ares/errors.hpp"

namespace ares {

namespace {

using nlohmann::json;

json load_json_object(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("malformed json in " + path.string());
    if (!j.is_object()) throw ConfigError(path.string() + " must hold a json object");
    return j;
}

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<std::string_view> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (std::string_view key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
}

[[noreturn]] void wrong_type(const std::string& where, const char* key, const char* expected) {
    throw ConfigError(where + "." + key + " must be " + expected);
}

void read_double(const json& obj, const char* key, double& out, const std::string& where) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number()) wrong_type(where, key, "a number");
    out = v.get<double>();
}

void read_int(const json& obj, const char* key, int& out, const std::string& where) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) wrong_type(where, key, "an integer");
    out = v.get<int>();
}

void read_u64(const json& obj, const char* key, std::uint64_t& out, const std::string& where) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                   v.get<std::int64_t>() < 0)) {
        wrong_type(where, key, "a nonnegative integer");
    }
    out = v.get<std::uint64_t>();
}

void read_int_list(const json& obj, const char* key, std::vector<int>& out,
                   const std::string& where) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_array()) wrong_type(where, key, "a list of integers");
    std::vector<int> values;
    for (const json& e : v) {
        if (!e.is_number_integer()) wrong_type(where, key, "a list of integers");
        values.push_back(e.get<int>());
    }
    out = std::move(values);
}

void read_double_list(const json& obj, const char* key, std::vector<double>& out,
                      const std::string& where) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_array()) wrong_type(where, key, "a list of numbers");
    std::vector<double> values;
    for (const json& e : v) {
        if (!e.is_number()) wrong_type(where, key, "a list of numbers");
        values.push_back(e.get<double>());
    }
    out = std::move(values);
}

EnergyParams parse_energy(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be a json object");
    require_keys(obj, where, {"sensor", "isp", "host", "comm"});

    EnergyParams p;
    if (obj.contains("sensor")) {
        const json& s = obj.at("sensor");
        const std::string at = where + ".sensor";
        if (!s.is_object()) throw ConfigError(at + " must be a json object");
        require_keys(s, at,
                     {"sensor_resolution_mp", "clock_hz", "exposure_s", "idle_power_mw",
                      "active_power_slope_mw_per_mp", "active_power_offset_mw"});
        read_double(s, "sensor_resolution_mp", p.sensor.sensor_resolution_mp, at);
        read_double(s, "clock_hz", p.sensor.clock_hz, at);
        read_double(s, "exposure_s", p.sensor.exposure_s, at);
        read_double(s, "idle_power_mw", p.sensor.idle_power_mw, at);
        read_double(s, "active_power_slope_mw_per_mp", p.sensor.active_power_slope_mw_per_mp, at);
        read_double(s, "active_power_offset_mw", p.sensor.active_power_offset_mw, at);
    }
    if (obj.contains("isp")) {
        const json& s = obj.at("isp");
        const std::string at = where + ".isp";
        if (!s.is_object()) throw ConfigError(at + " must be a json object");
        require_keys(s, at,
                     {"active_power_mw", "idle_power_mw", "proc_time_slope_s_per_mp",
                      "proc_time_offset_s"});
        read_double(s, "active_power_mw", p.isp.active_power_mw, at);
        read_double(s, "idle_power_mw", p.isp.idle_power_mw, at);
        read_double(s, "proc_time_slope_s_per_mp", p.isp.proc_time_slope_s_per_mp, at);
        read_double(s, "proc_time_offset_s", p.isp.proc_time_offset_s, at);
    }
    if (obj.contains("host")) {
        const json& s = obj.at("host");
        const std::string at = where + ".host";
        if (!s.is_object()) throw ConfigError(at + " must be a json object");
        require_keys(s, at,
                     {"active_power_mw", "idle_power_mw", "app_time_key_s_per_mp",
                      "app_time_flow_s_per_mp"});
        read_double(s, "active_power_mw", p.host.active_power_mw, at);
        read_double(s, "idle_power_mw", p.host.idle_power_mw, at);
        read_double(s, "app_time_key_s_per_mp", p.host.app_time_key_s_per_mp, at);
        read_double(s, "app_time_flow_s_per_mp", p.host.app_time_flow_s_per_mp, at);
    }
    if (obj.contains("comm")) {
        const json& s = obj.at("comm");
        const std::string at = where + ".comm";
        if (!s.is_object()) throw ConfigError(at + " must be a json object");
        require_keys(s, at, {"mj_per_mp"});
        read_double(s, "mj_per_mp", p.comm.mj_per_mp, at);
    }
    return p;
}

void parse_sequence(const json& obj, SequenceConfig& seq) {
    const std::string at = "sequence";
    if (!obj.is_object()) throw ConfigError(at + " must be a json object");
    require_keys(obj, at,
                 {"length_frames", "base_width_px", "base_height_px", "difficulty",
                  "motion_volatility", "rng_seed"});
    read_int(obj, "length_frames", seq.length_frames, at);
    read_int(obj, "base_width_px", seq.base_width_px, at);
    read_int(obj, "base_height_px", seq.base_height_px, at);
    read_double(obj, "difficulty", seq.difficulty, at);
    read_double(obj, "motion_volatility", seq.motion_volatility, at);
    read_u64(obj, "rng_seed", seq.rng_seed, at);
}

void parse_model(const json& obj, EnvModelParams& m) {
    const std::string at = "model";
    if (!obj.is_object()) throw ConfigError(at + " must be a json object");
    require_keys(obj, at,
                 {"version", "acc_key_base", "acc_key_difficulty_slope", "knee_base",
                  "knee_difficulty_slope", "log_steepness", "resolution_floor",
                  "flow_motion_scale", "flow_floor", "difficulty_jitter", "motion_max",
                  "motion_init", "proxy_noise", "feature_dim"});
    read_int(obj, "version", m.version, at);
    read_double(obj, "acc_key_base", m.acc_key_base, at);
    read_double(obj, "acc_key_difficulty_slope", m.acc_key_difficulty_slope, at);
    read_double(obj, "knee_base", m.knee_base, at);
    read_double(obj, "knee_difficulty_slope", m.knee_difficulty_slope, at);
    read_double(obj, "log_steepness", m.log_steepness, at);
    read_double(obj, "resolution_floor", m.resolution_floor, at);
    read_double(obj, "flow_motion_scale", m.flow_motion_scale, at);
    read_double(obj, "flow_floor", m.flow_floor, at);
    read_double(obj, "difficulty_jitter", m.difficulty_jitter, at);
    read_double(obj, "motion_max", m.motion_max, at);
    read_double(obj, "motion_init", m.motion_init, at);
    read_double(obj, "proxy_noise", m.proxy_noise, at);
    read_int(obj, "feature_dim", m.feature_dim, at);
}

void parse_reward(const json& obj, RewardConfig& r) {
    const std::string at = "reward";
    if (!obj.is_object()) throw ConfigError(at + " must be a json object");
    require_keys(obj, at, {"lambda", "c0", "gamma", "energy_normalizer_mj"});
    read_double(obj, "lambda", r.lambda, at);
    read_double(obj, "c0", r.c0, at);
    read_double(obj, "gamma", r.gamma, at);
    read_double(obj, "energy_normalizer_mj", r.energy_normalizer_mj, at);
}

void parse_training(const json& obj, TrainingSettings& t) {
    const std::string at = "training";
    if (!obj.is_object()) throw ConfigError(at + " must be a json object");
    require_keys(obj, at,
                 {"episodes", "batch_size", "replay_capacity", "target_sync_every", "gamma",
                  "epsilon_start", "epsilon_end", "epsilon_fraction", "learning_rate",
                  "learning_rate_end", "trunk_dims", "seed", "scene_seed"});
    read_int(obj, "episodes", t.episodes, at);
    read_int(obj, "batch_size", t.batch_size, at);
    read_int(obj, "replay_capacity", t.replay_capacity, at);
    read_int(obj, "target_sync_every", t.target_sync_every, at);
    read_double(obj, "gamma", t.gamma, at);
    read_double(obj, "epsilon_start", t.epsilon_start, at);
    read_double(obj, "epsilon_end", t.epsilon_end, at);
    read_double(obj, "epsilon_fraction", t.epsilon_fraction, at);
    read_double(obj, "learning_rate", t.learning_rate, at);
    read_double(obj, "learning_rate_end", t.learning_rate_end, at);
    read_int_list(obj, "trunk_dims", t.trunk_dims, at);
    read_u64(obj, "seed", t.seed, at);
    read_u64(obj, "scene_seed", t.scene_seed, at);
}

void parse_evaluation(const json& obj, EvalOptions& e) {
    const std::string at = "evaluation";
    if (!obj.is_object()) throw ConfigError(at + " must be a json object");
    require_keys(obj, at, {"episodes", "seed_base"});
    read_int(obj, "episodes", e.episodes, at);
    read_u64(obj, "seed_base", e.seed_base, at);
}

void parse_policies(const json& obj, PolicyGrids& g) {
    const std::string at = "policies";
    if (!obj.is_object()) throw ConfigError(at + " must be a json object");
    require_keys(obj, at,
                 {"scan_cnstrt", "adaptive_thresholds", "adaptive_nonkey_actions",
                  "fixed_intervals", "fixed_nonkey_actions", "random_key_probs"});
    read_double_list(obj, "scan_cnstrt", g.scan_cnstrt, at);
    read_double_list(obj, "adaptive_thresholds", g.adaptive_thresholds, at);
    read_int_list(obj, "adaptive_nonkey_actions", g.adaptive_nonkey_actions, at);
    read_int_list(obj, "fixed_intervals", g.fixed_intervals, at);
    read_int_list(obj, "fixed_nonkey_actions", g.fixed_nonkey_actions, at);
    read_double_list(obj, "random_key_probs", g.random_key_probs, at);
}

void validate_app(const AppConfig& cfg) {
    try {
        cfg.energy.validate();
        cfg.sequence.validate();
        cfg.model.validate();
        cfg.reward.validate();
        cfg.evaluation.validate();
        cfg.training.to_train_config().validate();
        if (cfg.policy_overhead_host_s < 0.0) {
            throw std::invalid_argument("policy_overhead_host_s must not be negative");
        }
        for (double c : cfg.policies.scan_cnstrt) ScanConfig{c}.validate();
        for (double thr : cfg.policies.adaptive_thresholds) {
            for (int a : cfg.policies.adaptive_nonkey_actions) {
                AdaptiveHfsConfig{thr, a}.validate();
            }
        }
        for (int l : cfg.policies.fixed_intervals) {
            for (int a : cfg.policies.fixed_nonkey_actions) FixedIntervalConfig{l, a}.validate();
        }
        for (double r : cfg.policies.random_key_probs) RandomHfsConfig{r, 0}.validate();
    } catch (const std::logic_error& e) {
        throw ConfigError(e.what());
    }
}

} // namespace

TrainConfig TrainingSettings::to_train_config() const {
    TrainConfig tc;
    tc.net.trunk_dims = trunk_dims;
    tc.adam.lr = learning_rate;
    tc.lr_end = learning_rate_end;
    tc.episodes = episodes;
    tc.batch_size = batch_size;
    tc.replay_capacity = replay_capacity;
    tc.target_sync_every = target_sync_every;
    tc.gamma = gamma;
    tc.epsilon_start = epsilon_start;
    tc.epsilon_end = epsilon_end;
    tc.epsilon_fraction = epsilon_fraction;
    tc.seed = seed;
    return tc;
}

std::size_t PolicyGrids::size() const {
    return scan_cnstrt.size() + adaptive_thresholds.size() * adaptive_nonkey_actions.size() +
           fixed_intervals.size() * fixed_nonkey_actions.size() + random_key_probs.size();
}

EnergyParams load_energy_preset(const std::filesystem::path& path) {
    const json j = load_json_object(path);
    const EnergyParams p = parse_energy(j, "preset");
    try {
        p.validate();
    } catch (const std::logic_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return p;
}

AppConfig load_app_config(const std::filesystem::path& path) {
    const json j = load_json_object(path);
    require_keys(j, "config",
                 {"energy_preset", "energy", "sequence", "model", "reward", "training",
                  "evaluation", "policies", "policy_overhead_host_s"});

    AppConfig cfg;
    const bool has_preset = j.contains("energy_preset");
    const bool has_inline = j.contains("energy");
    if (has_preset && has_inline) {
        throw ConfigError("config names both energy_preset and an inline energy block");
    }
    if (has_preset) {
        const json& v = j.at("energy_preset");
        if (!v.is_string()) throw ConfigError("energy_preset must be a path string");
        std::filesystem::path preset = v.get<std::string>();
        if (preset.is_relative()) preset = path.parent_path() / preset;
        cfg.energy = load_energy_preset(preset);
    } else if (has_inline) {
        cfg.energy = parse_energy(j.at("energy"), "energy");
    }

    if (j.contains("sequence")) parse_sequence(j.at("sequence"), cfg.sequence);
    if (j.contains("model")) parse_model(j.at("model"), cfg.model);
    if (j.contains("reward")) parse_reward(j.at("reward"), cfg.reward);
    if (j.contains("training")) parse_training(j.at("training"), cfg.training);
    if (j.contains("evaluation")) parse_evaluation(j.at("evaluation"), cfg.evaluation);
    if (j.contains("policies")) parse_policies(j.at("policies"), cfg.policies);
    read_double(j, "policy_overhead_host_s", cfg.policy_overhead_host_s, "config");

    validate_app(cfg);
    return cfg;
}

std::vector<std::unique_ptr<Policy>> build_policy_grid(const PolicyGrids& grids) {
    std::vector<std::unique_ptr<Policy>> out;
    out.reserve(grids.size());
    for (double c : grids.scan_cnstrt) {
        out.push_back(std::make_unique<ScanPolicy>(ScanConfig{c}));
    }
    for (double thr : grids.adaptive_thresholds) {
        for (int a : grids.adaptive_nonkey_actions) {
            out.push_back(std::make_unique<AdaptiveHfsPolicy>(AdaptiveHfsConfig{thr, a}));
        }
    }
    for (int l : grids.fixed_intervals) {
        for (int a : grids.fixed_nonkey_actions) {
            out.push_back(std::make_unique<FixedIntervalPolicy>(FixedIntervalConfig{l, a}));
        }
    }
    for (double r : grids.random_key_probs) {
        out.push_back(std::make_unique<RandomHfsPolicy>(RandomHfsConfig{r, 0}));
    }
    return out;
}

} // namespace ares
