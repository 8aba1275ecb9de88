#include "ares/environment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ares {

namespace {

void check_range(double v, double lo, double hi, const char* name) {
    if (!(v >= lo) || !(v <= hi)) {
        throw std::domain_error(std::string(name) + " out of range");
    }
}

// Fixed affine maps turning hidden truth into observable features. The exact
// coefficients are arbitrary; they only need to stay fixed so that recorded
// traces and trained checkpoints remain comparable.
double proxy_difficulty_w(int j) { return 0.6 + 0.4 * std::cos(1.7 * j); }
double proxy_motion_w(int j) { return 0.5 + 0.3 * std::sin(1.3 * j + 0.5); }
double proxy_accum_w(int j) { return 0.8 + 0.2 * std::cos(0.9 * j + 1.1); }

} // namespace

void SequenceConfig::validate() const {
    if (length_frames < 1) throw std::domain_error("length_frames must be >= 1");
    FrameSpec{base_width_px, base_height_px}.validate();
    check_range(difficulty, 0.0, 1.0, "difficulty");
    if (!(motion_volatility >= 0.0)) throw std::domain_error("motion_volatility must be >= 0");
}

void EnvModelParams::validate() const {
    if (version != 1) throw std::domain_error("unsupported model version");
    check_range(acc_key_base, 1e-9, 1.0, "acc_key_base");
    if (!(acc_key_difficulty_slope >= 0.0) || acc_key_base - acc_key_difficulty_slope < 0.0) {
        throw std::domain_error("acc_key slope must keep accuracy nonnegative");
    }
    if (!(knee_base > 0.0) || !(knee_difficulty_slope >= 0.0) ||
        knee_base + knee_difficulty_slope > 1.0) {
        throw std::domain_error("pixel-ratio knee must stay within (0, 1]");
    }
    if (!(log_steepness > 0.0)) throw std::domain_error("log_steepness must be > 0");
    check_range(resolution_floor, 0.0, 1.0, "resolution_floor");
    check_range(flow_floor, 0.0, 1.0, "flow_floor");
    if (!(flow_motion_scale > 0.0)) throw std::domain_error("flow_motion_scale must be > 0");
    if (!(difficulty_jitter >= 0.0)) throw std::domain_error("difficulty_jitter must be >= 0");
    if (!(motion_max > 0.0)) throw std::domain_error("motion_max must be > 0");
    check_range(motion_init, 0.0, motion_max, "motion_init");
    if (!(proxy_noise >= 0.0)) throw std::domain_error("proxy_noise must be >= 0");
    if (feature_dim < 1) throw std::domain_error("feature_dim must be >= 1");
}

void RewardConfig::validate() const {
    if (!(lambda >= 0.0)) throw std::domain_error("lambda must be >= 0");
    if (!(c0 >= 0.0)) throw std::domain_error("c0 must be >= 0");
    check_range(gamma, 0.0, 1.0, "gamma");
}

void HistorySummary::push(int code) {
    if (code < 0 || code > 3) throw std::domain_error("history code must be in 0..3");
    for (int i = 0; i + 1 < kWindow; ++i) last_actions[i] = last_actions[i + 1];
    last_actions[kWindow - 1] = code;
}

std::array<double, HistorySummary::kEncodedDim> HistorySummary::encode() const {
    std::array<double, kEncodedDim> out{};
    for (int i = 0; i < kWindow; ++i) {
        out[2 * i] = static_cast<double>((last_actions[i] >> 1) & 1);
        out[2 * i + 1] = static_cast<double>(last_actions[i] & 1);
    }
    out[2 * kWindow] = static_cast<double>(distance_from_key);
    return out;
}

std::vector<double> FrameState::trunk_features() const {
    std::vector<double> v;
    v.reserve(feature_proxy.size() + feature_diff_proxy.size());
    v.insert(v.end(), feature_proxy.begin(), feature_proxy.end());
    v.insert(v.end(), feature_diff_proxy.begin(), feature_diff_proxy.end());
    return v;
}

std::vector<double> FrameState::history_features() const {
    const auto enc = history.encode();
    return std::vector<double>(enc.begin(), enc.end());
}

double key_accuracy(double difficulty, const EnvModelParams& m) {
    check_range(difficulty, 0.0, 1.0, "difficulty");
    return m.acc_key_base - m.acc_key_difficulty_slope * difficulty;
}

double resolution_score(double pixel_ratio, double difficulty, const EnvModelParams& m) {
    if (!(pixel_ratio > 0.0) || pixel_ratio > 1.0) {
        throw std::domain_error("pixel_ratio must be in (0, 1]");
    }
    const double knee = m.knee_base + m.knee_difficulty_slope * difficulty;
    const double u = std::log2(pixel_ratio) - std::log2(knee);
    if (u >= 0.0) return 1.0;
    // lower half of a logistic in log pixel-ratio, lifted onto the flow floor
    const double s = 1.0 / (1.0 + std::exp(-m.log_steepness * u));
    return m.resolution_floor + (1.0 - m.resolution_floor) * 2.0 * s;
}

double flow_score(double accum_motion, const EnvModelParams& m) {
    if (!(accum_motion >= 0.0)) throw std::domain_error("accum_motion must be >= 0");
    return m.flow_floor + (1.0 - m.flow_floor) * std::exp(-accum_motion / m.flow_motion_scale);
}

double accuracy_model(const FrameTruth& truth, const Action& a, const EnvModelParams& m) {
    const double ceiling = key_accuracy(truth.frame_difficulty, m);
    if (a.is_key()) return ceiling;
    return ceiling * resolution_score(a.pixel_ratio(), truth.frame_difficulty, m) *
           flow_score(truth.accum_motion_since_key, m);
}

double reward_for(double accuracy_taken, double accuracy_best, double energy_total_mj,
                  bool is_key, const RewardConfig& cfg) {
    if (!(energy_total_mj > 0.0)) throw std::domain_error("frame energy must be > 0");
    if (!(cfg.energy_normalizer_mj > 0.0)) {
        throw std::domain_error("energy normalizer must be > 0");
    }
    const double e_hat = energy_total_mj / cfg.energy_normalizer_mj;
    const double base = cfg.lambda / e_hat + cfg.c0;
    return is_key ? base : (accuracy_taken - accuracy_best) + base;
}

Environment::Environment(const SequenceConfig& seq, const EnvModelParams& model,
                         const EnergyParams& energy, RewardConfig reward)
    : seq_(seq), model_(model), energy_(energy), rng_(seq.rng_seed) {
    seq_.validate();
    model_.validate();
    energy_.validate();
    const FrameSpec base{seq_.base_width_px, seq_.base_height_px};
    for (int i = 1; i <= 4; ++i) {
        const Action a = Action::from_index(i);
        action_energies_[i - 1] = frame_energy(energy_, a.apply(base), a.is_key());
    }
    if (reward.energy_normalizer_mj <= 0.0) {
        reward.energy_normalizer_mj = action_energies_[0].total_mj;
    }
    reward.validate();
    reward_ = reward;
}

FrameState Environment::reset() {
    rng_ = Rng(seq_.rng_seed);
    steps_taken_ = 0;
    started_ = true;
    history_ = HistorySummary{};
    truth_ = FrameTruth{};
    truth_.motion_mag = model_.motion_init; // frame 0 is the initial key frame
    advance_frame();
    return state_;
}

void Environment::advance_frame() {
    truth_.motion_mag = std::clamp(
        truth_.motion_mag + seq_.motion_volatility * rng_.normal(), 0.0, model_.motion_max);
    truth_.frame_difficulty =
        std::clamp(seq_.difficulty + model_.difficulty_jitter * rng_.normal(), 0.0, 1.0);
    rebuild_state();
}

void Environment::rebuild_state() {
    const int d = model_.feature_dim;
    state_.feature_proxy.resize(d);
    state_.feature_diff_proxy.resize(d);
    for (int j = 0; j < d; ++j) {
        state_.feature_proxy[j] = proxy_difficulty_w(j) * truth_.frame_difficulty +
                                  proxy_motion_w(j) * truth_.motion_mag +
                                  model_.proxy_noise * rng_.normal();
    }
    for (int j = 0; j < d; ++j) {
        state_.feature_diff_proxy[j] = proxy_accum_w(j) * truth_.accum_motion_since_key +
                                       model_.proxy_noise * rng_.normal();
    }
    state_.history = history_;
}

double Environment::estimate_accuracy(const Action& a) const {
    if (!started_) throw std::logic_error("estimate_accuracy before reset");
    const FrameTruth peek{truth_.motion_mag,
                          truth_.accum_motion_since_key + truth_.motion_mag,
                          truth_.frame_difficulty};
    return accuracy_model(peek, a, model_);
}

const EnergyBreakdown& Environment::action_energy(const Action& a) const {
    return action_energies_[Action::from_index(a.index).index - 1];
}

StepOutcome Environment::step(const Action& a) {
    if (!started_) throw std::logic_error("step before reset");
    if (done()) throw std::logic_error("episode already finished");

    StepOutcome out;
    // The frame about to be analyzed has drifted by its own motion on top of
    // everything accumulated since the last key frame.
    const double divergence = truth_.accum_motion_since_key + truth_.motion_mag;
    const FrameTruth processed{truth_.motion_mag, divergence, truth_.frame_difficulty};
    out.accuracy = accuracy_model(processed, a, model_);
    out.energy = action_energies_[a.index - 1];
    const double best = key_accuracy(truth_.frame_difficulty, model_);
    out.reward = reward_for(out.accuracy, best, out.energy.total_mj, a.is_key(), reward_);

    truth_.accum_motion_since_key = a.is_key() ? 0.0 : divergence;
    history_.distance_from_key = a.is_key() ? 0 : history_.distance_from_key + 1;
    history_.push(a.code());
    ++steps_taken_;

    advance_frame();
    out.next_state = state_;
    out.done = done();
    return out;
}

} // namespace ares
