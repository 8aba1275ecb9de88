#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ares/action.hpp"
#include "ares/energy.hpp"
#include "ares/rng.hpp"

namespace ares {

struct SequenceConfig {
    int length_frames = 90;  // decided frames per episode (the initial key is extra)
    int base_width_px = 1280;
    int base_height_px = 720;
    double difficulty = 0.4; // scene hardness in [0, 1]
    double motion_volatility = 0.6;
    std::uint64_t rng_seed = 1;

    void validate() const;
};

// Constants of the synthetic accuracy/motion model. Committed as a versioned
// JSON blob so recorded traces stay comparable across runs.
struct EnvModelParams {
    int version = 1;
    double acc_key_base = 0.9;            // key-frame accuracy at difficulty 0
    double acc_key_difficulty_slope = 0.25;
    double knee_base = 0.1;               // pixel-ratio knee at difficulty 0
    double knee_difficulty_slope = 0.4;   // knee shifts right as content hardens
    double log_steepness = 1.2;           // logistic slope per octave below the knee
    double resolution_floor = 0.35;       // accuracy retained by flow at tiny ratios
    double flow_motion_scale = 12.0;      // accumulated motion for a 1/e flow decay
    double flow_floor = 0.35;
    double difficulty_jitter = 0.05;      // per-frame difficulty wobble
    double motion_max = 4.0;
    double motion_init = 2.0;
    double proxy_noise = 0.05;
    int feature_dim = 8;

    void validate() const;
};

// Hidden per-frame ground truth driving accuracy outcomes.
struct FrameTruth {
    double motion_mag = 0.0;             // motion of the upcoming frame
    double accum_motion_since_key = 0.0; // motion integrated over processed frames
    double frame_difficulty = 0.0;
};

// Sliding window over the last 10 decisions plus the distance to the last key
// frame. Encoded for the agent as 20 binary channels + 1 scalar.
struct HistorySummary {
    static constexpr int kWindow = 10;
    static constexpr int kEncodedDim = 2 * kWindow + 1;

    std::array<int, kWindow> last_actions{}; // codes 0..3, oldest first
    int distance_from_key = 0;

    void push(int code);
    std::array<double, kEncodedDim> encode() const;

    bool operator==(const HistorySummary&) const = default;
};

// Observation handed to a scheduling policy: low-resolution content features,
// a divergence-from-key feature, and the decision history.
struct FrameState {
    std::vector<double> feature_proxy;      // feature_dim values
    std::vector<double> feature_diff_proxy; // feature_dim values
    HistorySummary history;

    std::vector<double> trunk_features() const; // proxy ++ diff_proxy
    std::vector<double> history_features() const;
};

struct RewardConfig {
    double lambda = 0.6;
    double c0 = 2.0;
    double gamma = 1.0;
    // Per-frame energy is divided by this before entering the reward. Values
    // <= 0 mean "use the key-frame energy of the active preset".
    double energy_normalizer_mj = 0.0;

    void validate() const;
};

struct StepOutcome {
    double accuracy = 0.0;
    EnergyBreakdown energy;
    double reward = 0.0;
    FrameState next_state;
    bool done = false;
};

// Accuracy surface pieces. key_accuracy is the ceiling for a frame;
// resolution_score and flow_score multiply it for non-key actions.
double key_accuracy(double difficulty, const EnvModelParams& m);
double resolution_score(double pixel_ratio, double difficulty, const EnvModelParams& m);
double flow_score(double accum_motion, const EnvModelParams& m);
double accuracy_model(const FrameTruth& truth, const Action& a, const EnvModelParams& m);

// One-step reward: energy bonus for everyone, accuracy shortfall only for
// non-key actions (a key frame is the accuracy ceiling by definition).
double reward_for(double accuracy_taken, double accuracy_best, double energy_total_mj,
                  bool is_key, const RewardConfig& cfg);

// Synthetic multi-task video sequence. Frame 0 is always captured as a key
// frame during reset; the policy then decides length_frames further frames.
class Environment {
  public:
    Environment(const SequenceConfig& seq, const EnvModelParams& model,
                const EnergyParams& energy, RewardConfig reward);

    FrameState reset();
    StepOutcome step(const Action& a);

    bool done() const { return started_ && steps_taken_ >= seq_.length_frames; }
    int steps_taken() const { return steps_taken_; }

    // Observation for the upcoming frame (valid after reset()).
    const FrameState& state() const { return state_; }
    // Accumulated motion since the last key, as a flow-threshold policy sees it.
    double flow_magnitude() const { return truth_.accum_motion_since_key; }
    // Exact accuracy the upcoming frame would score under each action.
    double estimate_accuracy(const Action& a) const;
    // Full capture cost of an action at this preset (identical for all frames).
    const EnergyBreakdown& action_energy(const Action& a) const;

    double key_frame_energy_mj() const { return action_energies_[0].total_mj; }
    const SequenceConfig& sequence() const { return seq_; }
    const RewardConfig& reward_config() const { return reward_; }
    const EnvModelParams& model() const { return model_; }
    const EnergyParams& energy_params() const { return energy_; }

  private:
    void advance_frame(); // realizes motion/difficulty/noise for the next frame
    void rebuild_state();

    SequenceConfig seq_;
    EnvModelParams model_;
    EnergyParams energy_;
    RewardConfig reward_;
    std::array<EnergyBreakdown, 4> action_energies_; // [0] is the key action
    Rng rng_;
    FrameTruth truth_;
    HistorySummary history_;
    FrameState state_;
    int steps_taken_ = 0;
    bool started_ = false;
};

} // namespace ares
