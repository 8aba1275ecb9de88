#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ares/environment.hpp"
#include "ares/qnet.hpp"
#include "ares/rng.hpp"

namespace ares {

// Network-ready observation, split the same way the net is: content features
// for the trunk, decision history for the head.
struct EncodedState {
    std::vector<double> trunk;
    std::vector<double> history;
};

EncodedState encode(const FrameState& state);

// Minimal episodic interface the trainer drives. Environments whose episodes
// never end on their own rely on TrainConfig::max_steps_per_episode.
class DdqnEnv {
  public:
    struct StepResult {
        EncodedState state;
        double reward = 0.0;
        bool done = false;
    };

    virtual ~DdqnEnv() = default;
    virtual EncodedState reset() = 0;
    virtual StepResult step(int action) = 0;
    virtual int num_actions() const = 0;
};

struct Transition {
    EncodedState s;
    int action = 0;
    double reward = 0.0;
    EncodedState next;
    bool done = false;
};

// Fixed-capacity ring; once full, each push evicts the oldest transition.
class ReplayBuffer {
  public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(Transition t);
    std::size_t size() const { return data_.size(); }
    std::size_t capacity() const { return cap_; }

    // i = 0 is the oldest stored transition
    const Transition& at(std::size_t i) const;

    // batch distinct indices into [0, size)
    std::vector<std::size_t> sample_indices(Rng& rng, std::size_t batch) const;

  private:
    std::size_t cap_;
    std::size_t next_ = 0; // overwrite position once the ring is full
    std::vector<Transition> data_;
};

struct TrainConfig {
    NetSpec net;
    AdamConfig adam; // adam.lr is the initial rate; see lr_end
    double lr_end = -1.0; // >= 0: anneal the rate linearly here across episodes
    int episodes = 800;
    int max_steps_per_episode = 0; // 0: run each episode until the env says done
    int batch_size = 32;
    std::size_t replay_capacity = 10000;
    int target_sync_every = 500; // in gradient updates, not env steps
    double gamma = 1.0;
    double epsilon_start = 0.9;
    double epsilon_end = 0.05;
    double epsilon_fraction = 0.8; // share of episodes spent annealing
    std::uint64_t seed = 1;

    void validate() const; // throws std::invalid_argument
};

struct EpisodeLog {
    int episode = 0;
    double total_reward = 0.0;
    double epsilon = 0.0;
    double mean_td_error = 0.0; // mean |td| over this episode's updates
};

struct TrainResult {
    NetParams params;
    std::vector<EpisodeLog> log;
};

double epsilon_at(int episode, const TrainConfig& cfg);

int greedy_action(const NetParams& p, const EncodedState& s);

// One uniform draw decides the branch; exploring costs one more draw.
int select_action(const NetParams& p, const EncodedState& s, double epsilon, Rng& rng);

// r if terminal, else r + gamma * Q_target(s', argmax_a Q_online(s', a)).
double td_target(const NetParams& online, const NetParams& target, const Transition& t,
                 double gamma);

TrainResult train(DdqnEnv& env, const TrainConfig& cfg);

// Adapts the simulator to the trainer: episode k replays the configured
// sequence with its seed re-derived from (rng_seed, k), so training sees a
// fresh scene every reset while staying reproducible end to end.
class VideoDdqnEnv final : public DdqnEnv {
  public:
    VideoDdqnEnv(const SequenceConfig& seq, const EnvModelParams& model,
                 const EnergyParams& energy, const RewardConfig& reward);

    EncodedState reset() override;
    StepResult step(int action) override; // action is a resolution code, 0 = key frame
    int num_actions() const override;

    long long episodes_started() const { return episode_; }

  private:
    SequenceConfig seq_;
    EnvModelParams model_;
    EnergyParams energy_;
    RewardConfig reward_;
    long long episode_ = 0;
    std::optional<Environment> env_;
};

} // namespace ares
