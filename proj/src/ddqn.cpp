#include "ares/ddqn.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace ares {

namespace {

int argmax(const std::vector<double>& q) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(q.size()); ++i) {
        if (q[i] > q[best]) best = i;
    }
    return best;
}

double td_target_into(const NetParams& online, const NetParams& target, const Transition& t,
                      double gamma, ForwardCache& scratch) {
    if (t.done) return t.reward;
    forward(online, t.next.trunk, t.next.history, scratch);
    const int pick = argmax(scratch.q);
    forward(target, t.next.trunk, t.next.history, scratch);
    return t.reward + gamma * scratch.q[pick];
}

} // namespace

EncodedState encode(const FrameState& state) {
    return EncodedState{state.trunk_features(), state.history_features()};
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : cap_(capacity) {
    if (capacity == 0) throw std::invalid_argument("replay capacity must be positive");
    data_.reserve(capacity);
}

void ReplayBuffer::push(Transition t) {
    if (data_.size() < cap_) {
        data_.push_back(std::move(t));
        return;
    }
    data_[next_] = std::move(t);
    next_ = (next_ + 1) % cap_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
    return data_[(next_ + i) % data_.size()];
}

std::vector<std::size_t> ReplayBuffer::sample_indices(Rng& rng, std::size_t batch) const {
    const std::size_t n = data_.size();
    if (batch == 0) throw std::invalid_argument("replay sample size must be positive");
    if (batch > n) throw std::invalid_argument("replay sample larger than the buffer");

    std::vector<std::size_t> out;
    if (batch * 4 >= n) {
        // dense request: partially shuffle the whole index range
        out.resize(n);
        std::iota(out.begin(), out.end(), std::size_t{0});
        for (std::size_t i = 0; i < batch; ++i) {
            const std::size_t j =
                i + rng.uniform_int(static_cast<std::uint32_t>(n - i));
            std::swap(out[i], out[j]);
        }
        out.resize(batch);
        return out;
    }

    // sparse request: rejection is cheaper than touching all n slots
    out.reserve(batch);
    while (out.size() < batch) {
        const std::size_t k = rng.uniform_int(static_cast<std::uint32_t>(n));
        bool seen = false;
        for (std::size_t v : out) {
            if (v == k) {
                seen = true;
                break;
            }
        }
        if (!seen) out.push_back(k);
    }
    return out;
}

void TrainConfig::validate() const {
    net.validate();
    if (!(adam.lr > 0.0)) throw std::invalid_argument("learning rate must be positive");
    if (adam.beta1 < 0.0 || adam.beta1 >= 1.0 || adam.beta2 < 0.0 || adam.beta2 >= 1.0) {
        throw std::invalid_argument("adam betas must lie in [0, 1)");
    }
    if (!(adam.eps > 0.0)) throw std::invalid_argument("adam epsilon must be positive");
    if (lr_end > adam.lr) {
        throw std::invalid_argument("final learning rate must not exceed the initial one");
    }
    if (episodes < 1) throw std::invalid_argument("episodes must be at least 1");
    if (max_steps_per_episode < 0) {
        throw std::invalid_argument("max steps per episode must not be negative");
    }
    if (batch_size < 1) throw std::invalid_argument("batch size must be at least 1");
    if (replay_capacity < static_cast<std::size_t>(batch_size)) {
        throw std::invalid_argument("replay capacity must be at least the batch size");
    }
    if (target_sync_every < 1) throw std::invalid_argument("target sync period must be positive");
    if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("gamma must lie in [0, 1]");
    if (epsilon_start < 0.0 || epsilon_start > 1.0 || epsilon_end < 0.0 || epsilon_end > 1.0) {
        throw std::invalid_argument("exploration rates must lie in [0, 1]");
    }
    if (!(epsilon_fraction > 0.0) || epsilon_fraction > 1.0) {
        throw std::invalid_argument("epsilon fraction must lie in (0, 1]");
    }
}

double epsilon_at(int episode, const TrainConfig& cfg) {
    const int horizon =
        std::max(1, static_cast<int>(std::floor(cfg.epsilon_fraction * cfg.episodes)));
    if (episode >= horizon) return cfg.epsilon_end;
    return cfg.epsilon_start +
           (cfg.epsilon_end - cfg.epsilon_start) * (static_cast<double>(episode) / horizon);
}

int greedy_action(const NetParams& p, const EncodedState& s) {
    ForwardCache cache;
    forward(p, s.trunk, s.history, cache);
    return argmax(cache.q);
}

int select_action(const NetParams& p, const EncodedState& s, double epsilon, Rng& rng) {
    if (rng.uniform() < epsilon) {
        return static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(p.spec.num_actions)));
    }
    return greedy_action(p, s);
}

double td_target(const NetParams& online, const NetParams& target, const Transition& t,
                 double gamma) {
    ForwardCache scratch;
    return td_target_into(online, target, t, gamma, scratch);
}

TrainResult train(DdqnEnv& env, const TrainConfig& cfg) {
    cfg.validate();
    if (env.num_actions() != cfg.net.num_actions) {
        throw std::invalid_argument("environment and network disagree on the action count");
    }

    Rng rng(cfg.seed);
    NetParams online = init_params(cfg.net, rng);
    NetParams target = online;
    AdamState opt = AdamState::make(cfg.net, cfg.adam);
    ReplayBuffer buffer(cfg.replay_capacity);
    NetGrads grads = make_grads(cfg.net);
    ForwardCache cache;
    ForwardCache scratch;

    TrainResult out;
    out.log.reserve(static_cast<std::size_t>(cfg.episodes));

    long long updates = 0;
    for (int episode = 0; episode < cfg.episodes; ++episode) {
        if (cfg.lr_end >= 0.0 && cfg.episodes > 1) {
            const double frac = static_cast<double>(episode) / (cfg.episodes - 1);
            opt.cfg.lr = cfg.adam.lr + (cfg.lr_end - cfg.adam.lr) * frac;
        }
        const double eps = epsilon_at(episode, cfg);
        EncodedState state = env.reset();
        double episode_return = 0.0;
        double td_sum = 0.0;
        long long td_batches = 0;

        // hard ceiling so a non-terminating env cannot hang an unbounded run
        const long long step_limit =
            cfg.max_steps_per_episode > 0 ? cfg.max_steps_per_episode : 10'000'000LL;
        for (long long step = 0; step < step_limit; ++step) {
            const int action = select_action(online, state, eps, rng);
            DdqnEnv::StepResult result = env.step(action);
            episode_return += result.reward;
            const bool done = result.done;
            buffer.push(Transition{std::move(state), action, result.reward, result.state, done});
            state = std::move(result.state);

            if (buffer.size() >= static_cast<std::size_t>(cfg.batch_size)) {
                const std::vector<std::size_t> picks =
                    buffer.sample_indices(rng, static_cast<std::size_t>(cfg.batch_size));
                grads.zero();
                double abs_td = 0.0;
                for (std::size_t i : picks) {
                    const Transition& t = buffer.at(i);
                    const double y = td_target_into(online, target, t, cfg.gamma, scratch);
                    forward(online, t.s.trunk, t.s.history, cache);
                    const double td = cache.q[t.action] - y;
                    backward(online, cache, t.s.trunk, t.s.history, t.action, td, grads);
                    abs_td += std::fabs(td);
                }
                grads.scale(1.0 / cfg.batch_size);
                adam_step(online, grads, opt);
                ++updates;
                td_sum += abs_td / cfg.batch_size;
                ++td_batches;
                if (updates % cfg.target_sync_every == 0) target = online;
            }

            if (done) break;
            if (cfg.max_steps_per_episode == 0 && step + 1 == step_limit) {
                throw std::runtime_error("environment never finished an episode");
            }
        }

        out.log.push_back(EpisodeLog{episode, episode_return, eps,
                                     td_batches > 0 ? td_sum / td_batches : 0.0});
    }

    out.params = std::move(online);
    return out;
}

VideoDdqnEnv::VideoDdqnEnv(const SequenceConfig& seq, const EnvModelParams& model,
                           const EnergyParams& energy, const RewardConfig& reward)
    : seq_(seq), model_(model), energy_(energy), reward_(reward) {
    seq_.validate();
    model_.validate();
}

EncodedState VideoDdqnEnv::reset() {
    SequenceConfig episode_seq = seq_;
    episode_seq.rng_seed = Rng::mix(seq_.rng_seed, static_cast<std::uint64_t>(episode_));
    ++episode_;
    env_.emplace(episode_seq, model_, energy_, reward_);
    return encode(env_->reset());
}

DdqnEnv::StepResult VideoDdqnEnv::step(int action) {
    if (!env_) throw std::logic_error("video adapter stepped before reset");
    StepOutcome out = env_->step(Action::from_index(action + 1));
    return StepResult{encode(out.next_state), out.reward, out.done};
}

int VideoDdqnEnv::num_actions() const { return Action::count(); }

} // namespace ares
