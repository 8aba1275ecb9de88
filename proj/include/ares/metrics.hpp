#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ares/environment.hpp"
#include "ares/qnet.hpp"
#include "ares/schedulers.hpp"
#include "ares/trace.hpp"

namespace ares {

// Runs the policy over one full episode. Frame energy in the trace includes
// any probe captures the policy charged plus its own inference surcharge.
EpisodeTrace rollout(Environment& env, Policy& policy);

// 1 - trace energy / reference energy. Both traces must describe the same
// scene: equal seeds and equal lengths.
double energy_reduction(const EpisodeTrace& trace, const EpisodeTrace& reference);

// Same ratio computed over growing frame prefixes; the last entry equals
// energy_reduction of the whole pair.
std::vector<double> cumulative_energy_reduction(const EpisodeTrace& trace,
                                                const EpisodeTrace& reference);

struct EvalOptions {
    int episodes = 5;
    std::uint64_t seed_base = 9000; // episode k runs the scene mix(seed_base, k)

    void validate() const; // throws std::invalid_argument
};

struct EvalSummary {
    std::string policy_id;
    double lambda = 0.0;
    std::uint64_t seed = 0; // scene seed, or seed_base when episodes are pooled
    int episodes = 0;
    int frames = 0;
    double mean_accuracy = 0.0;
    double total_energy_mj = 0.0;
    double reference_energy_mj = 0.0; // all-key capture of the same scenes
    double energy_reduction = 0.0;
};

EvalSummary evaluate_policy(Policy& policy, const SequenceConfig& seq,
                            const EnvModelParams& model, const EnergyParams& energy,
                            const RewardConfig& reward, const EvalOptions& opts);

// One summary per (policy, scene): every policy is scored on each of the
// opts.episodes scenes separately, against that scene's all-key capture.
std::vector<EvalSummary> pareto_sweep(std::span<Policy* const> policies,
                                      const SequenceConfig& seq, const EnvModelParams& model,
                                      const EnergyParams& energy, const RewardConfig& reward,
                                      const EvalOptions& opts);

void write_sweep_csv(std::ostream& os, std::span<const EvalSummary> rows);
void write_cumulative_reduction_csv(std::ostream& os, std::span<const double> series);

// Greedy argmax over a trained value net, with a fixed per-frame surcharge
// modelling the inference itself.
class GreedyQPolicy final : public Policy {
  public:
    GreedyQPolicy(NetParams params, std::string id, double inference_overhead_mj);

    PolicyDecision decide(const Environment& env, int frame_index) override;
    std::string id() const override { return id_; }
    double inference_overhead_mj() const override { return overhead_mj_; }

    const NetParams& params() const { return params_; }

  private:
    NetParams params_;
    std::string id_;
    double overhead_mj_;
};

// Loads a checkpoint and prices its per-frame inference at inference_host_s
// seconds of active host time under the given preset.
std::unique_ptr<GreedyQPolicy> load_rl_policy(const std::filesystem::path& checkpoint,
                                              const EnergyParams& energy,
                                              double inference_host_s);

} // namespace ares
