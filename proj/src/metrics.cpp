#include "ares/metrics.hpp"

#include <ostream>
#include <stdexcept>
#include <utility>

#include "ares/csv.hpp"
#include "ares/ddqn.hpp"

namespace ares {

EpisodeTrace rollout(Environment& env, Policy& policy) {
    EpisodeTrace trace;
    trace.seed = env.sequence().rng_seed;
    trace.policy_id = policy.id();
    trace.lambda = env.reward_config().lambda;
    trace.rows.reserve(static_cast<std::size_t>(env.sequence().length_frames));

    const double overhead_mj = policy.inference_overhead_mj();
    policy.begin_episode(trace.seed);
    env.reset();
    for (int t = 0; !env.done(); ++t) {
        const PolicyDecision decision = policy.decide(env, t);
        const StepOutcome out = env.step(decision.action);

        TraceRow row;
        row.t = t + 1;
        row.action = decision.action.index;
        row.accuracy = out.accuracy;
        row.energy = out.energy;
        row.energy += decision.extra_energy;
        row.energy.host_mj += overhead_mj;
        row.energy.total_mj += overhead_mj;
        row.reward = out.reward;
        trace.rows.push_back(row);
    }
    return trace;
}

namespace {

void require_comparable(const EpisodeTrace& trace, const EpisodeTrace& reference) {
    if (trace.rows.empty() || reference.rows.empty()) {
        throw std::domain_error("cannot compare empty traces");
    }
    if (trace.rows.size() != reference.rows.size()) {
        throw std::domain_error("traces cover different numbers of frames");
    }
    if (trace.seed != reference.seed) {
        throw std::domain_error("traces were recorded on different scenes");
    }
}

} // namespace

double energy_reduction(const EpisodeTrace& trace, const EpisodeTrace& reference) {
    require_comparable(trace, reference);
    return 1.0 - trace.total_energy_mj() / reference.total_energy_mj();
}

std::vector<double> cumulative_energy_reduction(const EpisodeTrace& trace,
                                                const EpisodeTrace& reference) {
    require_comparable(trace, reference);
    std::vector<double> series;
    series.reserve(trace.rows.size());
    double used = 0.0;
    double ref = 0.0;
    for (std::size_t t = 0; t < trace.rows.size(); ++t) {
        used += trace.rows[t].energy.total_mj;
        ref += reference.rows[t].energy.total_mj;
        series.push_back(1.0 - used / ref);
    }
    return series;
}

void EvalOptions::validate() const {
    if (episodes < 1) throw std::invalid_argument("evaluation needs at least one episode");
}

namespace {

struct SceneScore {
    int frames = 0;
    double accuracy_sum = 0.0;
    double energy_mj = 0.0;
    double reference_mj = 0.0;
};

SceneScore score_scene(Policy& policy, SequenceConfig scene, const EnvModelParams& model,
                       const EnergyParams& energy, const RewardConfig& reward) {
    Environment env(scene, model, energy, reward);
    const EpisodeTrace trace = rollout(env, policy);

    AllKeyPolicy all_key;
    Environment ref_env(scene, model, energy, reward);
    const EpisodeTrace reference = rollout(ref_env, all_key);

    SceneScore score;
    score.frames = static_cast<int>(trace.rows.size());
    score.energy_mj = trace.total_energy_mj();
    score.reference_mj = reference.total_energy_mj();
    for (const TraceRow& row : trace.rows) score.accuracy_sum += row.accuracy;
    return score;
}

} // namespace

EvalSummary evaluate_policy(Policy& policy, const SequenceConfig& seq,
                            const EnvModelParams& model, const EnergyParams& energy,
                            const RewardConfig& reward, const EvalOptions& opts) {
    opts.validate();

    EvalSummary summary;
    summary.policy_id = policy.id();
    summary.lambda = reward.lambda;
    summary.seed = opts.seed_base;
    summary.episodes = opts.episodes;

    double accuracy_sum = 0.0;
    for (int k = 0; k < opts.episodes; ++k) {
        SequenceConfig scene = seq;
        scene.rng_seed = Rng::mix(opts.seed_base, static_cast<std::uint64_t>(k));
        const SceneScore score = score_scene(policy, scene, model, energy, reward);
        summary.frames += score.frames;
        summary.total_energy_mj += score.energy_mj;
        summary.reference_energy_mj += score.reference_mj;
        accuracy_sum += score.accuracy_sum;
    }

    summary.mean_accuracy = accuracy_sum / summary.frames;
    summary.energy_reduction = 1.0 - summary.total_energy_mj / summary.reference_energy_mj;
    return summary;
}

std::vector<EvalSummary> pareto_sweep(std::span<Policy* const> policies,
                                      const SequenceConfig& seq, const EnvModelParams& model,
                                      const EnergyParams& energy, const RewardConfig& reward,
                                      const EvalOptions& opts) {
    opts.validate();
    std::vector<EvalSummary> rows;
    rows.reserve(policies.size() * static_cast<std::size_t>(opts.episodes));
    for (Policy* policy : policies) {
        for (int k = 0; k < opts.episodes; ++k) {
            SequenceConfig scene = seq;
            scene.rng_seed = Rng::mix(opts.seed_base, static_cast<std::uint64_t>(k));
            const SceneScore score = score_scene(*policy, scene, model, energy, reward);

            EvalSummary row;
            row.policy_id = policy->id();
            row.lambda = reward.lambda;
            row.seed = scene.rng_seed;
            row.episodes = 1;
            row.frames = score.frames;
            row.mean_accuracy = score.accuracy_sum / score.frames;
            row.total_energy_mj = score.energy_mj;
            row.reference_energy_mj = score.reference_mj;
            row.energy_reduction = 1.0 - score.energy_mj / score.reference_mj;
            rows.push_back(row);
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& os, std::span<const EvalSummary> rows) {
    os << "policy,lambda,seed,episodes,frames,mean_accuracy,total_energy_mj,energy_reduction\n";
    for (const EvalSummary& r : rows) {
        os << r.policy_id << ',' << fmt_double(r.lambda) << ',' << r.seed << ',' << r.episodes
           << ',' << r.frames << ',' << fmt_double(r.mean_accuracy) << ','
           << fmt_double(r.total_energy_mj) << ',' << fmt_double(r.energy_reduction) << '\n';
    }
}

void write_cumulative_reduction_csv(std::ostream& os, std::span<const double> series) {
    os << "t,cumulative_energy_reduction\n";
    for (std::size_t t = 0; t < series.size(); ++t) {
        os << (t + 1) << ',' << fmt_double(series[t]) << '\n';
    }
}

GreedyQPolicy::GreedyQPolicy(NetParams params, std::string id, double inference_overhead_mj)
    : params_(std::move(params)), id_(std::move(id)), overhead_mj_(inference_overhead_mj) {
    if (overhead_mj_ < 0.0) throw std::invalid_argument("inference overhead must not be negative");
}

PolicyDecision GreedyQPolicy::decide(const Environment& env, int /*frame_index*/) {
    const int code = greedy_action(params_, encode(env.state()));
    return PolicyDecision{Action::from_index(code + 1), EnergyBreakdown{}};
}

std::unique_ptr<GreedyQPolicy> load_rl_policy(const std::filesystem::path& checkpoint,
                                              const EnergyParams& energy,
                                              double inference_host_s) {
    nlohmann::json meta;
    NetParams params = load_params(checkpoint, &meta);

    std::string id = "rl";
    if (meta.contains("lambda")) {
        id += ":lambda=" + fmt_double(meta["lambda"].get<double>());
    }
    const double overhead_mj = inference_host_s * energy.host.active_power_mw;
    return std::make_unique<GreedyQPolicy>(std::move(params), std::move(id), overhead_mj);
}

} // namespace ares
