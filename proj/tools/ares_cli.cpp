#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ares/config.hpp"
#include "ares/csv.hpp"
#include "ares/ddqn.hpp"
#include "ares/environment.hpp"
#include "ares/errors.hpp"
#include "ares/metrics.hpp"
#include "ares/schedulers.hpp"
#include "ares/trace.hpp"

namespace fs = std::filesystem;
using namespace ares;

namespace {

// ---------------------------------------------------------------- policies

double parse_number(const std::string& text, const std::string& spec) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError("bad number '" + text + "' in policy spec '" + spec + "'");
    }
    if (used != text.size()) {
        throw UsageError("bad number '" + text + "' in policy spec '" + spec + "'");
    }
    return value;
}

int parse_nonkey_action(const std::string& field, const std::string& spec) {
    if (field.size() == 2 && field[0] == 'a' && field[1] >= '2' && field[1] <= '4') {
        return field[1] - '0';
    }
    throw UsageError("expected a2, a3 or a4 in policy spec '" + spec + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string value_after(const std::string& field, const std::string& key,
                        const std::string& spec) {
    const std::string prefix = key + "=";
    if (field.rfind(prefix, 0) != 0) {
        throw UsageError("expected " + prefix + "<value> in policy spec '" + spec + "'");
    }
    return field.substr(prefix.size());
}

// Grammar: allkey | scan:cnstrt=X | adaptive:aK:thr=X | fixed:aK:l=N |
// random:r=X | rl:<checkpoint path>
std::unique_ptr<Policy> parse_policy(const std::string& spec, const AppConfig& cfg) {
    if (spec == "allkey") return std::make_unique<AllKeyPolicy>();

    if (spec.rfind("rl:", 0) == 0) {
        const std::string path = spec.substr(3);
        if (path.empty()) throw UsageError("rl policy needs a checkpoint path");
        return load_rl_policy(path, cfg.energy, cfg.policy_overhead_host_s);
    }

    const std::vector<std::string> parts = split(spec, ':');
    try {
        if (parts[0] == "scan" && parts.size() == 2) {
            return std::make_unique<ScanPolicy>(
                ScanConfig{parse_number(value_after(parts[1], "cnstrt", spec), spec)});
        }
        if (parts[0] == "adaptive" && parts.size() == 3) {
            AdaptiveHfsConfig c;
            c.nonkey_action = parse_nonkey_action(parts[1], spec);
            c.threshold = parse_number(value_after(parts[2], "thr", spec), spec);
            return std::make_unique<AdaptiveHfsPolicy>(c);
        }
        if (parts[0] == "fixed" && parts.size() == 3) {
            FixedIntervalConfig c;
            c.nonkey_action = parse_nonkey_action(parts[1], spec);
            const double l = parse_number(value_after(parts[2], "l", spec), spec);
            c.l = static_cast<int>(l);
            if (static_cast<double>(c.l) != l) {
                throw UsageError("interval must be an integer in policy spec '" + spec + "'");
            }
            return std::make_unique<FixedIntervalPolicy>(c);
        }
        if (parts[0] == "random" && parts.size() == 2) {
            return std::make_unique<RandomHfsPolicy>(
                RandomHfsConfig{parse_number(value_after(parts[1], "r", spec), spec), 0});
        }
    } catch (const std::domain_error& e) {
        throw UsageError(std::string(e.what()) + " in policy spec '" + spec + "'");
    }
    throw UsageError("unknown policy '" + spec + "'");
}

// ---------------------------------------------------------------- file io

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot write " + path.string());
    return os;
}

// Policy ids reuse ':' '=' '.' which are awkward in filenames.
std::string slug(const std::string& id) {
    std::string s = id;
    for (char& c : s) {
        if (c == ':' || c == '=' || c == '.' || c == '/') c = '_';
    }
    return s;
}

fs::path trace_path(const fs::path& dir, const std::string& policy_id, std::uint64_t seed) {
    return dir / "traces" / (slug(policy_id) + "__s" + std::to_string(seed) + ".csv");
}

// Reads back the total_mj column of a trace produced by this tool.
std::vector<double> read_trace_totals(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open trace " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,action,", 0) != 0) {
        throw ConfigError("unrecognized trace header in " + path.string());
    }
    std::vector<double> totals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> cols = split(line, ',');
        if (cols.size() != 9) throw ConfigError("malformed trace row in " + path.string());
        totals.push_back(std::stod(cols[7]));
    }
    if (totals.empty()) throw ConfigError("empty trace in " + path.string());
    return totals;
}

// ---------------------------------------------------------------- aggregation

struct SweepRow {
    std::string policy;
    std::string lambda;
    std::uint64_t seed = 0;
    double mean_accuracy = 0.0;
    double energy_reduction = 0.0;
};

std::vector<SweepRow> read_sweep_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open sweep results " + path.string());
    std::string line;
    if (!std::getline(in, line) ||
        line != "policy,lambda,seed,episodes,frames,mean_accuracy,total_energy_mj,"
                "energy_reduction") {
        throw ConfigError("unrecognized sweep header in " + path.string());
    }
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> cols = split(line, ',');
        if (cols.size() != 8) throw ConfigError("malformed sweep row in " + path.string());
        SweepRow r;
        r.policy = cols[0];
        r.lambda = cols[1];
        r.seed = std::stoull(cols[2]);
        r.mean_accuracy = std::stod(cols[5]);
        r.energy_reduction = std::stod(cols[7]);
        rows.push_back(r);
    }
    if (rows.empty()) throw IoError("no sweep rows in " + path.string());
    return rows;
}

// Per-policy means in first-appearance order.
void write_means_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<const SweepRow*>> groups;
    for (const SweepRow& r : rows) {
        if (groups.find(r.policy) == groups.end()) order.push_back(r.policy);
        groups[r.policy].push_back(&r);
    }
    os << "policy,lambda,seeds,mean_accuracy,mean_energy_reduction\n";
    for (const std::string& policy : order) {
        const auto& members = groups[policy];
        double acc = 0.0, red = 0.0;
        for (const SweepRow* r : members) {
            acc += r->mean_accuracy;
            red += r->energy_reduction;
        }
        const double n = static_cast<double>(members.size());
        os << policy << ',' << members.front()->lambda << ',' << members.size() << ','
           << fmt_double(acc / n) << ',' << fmt_double(red / n) << '\n';
    }
}

// ---------------------------------------------------------------- commands

struct SeedOpt {
    std::uint64_t value = 0;
    CLI::Option* opt = nullptr;

    bool given() const { return opt != nullptr && opt->count() > 0; }
};

void run_simulate(const std::string& config, const SeedOpt& seed, const std::string& policy_spec,
                  const std::string& out) {
    AppConfig cfg = load_app_config(config);
    if (seed.given()) cfg.sequence.rng_seed = seed.value;

    const std::unique_ptr<Policy> policy = parse_policy(policy_spec, cfg);
    Environment env(cfg.sequence, cfg.model, cfg.energy, cfg.reward);
    const EpisodeTrace trace = rollout(env, *policy);

    if (out.empty()) {
        write_trace_csv(std::cout, trace);
    } else {
        std::ofstream os = open_out(out);
        write_trace_csv(os, trace);
    }
}

void run_train(const std::string& config, const SeedOpt& seed, const CLI::Option* lambda_opt,
               double lambda, const std::string& out_dir) {
    AppConfig cfg = load_app_config(config);
    if (lambda_opt->count() > 0) {
        if (!(lambda >= 0.0)) throw UsageError("--lambda must be >= 0");
        cfg.reward.lambda = lambda;
    }
    if (seed.given()) cfg.training.seed = seed.value;

    SequenceConfig seq = cfg.sequence;
    seq.rng_seed = cfg.training.scene_seed;
    VideoDdqnEnv env(seq, cfg.model, cfg.energy, cfg.reward);
    const TrainConfig tc = cfg.training.to_train_config();
    const TrainResult result = train(env, tc);

    fs::create_directories(out_dir);
    nlohmann::json meta;
    meta["lambda"] = cfg.reward.lambda;
    meta["train_seed"] = tc.seed;
    meta["scene_seed"] = cfg.training.scene_seed;
    meta["episodes"] = tc.episodes;
    save_params(result.params, fs::path(out_dir) / "checkpoint.qnet", meta);

    std::ofstream log = open_out(fs::path(out_dir) / "training_log.csv");
    log << "episode,total_reward,epsilon,mean_td_error\n";
    for (const EpisodeLog& e : result.log) {
        log << e.episode << ',' << fmt_double(e.total_reward) << ',' << fmt_double(e.epsilon)
            << ',' << fmt_double(e.mean_td_error) << '\n';
    }
}

void run_evaluate(const std::string& config, const SeedOpt& seed, const std::string& checkpoint,
                  const std::string& out_dir) {
    AppConfig cfg = load_app_config(config);
    if (seed.given()) cfg.evaluation.seed_base = seed.value;

    const std::unique_ptr<GreedyQPolicy> policy =
        load_rl_policy(checkpoint, cfg.energy, cfg.policy_overhead_host_s);

    const EvalSummary summary = evaluate_policy(*policy, cfg.sequence, cfg.model, cfg.energy,
                                                cfg.reward, cfg.evaluation);
    std::ofstream os = open_out(fs::path(out_dir) / "summary.csv");
    write_sweep_csv(os, std::vector<EvalSummary>{summary});

    AllKeyPolicy all_key;
    for (int k = 0; k < cfg.evaluation.episodes; ++k) {
        SequenceConfig scene = cfg.sequence;
        scene.rng_seed = Rng::mix(cfg.evaluation.seed_base, static_cast<std::uint64_t>(k));

        Environment env(scene, cfg.model, cfg.energy, cfg.reward);
        const EpisodeTrace trace = rollout(env, *policy);
        std::ofstream ts = open_out(trace_path(out_dir, policy->id(), scene.rng_seed));
        write_trace_csv(ts, trace);

        Environment ref_env(scene, cfg.model, cfg.energy, cfg.reward);
        const EpisodeTrace ref = rollout(ref_env, all_key);
        std::ofstream rs = open_out(trace_path(out_dir, all_key.id(), scene.rng_seed));
        write_trace_csv(rs, ref);
    }
}

void run_sweep(const std::string& config, const SeedOpt& seed,
               const std::vector<std::string>& checkpoints, const std::string& out_dir) {
    AppConfig cfg = load_app_config(config);
    if (seed.given()) cfg.evaluation.seed_base = seed.value;

    std::vector<std::unique_ptr<Policy>> owned;
    owned.push_back(std::make_unique<AllKeyPolicy>());
    for (std::unique_ptr<Policy>& p : build_policy_grid(cfg.policies)) {
        owned.push_back(std::move(p));
    }
    for (const std::string& ckpt : checkpoints) {
        if (!fs::exists(ckpt)) throw ConfigError("checkpoint not found: " + ckpt);
        owned.push_back(load_rl_policy(ckpt, cfg.energy, cfg.policy_overhead_host_s));
    }

    // all-key reference rollout per scene, written once and reused
    const int scenes = cfg.evaluation.episodes;
    AllKeyPolicy all_key;
    std::vector<EpisodeTrace> refs;
    for (int k = 0; k < scenes; ++k) {
        SequenceConfig scene = cfg.sequence;
        scene.rng_seed = Rng::mix(cfg.evaluation.seed_base, static_cast<std::uint64_t>(k));
        Environment env(scene, cfg.model, cfg.energy, cfg.reward);
        refs.push_back(rollout(env, all_key));
    }

    std::vector<EvalSummary> rows;
    for (const std::unique_ptr<Policy>& policy : owned) {
        for (int k = 0; k < scenes; ++k) {
            SequenceConfig scene = cfg.sequence;
            scene.rng_seed = Rng::mix(cfg.evaluation.seed_base, static_cast<std::uint64_t>(k));
            Environment env(scene, cfg.model, cfg.energy, cfg.reward);
            const EpisodeTrace trace = rollout(env, *policy);

            EvalSummary row;
            row.policy_id = policy->id();
            row.lambda = cfg.reward.lambda;
            row.seed = scene.rng_seed;
            row.episodes = 1;
            row.frames = static_cast<int>(trace.rows.size());
            double acc = 0.0;
            for (const TraceRow& r : trace.rows) acc += r.accuracy;
            row.mean_accuracy = acc / row.frames;
            row.total_energy_mj = trace.total_energy_mj();
            row.reference_energy_mj = refs[static_cast<std::size_t>(k)].total_energy_mj();
            row.energy_reduction = energy_reduction(trace, refs[static_cast<std::size_t>(k)]);
            rows.push_back(row);

            std::ofstream ts = open_out(trace_path(out_dir, policy->id(), scene.rng_seed));
            write_trace_csv(ts, trace);
        }
    }

    std::ofstream os = open_out(fs::path(out_dir) / "sweep.csv");
    write_sweep_csv(os, rows);

    std::vector<SweepRow> lite;
    for (const EvalSummary& r : rows) {
        lite.push_back(SweepRow{r.policy_id, fmt_double(r.lambda), r.seed, r.mean_accuracy,
                                r.energy_reduction});
    }
    std::ofstream ms = open_out(fs::path(out_dir) / "means.csv");
    write_means_csv(ms, lite);
}

void run_report(const std::string& in_dir, const std::string& out_dir) {
    const fs::path in = in_dir;
    const fs::path out = out_dir.empty() ? in : fs::path(out_dir);

    const std::vector<SweepRow> rows = read_sweep_csv(in / "sweep.csv");
    std::ofstream table = open_out(out / "accuracy_vs_reduction.csv");
    write_means_csv(table, rows);

    // mean AECR series per policy, averaged across its scenes
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::uint64_t>> seeds;
    for (const SweepRow& r : rows) {
        if (seeds.find(r.policy) == seeds.end()) order.push_back(r.policy);
        seeds[r.policy].push_back(r.seed);
    }

    std::ofstream aecr = open_out(out / "aecr.csv");
    aecr << "policy,t,mean_cumulative_energy_reduction\n";
    for (const std::string& policy : order) {
        std::vector<double> mean_series;
        const std::vector<std::uint64_t>& policy_seeds = seeds[policy];
        for (std::uint64_t s : policy_seeds) {
            const std::vector<double> totals = read_trace_totals(trace_path(in, policy, s));
            const std::vector<double> ref = read_trace_totals(trace_path(in, "allkey", s));
            if (ref.size() != totals.size()) {
                throw ConfigError("trace length mismatch for " + policy);
            }
            if (mean_series.empty()) mean_series.assign(totals.size(), 0.0);
            if (mean_series.size() != totals.size()) {
                throw ConfigError("trace length mismatch for " + policy);
            }
            double used = 0.0, base = 0.0;
            for (std::size_t t = 0; t < totals.size(); ++t) {
                used += totals[t];
                base += ref[t];
                mean_series[t] += 1.0 - used / base;
            }
        }
        for (std::size_t t = 0; t < mean_series.size(); ++t) {
            aecr << policy << ',' << (t + 1) << ','
                 << fmt_double(mean_series[t] / static_cast<double>(policy_seeds.size())) << '\n';
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"energy-aware video capture scheduling toolkit"};
    app.require_subcommand(1);

    std::string config, policy_spec, out, checkpoint, in_dir;
    std::vector<std::string> checkpoints;
    double lambda = 0.0;
    SeedOpt seed;

    CLI::App* sim = app.add_subcommand("simulate", "roll one policy over one scene");
    sim->add_option("--config", config, "json config path")->required();
    sim->add_option("--policy", policy_spec, "policy spec, e.g. fixed:a2:l=1")->required();
    sim->add_option("--seed", seed.value, "override the scene seed");
    sim->add_option("--out", out, "trace csv path (default: stdout)");

    CLI::App* trn = app.add_subcommand("train", "train the value network");
    trn->add_option("--config", config, "json config path")->required();
    CLI::Option* lambda_opt = trn->add_option("--lambda", lambda, "override reward lambda");
    trn->add_option("--seed", seed.value, "override the training seed");
    trn->add_option("--out", out, "output directory")->required();

    CLI::App* evl = app.add_subcommand("evaluate", "score a checkpoint on the eval scenes");
    evl->add_option("--config", config, "json config path")->required();
    evl->add_option("--checkpoint", checkpoint, "trained checkpoint path")->required();
    evl->add_option("--seed", seed.value, "override the eval seed base");
    evl->add_option("--out", out, "output directory")->required();

    CLI::App* swp = app.add_subcommand("sweep", "evaluate the whole baseline grid");
    swp->add_option("--config", config, "json config path")->required();
    swp->add_option("--checkpoint", checkpoints, "trained checkpoints to include");
    swp->add_option("--seed", seed.value, "override the eval seed base");
    swp->add_option("--out", out, "output directory")->required();

    CLI::App* rpt = app.add_subcommand("report", "aggregate sweep output");
    rpt->add_option("--in", in_dir, "sweep output directory")->required();
    rpt->add_option("--out", out, "report directory (default: --in)");
    rpt->add_option("--config", config, "accepted for symmetry; unused");
    rpt->add_option("--seed", seed.value, "accepted for symmetry; unused");

    try {
        app.parse(argc, argv);
        // the same SeedOpt backs every subcommand; point it at the one that ran
        seed.opt = app.get_subcommands().front()->get_option("--seed");

        if (sim->parsed()) run_simulate(config, seed, policy_spec, out);
        if (trn->parsed()) run_train(config, seed, lambda_opt, lambda, out);
        if (evl->parsed()) run_evaluate(config, seed, checkpoint, out);
        if (swp->parsed()) run_sweep(config, seed, checkpoints, out);
        if (rpt->parsed()) run_report(in_dir, out);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return 4;
    }
}
