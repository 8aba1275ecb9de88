#include "ares/schedulers.hpp"

#include <stdexcept>

#include "ares/csv.hpp"

namespace ares {

namespace {

void check_nonkey_action(int idx) {
    if (idx < 2 || idx > 4) throw std::domain_error("nonkey_action must be in 2..4");
}

} // namespace

void ScanConfig::validate() const {
    if (!(cnstrt >= 0.0) || !(cnstrt <= 1.0)) {
        throw std::domain_error("cnstrt must be in [0, 1]");
    }
}

void AdaptiveHfsConfig::validate() const {
    if (!(threshold >= 0.0)) throw std::domain_error("threshold must be >= 0");
    check_nonkey_action(nonkey_action);
}

void FixedIntervalConfig::validate() const {
    if (l < 1) throw std::domain_error("l must be >= 1");
    check_nonkey_action(nonkey_action);
}

void RandomHfsConfig::validate() const {
    if (!(key_prob >= 0.0) || !(key_prob <= 1.0)) {
        throw std::domain_error("key_prob must be in [0, 1]");
    }
}

PolicyDecision downsampling_scan(const std::function<double(const Action&)>& estimate,
                                 const std::function<EnergyBreakdown(const Action&)>& probe_energy,
                                 const ScanConfig& cfg) {
    cfg.validate();
    PolicyDecision out;
    const double best = estimate(Action::from_index(1));
    for (int idx = 4; idx >= 1; --idx) {
        const Action a = Action::from_index(idx);
        const double drop = best - estimate(a);
        if (drop <= cfg.cnstrt) {
            out.action = a;
            return out;
        }
        out.extra_energy += probe_energy(a); // probed, rejected, paid for
    }
    // a1 has zero drop by construction, so the loop always returns
    throw std::logic_error("downsampling_scan failed to select an action");
}

PolicyDecision adaptive_hfs(double flow_magnitude, const AdaptiveHfsConfig& cfg) {
    cfg.validate();
    PolicyDecision out;
    out.action = Action::from_index(flow_magnitude > cfg.threshold ? 1 : cfg.nonkey_action);
    return out;
}

PolicyDecision fixed_interval_hfs(int frame_index, const FixedIntervalConfig& cfg) {
    cfg.validate();
    if (frame_index < 0) throw std::domain_error("frame_index must be >= 0");
    PolicyDecision out;
    out.action =
        Action::from_index(frame_index % (cfg.l + 1) == 0 ? 1 : cfg.nonkey_action);
    return out;
}

PolicyDecision random_hfs(Rng& rng, const RandomHfsConfig& cfg) {
    cfg.validate();
    PolicyDecision out;
    const double u = rng.uniform();
    if (u < cfg.key_prob || cfg.key_prob >= 1.0) {
        out.action = Action::from_index(1);
        return out;
    }
    // remap the leftover mass onto a2..a4 in equal slices
    const int slot = static_cast<int>(3.0 * (u - cfg.key_prob) / (1.0 - cfg.key_prob));
    out.action = Action::from_index(2 + std::min(slot, 2));
    return out;
}

PolicyDecision AllKeyPolicy::decide(const Environment&, int) {
    PolicyDecision out;
    out.action = Action::from_index(1);
    return out;
}

ScanPolicy::ScanPolicy(const ScanConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

PolicyDecision ScanPolicy::decide(const Environment& env, int) {
    return downsampling_scan([&](const Action& a) { return env.estimate_accuracy(a); },
                             [&](const Action& a) { return env.action_energy(a); }, cfg_);
}

std::string ScanPolicy::id() const { return "scan:cnstrt=" + fmt_double(cfg_.cnstrt); }

AdaptiveHfsPolicy::AdaptiveHfsPolicy(const AdaptiveHfsConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

PolicyDecision AdaptiveHfsPolicy::decide(const Environment& env, int) {
    return adaptive_hfs(env.flow_magnitude(), cfg_);
}

std::string AdaptiveHfsPolicy::id() const {
    return "adaptive:a" + std::to_string(cfg_.nonkey_action) + ":thr=" + fmt_double(cfg_.threshold);
}

FixedIntervalPolicy::FixedIntervalPolicy(const FixedIntervalConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
}

PolicyDecision FixedIntervalPolicy::decide(const Environment&, int frame_index) {
    return fixed_interval_hfs(frame_index, cfg_);
}

std::string FixedIntervalPolicy::id() const {
    return "fixed:a" + std::to_string(cfg_.nonkey_action) + ":l=" + std::to_string(cfg_.l);
}

RandomHfsPolicy::RandomHfsPolicy(const RandomHfsConfig& cfg) : cfg_(cfg), rng_(cfg.rng_seed) {
    cfg_.validate();
}

void RandomHfsPolicy::begin_episode(std::uint64_t sequence_seed) {
    rng_ = Rng(Rng::mix(cfg_.rng_seed, sequence_seed));
}

PolicyDecision RandomHfsPolicy::decide(const Environment&, int) { return random_hfs(rng_, cfg_); }

std::string RandomHfsPolicy::id() const { return "random:r=" + fmt_double(cfg_.key_prob); }

} // namespace ares
