#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "ares/action.hpp"
#include "ares/environment.hpp"
#include "ares/rng.hpp"

namespace ares {

// What a scheduling policy hands back for one frame. extra_energy covers work
// the policy itself spent beyond the selected capture (probe rounds, inference
// cost); it is zero for the simple heuristics.
struct PolicyDecision {
    Action action;
    EnergyBreakdown extra_energy;
};

// Frame-by-frame scheduler interface. frame_index counts decided frames from
// 0; the initial key frame handled by Environment::reset() is not included.
class Policy {
  public:
    virtual ~Policy() = default;
    virtual void begin_episode(std::uint64_t /*sequence_seed*/) {}
    virtual PolicyDecision decide(const Environment& env, int frame_index) = 0;
    virtual std::string id() const = 0;

    // Per-frame cost of running the policy itself, charged to the host stage.
    virtual double inference_overhead_mj() const { return 0.0; }
};

struct ScanConfig {
    double cnstrt = 0.2; // largest acceptable accuracy drop vs a full key frame

    void validate() const;
};

struct AdaptiveHfsConfig {
    double threshold = 10.0; // accumulated-flow trigger for a new key frame
    int nonkey_action = 4;   // 2..4

    void validate() const;
};

struct FixedIntervalConfig {
    int l = 1;             // non-key frames between consecutive key frames
    int nonkey_action = 4; // 2..4

    void validate() const;
};

struct RandomHfsConfig {
    double key_prob = 0.7; // remaining mass is split evenly over a2..a4
    std::uint64_t rng_seed = 0;

    void validate() const;
};

// Probes a4 -> a3 -> a2 -> a1 and keeps the first action whose estimated
// accuracy drop relative to a1 is within cnstrt. Every rejected probe is a
// real capture, so its full frame energy lands in extra_energy.
PolicyDecision downsampling_scan(const std::function<double(const Action&)>& estimate,
                                 const std::function<EnergyBreakdown(const Action&)>& probe_energy,
                                 const ScanConfig& cfg);

// Takes a key frame exactly when accumulated flow exceeds the threshold.
PolicyDecision adaptive_hfs(double flow_magnitude, const AdaptiveHfsConfig& cfg);

// Takes a key frame every l+1 frames, starting at frame 0.
PolicyDecision fixed_interval_hfs(int frame_index, const FixedIntervalConfig& cfg);

// Takes a key frame with probability key_prob, otherwise one of a2..a4
// uniformly. Consumes exactly one draw from the generator per call.
PolicyDecision random_hfs(Rng& rng, const RandomHfsConfig& cfg);

class AllKeyPolicy final : public Policy {
  public:
    PolicyDecision decide(const Environment&, int) override;
    std::string id() const override { return "allkey"; }
};

class ScanPolicy final : public Policy {
  public:
    explicit ScanPolicy(const ScanConfig& cfg);
    PolicyDecision decide(const Environment& env, int frame_index) override;
    std::string id() const override;

  private:
    ScanConfig cfg_;
};

class AdaptiveHfsPolicy final : public Policy {
  public:
    explicit AdaptiveHfsPolicy(const AdaptiveHfsConfig& cfg);
    PolicyDecision decide(const Environment& env, int frame_index) override;
    std::string id() const override;

  private:
    AdaptiveHfsConfig cfg_;
};

class FixedIntervalPolicy final : public Policy {
  public:
    explicit FixedIntervalPolicy(const FixedIntervalConfig& cfg);
    PolicyDecision decide(const Environment& env, int frame_index) override;
    std::string id() const override;

  private:
    FixedIntervalConfig cfg_;
};

class RandomHfsPolicy final : public Policy {
  public:
    explicit RandomHfsPolicy(const RandomHfsConfig& cfg);
    void begin_episode(std::uint64_t sequence_seed) override;
    PolicyDecision decide(const Environment& env, int frame_index) override;
    std::string id() const override;

  private:
    RandomHfsConfig cfg_;
    Rng rng_;
};

} // namespace ares
