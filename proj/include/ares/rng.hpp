#pragma once

#include <cmath>
#include <cstdint>

namespace ares {

// Counter-style generator (splitmix64). Small state, cheap to fork into
// independent streams, and the output sequence depends only on the seed,
// which keeps traces reproducible across platforms and reruns.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), n > 0. Lemire's multiply-shift; the bias at
    // 64 bits is far below anything a statistical test here could see.
    std::uint32_t uniform_int(std::uint32_t n) {
        const std::uint64_t x = next_u64() >> 32;
        return static_cast<std::uint32_t>((x * static_cast<std::uint64_t>(n)) >> 32);
    }

    // Standard normal via Box-Muller. Two uniforms per draw, no cached spare,
    // so the stream position is a pure function of the call count.
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1 > 0.0 ? u1 : 0x1.0p-53));
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Derives a decorrelated seed for a substream (per-episode sequences,
    // per-policy draws, ...). mix(a, b) != mix(b, a) on purpose.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL + stream * 0xD1B54A32D192ED03ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

} // namespace ares
