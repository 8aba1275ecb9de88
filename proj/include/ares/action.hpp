#pragma once

#include "ares/energy.hpp"

namespace ares {

// The four capture actions. Index 1 recaptures a full-resolution key frame and
// reruns the detector; indices 2..4 capture at 1/2, 1/4, 1/8 linear scale and
// only propagate results through the flow estimator.
struct Action {
    int index = 1; // 1..4

    static Action from_index(int i);
    static constexpr int count() { return 4; }

    bool is_key() const { return index == 1; }
    int linear_downsample() const { return 1 << (index - 1); }
    double pixel_ratio() const {
        const double ld = static_cast<double>(linear_downsample());
        return 1.0 / (ld * ld);
    }
    // Two-bit history code: a1=00, a2=01, a3=10, a4=11.
    int code() const { return index - 1; }

    FrameSpec apply(const FrameSpec& base) const;

    bool operator==(const Action&) const = default;
};

} // namespace ares
