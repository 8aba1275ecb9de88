#include "ares/action.hpp"

#include <algorithm>
#include <stdexcept>

namespace ares {

Action Action::from_index(int i) {
    if (i < 1 || i > 4) {
        throw std::domain_error("action index must be in 1..4");
    }
    return Action{i};
}

FrameSpec Action::apply(const FrameSpec& base) const {
    const int ld = linear_downsample();
    FrameSpec f;
    f.width_px = std::max(1, base.width_px / ld);
    f.height_px = std::max(1, base.height_px / ld);
    return f;
}

} // namespace ares
