#pragma once

#include <string>

namespace ares {

// Shortest round-trip decimal form of a double (std::to_chars), so CSV output
// is locale-independent, loss-free, and byte-stable across reruns.
std::string fmt_double(double v);

} // namespace ares
