#pragma once

#include <stdexcept>
#include <string>

namespace ares {

// Error families the CLI maps onto distinct exit codes: usage mistakes (1),
// semantically invalid configuration or data (2), filesystem trouble (3).
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ares
