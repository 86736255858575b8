#pragma once

#include <stdexcept>

namespace brcsmud {

// CLI exit-code mapping: ConfigError -> 1, IoError -> 2, anything else -> 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace brcsmud
