#pragma once

#include <stdexcept>

namespace nirp {

/// Malformed configuration documents; the message names the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed data files; the message carries path and line context.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace nirp
