#pragma once

#include <stdexcept>

namespace page {

// Out-of-range or inconsistent parameter values; messages name the offending field.
struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Array dimension mismatches between operands.
struct shape_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// File system and codec failures.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace page
