#pragma once

#include <stdexcept>
#include <string>

namespace singtheta {

// Malformed or unsupported input (CLI exit code 2).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation needs coefficients outside the stored truncation range
// (CLI exit code 3).
struct bound_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace singtheta
