#pragma once

#include <stdexcept>
#include <string>

namespace fuzzyvis {

// Invalid argument or precondition violation detected at an API boundary.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent run configuration. Maps to process exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical breakdown (eigensolver failure, degenerate input). Exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested construction exists mathematically but is not provided here.
struct NotImplementedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fuzzyvis
