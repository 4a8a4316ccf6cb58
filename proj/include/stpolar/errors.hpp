#pragma once

#include <stdexcept>
#include <string>

namespace stpolar {

// Shape/length violations (vector not a power of two, matrix mismatch, ...).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Index or count outside its admissible interval.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Value outside the mathematical domain of an operation (negative SNR, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Invalid experiment/code configuration.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical routine failed and the failure must not pass silently.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace stpolar
