#pragma once

#include <stdexcept>

namespace demonsim {

// Precondition violations: mismatched dimensions, malformed inputs.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The operation would exceed its supported combinatorial size.
class SizeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical-consistency failures: non-vanishing imaginary parts, broken
// normalization, non-PSD Gram spectra.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace demonsim
