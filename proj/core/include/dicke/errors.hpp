// errors.hpp - Error types raised by the dicke library

#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

// Parameter outside its documented domain. Maps to CLI exit code 2.
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Base for every numerical failure. Maps to CLI exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoConvergence : NumericalError {
    using NumericalError::NumericalError;
};

struct BranchCrossing : NumericalError {
    using NumericalError::NumericalError;
};

struct QuadratureFailure : NumericalError {
    using NumericalError::NumericalError;
};

struct NotDiverging : NumericalError {
    NotDiverging(const std::string& what, double ratio_)
        : NumericalError(what), ratio(ratio_) {}
    double ratio; // n_a(eps_min) / n_a(eps_max)
};

struct LyapunovSingular : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace dicke
