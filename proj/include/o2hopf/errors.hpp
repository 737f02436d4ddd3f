#pragma once

#include <stdexcept>
#include <string>

namespace o2hopf {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A resolvent/homological 2x2 solve hit a (near-)singular matrix; for
// admissible configurations this cannot happen, so it flags a bad input.
struct SingularOperatorError : NumericalError {
    using NumericalError::NumericalError;
};

struct InstabilityError : NumericalError {
    double time;
    InstabilityError(const std::string& msg, double t) : NumericalError(msg), time(t) {}
};

}  // namespace o2hopf
