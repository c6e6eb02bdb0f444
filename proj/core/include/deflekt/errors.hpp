#pragma once

#include <stdexcept>
#include <string>

namespace deflekt {

/// Input that violates a documented precondition or type invariant.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative method failed to converge, or an integrator gave up.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace deflekt
