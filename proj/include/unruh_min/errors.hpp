#pragma once

#include <stdexcept>
#include <string>

namespace unruh_min {

/// Input rejected by a precondition check.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coefficients that do not describe a positive semidefinite state.
class UnphysicalState : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Operation requested outside the dynamical regime it is defined for.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace unruh_min
