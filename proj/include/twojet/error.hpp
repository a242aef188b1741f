#pragma once

#include <stdexcept>
#include <string>

namespace twojet {

/// Precondition violation: bad degree/order, mismatched ranges, invalid parameters.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative method hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The shift is (numerically) an eigenvalue, so the resolvent does not exist.
class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace twojet
