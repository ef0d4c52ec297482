#pragma once

#include <stdexcept>
#include <string>

namespace polydtn {

/// Bad caller input: invalid parameters, malformed networks or files.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Solver or quadrature breakdown (singular pivot, non-convergence).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polydtn
