#pragma once

#include <stdexcept>
#include <string>

namespace multient {

/// Invalid parameters or configuration. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to reach its accuracy contract (eigensolver
/// stagnation, quadrature non-convergence, invariant violation beyond
/// rounding). The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace multient
