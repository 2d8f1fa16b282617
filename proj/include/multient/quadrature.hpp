#pragma once

#include <functional>

namespace multient {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

/// Adaptive 15-point Gauss-Kronrod integration of a smooth integrand on
/// [lo, hi]. Throws NumericalError (carrying the achieved estimate) when the
/// absolute error estimate stays above `abs_tol`.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           double abs_tol = 1e-10);

}  // namespace multient
