#pragma once

#include <Eigen/Dense>

#include <span>

#include "multient/series.hpp"

namespace multient {

/// Nearest-neighbour reduced density matrix in the sz basis
/// |uu>, |ud>, |du>, |dd>:
///   [ u 0 0 0 ]
///   [ 0 z y 0 ]
///   [ 0 y z 0 ]
///   [ 0 0 0 u ]
struct TwoSiteState {
  double u = 0.25;
  double z = 0.25;
  double y = 0.0;

  Eigen::Matrix4cd matrix() const;
  /// Throws NumericalError unless trace is 1 and the matrix is positive
  /// semidefinite to within 1e-12.
  void validate() const;
};

/// u = 1/4 - f^2, z = 1/4 + f^2, y = f with f the nearest-neighbour
/// correlation function.
TwoSiteState two_site_rdm(double alpha);

/// Wootters concurrence from the eigenvalues of
/// sqrt( sqrt(rho) (sy x sy) rho^* (sy x sy) sqrt(rho) ).
double concurrence(const TwoSiteState& state);
/// Same quantity for the general 4x4 density matrix.
double concurrence(const Eigen::Matrix4cd& rho);

/// X-state shortcut 2 max(0, |y| - u).
double concurrence_xstate(const TwoSiteState& state);

/// C(alpha) on the grid with derivative and kink flags.
SweepSeries concurrence_sweep(std::span<const double> alpha_grid,
                              double threshold_factor = kDefaultThresholdFactor);

/// alpha* > 1 at which the concurrence vanishes, by bisection on
/// |y| - u over [1, 3] to 1e-12. Closed form: 2 (sqrt 2 + 1) / pi.
double concurrence_vanishing_point();

/// Location quoted in the literature for the second concurrence kink (pi/2).
/// Reported next to the computed root; it is not the root of C(alpha) = 0.
inline constexpr double kQuotedSecondKink = 1.5707963267948966;

}  // namespace multient
