#pragma once

#include <span>
#include <vector>

namespace multient {

inline constexpr double kDefaultThresholdFactor = 50.0;
inline constexpr int kMedianWindow = 21;
inline constexpr int kMergeSteps = 3;

/// An observable sampled on a strictly increasing parameter grid.
/// Invalid grid points carry NaN values.
struct SweepSeries {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> derivative;       // same length as values
  std::vector<double> discontinuities;  // sorted grid locations

  /// True iff `alpha` is (one of) the flagged discontinuity grid points.
  bool flagged(double alpha) const;
};

/// Strictly increasing uniform grid lo, lo + step, ..., up to hi (inclusive
/// within step/1000). Points are lo + i*step, not accumulated sums.
std::vector<double> make_grid(double lo, double hi, double step);

/// Central differences inside, one-sided at the ends.
std::vector<double> finite_difference(std::span<const double> grid, std::span<const double> values);

/// Flags points where |second difference| exceeds threshold_factor times the
/// median |second difference| in a 21-point window. The median is floored at
/// 1e-8 of the value range so that exactly flat stretches are not flagged on
/// rounding noise. Flags within 3 grid steps are merged to the largest jump;
/// near-equal jumps (relative 1e-6) resolve to the later grid point.
/// Requires >= 5 points.
std::vector<double> detect_discontinuities(std::span<const double> grid,
                                           std::span<const double> values,
                                           double threshold_factor = kDefaultThresholdFactor);

/// Fills derivative and discontinuities from grid and values.
void analyse(SweepSeries& series, double threshold_factor = kDefaultThresholdFactor);

struct ScalingPoint {
  double size;   // N
  double alpha;  // pseudo-critical point alpha_N
};

/// alpha_N ~ alpha_c + prefactor * N^(-exponent), fitted on a log-log line.
struct ScalingFit {
  double alpha_c = 1.0;
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
};

/// Least squares through (ln N, ln(alpha_N - alpha_c)). Requires >= 3 points,
/// every alpha_N > alpha_c and at least two distinct N.
ScalingFit fit_power_law(std::vector<ScalingPoint> points, double alpha_c = 1.0);

}  // namespace multient
