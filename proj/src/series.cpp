#include "multient/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "multient/error.hpp"

namespace multient {

bool SweepSeries::flagged(double alpha) const {
  return std::find(discontinuities.begin(), discontinuities.end(), alpha) != discontinuities.end();
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("grid step must be positive");
  if (!(hi >= lo)) throw ConfigError("grid maximum must not be below its minimum");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-3)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + static_cast<double>(i) * step;
  return grid;
}

std::vector<double> finite_difference(std::span<const double> grid, std::span<const double> values) {
  if (grid.size() != values.size()) throw ConfigError("grid and values differ in length");
  const std::size_t n = grid.size();
  std::vector<double> d(n, std::numeric_limits<double>::quiet_NaN());
  if (n < 2) return d;
  d[0] = (values[1] - values[0]) / (grid[1] - grid[0]);
  d[n - 1] = (values[n - 1] - values[n - 2]) / (grid[n - 1] - grid[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d[i] = (values[i + 1] - values[i - 1]) / (grid[i + 1] - grid[i - 1]);
  }
  return d;
}

std::vector<double> detect_discontinuities(std::span<const double> grid,
                                           std::span<const double> values,
                                           double threshold_factor) {
  if (grid.size() != values.size()) throw ConfigError("grid and values differ in length");
  const std::size_t n = values.size();
  if (n < 5) throw ConfigError("discontinuity detection needs at least 5 points");
  if (!(threshold_factor > 0.0)) throw ConfigError("threshold factor must be positive");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) return {};
  const double floor = 1e-8 * (hi - lo);

  // second[i] belongs to grid point i; endpoints have none.
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> second(n, nan);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    second[i] = std::abs(values[i + 1] - 2.0 * values[i] + values[i - 1]);
  }

  const std::size_t half = kMedianWindow / 2;
  std::vector<std::size_t> hits;
  std::vector<double> window;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::isnan(second[i])) continue;
    window.clear();
    const std::size_t from = i > half ? i - half : 0;
    const std::size_t to = std::min(n - 1, i + half);
    for (std::size_t j = from; j <= to; ++j) {
      if (!std::isnan(second[j])) window.push_back(second[j]);
    }
    auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
    std::nth_element(window.begin(), mid, window.end());
    const double median = std::max(*mid, floor);
    if (second[i] > threshold_factor * median) hits.push_back(i);
  }

  std::vector<double> out;
  std::size_t k = 0;
  while (k < hits.size()) {
    std::size_t best = hits[k];
    std::size_t last = hits[k];
    ++k;
    while (k < hits.size() && hits[k] - last <= static_cast<std::size_t>(kMergeSteps)) {
      // A step between two grid points gives two equal jumps; the later point wins.
      if (second[hits[k]] >= second[best] * (1.0 - 1e-6)) best = hits[k];
      last = hits[k];
      ++k;
    }
    out.push_back(grid[best]);
  }
  return out;
}

void analyse(SweepSeries& series, double threshold_factor) {
  series.derivative = finite_difference(series.grid, series.values);
  series.discontinuities = series.values.size() >= 5
                               ? detect_discontinuities(series.grid, series.values, threshold_factor)
                               : std::vector<double>{};
}

ScalingFit fit_power_law(std::vector<ScalingPoint> points, double alpha_c) {
  if (points.size() < 3) {
    throw ConfigError("power-law fit needs at least 3 points, got " + std::to_string(points.size()));
  }
  for (const ScalingPoint& p : points) {
    if (!(p.alpha > alpha_c) || !(p.size > 0.0)) {
      std::ostringstream msg;
      msg << "scaling point (N=" << p.size << ", alpha=" << p.alpha
          << ") must have N > 0 and alpha above alpha_c=" << alpha_c;
      throw ConfigError(msg.str());
    }
  }
  // Fixed summation order makes the result independent of input order.
  std::sort(points.begin(), points.end(), [](const ScalingPoint& a, const ScalingPoint& b) {
    return a.size < b.size || (a.size == b.size && a.alpha < b.alpha);
  });

  const double count = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const ScalingPoint& p : points) {
    mx += std::log(p.size);
    my += std::log(p.alpha - alpha_c);
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const ScalingPoint& p : points) {
    const double dx = std::log(p.size) - mx;
    const double dy = std::log(p.alpha - alpha_c) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw ConfigError("power-law fit needs at least two distinct chain lengths");

  const double slope = sxy / sxx;
  ScalingFit fit;
  fit.alpha_c = alpha_c;
  fit.exponent = -slope;
  fit.prefactor = std::exp(my - slope * mx);
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  if (!std::isfinite(fit.exponent)) throw NumericalError("power-law exponent is not finite");
  return fit;
}

}  // namespace multient
