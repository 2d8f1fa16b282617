#include "multient/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "multient/error.hpp"
#include "multient/model.hpp"

namespace multient {
namespace {

constexpr double kClampSlack = 1e-12;

void require_block(int n, int minimum) {
  if (n < minimum) {
    throw ConfigError("block size must be >= " + std::to_string(minimum) + ", got " +
                      std::to_string(n));
  }
}

template <typename Matrix>
ModeSpectrum spectrum_of(const Matrix& F) {
  const auto n = F.rows();
  if (n == 0 || F.cols() != n) throw ConfigError("correlation matrix must be square and non-empty");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(F);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed on " + std::to_string(n) + "x" + std::to_string(n) +
                         " correlation matrix");
  }
  const auto& evals = solver.eigenvalues();
  const auto& evecs = solver.eigenvectors();
  const double residual_limit = 1e-12 * static_cast<double>(n);

  ModeSpectrum out;
  out.values.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    const double residual = (F * evecs.col(i) - evals(i) * evecs.col(i)).norm();
    if (residual > residual_limit) {
      std::ostringstream msg;
      msg << "eigenpair residual " << residual << " exceeds " << residual_limit;
      throw NumericalError(msg.str());
    }
    double v = evals(i);
    if (v < -kClampSlack || v > 1.0 + kClampSlack) {
      std::ostringstream msg;
      msg << "correlation eigenvalue " << v << " outside [0, 1]";
      throw NumericalError(msg.str());
    }
    out.values.push_back(std::clamp(v, 0.0, 1.0));
  }
  return out;
}

}  // namespace

std::string_view to_string(GmConvention c) {
  return c == GmConvention::PaperEigenvalue ? "paper" : "strict";
}

GmConvention parse_convention(std::string_view text) {
  if (text == "paper") return GmConvention::PaperEigenvalue;
  if (text == "strict") return GmConvention::StrictProduct;
  throw ConfigError("unknown convention '" + std::string(text) + "' (expected paper|strict)");
}

double correlation_element(int m, double alpha) {
  if (m < 0) throw ConfigError("site separation must be >= 0");
  if (m == 0) return 0.5;
  if (m % 2 == 0) return 0.0;
  const double md = static_cast<double>(m);
  if (alpha < kCriticalAlpha) {
    // sin(m pi / 2) = +-1 for odd m
    const double sign = ((m - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign / (md * kPi);
  }
  return std::sin(md * std::asin(1.0 / alpha)) / (md * kPi);
}

CorrelationMatrix::CorrelationMatrix(int n, double alpha) : alpha_(alpha) {
  require_block(n, 1);
  std::vector<double> row(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) row[static_cast<std::size_t>(m)] = correlation_element(m, alpha);
  entries_.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) entries_(i, j) = row[static_cast<std::size_t>(std::abs(i - j))];
  }
}

double ModeSpectrum::largest_state_weight() const {
  double w = 1.0;
  for (double v : values) w *= std::max(v, 1.0 - v);
  return w;
}

ModeSpectrum mode_spectrum(const CorrelationMatrix& F) { return spectrum_of(F.matrix()); }

ModeSpectrum mode_spectrum(const Eigen::MatrixXcd& F) { return spectrum_of(F); }

double nth_order_gm(int n, double alpha, GmConvention convention) {
  require_block(n, 2);
  const ModeSpectrum s = mode_spectrum(CorrelationMatrix(n, alpha));
  return convention == GmConvention::PaperEigenvalue ? 1.0 - s.largest()
                                                     : 1.0 - s.largest_state_weight();
}

double closed_form_gm(int n, double alpha) {
  const bool low = alpha < kCriticalAlpha;
  switch (n) {
    case 2:
      return low ? 0.5 - 1.0 / kPi : 0.5 - 1.0 / (kPi * alpha);
    case 3:
      return low ? 0.5 - std::sqrt(2.0) / kPi : 0.5 - std::sqrt(2.0) / (kPi * alpha);
    case 4: {
      if (low) return 0.5 - (1.0 + std::sqrt(13.0)) / (3.0 * kPi);
      const double a3 = alpha * alpha * alpha;
      return 0.5 - 1.0 / (kPi * alpha) +
             (2.0 - std::sqrt(4.0 + 9.0 * a3 * alpha)) / (3.0 * kPi * a3);
    }
    default:
      throw ConfigError("closed forms exist only for n in {2, 3, 4}, got " + std::to_string(n));
  }
}

double asymptotic_constant(int n) {
  require_block(n, 2);
  // Any alpha in [0, 1) gives the same matrix.
  return mode_spectrum(CorrelationMatrix(n, 0.0)).largest() - 0.5;
}

double ggm_infinite(double alpha, int n_max, GmConvention convention) {
  require_block(n_max, 2);
  double best = 1.0;
  for (int n = 2; n <= n_max; ++n) best = std::min(best, nth_order_gm(n, alpha, convention));
  return best;
}

}  // namespace multient
