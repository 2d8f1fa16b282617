#include "multient/twosite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <sstream>

#include "multient/correlations.hpp"
#include "multient/error.hpp"

namespace multient {
namespace {

constexpr double kPsdSlack = 1e-12;

Eigen::Matrix4cd spin_flip() {
  // sy (x) sy in the |uu>, |ud>, |du>, |dd> basis
  Eigen::Matrix4cd f = Eigen::Matrix4cd::Zero();
  f(0, 3) = -1.0;
  f(1, 2) = 1.0;
  f(2, 1) = 1.0;
  f(3, 0) = -1.0;
  return f;
}

Eigen::Matrix4cd psd_sqrt(const Eigen::Matrix4cd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("4x4 eigensolver failed");
  Eigen::Vector4d roots;
  for (int i = 0; i < 4; ++i) {
    if (es.eigenvalues()(i) < -kPsdSlack) {
      std::ostringstream msg;
      msg << "density matrix has negative eigenvalue " << es.eigenvalues()(i);
      throw NumericalError(msg.str());
    }
    roots(i) = std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  }
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Eigen::Matrix4cd TwoSiteState::matrix() const {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(0, 0) = u;
  rho(3, 3) = u;
  rho(1, 1) = z;
  rho(2, 2) = z;
  rho(1, 2) = y;
  rho(2, 1) = y;
  return rho;
}

void TwoSiteState::validate() const {
  const double trace = 2.0 * u + 2.0 * z;
  if (std::abs(trace - 1.0) > kPsdSlack || u < -kPsdSlack || z - std::abs(y) < -kPsdSlack) {
    std::ostringstream msg;
    msg << "invalid two-site state (u=" << u << ", z=" << z << ", y=" << y << ")";
    throw NumericalError(msg.str());
  }
}

TwoSiteState two_site_rdm(double alpha) {
  const double f = correlation_element(1, alpha);
  return {0.25 - f * f, 0.25 + f * f, f};
}

double concurrence(const Eigen::Matrix4cd& rho) {
  const Eigen::Matrix4cd root = psd_sqrt(rho);
  const Eigen::Matrix4cd flip = spin_flip();
  const Eigen::Matrix4cd tilde = flip * rho.conjugate() * flip;
  Eigen::Matrix4cd m = root * tilde * root;
  m = 0.5 * (m + m.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("4x4 eigensolver failed");
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[static_cast<std::size_t>(i)] = std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double concurrence(const TwoSiteState& state) {
  state.validate();
  return concurrence(state.matrix());
}

double concurrence_xstate(const TwoSiteState& state) {
  state.validate();
  return 2.0 * std::max(0.0, std::abs(state.y) - state.u);
}

SweepSeries concurrence_sweep(std::span<const double> alpha_grid, double threshold_factor) {
  for (std::size_t i = 1; i < alpha_grid.size(); ++i) {
    if (!(alpha_grid[i] > alpha_grid[i - 1])) throw ConfigError("alpha grid must be strictly increasing");
  }
  SweepSeries s;
  s.grid.assign(alpha_grid.begin(), alpha_grid.end());
  s.values.resize(s.grid.size());
  for (std::size_t i = 0; i < s.grid.size(); ++i) s.values[i] = concurrence(two_site_rdm(s.grid[i]));
  analyse(s, threshold_factor);
  return s;
}

double concurrence_vanishing_point() {
  auto excess = [](double alpha) {
    const TwoSiteState s = two_site_rdm(alpha);
    return std::abs(s.y) - s.u;
  };
  double lo = 1.0;
  double hi = 3.0;
  if (!(excess(lo) > 0.0 && excess(hi) < 0.0)) {
    throw NumericalError("concurrence root is not bracketed by [1, 3]");
  }
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace multient
