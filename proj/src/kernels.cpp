#include "multient/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "multient/error.hpp"

namespace multient::kernels {
namespace {

constexpr Eigen::Index kDenseSpectrumLimit = 16;
constexpr double kLanczosResidual = 1e-13;

// Gathers bits of `value` selected by `mask` into the low bits.
inline std::uint32_t extract_bits(std::uint32_t value, std::uint32_t mask) {
  std::uint32_t out = 0;
  std::uint32_t bit = 1;
  while (mask != 0) {
    const std::uint32_t low = mask & (~mask + 1u);
    if (value & low) out |= bit;
    bit <<= 1;
    mask ^= low;
  }
  return out;
}

inline Complex row_dot(const SparseHermitian& H, std::span<const Complex> x, std::int64_t row) {
  Complex acc{};
  for (std::int64_t p = H.row_ptr[static_cast<std::size_t>(row)];
       p < H.row_ptr[static_cast<std::size_t>(row) + 1]; ++p) {
    acc += H.vals[static_cast<std::size_t>(p)] * x[static_cast<std::size_t>(H.cols[static_cast<std::size_t>(p)])];
  }
  return acc;
}

void check_shapes(const SparseHermitian& H, std::span<const Complex> x, std::span<Complex> y) {
  if (x.size() != static_cast<std::size_t>(H.dim) || y.size() != static_cast<std::size_t>(H.dim)) {
    throw ConfigError("vector length does not match operator dimension");
  }
}

}  // namespace

double largest_eigenvalue(const Eigen::MatrixXcd& rho) {
  using Eigen::Index;
  const Index n = rho.rows();
  if (n == 1) return rho(0, 0).real();
  if (n <= kDenseSpectrumLimit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("reduced density eigensolver failed");
    return es.eigenvalues()(n - 1);
  }

  // Lanczos with full reorthogonalisation from a fixed start vector. The
  // residual bound beta_j |s_j| limits the distance of the top Ritz value to
  // the spectrum.
  Eigen::MatrixXcd q(n, n);
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n);
  Eigen::VectorXcd v(n);
  for (Index i = 0; i < n; ++i) v(i) = Complex(1.0 + 0.37 * std::sin(1.3 * static_cast<double>(i)), 0.11 * static_cast<double>(i % 7));
  q.col(0) = v.normalized();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  double top = 0.0;
  for (Index j = 0; j < n; ++j) {
    Eigen::VectorXcd w = rho * q.col(j);
    diag(j) = q.col(j).dot(w).real();
    for (int pass = 0; pass < 2; ++pass) w -= q.leftCols(j + 1) * (q.leftCols(j + 1).adjoint() * w);
    const double beta = w.norm();

    const bool last = j + 1 == n || beta < 1e-14;
    if (last || (j >= 4 && j % 2 == 0)) {
      tri.computeFromTridiagonal(diag.head(j + 1), off.head(j), Eigen::ComputeEigenvectors);
      if (tri.info() != Eigen::Success) throw NumericalError("tridiagonal eigensolver failed");
      top = tri.eigenvalues()(j);
      const double bound = beta * std::abs(tri.eigenvectors()(j, j));
      if (last || bound < kLanczosResidual) return top;
    }
    off(j) = beta;
    q.col(j + 1) = w / beta;
  }
  return top;
}

namespace serial {

void apply(const SparseHermitian& H, std::span<const Complex> x, std::span<Complex> y) {
  check_shapes(H, x, y);
  for (std::int64_t r = 0; r < H.dim; ++r) y[static_cast<std::size_t>(r)] = row_dot(H, x, r);
}

double max_schmidt_sq(std::span<const Complex> psi, const Bipartition& cut) {
  const std::uint32_t full = static_cast<std::uint32_t>(psi.size());
  if (full != (1u << cut.N)) throw ConfigError("state length must be 2^N");
  const int na = cut.size();
  if (na == 0 || na == cut.N) throw ConfigError("bipartition must be a proper, non-empty split");

  // Rows index the smaller side so the Gram matrix is as small as possible.
  std::uint32_t rows_mask = cut.mask;
  std::uint32_t cols_mask = cut.complement();
  if (na > cut.N - na) std::swap(rows_mask, cols_mask);
  const int row_bits = std::popcount(rows_mask);

  Eigen::MatrixXcd m(Eigen::Index{1} << row_bits, Eigen::Index{1} << (cut.N - row_bits));
  for (std::uint32_t s = 0; s < full; ++s) {
    m(extract_bits(s, rows_mask), extract_bits(s, cols_mask)) = psi[s];
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(m.rows(), m.rows());
  rho.selfadjointView<Eigen::Lower>().rankUpdate(m);
  rho.triangularView<Eigen::StrictlyUpper>() = rho.adjoint();
  return largest_eigenvalue(rho);
}

double max_schmidt_scan(std::span<const Complex> psi, std::span<const Bipartition> cuts) {
  double best = 0.0;
  for (const Bipartition& cut : cuts) best = std::max(best, max_schmidt_sq(psi, cut));
  return best;
}

}  // namespace serial

namespace omp {

void apply(const SparseHermitian& H, std::span<const Complex> x, std::span<Complex> y) {
  check_shapes(H, x, y);
  const std::int64_t n = H.dim;
#pragma omp parallel for schedule(static) if (n > 2048)
  for (std::int64_t r = 0; r < n; ++r) y[static_cast<std::size_t>(r)] = row_dot(H, x, r);
}

double max_schmidt_scan(std::span<const Complex> psi, std::span<const Bipartition> cuts) {
  const auto n = static_cast<std::int64_t>(cuts.size());
  double best = 0.0;
  bool failed = false;
#pragma omp parallel for schedule(dynamic, 4) reduction(max : best) reduction(|| : failed)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      best = std::max(best, serial::max_schmidt_sq(psi, cuts[static_cast<std::size_t>(i)]));
    } catch (...) {
      failed = true;
    }
  }
  // Re-run serially to surface the original exception.
  if (failed) return serial::max_schmidt_scan(psi, cuts);
  return best;
}

}  // namespace omp

}  // namespace multient::kernels
