#include "multient/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "multient/error.hpp"
#include "multient/kernels.hpp"

namespace multient {
namespace {

using Eigen::Index;
using Eigen::MatrixXcd;

// Blocks added between Rayleigh-Ritz extractions.
constexpr int kRitzInterval = 4;

void apply_block(const SparseHermitian& H, const MatrixXcd& in, MatrixXcd& out, bool parallel) {
  out.resize(in.rows(), in.cols());
  for (Index j = 0; j < in.cols(); ++j) {
    std::span<const Complex> x(in.col(j).data(), static_cast<std::size_t>(in.rows()));
    std::span<Complex> y(out.col(j).data(), static_cast<std::size_t>(in.rows()));
    if (parallel) {
      kernels::omp::apply(H, x, y);
    } else {
      kernels::serial::apply(H, x, y);
    }
  }
}

// Orthogonalises the columns of w against basis(:, 0:m) (twice) and among
// themselves. Columns that collapse are replaced by random directions.
void orthonormalise_block(const MatrixXcd& basis, Index m, MatrixXcd& w, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (Index j = 0; j < w.cols(); ++j) {
    for (int attempt = 0; attempt < 4; ++attempt) {
      const double before = w.col(j).norm();
      for (int pass = 0; pass < 2; ++pass) {
        if (m > 0) w.col(j) -= basis.leftCols(m) * (basis.leftCols(m).adjoint() * w.col(j));
        for (Index i = 0; i < j; ++i) w.col(j) -= w.col(i) * w.col(i).dot(w.col(j));
      }
      const double after = w.col(j).norm();
      if (after > 1e-10 * std::max(before, 1e-300)) {
        w.col(j) /= after;
        break;
      }
      for (Index r = 0; r < w.rows(); ++r) w(r, j) = Complex(gauss(rng), gauss(rng));
    }
  }
}

}  // namespace

EigenPairs lowest_eigenpairs_dense(const SparseHermitian& H, int count) {
  const int n = H.dim;
  count = std::min(count, n);
  MatrixXcd dense = MatrixXcd::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    for (auto p = H.row_ptr[static_cast<std::size_t>(r)]; p < H.row_ptr[static_cast<std::size_t>(r) + 1]; ++p) {
      dense(r, H.cols[static_cast<std::size_t>(p)]) += H.vals[static_cast<std::size_t>(p)];
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(dense);
  if (es.info() != Eigen::Success) {
    throw NumericalError("dense eigensolver failed on dimension " + std::to_string(n));
  }
  EigenPairs out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + count);
  out.vectors = es.eigenvectors().leftCols(count);
  for (int i = 0; i < count; ++i) {
    const double r = (dense * out.vectors.col(i) - out.values[static_cast<std::size_t>(i)] * out.vectors.col(i)).norm();
    out.max_residual = std::max(out.max_residual, r);
  }
  return out;
}

EigenPairs lowest_eigenpairs_krylov(const SparseHermitian& H, int count, const SolverOptions& options) {
  const Index n = H.dim;
  if (count < 1) throw ConfigError("need at least one eigenpair");
  if (n <= 2 * count + 2 || n <= options.max_basis) {
    // The whole space fits in one basis; nothing iterative to do.
    return lowest_eigenpairs_dense(H, count);
  }

  const Index block = count;
  const Index max_basis = std::max<Index>(options.max_basis, 4 * block + 4);
  const Index keep = std::min<Index>(max_basis / 3, 3 * block + 6);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;

  MatrixXcd basis(n, max_basis);
  MatrixXcd image(n, max_basis);  // H * basis
  MatrixXcd projected = MatrixXcd::Zero(max_basis, max_basis);
  Index m = 0;

  MatrixXcd w(n, block);
  for (Index j = 0; j < block; ++j) {
    for (Index r = 0; r < n; ++r) w(r, j) = Complex(gauss(rng), gauss(rng));
  }

  double residual = std::numeric_limits<double>::infinity();
  EigenPairs out;
  MatrixXcd hw;
  int matvecs = 0;
  int steps = 0;
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    while (true) {
      orthonormalise_block(basis, m, w, rng);
      apply_block(H, w, hw, options.parallel);
      matvecs += static_cast<int>(block);
      basis.middleCols(m, block) = w;
      image.middleCols(m, block) = hw;
      // Only the new block column of the projection is computed; the
      // Hermitian solver reads the lower triangle.
      const MatrixXcd fresh = basis.leftCols(m + block).adjoint() * hw;
      projected.block(0, m, m + block, block) = fresh;
      projected.block(m, 0, block, m) = fresh.topRows(m).adjoint();
      m += block;
      ++steps;
      const bool full = m + block > max_basis;
      if (!full && steps % kRitzInterval != 0) {
        w = hw;
        continue;
      }

      Eigen::SelfAdjointEigenSolver<MatrixXcd> ritz(projected.topLeftCorner(m, m));
      if (ritz.info() != Eigen::Success) throw NumericalError("Rayleigh-Ritz eigensolver failed");

      const MatrixXcd y = ritz.eigenvectors().leftCols(block);
      const MatrixXcd x = basis.leftCols(m) * y;
      MatrixXcd r = image.leftCols(m) * y;
      residual = 0.0;
      for (Index j = 0; j < block; ++j) {
        r.col(j) -= ritz.eigenvalues()(j) * x.col(j);
        residual = std::max(residual, r.col(j).norm());
      }

      if (residual <= options.tol) {
        out.values.assign(ritz.eigenvalues().data(), ritz.eigenvalues().data() + block);
        out.vectors = x;
        for (Index j = 0; j < block; ++j) out.vectors.col(j).normalize();
        out.max_residual = residual;
        out.matvecs = matvecs;
        return out;
      }

      w = r;
      if (full) {
        // Thick restart on the lowest `keep` Ritz vectors.
        const MatrixXcd yk = ritz.eigenvectors().leftCols(keep);
        const MatrixXcd kept = basis.leftCols(m) * yk;
        const MatrixXcd kept_image = image.leftCols(m) * yk;
        basis.leftCols(keep) = kept;
        image.leftCols(keep) = kept_image;
        projected.topLeftCorner(keep, keep).setZero();
        projected.topLeftCorner(keep, keep).diagonal() =
            ritz.eigenvalues().head(keep).cast<Complex>();
        m = keep;
        break;
      }
    }
  }
  std::ostringstream msg;
  msg << "iterative eigensolver stagnated on dimension " << n << " with residual " << residual
      << " (target " << options.tol << ")";
  throw NumericalError(msg.str());
}

EigenPairs lowest_eigenpairs(const SparseHermitian& H, int count, const SolverOptions& options) {
  if (H.dim <= 0) throw ConfigError("operator has empty dimension");
  if (H.dim <= options.dense_limit) return lowest_eigenpairs_dense(H, count);
  return lowest_eigenpairs_krylov(H, count, options);
}

}  // namespace multient
