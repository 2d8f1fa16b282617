#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "multient/sparse.hpp"

namespace multient {

struct SolverOptions {
  /// Sectors up to this dimension are diagonalised densely.
  int dense_limit = 128;
  /// Residual target ||H x - theta x|| for the iterative path.
  double tol = 1e-11;
  /// Krylov basis size before a thick restart.
  int max_basis = 48;
  int max_restarts = 400;
  std::uint64_t seed = 20120701;
  /// Use the OpenMP matrix-vector kernel.
  bool parallel = true;
};

/// Lowest eigenvalues (ascending) with orthonormal eigenvectors as columns.
struct EigenPairs {
  std::vector<double> values;
  Eigen::MatrixXcd vectors;
  double max_residual = 0.0;
  int matvecs = 0;  // operator applications (0 on the dense path)
};

/// Picks the dense or iterative path from `options.dense_limit`.
EigenPairs lowest_eigenpairs(const SparseHermitian& H, int count, const SolverOptions& options = {});

EigenPairs lowest_eigenpairs_dense(const SparseHermitian& H, int count);

/// Block Krylov (block size = count) with full reorthogonalisation,
/// Rayleigh-Ritz extraction and thick restarts. The block start resolves
/// degenerate pairs. Throws NumericalError with the reached residual on
/// stagnation.
EigenPairs lowest_eigenpairs_krylov(const SparseHermitian& H, int count,
                                    const SolverOptions& options = {});

}  // namespace multient
