#pragma once

// Hot loops in two flavours: `serial` is the reference used by the tests,
// `omp` distributes the same arithmetic over OpenMP threads. Both produce
// identical results: each output element is reduced in the same order.

#include <Eigen/Dense>

#include <span>

#include "multient/bipartition.hpp"
#include "multient/sparse.hpp"

namespace multient::kernels {

/// Largest eigenvalue of a small Hermitian positive semidefinite matrix:
/// dense below 17 rows, Lanczos above.
double largest_eigenvalue(const Eigen::MatrixXcd& rho);

namespace serial {

/// y = H x
void apply(const SparseHermitian& H, std::span<const Complex> x, std::span<Complex> y);

/// Largest eigenvalue of the reduced density operator of part A.
double max_schmidt_sq(std::span<const Complex> psi, const Bipartition& cut);

/// max over cuts of max_schmidt_sq.
double max_schmidt_scan(std::span<const Complex> psi, std::span<const Bipartition> cuts);

}  // namespace serial

namespace omp {

void apply(const SparseHermitian& H, std::span<const Complex> x, std::span<Complex> y);

double max_schmidt_scan(std::span<const Complex> psi, std::span<const Bipartition> cuts);

}  // namespace omp

}  // namespace multient::kernels
