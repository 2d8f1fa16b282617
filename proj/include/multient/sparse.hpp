#pragma once

#include <Eigen/Dense>

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <span>
#include <cstdint>
#include <vector>

namespace multient {

using Complex = std::complex<double>;

/// Hermitian operator in compressed-row form. Rows hold their entries in
/// ascending column order, so a row-parallel product reproduces the serial
/// one bit for bit.
struct SparseHermitian {
  int dim = 0;
  std::vector<std::int64_t> row_ptr{0};
  std::vector<std::int32_t> cols;
  std::vector<Complex> vals;

  std::int64_t nonzeros() const { return row_ptr.back(); }
};

inline std::span<const Complex> as_span(const Eigen::VectorXcd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}
inline std::span<Complex> as_span(Eigen::VectorXcd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace multient
