#pragma once

#include <Eigen/Dense>

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "multient/sparse.hpp"

namespace multient {

inline constexpr int kMinSites = 3;
inline constexpr int kMaxSites = 16;

/// Periodic chain of N spins. h is a uniform field -(h/2) sum sz used to
/// split the ground-state doublet of odd chains.
struct ChainSpec {
  int N = 8;
  double alpha = 0.0;
  double h = 0.0;

  static ChainSpec make(int N, double alpha, double h = 0.0);
};

/// Field used for odd chains when none is given.
inline constexpr double kOddChainField = 1e-6;

/// Computational basis: bit i of a state index set <=> spin i up (sz = +1).
/// Sectors are labelled by the number of up spins.
class ChainHamiltonian {
 public:
  explicit ChainHamiltonian(const ChainSpec& spec);

  const ChainSpec& spec() const { return spec_; }
  int sites() const { return spec_.N; }
  std::uint32_t full_dim() const { return 1u << spec_.N; }

  /// Basis states with `n_up` spins up, ascending.
  const std::vector<std::uint32_t>& sector_states(int n_up) const;
  /// Position of a basis state inside its own sector.
  std::uint32_t sector_index(std::uint32_t state) const { return position_[state]; }

  /// Sector block of H as a sparse Hermitian matrix.
  SparseHermitian sector_matrix(int n_up) const;

  /// Matrix-free H|in> on the full 2^N space.
  void apply(std::span<const Complex> in, std::span<Complex> out) const;

  /// Dense 2^N x 2^N matrix, for validation at small N only (N <= 12).
  Eigen::MatrixXcd dense() const;

  /// Calls emit(target_state, amplitude) for every nonzero <target|H|state>.
  template <typename Emit>
  void for_each_element(std::uint32_t state, Emit&& emit) const;

 private:
  ChainSpec spec_;
  std::vector<std::vector<std::uint32_t>> sectors_;
  std::vector<std::uint32_t> position_;
};

template <typename Emit>
void ChainHamiltonian::for_each_element(std::uint32_t state, Emit&& emit) const {
  const int n = spec_.N;
  // -(J/4)(sx sx + sy sy) = -(J/2)(s+ s- + s- s+): swaps antiparallel neighbours.
  // -(J alpha/8)(sx_a sz_b sy_c - sy_a sz_b sx_c)
  //     = -(i J alpha/4) sz_b (s+_a s-_c - s-_a s+_c),  a = b-1, c = b+1.
  const Complex three(0.0, -0.25 * spec_.alpha);
  for (int b = 0; b < n; ++b) {
    const int c = (b + 1) % n;
    const std::uint32_t bc = (1u << b) | (1u << c);
    if (((state >> b) & 1u) != ((state >> c) & 1u)) emit(state ^ bc, Complex(-0.5, 0.0));

    if (spec_.alpha == 0.0) continue;
    const int a = (b + n - 1) % n;
    const bool up_a = (state >> a) & 1u;
    const bool up_c = (state >> c) & 1u;
    if (up_a == up_c) continue;
    const double sz_b = ((state >> b) & 1u) ? 1.0 : -1.0;
    const std::uint32_t ac = (1u << a) | (1u << c);
    // s+_a s-_c raises a and lowers c; s-_a s+_c does the reverse with a minus sign.
    const double sign = up_c ? 1.0 : -1.0;
    emit(state ^ ac, three * (sz_b * sign));
  }
  if (spec_.h != 0.0) {
    const int up = std::popcount(state);
    emit(state, Complex(-0.5 * spec_.h * static_cast<double>(2 * up - n), 0.0));
  }
}

}  // namespace multient
