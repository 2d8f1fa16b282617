#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "multient/eigensolver.hpp"
#include "multient/hamiltonian.hpp"
#include "multient/series.hpp"

namespace multient {

/// Lowest two levels are closer than this (in units of J) => degenerate.
inline constexpr double kDegeneracyThreshold = 1e-10;
/// Gap below which a scan reports a level closing (units of J).
inline constexpr double kGapClosingThreshold = 1e-3;

struct GroundStateResult {
  double energy = 0.0;         // E_0 / J
  double gap = 0.0;            // (E_1 - E_0) / J
  Eigen::VectorXcd vector;     // 2^N amplitudes, unit norm
  bool degenerate = false;
  double magnetization = 0.0;  // <sum sz> / N
  int up_spins = 0;            // sector holding the ground state
  double residual = 0.0;
};

/// Two lowest levels over all sz sectors; the ground state is the global
/// minimum. Ties between sectors go to the lower up-spin count.
GroundStateResult ground_state(const ChainSpec& spec, const SolverOptions& options = {});

struct GapScan {
  SweepSeries gaps;
  /// alpha locations where the gap closes below kGapClosingThreshold:
  /// grid points, plus grid-local minima refined by golden-section search.
  std::vector<double> closings;
};

GapScan gap_scan(int N, std::span<const double> alpha_grid, double h = 0.0,
                 const SolverOptions& options = {});

enum class FermionParity { Even, Odd };

/// Finite-ring free-fermion ground state in one fermion-parity sector:
/// even particle number uses antiperiodic momenta (2 pi/N)(m + 1/2), odd uses
/// periodic ones (2 pi/N) m. Modes with eps(k) <= 0 are filled; if the count
/// has the wrong parity the cheaper single-mode fix is applied.
struct FreeFermionSolution {
  double energy = 0.0;  // total, units of J
  int particles = 0;
  std::vector<double> filled_momenta;
  /// f_{n,m} = (1/N) sum_{k filled} exp(-i k (m - n)), N x N.
  Eigen::MatrixXcd correlation;
};

FreeFermionSolution free_fermion_finite_oracle(int N, double alpha, FermionParity parity);

/// Lower-energy sector of the two above.
FreeFermionSolution free_fermion_finite_ground(int N, double alpha);

}  // namespace multient
