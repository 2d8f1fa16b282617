#pragma once

// Generalized geometric measure of finite-chain ground states:
// GGM = 1 - max over bipartitions A:B of the largest eigenvalue of rho_A.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multient/bipartition.hpp"
#include "multient/eigensolver.hpp"
#include "multient/series.hpp"
#include "multient/sparse.hpp"

namespace multient {

enum class BipartitionMode { All, ContiguousBlocks };

std::string_view to_string(BipartitionMode mode);
/// Accepts "all" / "contiguous".
BipartitionMode parse_bipartition_mode(std::string_view text);

/// Largest N for which every split is enumerated (2^(N-1) - 1 of them).
inline constexpr int kMaxAllModeSites = 14;

/// All: one representative per complementary pair, |A| <= N/2 (for |A| = N/2
/// the representative contains site 0).
/// ContiguousBlocks: periodic blocks of length 1..N/2 at every start site.
std::vector<Bipartition> enumerate_bipartitions(int N, BipartitionMode mode);

/// Largest squared Schmidt coefficient across `cut`. Rejects states whose
/// norm differs from 1 by more than 1e-10.
double max_schmidt_sq(std::span<const Complex> psi, const Bipartition& cut);

double ggm_finite(std::span<const Complex> psi, int N, BipartitionMode mode, bool parallel = true);

struct FiniteSweepRow {
  double alpha = 0.0;
  double energy = 0.0;
  double gap = 0.0;
  double magnetization = 0.0;
  double ggm = 0.0;  // NaN when the ground state is degenerate or ED failed
  bool valid = true;
  std::string error;  // solver message for a failed row
};

struct FiniteSweep {
  int N = 0;
  std::vector<FiniteSweepRow> rows;
  SweepSeries ggm;  // GGM(alpha) with derivative and flags
};

/// Rows whose ground-state solve fails are kept with NaN observables and the
/// solver message in `error`.
FiniteSweep ggm_sweep(int N, std::span<const double> alpha_grid, BipartitionMode mode, double h = 0.0,
                      double threshold_factor = kDefaultThresholdFactor,
                      const SolverOptions& options = {});

/// Pseudo-critical points read off the flagged discontinuities: `first` is
/// the lowest flag in (alpha_c, first_window_end), `second` the largest-jump
/// flag above it (ties to the lower alpha).
struct TransitionPoints {
  std::optional<double> first;
  std::optional<double> second;
};

TransitionPoints locate_transitions(const SweepSeries& series, double alpha_c = 1.0,
                                    double first_window_end = 1.5);

}  // namespace multient
