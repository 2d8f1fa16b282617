#include "multient/ggm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "multient/ed.hpp"
#include "multient/error.hpp"
#include "multient/kernels.hpp"
#include "multient/parallel.hpp"

namespace multient {
namespace {

void require_normalised(std::span<const Complex> psi) {
  double norm2 = 0.0;
  for (const Complex& a : psi) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "state is not normalised (|psi|^2 = " << norm2 << ")";
    throw ConfigError(msg.str());
  }
}

double second_difference_at(const SweepSeries& s, double alpha) {
  const auto it = std::find(s.grid.begin(), s.grid.end(), alpha);
  if (it == s.grid.end() || it == s.grid.begin() || it + 1 == s.grid.end()) return 0.0;
  const auto i = static_cast<std::size_t>(it - s.grid.begin());
  return std::abs(s.values[i + 1] - 2.0 * s.values[i] + s.values[i - 1]);
}

}  // namespace

std::string_view to_string(BipartitionMode mode) {
  return mode == BipartitionMode::All ? "all" : "contiguous";
}

BipartitionMode parse_bipartition_mode(std::string_view text) {
  if (text == "all") return BipartitionMode::All;
  if (text == "contiguous") return BipartitionMode::ContiguousBlocks;
  throw ConfigError("unknown bipartition mode '" + std::string(text) + "' (expected all|contiguous)");
}

std::vector<Bipartition> enumerate_bipartitions(int N, BipartitionMode mode) {
  if (N < 2 || N > kMaxSites) throw ConfigError("chain length out of range for bipartitions");
  std::vector<Bipartition> cuts;
  if (mode == BipartitionMode::All) {
    if (N > kMaxAllModeSites) {
      throw ConfigError("all-bipartition mode is limited to N <= " + std::to_string(kMaxAllModeSites) +
                        "; use contiguous blocks");
    }
    const std::uint32_t full = 1u << N;
    for (int size = 1; size <= N / 2; ++size) {
      for (std::uint32_t mask = 1; mask < full - 1; ++mask) {
        if (std::popcount(mask) != size) continue;
        if (2 * size == N && (mask & 1u) == 0) continue;
        cuts.push_back({mask, N});
      }
    }
    return cuts;
  }
  for (int length = 1; length <= N / 2; ++length) {
    for (int start = 0; start < N; ++start) {
      std::uint32_t mask = 0;
      for (int j = 0; j < length; ++j) mask |= 1u << ((start + j) % N);
      cuts.push_back({mask, N});
    }
  }
  return cuts;
}

double max_schmidt_sq(std::span<const Complex> psi, const Bipartition& cut) {
  require_normalised(psi);
  return kernels::serial::max_schmidt_sq(psi, cut);
}

double ggm_finite(std::span<const Complex> psi, int N, BipartitionMode mode, bool parallel) {
  if (psi.size() != (std::size_t{1} << N)) throw ConfigError("state length must be 2^N");
  require_normalised(psi);
  const std::vector<Bipartition> cuts = enumerate_bipartitions(N, mode);
  const double overlap = parallel ? kernels::omp::max_schmidt_scan(psi, cuts)
                                  : kernels::serial::max_schmidt_scan(psi, cuts);
  return std::clamp(1.0 - overlap, 0.0, 1.0);
}

FiniteSweep ggm_sweep(int N, std::span<const double> alpha_grid, BipartitionMode mode, double h,
                      double threshold_factor, const SolverOptions& options) {
  for (std::size_t i = 1; i < alpha_grid.size(); ++i) {
    if (!(alpha_grid[i] > alpha_grid[i - 1])) throw ConfigError("alpha grid must be strictly increasing");
  }
  enumerate_bipartitions(N, mode);  // validates N against the mode up front

  FiniteSweep sweep;
  sweep.N = N;
  sweep.rows.resize(alpha_grid.size());
  SolverOptions inner = options;
  inner.parallel = false;
  parallel_for_each_index(static_cast<std::int64_t>(alpha_grid.size()), [&](std::int64_t i) {
    const auto idx = static_cast<std::size_t>(i);
    FiniteSweepRow& row = sweep.rows[idx];
    row.alpha = alpha_grid[idx];
    GroundStateResult gs;
    try {
      gs = ground_state(ChainSpec::make(N, alpha_grid[idx], h), inner);
    } catch (const NumericalError& e) {
      constexpr double nan = std::numeric_limits<double>::quiet_NaN();
      row.energy = row.gap = row.magnetization = row.ggm = nan;
      row.valid = false;
      row.error = e.what();
      return;
    }
    row.energy = gs.energy;
    row.gap = gs.gap;
    row.magnetization = gs.magnetization;
    row.valid = !gs.degenerate;
    const std::span<const Complex> psi(gs.vector.data(), static_cast<std::size_t>(gs.vector.size()));
    row.ggm = row.valid ? ggm_finite(psi, N, mode, false) : std::numeric_limits<double>::quiet_NaN();
  });

  sweep.ggm.grid.assign(alpha_grid.begin(), alpha_grid.end());
  sweep.ggm.values.reserve(alpha_grid.size());
  for (const FiniteSweepRow& row : sweep.rows) sweep.ggm.values.push_back(row.ggm);
  analyse(sweep.ggm, threshold_factor);
  return sweep;
}

TransitionPoints locate_transitions(const SweepSeries& series, double alpha_c, double first_window_end) {
  TransitionPoints out;
  for (double a : series.discontinuities) {
    if (a > alpha_c && a < first_window_end) {
      out.first = a;
      break;
    }
  }
  if (!out.first) return out;
  double best_jump = -1.0;
  for (double a : series.discontinuities) {
    if (a <= *out.first) continue;
    const double jump = second_difference_at(series, a);
    if (jump > best_jump) {
      best_jump = jump;
      out.second = a;
    }
  }
  return out;
}

}  // namespace multient
