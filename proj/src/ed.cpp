#include "multient/ed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "multient/error.hpp"
#include "multient/model.hpp"
#include "multient/parallel.hpp"

namespace multient {

GroundStateResult ground_state(const ChainSpec& spec, const SolverOptions& options) {
  const ChainHamiltonian ham(spec);
  const int n = spec.N;

  struct Level {
    double energy;
    int sector;
  };
  std::vector<Level> levels;
  EigenPairs best;
  int best_sector = -1;

  for (int up = 0; up <= n; ++up) {
    const SparseHermitian block = ham.sector_matrix(up);
    EigenPairs pairs;
    try {
      pairs = lowest_eigenpairs(block, std::min(2, block.dim), options);
    } catch (const NumericalError& e) {
      std::ostringstream msg;
      msg << "N=" << n << " alpha=" << spec.alpha << " sector up=" << up << ": " << e.what();
      throw NumericalError(msg.str());
    }
    for (double e : pairs.values) levels.push_back({e, up});
    if (best_sector < 0 || pairs.values.front() < best.values.front()) {
      best = pairs;
      best_sector = up;
    }
  }
  std::stable_sort(levels.begin(), levels.end(),
                   [](const Level& a, const Level& b) { return a.energy < b.energy; });

  GroundStateResult out;
  out.energy = levels[0].energy;
  out.gap = std::max(0.0, levels[1].energy - levels[0].energy);
  out.degenerate = out.gap < kDegeneracyThreshold;
  out.up_spins = best_sector;
  out.magnetization = static_cast<double>(2 * best_sector - n) / static_cast<double>(n);
  out.residual = best.max_residual;

  out.vector = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ham.full_dim()));
  const auto& states = ham.sector_states(best_sector);
  for (std::size_t i = 0; i < states.size(); ++i) {
    out.vector(states[i]) = best.vectors(static_cast<Eigen::Index>(i), 0);
  }
  out.vector.normalize();
  return out;
}

GapScan gap_scan(int N, std::span<const double> alpha_grid, double h, const SolverOptions& options) {
  for (std::size_t i = 1; i < alpha_grid.size(); ++i) {
    if (!(alpha_grid[i] > alpha_grid[i - 1])) throw ConfigError("alpha grid must be strictly increasing");
  }
  const auto count = static_cast<std::int64_t>(alpha_grid.size());
  GapScan scan;
  scan.gaps.grid.assign(alpha_grid.begin(), alpha_grid.end());
  scan.gaps.values.assign(alpha_grid.size(), 0.0);

  SolverOptions inner = options;
  inner.parallel = false;
  parallel_for_each_index(count, [&](std::int64_t i) {
    const auto idx = static_cast<std::size_t>(i);
    scan.gaps.values[idx] = ground_state(ChainSpec::make(N, alpha_grid[idx], h), inner).gap;
  });
  analyse(scan.gaps);

  auto gap_at = [&](double alpha) { return ground_state(ChainSpec::make(N, alpha, h), options).gap; };
  const auto& g = scan.gaps.values;
  const std::size_t n = g.size();
  const double step = n > 1 ? (alpha_grid[n - 1] - alpha_grid[0]) / static_cast<double>(n - 1) : 0.0;
  const double refine_ceiling = std::max(10.0 * kGapClosingThreshold, static_cast<double>(N) * step);

  for (std::size_t i = 0; i < n; ++i) {
    if (g[i] < kGapClosingThreshold) {
      scan.closings.push_back(alpha_grid[i]);
      continue;
    }
    if (i == 0 || i + 1 == n || g[i] > g[i - 1] || g[i] > g[i + 1] || g[i] > refine_ceiling) continue;
    // Golden-section search for the minimum gap between the neighbours.
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = alpha_grid[i - 1];
    double hi = alpha_grid[i + 1];
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = gap_at(x1);
    double f2 = gap_at(x2);
    while (hi - lo > 1e-9) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = gap_at(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = gap_at(x2);
      }
    }
    const double where = 0.5 * (lo + hi);
    if (std::min(f1, f2) < kGapClosingThreshold) scan.closings.push_back(where);
  }
  std::sort(scan.closings.begin(), scan.closings.end());
  return scan;
}

FreeFermionSolution free_fermion_finite_oracle(int N, double alpha, FermionParity parity) {
  if (N < kMinSites || N > 64) throw ConfigError("free-fermion oracle needs 3 <= N <= 64");
  if (N % 2 != 0) throw ConfigError("free-fermion oracle is defined for even N");

  const double shift = parity == FermionParity::Even ? 0.5 : 0.0;
  struct Mode {
    double k;
    double energy;
  };
  std::vector<Mode> modes;
  modes.reserve(static_cast<std::size_t>(N));
  for (int m = -N / 2; m < N / 2; ++m) {
    const double k = 2.0 * kPi * (m + shift) / N;
    modes.push_back({k, dispersion(k, alpha)});
  }
  std::stable_sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) { return a.energy < b.energy; });

  auto filled = static_cast<std::size_t>(
      std::count_if(modes.begin(), modes.end(), [](const Mode& md) { return md.energy <= 0.0; }));
  const bool want_odd = parity == FermionParity::Odd;
  if ((filled % 2 == 1) != want_odd) {
    // Add the lowest empty mode or drop the highest filled one, whichever costs less.
    const double add = filled < modes.size() ? modes[filled].energy : std::numeric_limits<double>::infinity();
    const double drop = filled > 0 ? -modes[filled - 1].energy : std::numeric_limits<double>::infinity();
    filled = add <= drop ? filled + 1 : filled - 1;
  }

  FreeFermionSolution out;
  out.particles = static_cast<int>(filled);
  out.correlation = Eigen::MatrixXcd::Zero(N, N);
  for (std::size_t i = 0; i < filled; ++i) {
    out.energy += modes[i].energy;
    out.filled_momenta.push_back(modes[i].k);
  }
  std::sort(out.filled_momenta.begin(), out.filled_momenta.end());
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      Complex f{};
      for (double k : out.filled_momenta) f += std::polar(1.0, -k * (b - a));
      out.correlation(a, b) = f / static_cast<double>(N);
    }
  }
  return out;
}

FreeFermionSolution free_fermion_finite_ground(int N, double alpha) {
  FreeFermionSolution even = free_fermion_finite_oracle(N, alpha, FermionParity::Even);
  FreeFermionSolution odd = free_fermion_finite_oracle(N, alpha, FermionParity::Odd);
  return even.energy <= odd.energy ? even : odd;
}

}  // namespace multient
