#include "multient/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <utility>

#include "multient/error.hpp"

namespace multient {

ChainSpec ChainSpec::make(int N, double alpha, double h) {
  if (N < kMinSites || N > kMaxSites) {
    std::ostringstream msg;
    msg << "chain length N=" << N << " outside supported range [" << kMinSites << ", " << kMaxSites
        << "]";
    throw ConfigError(msg.str());
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be finite and >= 0");
  if (!(h >= 0.0) || !std::isfinite(h)) throw ConfigError("field h must be finite and >= 0");
  return ChainSpec{N, alpha, h};
}

ChainHamiltonian::ChainHamiltonian(const ChainSpec& spec)
    : spec_(ChainSpec::make(spec.N, spec.alpha, spec.h)),
      sectors_(static_cast<std::size_t>(spec.N) + 1),
      position_(std::size_t{1} << spec.N) {
  for (std::uint32_t s = 0; s < full_dim(); ++s) {
    auto& sector = sectors_[static_cast<std::size_t>(std::popcount(s))];
    position_[s] = static_cast<std::uint32_t>(sector.size());
    sector.push_back(s);
  }
}

const std::vector<std::uint32_t>& ChainHamiltonian::sector_states(int n_up) const {
  if (n_up < 0 || n_up > spec_.N) throw ConfigError("sector label out of range");
  return sectors_[static_cast<std::size_t>(n_up)];
}

SparseHermitian ChainHamiltonian::sector_matrix(int n_up) const {
  const auto& states = sector_states(n_up);
  SparseHermitian m;
  m.dim = static_cast<int>(states.size());
  m.row_ptr.reserve(states.size() + 1);
  std::vector<std::pair<std::int32_t, Complex>> row;
  for (std::uint32_t s : states) {
    row.clear();
    // <t|H|s> is column s; Hermiticity gives row s as the conjugates.
    for_each_element(s, [&](std::uint32_t t, Complex amp) {
      row.emplace_back(static_cast<std::int32_t>(position_[t]), std::conj(amp));
    });
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0 && row[i].first == row[i - 1].first) {
        m.vals.back() += row[i].second;
        continue;
      }
      m.cols.push_back(row[i].first);
      m.vals.push_back(row[i].second);
    }
    m.row_ptr.push_back(static_cast<std::int64_t>(m.cols.size()));
  }
  return m;
}

void ChainHamiltonian::apply(std::span<const Complex> in, std::span<Complex> out) const {
  if (in.size() != full_dim() || out.size() != full_dim()) {
    throw ConfigError("amplitude vector length must be 2^N");
  }
  std::fill(out.begin(), out.end(), Complex{});
  for (std::uint32_t s = 0; s < full_dim(); ++s) {
    const Complex x = in[s];
    if (x == Complex{}) continue;
    for_each_element(s, [&](std::uint32_t t, Complex amp) { out[t] += amp * x; });
  }
}

Eigen::MatrixXcd ChainHamiltonian::dense() const {
  if (spec_.N > 12) throw ConfigError("dense Hamiltonian limited to N <= 12");
  const auto d = static_cast<Eigen::Index>(full_dim());
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(d, d);
  for (std::uint32_t s = 0; s < full_dim(); ++s) {
    for_each_element(s, [&](std::uint32_t t, Complex amp) { H(t, s) += amp; });
  }
  return H;
}

}  // namespace multient
