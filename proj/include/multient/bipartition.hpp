#pragma once

#include <bit>
#include <cstdint>

namespace multient {

/// Split of an N-site chain into part A (bits set in `mask`) and the rest.
struct Bipartition {
  std::uint32_t mask = 0;
  int N = 0;

  int size() const { return std::popcount(mask); }
  std::uint32_t complement() const { return ((N == 32 ? 0u : (1u << N)) - 1u) & ~mask; }
};

}  // namespace multient
