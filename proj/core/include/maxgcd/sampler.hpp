#pragma once

#include <cstdint>
#include <vector>

#include "maxgcd/certified.hpp"
#include "maxgcd/natural.hpp"
#include "maxgcd/rng.hpp"

namespace maxgcd {

// M = floor(e^{alpha n}), certified exact.
Natural range_bound(const Alpha& alpha, std::uint64_t n,
                    std::size_t bit_cap = kDefaultBitCap);

struct SampleRange {
  Alpha alpha;
  std::uint64_t n = 0;
  Natural bound;  // M

  static SampleRange make(const Alpha& alpha, std::uint64_t n,
                          std::size_t bit_cap = kDefaultBitCap);
};

// One value uniform on {1,...,m}: rejection sampling on bitlen(m)-bit
// strings, expected fewer than two rejections, no modulo bias.
Natural uniform_natural(const Natural& m, RngStream& stream);

std::vector<Natural> draw_batch(const SampleRange& range, std::size_t count,
                                RngStream& stream);

// Exploratory regime: uniform draws from {1,...,n^r}.
std::vector<Natural> draw_batch_power(std::uint64_t n, unsigned r,
                                      std::size_t count, RngStream& stream);

struct DominanceCheck {
  mpq_class ratio;  // floor(M/(r p^m)) / floor(M/r)
  mpq_class bound;  // p^{-m}
  bool ok = false;  // ratio <= bound
};

// Conditional divisibility ratio for uniform sampling: the probability that
// p^m divides T given r | T, computed in exact rational arithmetic.
DominanceCheck dominance_ratio(const Natural& M, const Natural& r,
                               const Natural& p, unsigned m);

}  // namespace maxgcd
