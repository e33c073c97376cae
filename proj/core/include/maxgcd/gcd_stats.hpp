#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "maxgcd/natural.hpp"

namespace maxgcd {

// Binary GCD on arbitrary-precision naturals (no divisions).
Natural gcd(const Natural& a, const Natural& b);

// Certified primality: deterministic Miller-Rabin below 2^64, error
// < 2^-128 above.
bool is_probable_prime(const Natural& n);

struct Factorization {
  // (prime, exponent), ascending by prime; empty for n = 1.
  std::vector<std::pair<Natural, unsigned>> factors;

  Natural reconstruct() const;
};

// Trial division by primes <= 10^6, then primality testing, then
// Pollard-rho (Brent) with deterministic restarts.
Factorization factorize(const Natural& n);

Natural radical(const Natural& n);               // radical(1) = 1
Natural largest_prime_factor(const Natural& n);  // 1 for n = 1 (sentinel)

struct PairExtremes {
  Natural max_gcd = 0;           // Gamma*
  Natural max_common_prime = 1;  // Lambda*, sentinel 1 when all pairs coprime
  Natural max_radical = 1;       // rad*
  std::pair<std::size_t, std::size_t> argmax_gcd{0, 1};
  std::pair<std::size_t, std::size_t> argmax_common_prime{0, 1};
  std::pair<std::size_t, std::size_t> argmax_radical{0, 1};
};

// Exact maxima over all unordered pairs; Lambda and rad come from factoring
// each pairwise GCD (distinct values factored once).
PairExtremes pair_extremes(const std::vector<Natural>& batch);

}  // namespace maxgcd
