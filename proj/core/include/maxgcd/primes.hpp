#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace maxgcd {

// All primes <= limit, ascending and complete.
struct PrimeTable {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> primes;
};

// The primes in (phi, 2*phi], realized as the integer interval
// [floor(phi)+1, floor(2*phi)].
struct PrimeWindow {
  double phi = 0.0;
  std::uint64_t lo = 0;  // inclusive
  std::uint64_t hi = 0;  // inclusive
  std::vector<std::uint64_t> primes;
};

// Segmented sieve, memory bounded (segments of at most 2^22 entries).
// Visits every prime in [lo, hi] ascending.
void for_each_prime_in(std::uint64_t lo, std::uint64_t hi,
                       const std::function<void(std::uint64_t)>& fn);

// As above but stops as soon as fn returns false.
void for_each_prime_while(std::uint64_t limit,
                          const std::function<bool(std::uint64_t)>& fn);

inline void for_each_prime(std::uint64_t limit,
                           const std::function<void(std::uint64_t)>& fn) {
  for_each_prime_in(2, limit, fn);
}

PrimeTable primes_upto(std::uint64_t x);  // throws std::domain_error for x < 2

std::uint64_t prime_count(std::uint64_t x);  // pi(x); 0 for x < 2

PrimeWindow window(double phi);  // throws std::domain_error for phi <= 1

struct WindowDeltaSum {
  double value = 0.0;
  bool window_empty = false;
};

// sum over p in w of n^2 / (2 p^2), compensated.
WindowDeltaSum window_delta_sum(std::uint64_t n, const PrimeWindow& w);

// x * e^{-x} * pi(e^x); tends to 1 as x grows. Requires x > ln 2.
double pnt_ratio(double x);

}  // namespace maxgcd
