#include "maxgcd/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maxgcd/kahan.hpp"

namespace maxgcd {

namespace {

constexpr std::uint64_t kSegmentSize = std::uint64_t{1} << 22;

std::uint64_t isqrt64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Simple odd sieve for the base primes feeding the segmented pass.
std::vector<std::uint32_t> base_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<char> is_prime(limit + 1, 1);
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (!is_prime[i]) continue;
    for (std::uint64_t j = i * i; j <= limit; j += i) is_prime[j] = 0;
  }
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (is_prime[i]) out.push_back(i);
  }
  return out;
}

}  // namespace

namespace {

void segmented_scan(std::uint64_t lo, std::uint64_t hi,
                    const std::function<bool(std::uint64_t)>& fn) {
  if (hi < 2 || hi < lo) return;
  lo = std::max<std::uint64_t>(lo, 2);
  const auto base = base_primes(static_cast<std::uint32_t>(isqrt64(hi)));
  std::vector<char> sieve;
  for (std::uint64_t seg_lo = lo; seg_lo <= hi;) {
    const std::uint64_t seg_hi = std::min(seg_lo + kSegmentSize - 1, hi);
    const std::size_t len = static_cast<std::size_t>(seg_hi - seg_lo + 1);
    sieve.assign(len, 1);
    for (const std::uint64_t p : base) {
      if (p * p > seg_hi) break;
      std::uint64_t start = std::max(p * p, ((seg_lo + p - 1) / p) * p);
      for (std::uint64_t j = start; j <= seg_hi; j += p) sieve[j - seg_lo] = 0;
    }
    for (std::size_t i = 0; i < len; ++i) {
      if (sieve[i]) {
        const std::uint64_t v = seg_lo + i;
        if (v >= 2 && !fn(v)) return;
      }
    }
    if (seg_hi == hi) break;
    seg_lo = seg_hi + 1;
  }
}

}  // namespace

void for_each_prime_in(std::uint64_t lo, std::uint64_t hi,
                       const std::function<void(std::uint64_t)>& fn) {
  segmented_scan(lo, hi, [&](std::uint64_t p) {
    fn(p);
    return true;
  });
}

void for_each_prime_while(std::uint64_t limit,
                          const std::function<bool(std::uint64_t)>& fn) {
  segmented_scan(2, limit, fn);
}

PrimeTable primes_upto(std::uint64_t x) {
  if (x < 2) throw std::domain_error("primes_upto: no primes below 2 (empty table)");
  PrimeTable t;
  t.limit = x;
  for_each_prime(x, [&](std::uint64_t p) { t.primes.push_back(p); });
  return t;
}

std::uint64_t prime_count(std::uint64_t x) {
  std::uint64_t count = 0;
  for_each_prime(x, [&](std::uint64_t) { ++count; });
  return count;
}

PrimeWindow window(double phi) {
  if (!(phi > 1.0)) throw std::domain_error("window: phi must exceed 1");
  PrimeWindow w;
  w.phi = phi;
  w.lo = static_cast<std::uint64_t>(std::floor(phi)) + 1;
  w.hi = static_cast<std::uint64_t>(std::floor(2.0 * phi));
  for_each_prime_in(w.lo, w.hi, [&](std::uint64_t p) { w.primes.push_back(p); });
  return w;
}

WindowDeltaSum window_delta_sum(std::uint64_t n, const PrimeWindow& w) {
  if (n < 1) throw std::domain_error("window_delta_sum: n must be >= 1");
  WindowDeltaSum out;
  if (w.primes.empty()) {
    out.window_empty = true;
    return out;
  }
  const double nn = static_cast<double>(n);
  KahanSum acc;
  for (const std::uint64_t p : w.primes) {
    const double pd = static_cast<double>(p);
    acc.add(nn * nn / (2.0 * pd * pd));
  }
  out.value = acc.value();
  return out;
}

double pnt_ratio(double x) {
  if (!(x > 0.6931471805599453)) {
    throw std::domain_error("pnt_ratio: requires x > ln 2");
  }
  const auto limit =
      static_cast<std::uint64_t>(std::floor(std::exp(static_cast<long double>(x))));
  const auto count = static_cast<double>(prime_count(limit));
  return x * std::exp(-x) * count;
}

}  // namespace maxgcd
