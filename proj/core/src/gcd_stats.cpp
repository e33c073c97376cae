#include "maxgcd/gcd_stats.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "maxgcd/primes.hpp"

namespace maxgcd {

Natural gcd(const Natural& a, const Natural& b) {
  if (a == 0 && b == 0) throw std::domain_error("gcd(0,0) is undefined");
  if (a == 0) return b;
  if (b == 0) return a;
  Natural u = a, v = b;
  const mp_bitcnt_t su = mpz_scan1(u.get_mpz_t(), 0);
  const mp_bitcnt_t sv = mpz_scan1(v.get_mpz_t(), 0);
  const mp_bitcnt_t shift = std::min(su, sv);
  mpz_tdiv_q_2exp(u.get_mpz_t(), u.get_mpz_t(), su);
  for (;;) {
    mpz_tdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(),
                    mpz_scan1(v.get_mpz_t(), 0));
    if (u > v) mpz_swap(u.get_mpz_t(), v.get_mpz_t());
    v -= u;  // v even afterwards, u stays odd
    if (v == 0) break;
  }
  mpz_mul_2exp(u.get_mpz_t(), u.get_mpz_t(), shift);
  return u;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    e >>= 1;
  }
  return r;
}

// Deterministic for all n < 2^64 with this witness set.
bool miller_rabin_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

const std::vector<std::uint64_t>& trial_primes() {
  static const std::vector<std::uint64_t> table =
      primes_upto(1000000).primes;
  return table;
}

// Brent's cycle variant; returns a nontrivial factor of odd composite n
// with no prime factor <= 10^6. Deterministic restarts over c.
Natural pollard_brent(const Natural& n) {
  for (unsigned long c = 1;; ++c) {
    Natural y = 2, q = 1, g = 1, x, ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        const unsigned long steps = std::min(m, r - k);
        for (unsigned long i = 0; i < steps; ++i) {
          y = (y * y + c) % n;
          Natural d = x - y;
          mpz_abs(d.get_mpz_t(), d.get_mpz_t());
          q = q * d % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      // Back-track one squaring at a time.
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        Natural d = x - ys;
        mpz_abs(d.get_mpz_t(), d.get_mpz_t());
        g = gcd(d, n);
      }
    }
    if (g != n && g != 1) return g;
    // Unlucky c: restart with the next increment.
  }
}

void factor_into(const Natural& n, std::map<Natural, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  const Natural f = pollard_brent(n);
  factor_into(f, out);
  factor_into(n / f, out);
}

}  // namespace

bool is_probable_prime(const Natural& n) {
  if (n < 2) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return miller_rabin_u64(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), 64) > 0;
}

Natural Factorization::reconstruct() const {
  Natural prod = 1;
  for (const auto& [p, e] : factors) {
    Natural pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    prod *= pe;
  }
  return prod;
}

Factorization factorize(const Natural& n) {
  if (n == 0) throw std::domain_error("factorize: 0 has no factorization");
  Factorization out;
  if (n == 1) return out;

  Natural work = n;
  std::map<Natural, unsigned> acc;
  Natural root;
  mpz_sqrt(root.get_mpz_t(), work.get_mpz_t());
  for (const std::uint64_t p : trial_primes()) {
    if (mpz_cmp_ui(root.get_mpz_t(), p) < 0) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(work.get_mpz_t(), p)) {
      mpz_divexact_ui(work.get_mpz_t(), work.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) {
      acc[Natural(p)] = e;
      if (work == 1) break;
      mpz_sqrt(root.get_mpz_t(), work.get_mpz_t());
    }
  }
  if (work > 1) factor_into(work, acc);

  out.factors.assign(acc.begin(), acc.end());
  return out;
}

Natural radical(const Natural& n) {
  if (n < 1) throw std::domain_error("radical: n must be >= 1");
  if (n == 1) return 1;
  Natural prod = 1;
  for (const auto& [p, e] : factorize(n).factors) prod *= p;
  return prod;
}

Natural largest_prime_factor(const Natural& n) {
  if (n < 1) throw std::domain_error("largest_prime_factor: n must be >= 1");
  if (n == 1) return 1;
  return factorize(n).factors.back().first;
}

PairExtremes pair_extremes(const std::vector<Natural>& batch) {
  if (batch.size() < 2) {
    throw std::domain_error("pair_extremes: batch must hold at least 2 values");
  }
  PairExtremes ex;
  // Distinct GCD values are factored once; repeats are common at scale.
  std::map<Natural, std::pair<Natural, Natural>> cache;  // g -> (lpf, rad)
  bool first = true;
  for (std::size_t j = 0; j < batch.size(); ++j) {
    for (std::size_t k = j + 1; k < batch.size(); ++k) {
      const Natural g = gcd(batch[j], batch[k]);
      if (first || g > ex.max_gcd) {
        ex.max_gcd = g;
        ex.argmax_gcd = {j, k};
        first = false;
      }
      if (g == 1) continue;
      auto it = cache.find(g);
      if (it == cache.end()) {
        const auto f = factorize(g);
        Natural rad = 1;
        for (const auto& [p, e] : f.factors) rad *= p;
        it = cache.emplace(g, std::make_pair(f.factors.back().first, rad)).first;
      }
      const auto& [lpf, rad] = it->second;
      if (lpf > ex.max_common_prime) {
        ex.max_common_prime = lpf;
        ex.argmax_common_prime = {j, k};
      }
      if (rad > ex.max_radical) {
        ex.max_radical = rad;
        ex.argmax_radical = {j, k};
      }
    }
  }
  return ex;
}

}  // namespace maxgcd
