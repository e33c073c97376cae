#include "maxgcd/sampler.hpp"

#include <stdexcept>

#include "maxgcd/errors.hpp"
#include "maxgcd/gcd_stats.hpp"

namespace maxgcd {

Natural range_bound(const Alpha& alpha, std::uint64_t n, std::size_t bit_cap) {
  if (!(alpha.approx() > 0.0)) throw std::domain_error("range_bound: alpha must be positive");
  if (n < 1) throw std::domain_error("range_bound: n must be >= 1");
  return floor_exp(alpha, n, bit_cap);
}

SampleRange SampleRange::make(const Alpha& alpha, std::uint64_t n,
                              std::size_t bit_cap) {
  SampleRange r;
  r.alpha = alpha;
  r.n = n;
  r.bound = range_bound(alpha, n, bit_cap);
  return r;
}

Natural uniform_natural(const Natural& m, RngStream& stream) {
  if (m < 1) throw std::domain_error("uniform_natural: support must be nonempty");
  if (m == 1) return 1;
  const std::size_t k = bit_length(m);
  for (;;) {
    Natural v = stream.next_bits(k);
    if (v < m) return v + 1;
  }
}

std::vector<Natural> draw_batch(const SampleRange& range, std::size_t count,
                                RngStream& stream) {
  if (count < 1) throw std::domain_error("draw_batch: count must be >= 1");
  std::vector<Natural> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(uniform_natural(range.bound, stream));
  return out;
}

std::vector<Natural> draw_batch_power(std::uint64_t n, unsigned r,
                                      std::size_t count, RngStream& stream) {
  if (n < 2) throw std::domain_error("draw_batch_power: n must be >= 2");
  if (r < 2) throw std::domain_error("draw_batch_power: r must be >= 2");
  const double bits = static_cast<double>(r) * std::log2(static_cast<double>(n));
  if (bits > static_cast<double>(kDefaultBitCap)) {
    throw resource_error("draw_batch_power: n^r exceeds the bit-size cap");
  }
  Natural m;
  mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(n), r);
  std::vector<Natural> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(uniform_natural(m, stream));
  return out;
}

DominanceCheck dominance_ratio(const Natural& M, const Natural& r,
                               const Natural& p, unsigned m) {
  if (m < 1) throw std::domain_error("dominance_ratio: m must be >= 1");
  if (!is_probable_prime(p)) throw std::domain_error("dominance_ratio: p must be prime");
  if (mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) {
    throw std::domain_error("dominance_ratio: r must be coprime to p");
  }
  if (M < r) throw std::domain_error("dominance_ratio: requires M >= r");

  Natural pm;
  mpz_pow_ui(pm.get_mpz_t(), p.get_mpz_t(), m);
  Natural num, den;
  mpz_fdiv_q(num.get_mpz_t(), M.get_mpz_t(), Natural(r * pm).get_mpz_t());
  mpz_fdiv_q(den.get_mpz_t(), M.get_mpz_t(), r.get_mpz_t());

  DominanceCheck out;
  out.ratio = mpq_class(num, den);
  out.ratio.canonicalize();
  out.bound = mpq_class(Natural(1), pm);
  out.bound.canonicalize();
  out.ok = out.ratio <= out.bound;
  return out;
}

}  // namespace maxgcd
