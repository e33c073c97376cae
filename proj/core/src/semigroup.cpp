#include "maxgcd/semigroup.hpp"

#include <cmath>
#include <stdexcept>

#include "maxgcd/errors.hpp"
#include "maxgcd/gcd_stats.hpp"
#include "maxgcd/primes.hpp"
#include "maxgcd/sampler.hpp"

namespace maxgcd {

std::vector<IntegerSemigroup::Element> IntegerSemigroup::primes_upto(
    double bound) const {
  std::vector<Element> out;
  if (bound < 2.0) return out;
  for_each_prime(static_cast<std::uint64_t>(std::floor(bound)),
                 [&](std::uint64_t p) { out.emplace_back(p); });
  return out;
}

IntegerSemigroup::Element IntegerSemigroup::gcd(const Element& a,
                                                const Element& b) const {
  return maxgcd::gcd(a, b);
}

IntegerSemigroup::Element IntegerSemigroup::sample(const Ball& ball,
                                                   RngStream& stream) const {
  return uniform_natural(ball, stream);
}

IntegerSemigroup::Ball IntegerSemigroup::ball_of_norm(double bound) const {
  if (!(bound >= 1.0)) throw std::domain_error("integer ball: norm bound must be >= 1");
  Natural m;
  mpz_set_d(m.get_mpz_t(), std::floor(bound));
  return m;
}

std::uint64_t IntegerSemigroup::prime_count_upto(double bound) const {
  if (bound < 2.0) return 0;
  return prime_count(static_cast<std::uint64_t>(std::floor(bound)));
}

double PolySemigroup::norm(const Element& a) const {
  if (a.is_zero()) throw std::domain_error("poly norm: zero is not in the semigroup");
  return std::pow(static_cast<double>(q), a.degree());
}

double PolySemigroup::log_norm(const Element& a) const {
  if (a.is_zero()) throw std::domain_error("poly norm: zero is not in the semigroup");
  return static_cast<double>(a.degree()) * std::log(static_cast<double>(q));
}

std::vector<PolySemigroup::Element> PolySemigroup::primes_upto(double bound) const {
  std::vector<Element> out;
  double norm_d = static_cast<double>(q);
  for (int d = 1; norm_d <= bound; ++d, norm_d *= q) {
    // Guard against runaway enumeration: q^d candidate monics per degree.
    if (norm_d > 8e6) {
      throw resource_error("poly primes_upto: enumeration above q^d = 8e6");
    }
    const auto irr = irreducibles_of_degree(q, d);
    out.insert(out.end(), irr.begin(), irr.end());
  }
  return out;
}

PolySemigroup::Element PolySemigroup::gcd(const Element& a, const Element& b) const {
  return poly_gcd(a, b);
}

PolySemigroup::Element PolySemigroup::sample(const Ball& ball,
                                             RngStream& stream) const {
  // Support: {1} plus all monic polynomials of degree 1..max_degree;
  // count = 1 + q + q^2 + ... + q^max_degree.
  Natural count = 1;
  Natural qd = 1;
  for (int d = 1; d <= ball.max_degree; ++d) {
    qd *= q;
    count += qd;
  }
  Natural idx = uniform_natural(count, stream) - 1;
  if (idx == 0) return identity();
  idx -= 1;
  qd = q;
  int deg = 1;
  while (idx >= qd) {
    idx -= qd;
    qd *= q;
    ++deg;
  }
  // idx in [0, q^deg): base-q digits are the non-leading coefficients.
  std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(deg) + 1, 0);
  for (int i = 0; i < deg; ++i) {
    coeffs[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(idx.get_mpz_t(), q));
    idx /= q;
  }
  coeffs[deg] = 1;
  return PolyElement(q, std::move(coeffs));
}

PolySemigroup::Ball PolySemigroup::ball_of_norm(double bound) const {
  if (!(bound >= 1.0)) throw std::domain_error("poly ball: norm bound must be >= 1");
  Ball ball;
  double norm_d = static_cast<double>(q);
  while (norm_d <= bound) {
    ++ball.max_degree;
    norm_d *= q;
  }
  return ball;
}

std::uint64_t PolySemigroup::prime_count_upto(double bound) const {
  std::uint64_t total = 0;
  double norm_d = static_cast<double>(q);
  for (int d = 1; norm_d <= bound; ++d, norm_d *= q) {
    total += irreducible_count(q, d);
  }
  return total;
}

}  // namespace maxgcd
