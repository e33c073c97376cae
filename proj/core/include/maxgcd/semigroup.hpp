#pragma once

#include <concepts>
#include <cstdint>
#include <vector>

#include "maxgcd/natural.hpp"
#include "maxgcd/poly.hpp"
#include "maxgcd/rng.hpp"

namespace maxgcd {

// Arithmetical semigroup surface: identity, multiplicative norm, finite
// prime enumeration below any norm bound, GCD, and uniform sampling over a
// norm ball. The statistics pipeline is written against this concept only.
template <typename G>
concept ArithmeticalSemigroup = requires(const G& g, const typename G::Element& a,
                                         const typename G::Element& b,
                                         const typename G::Ball& ball, double x,
                                         RngStream& s) {
  typename G::Element;
  typename G::Ball;
  { g.identity() } -> std::same_as<typename G::Element>;
  { g.norm(a) } -> std::convertible_to<double>;
  { g.log_norm(a) } -> std::convertible_to<double>;
  { g.primes_upto(x) } -> std::same_as<std::vector<typename G::Element>>;
  { g.gcd(a, b) } -> std::same_as<typename G::Element>;
  { g.divides(a, b) } -> std::convertible_to<bool>;
  { g.sample(ball, s) } -> std::same_as<typename G::Element>;
  { g.ball_of_norm(x) } -> std::same_as<typename G::Ball>;
  { g.prime_count_upto(x) } -> std::convertible_to<std::uint64_t>;
};

// The rational integers {1, 2, 3, ...} with |a| = a.
struct IntegerSemigroup {
  using Element = Natural;
  using Ball = Natural;  // support {1, ..., M}

  Element identity() const { return Natural(1); }
  double norm(const Element& a) const { return a.get_d(); }
  double log_norm(const Element& a) const { return log_natural(a); }
  std::vector<Element> primes_upto(double bound) const;
  Element gcd(const Element& a, const Element& b) const;
  bool divides(const Element& d, const Element& a) const {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
  }
  Element sample(const Ball& ball, RngStream& stream) const;
  Ball ball_of_norm(double bound) const;
  std::uint64_t prime_count_upto(double bound) const;
};

// Monic polynomials over F_q with |f| = q^{deg f}; the constant 1 is the
// identity and carries norm 1.
struct PolySemigroup {
  std::uint32_t q = 2;

  using Element = PolyElement;
  struct Ball {
    int max_degree = 0;  // support: {1} plus monic f with 1 <= deg f <= max_degree
  };

  Element identity() const { return PolyElement::one(q); }
  double norm(const Element& a) const;
  double log_norm(const Element& a) const;
  std::vector<Element> primes_upto(double bound) const;
  Element gcd(const Element& a, const Element& b) const;
  bool divides(const Element& d, const Element& a) const {
    return poly_divides(d, a);
  }
  Element sample(const Ball& ball, RngStream& stream) const;
  Ball ball_of_norm(double bound) const;
  std::uint64_t prime_count_upto(double bound) const;
};

// Free-function surface over any instance.
template <ArithmeticalSemigroup G>
double sg_norm(const G& g, const typename G::Element& a) {
  return g.norm(a);
}

template <ArithmeticalSemigroup G>
std::vector<typename G::Element> sg_primes_upto(const G& g, double bound) {
  return g.primes_upto(bound);
}

template <ArithmeticalSemigroup G>
typename G::Element sg_gcd(const G& g, const typename G::Element& a,
                           const typename G::Element& b) {
  return g.gcd(a, b);
}

template <ArithmeticalSemigroup G>
typename G::Element sg_sample(const G& g, double norm_bound, RngStream& stream) {
  return g.sample(g.ball_of_norm(norm_bound), stream);
}

// x e^{-x} |pi_G[x]| where pi_G[x] counts primes of norm <= e^x.
template <ArithmeticalSemigroup G>
double sg_pnt_ratio(const G& g, double x) {
  const double bound = std::exp(x);
  const auto count = static_cast<double>(g.prime_count_upto(bound));
  return x * std::exp(-x) * count;
}

}  // namespace maxgcd
