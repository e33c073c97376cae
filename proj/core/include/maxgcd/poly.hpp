#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace maxgcd {

// Dense polynomial over the prime field F_q, coefficients low-degree first
// and reduced mod q; the zero polynomial has an empty coefficient vector.
class PolyElement {
 public:
  PolyElement() = default;
  PolyElement(std::uint32_t q, std::vector<std::uint32_t> coeffs);

  static PolyElement zero(std::uint32_t q) { return PolyElement(q, {}); }
  static PolyElement one(std::uint32_t q) { return PolyElement(q, {1}); }
  static PolyElement x(std::uint32_t q) { return PolyElement(q, {0, 1}); }

  std::uint32_t field() const { return q_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  const std::vector<std::uint32_t>& coeffs() const { return coeffs_; }

  PolyElement monic() const;  // divide by the leading coefficient

  friend bool operator==(const PolyElement& a, const PolyElement& b) {
    return a.q_ == b.q_ && a.coeffs_ == b.coeffs_;
  }
  // Degree-then-lexicographic order; usable as a norm-compatible total order.
  friend bool operator<(const PolyElement& a, const PolyElement& b);

  std::string str() const;  // e.g. "x^3+x+1"

 private:
  std::uint32_t q_ = 2;
  std::vector<std::uint32_t> coeffs_;
};

PolyElement poly_add(const PolyElement& a, const PolyElement& b);
PolyElement poly_sub(const PolyElement& a, const PolyElement& b);
PolyElement poly_mul(const PolyElement& a, const PolyElement& b);
PolyElement poly_mod(const PolyElement& a, const PolyElement& m);
// Quotient and remainder of a by m (deg r < deg m).
std::pair<PolyElement, PolyElement> poly_divmod(const PolyElement& a,
                                                const PolyElement& m);
bool poly_divides(const PolyElement& d, const PolyElement& a);
// Monic GCD via Euclid; gcd(0,0) is a domain error.
PolyElement poly_gcd(const PolyElement& a, const PolyElement& b);

// Monic irreducibles of degree exactly d, ascending lexicographically,
// found by trial division against all lower-degree irreducibles.
std::vector<PolyElement> irreducibles_of_degree(std::uint32_t q, int d);

// Number of monic irreducibles of degree d over F_q by the Moebius-sum
// counting formula (1/d) sum_{e | d} mu(e) q^{d/e}.
std::uint64_t irreducible_count(std::uint32_t q, int d);

}  // namespace maxgcd
