#include "maxgcd/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace maxgcd {

namespace {

void trim(std::vector<std::uint32_t>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q) {
  // q is a small prime; Fermat inverse.
  std::uint64_t r = 1, base = a % q;
  std::uint32_t e = q - 2;
  while (e) {
    if (e & 1) r = r * base % q;
    base = base * base % q;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

void check_same_field(const PolyElement& a, const PolyElement& b) {
  if (a.field() != b.field()) {
    throw std::domain_error("poly: mixed coefficient fields");
  }
}

}  // namespace

PolyElement::PolyElement(std::uint32_t q, std::vector<std::uint32_t> coeffs)
    : q_(q), coeffs_(std::move(coeffs)) {
  if (q < 2) throw std::domain_error("poly: field size must be a prime >= 2");
  for (auto& c : coeffs_) c %= q_;
  trim(coeffs_);
}

PolyElement PolyElement::monic() const {
  if (is_zero() || coeffs_.back() == 1) return *this;
  const std::uint32_t inv = inv_mod(coeffs_.back(), q_);
  std::vector<std::uint32_t> c(coeffs_);
  for (auto& v : c) {
    v = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v) * inv % q_);
  }
  return PolyElement(q_, std::move(c));
}

bool operator<(const PolyElement& a, const PolyElement& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
  }
  return false;
}

std::string PolyElement::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const std::uint32_t c = coeffs_[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + "*";
      out += (i == 1) ? "x" : "x^" + std::to_string(i);
    }
  }
  return out;
}

PolyElement poly_add(const PolyElement& a, const PolyElement& b) {
  check_same_field(a, b);
  const std::uint32_t q = a.field();
  std::vector<std::uint32_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i] = a.coeffs()[i];
  for (std::size_t i = 0; i < b.coeffs().size(); ++i) c[i] = (c[i] + b.coeffs()[i]) % q;
  return PolyElement(q, std::move(c));
}

PolyElement poly_sub(const PolyElement& a, const PolyElement& b) {
  check_same_field(a, b);
  const std::uint32_t q = a.field();
  std::vector<std::uint32_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i] = a.coeffs()[i];
  for (std::size_t i = 0; i < b.coeffs().size(); ++i) c[i] = (c[i] + q - b.coeffs()[i]) % q;
  return PolyElement(q, std::move(c));
}

PolyElement poly_mul(const PolyElement& a, const PolyElement& b) {
  check_same_field(a, b);
  const std::uint32_t q = a.field();
  if (a.is_zero() || b.is_zero()) return PolyElement::zero(q);
  std::vector<std::uint32_t> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      c[i + j] = static_cast<std::uint32_t>(
          (c[i + j] + static_cast<std::uint64_t>(a.coeffs()[i]) * b.coeffs()[j]) % q);
    }
  }
  return PolyElement(q, std::move(c));
}

std::pair<PolyElement, PolyElement> poly_divmod(const PolyElement& a,
                                                const PolyElement& m) {
  check_same_field(a, m);
  if (m.is_zero()) throw std::domain_error("poly_divmod: zero modulus");
  const std::uint32_t q = a.field();
  std::vector<std::uint32_t> r = a.coeffs();
  const auto& mc = m.coeffs();
  const std::uint32_t lead_inv = inv_mod(mc.back(), q);
  std::vector<std::uint32_t> quot(
      r.size() >= mc.size() ? r.size() - mc.size() + 1 : 0, 0);
  while (r.size() >= mc.size()) {
    const std::uint32_t factor = static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(r.back()) * lead_inv % q);
    const std::size_t shift = r.size() - mc.size();
    if (factor != 0) {
      quot[shift] = factor;
      for (std::size_t i = 0; i < mc.size(); ++i) {
        const std::uint64_t sub = static_cast<std::uint64_t>(factor) * mc[i] % q;
        r[shift + i] = static_cast<std::uint32_t>((r[shift + i] + q - sub) % q);
      }
    }
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return {PolyElement(q, std::move(quot)), PolyElement(q, std::move(r))};
}

PolyElement poly_mod(const PolyElement& a, const PolyElement& m) {
  return poly_divmod(a, m).second;
}

bool poly_divides(const PolyElement& d, const PolyElement& a) {
  return poly_mod(a, d).is_zero();
}

PolyElement poly_gcd(const PolyElement& a, const PolyElement& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("poly_gcd(0,0) is undefined");
  PolyElement u = a, v = b;
  while (!v.is_zero()) {
    PolyElement r = poly_mod(u, v);
    u = v;
    v = r;
  }
  return u.monic();
}

std::vector<PolyElement> irreducibles_of_degree(std::uint32_t q, int d) {
  if (d < 1) throw std::domain_error("irreducibles_of_degree: d must be >= 1");
  // All lower-degree irreducibles that could divide a degree-d polynomial.
  std::vector<PolyElement> divisors;
  for (int e = 1; e <= d / 2; ++e) {
    const auto lower = irreducibles_of_degree(q, e);
    divisors.insert(divisors.end(), lower.begin(), lower.end());
  }
  std::vector<PolyElement> out;
  std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(d) + 1, 0);
  coeffs[d] = 1;
  // Odometer over the d free coefficients.
  for (;;) {
    PolyElement f(q, coeffs);
    bool irreducible = f.coeffs()[0] != 0 || d == 1;  // x | f unless c0 != 0
    if (irreducible) {
      for (const auto& p : divisors) {
        if (p.degree() == 1 && p.coeffs()[0] == 0) continue;  // x handled above
        if (poly_divides(p, f)) {
          irreducible = false;
          break;
        }
      }
    }
    if (irreducible) out.push_back(f);
    int i = 0;
    while (i < d && ++coeffs[i] == q) {
      coeffs[i] = 0;
      ++i;
    }
    if (i == d) break;
  }
  return out;
}

std::uint64_t irreducible_count(std::uint32_t q, int d) {
  if (d < 1) throw std::domain_error("irreducible_count: d must be >= 1");
  // mu over divisors of d.
  auto mu = [](int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
      }
    }
    if (n > 1) m = -m;
    return m;
  };
  std::int64_t total = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    const int m = mu(e);
    if (m == 0) continue;
    std::uint64_t pw = 1;
    for (int i = 0; i < d / e; ++i) pw *= q;
    total += m * static_cast<std::int64_t>(pw);
  }
  return static_cast<std::uint64_t>(total / d);
}

}  // namespace maxgcd
