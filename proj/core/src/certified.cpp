#include "maxgcd/certified.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "maxgcd/errors.hpp"

namespace maxgcd {

namespace {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

Natural mpfr_floor_z(mpfr_srcptr x) {
  Natural out;
  mpfr_get_z(out.get_mpz_t(), x, MPFR_RNDD);
  return out;
}

Natural mpfr_ceil_z(mpfr_srcptr x) {
  Natural out;
  mpfr_get_z(out.get_mpz_t(), x, MPFR_RNDU);
  return out;
}

bool is_decimal_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  bool digits = false, dot = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else if ((c == 'e' || c == 'E') && digits) {
      break;
    } else {
      return false;
    }
  }
  if (!digits) return false;
  if (i == s.size()) return true;
  ++i;  // past 'e'
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Alpha Alpha::parse(const std::string& text) {
  Alpha a;
  std::string body = text;
  if (body.rfind("ln", 0) == 0) {
    std::string arg = body.substr(2);
    while (!arg.empty() && arg.front() == ' ') arg.erase(arg.begin());
    if (!arg.empty() && arg.front() == '(') {
      if (arg.back() != ')') throw config_error("alpha: unbalanced ln(...)");
      arg = arg.substr(1, arg.size() - 2);
    }
    if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos) {
      throw config_error("alpha: ln form requires a positive integer argument");
    }
    a.kind = Kind::LogInteger;
    a.log_arg = Natural(arg);
    if (a.log_arg < 2) {
      throw config_error("alpha: ln argument must be >= 2 so alpha > 0");
    }
    return a;
  }
  if (!is_decimal_literal(body)) {
    throw config_error("alpha: expected a decimal literal or ln(<integer>), got '" +
                       text + "'");
  }
  a.kind = Kind::Decimal;
  a.decimal = body;
  if (!(a.approx() > 0.0)) throw config_error("alpha must be positive");
  return a;
}

double Alpha::approx() const {
  if (kind == Kind::LogInteger) return std::log(log_arg.get_d());
  return std::strtod(decimal.c_str(), nullptr);
}

std::string Alpha::str() const {
  if (kind == Kind::LogInteger) return "ln(" + to_decimal(log_arg) + ")";
  return decimal;
}

Natural floor_exp(const Alpha& alpha, std::uint64_t n, std::size_t bit_cap) {
  if (n < 1) throw std::domain_error("floor_exp: n must be >= 1");
  const double approx_bits = alpha.approx() * static_cast<double>(n) * 1.4426950408889634;
  if (approx_bits > static_cast<double>(bit_cap)) {
    throw resource_error("floor_exp: e^{alpha n} needs ~" +
                         std::to_string(static_cast<std::uint64_t>(approx_bits)) +
                         " bits, cap is " + std::to_string(bit_cap));
  }
  if (alpha.kind == Alpha::Kind::LogInteger) {
    // e^{n ln k} = k^n exactly.
    Natural out;
    mpz_pow_ui(out.get_mpz_t(), alpha.log_arg.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
  }
  mpfr_prec_t prec =
      static_cast<mpfr_prec_t>(std::max(96.0, approx_bits + 64.0));
  for (int round = 0; round < 40; ++round, prec *= 2) {
    Mpfr lo(prec), hi(prec);
    mpfr_set_str(lo.get(), alpha.decimal.c_str(), 10, MPFR_RNDD);
    mpfr_set_str(hi.get(), alpha.decimal.c_str(), 10, MPFR_RNDU);
    mpfr_mul_ui(lo.get(), lo.get(), static_cast<unsigned long>(n), MPFR_RNDD);
    mpfr_mul_ui(hi.get(), hi.get(), static_cast<unsigned long>(n), MPFR_RNDU);
    mpfr_exp(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
    const Natural flo = mpfr_floor_z(lo.get());
    const Natural fhi = mpfr_floor_z(hi.get());
    if (flo == fhi) return flo;
  }
  // Unreachable for decimal alpha: e^{alpha n} is irrational, so the
  // enclosure eventually excludes every integer.
  throw std::logic_error("floor_exp: interval refinement did not converge");
}

namespace {

// Exact dyadic rational carried by a double.
struct Dyadic {
  Natural num;
  Natural den;
};

Dyadic dyadic_of(double x) {
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  q.canonicalize();
  return {Natural(q.get_num()), Natural(q.get_den())};
}

// If base^(1/root_s) is rational (base = num/den a perfect root_s-th power),
// fill a/c with the roots and return true.
bool rational_root(const Dyadic& base, unsigned long root_s, Natural& a, Natural& c) {
  if (root_s == 1) {
    a = base.num;
    c = base.den;
    return true;
  }
  Natural ra, rc;
  const int exact_a =
      mpz_root(ra.get_mpz_t(), base.num.get_mpz_t(), root_s);
  if (!exact_a) return false;
  const int exact_c = mpz_root(rc.get_mpz_t(), base.den.get_mpz_t(), root_s);
  if (!exact_c) return false;
  a = ra;
  c = rc;
  return true;
}

}  // namespace

Natural ceil_power_threshold(std::uint64_t n, double s, double b,
                             std::size_t bit_cap) {
  if (n < 2) throw std::domain_error("markov threshold: n must be >= 2");
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("markov threshold: s must lie in (0,1)");
  if (!(b > 0.0)) throw std::domain_error("markov threshold: b must be positive");

  const double log2_v =
      (2.0 * std::log2(static_cast<double>(n)) + std::log2(b)) / s;
  if (log2_v > static_cast<double>(bit_cap)) {
    throw resource_error("markov threshold exceeds the bit-size cap");
  }

  // q = n^2 * b exactly; the threshold is q^{1/s}. With s = S/2^k in lowest
  // terms (S odd), q^{1/s} is rational iff q is a perfect S-th power.
  const Dyadic sd = dyadic_of(s);
  const Dyadic bd = dyadic_of(b);
  Dyadic q;
  q.num = Natural(n) * Natural(n) * bd.num;
  q.den = bd.den;
  {
    mpq_class canon(q.num, q.den);
    canon.canonicalize();
    q.num = Natural(canon.get_num());
    q.den = Natural(canon.get_den());
  }
  if (mpz_fits_ulong_p(sd.num.get_mpz_t()) && mpz_fits_ulong_p(sd.den.get_mpz_t())) {
    const unsigned long S = sd.num.get_ui();
    const unsigned long pow2k = sd.den.get_ui();
    Natural a, c;
    if (rational_root(q, S, a, c)) {
      // v = (a/c)^{2^k}, exact rational.
      if (a <= c) return 1;  // 0 < v <= 1
      if (c == 1) {
        Natural out;
        mpz_pow_ui(out.get_mpz_t(), a.get_mpz_t(), pow2k);
        return out;
      }
      // c > 1 in lowest terms: v is rational but not an integer, so the
      // interval loop below separates its ceiling.
    }
  }

  // Irrational: refine the enclosure until both ends share a ceiling.
  mpfr_prec_t prec = 128;
  for (int round = 0; round < 40; ++round, prec *= 2) {
    Mpfr lo(prec), hi(prec), t(prec);
    // ln n exactly from the integer, directed.
    mpfr_set_ui(t.get(), static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_log(lo.get(), t.get(), MPFR_RNDD);
    mpfr_log(hi.get(), t.get(), MPFR_RNDU);
    mpfr_mul_ui(lo.get(), lo.get(), 2, MPFR_RNDD);
    mpfr_mul_ui(hi.get(), hi.get(), 2, MPFR_RNDU);
    Mpfr lb_lo(prec), lb_hi(prec);
    mpfr_set_d(t.get(), b, MPFR_RNDN);  // exact
    mpfr_log(lb_lo.get(), t.get(), MPFR_RNDD);
    mpfr_log(lb_hi.get(), t.get(), MPFR_RNDU);
    mpfr_add(lo.get(), lo.get(), lb_lo.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi.get(), lb_hi.get(), MPFR_RNDU);
    mpfr_set_d(t.get(), s, MPFR_RNDN);  // exact
    mpfr_div(lo.get(), lo.get(), t.get(), MPFR_RNDD);
    mpfr_div(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    mpfr_exp(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
    const Natural clo = mpfr_ceil_z(lo.get());
    const Natural chi = mpfr_ceil_z(hi.get());
    if (clo == chi) return clo;
  }
  throw std::logic_error("markov threshold: interval refinement did not converge");
}

int compare_with_power(const Natural& v, std::uint64_t n, double e) {
  if (n < 2) throw std::domain_error("compare_with_power: n must be >= 2");
  if (!(e > 0.0)) throw std::domain_error("compare_with_power: e must be positive");
  const Dyadic ed = dyadic_of(e);

  // Fast exit on magnitude: log2(n^e) vs bit_length(v).
  const double log2_w = e * std::log2(static_cast<double>(n));
  const double bits_v = static_cast<double>(bit_length(v));
  if (log2_w > bits_v + 2.0) return -1;
  if (log2_w < bits_v - 3.0) return 1;

  if (ed.den == 1) {
    Natural w;
    mpz_pow_ui(w.get_mpz_t(), Natural(n).get_mpz_t(), ed.num.get_ui());
    return cmp(v, w);
  }

  mpfr_prec_t prec = 128;
  for (int round = 0; round < 40; ++round, prec *= 2) {
    Mpfr lo(prec), hi(prec), t(prec);
    mpfr_set_ui(t.get(), static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_log(lo.get(), t.get(), MPFR_RNDD);
    mpfr_log(hi.get(), t.get(), MPFR_RNDU);
    mpfr_set_d(t.get(), e, MPFR_RNDN);  // exact dyadic
    mpfr_mul(lo.get(), lo.get(), t.get(), MPFR_RNDD);
    mpfr_mul(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    mpfr_exp(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
    Mpfr vf(prec);
    mpfr_set_z(vf.get(), v.get_mpz_t(), MPFR_RNDN);
    if (mpfr_cmp(vf.get(), lo.get()) < 0) return -1;
    if (mpfr_cmp(vf.get(), hi.get()) > 0) return 1;
    // Straddling: decide exactly whether n^e is rational (n a perfect
    // den-th power), in which case the comparison is exact arithmetic.
    if (mpz_fits_ulong_p(ed.den.get_mpz_t())) {
      Natural root;
      const int exact =
          mpz_root(root.get_mpz_t(), Natural(n).get_mpz_t(), ed.den.get_ui());
      if (exact) {
        if (!mpz_fits_ulong_p(ed.num.get_mpz_t())) break;  // refine further
        Natural w;
        mpz_pow_ui(w.get_mpz_t(), root.get_mpz_t(), ed.num.get_ui());
        return cmp(v, w);
      }
      // n^e irrational: refinement will separate.
    }
  }
  throw std::logic_error("compare_with_power: refinement did not converge");
}

int compare_with_lambda_threshold(const Natural& v, std::uint64_t n,
                                  double theta) {
  if (n < 2) throw std::domain_error("lambda threshold: n must be >= 2");
  if (!(theta > 0.0)) throw std::domain_error("lambda threshold: theta must be positive");
  // threshold = n^2 / (theta ln n), irrational for integer n >= 2.
  mpfr_prec_t prec = 128;
  for (int round = 0; round < 40; ++round, prec *= 2) {
    Mpfr lo(prec), hi(prec), t(prec), ln_lo(prec), ln_hi(prec);
    mpfr_set_ui(t.get(), static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_log(ln_lo.get(), t.get(), MPFR_RNDD);
    mpfr_log(ln_hi.get(), t.get(), MPFR_RNDU);
    mpfr_set_d(t.get(), theta, MPFR_RNDN);
    mpfr_mul(ln_lo.get(), ln_lo.get(), t.get(), MPFR_RNDD);
    mpfr_mul(ln_hi.get(), ln_hi.get(), t.get(), MPFR_RNDU);
    mpfr_set_ui(lo.get(), static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_sqr(lo.get(), lo.get(), MPFR_RNDN);  // n^2 exact at this precision
    mpfr_set(hi.get(), lo.get(), MPFR_RNDN);
    mpfr_div(lo.get(), lo.get(), ln_hi.get(), MPFR_RNDD);
    mpfr_div(hi.get(), hi.get(), ln_lo.get(), MPFR_RNDU);
    Mpfr vf(prec);
    mpfr_set_z(vf.get(), v.get_mpz_t(), MPFR_RNDN);
    if (mpfr_cmp(vf.get(), lo.get()) < 0) return -1;
    if (mpfr_cmp(vf.get(), hi.get()) > 0) return 1;
  }
  throw std::logic_error("lambda threshold: refinement did not converge");
}

}  // namespace maxgcd
