#include "maxgcd/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "maxgcd/certified.hpp"
#include "maxgcd/errors.hpp"
#include "maxgcd/kahan.hpp"
#include "maxgcd/primes.hpp"

namespace maxgcd {

double exact_min_moment(std::uint64_t p, double s) {
  if (p < 2) throw std::domain_error("exact_min_moment: p must be a prime >= 2");
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("exact_min_moment: s must lie in (0,1)");
  const double pd = static_cast<double>(p);
  const double ps = std::pow(pd, s);
  return 1.0 + (ps - 1.0) / (pd * pd - ps);
}

namespace {

double log_cs_factor(std::uint64_t p, double s) {
  const double pd = static_cast<double>(p);
  const double ps = std::pow(pd, s);
  return std::log1p((ps - 1.0) / (pd * pd - ps));
}

double log_radical_factor(std::uint64_t p, double s) {
  const double pd = static_cast<double>(p);
  // 1 - p^-2 + p^{s-2}
  return std::log1p(std::pow(pd, s - 2.0) - 1.0 / (pd * pd));
}

double tail_log_bound(std::uint64_t cutoff, double s) {
  return std::pow(static_cast<double>(cutoff), s - 1.0) / (1.0 - s);
}

ProductResult product_over_primes(double s, std::uint64_t cutoff,
                                  double (*log_factor)(std::uint64_t, double)) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("product: s must lie in (0,1)");
  if (cutoff < 2) throw std::domain_error("product: cutoff must be >= 2");
  ProductResult out;
  out.s = s;
  KahanSum acc;
  for_each_prime(cutoff, [&](std::uint64_t p) {
    acc.add(log_factor(p, s));
    out.cutoff = p;
  });
  out.value = std::exp(acc.value());
  out.log_tail_bound = tail_log_bound(cutoff, s);
  return out;
}

}  // namespace

ProductResult cs_product(double s, std::uint64_t cutoff) {
  return product_over_primes(s, cutoff, &log_cs_factor);
}

ProductResult radical_product(double s, std::uint64_t cutoff) {
  return product_over_primes(s, cutoff, &log_radical_factor);
}

Natural markov_threshold(std::uint64_t n, double s, double b) {
  return ceil_power_threshold(n, s, b);
}

namespace {

struct PhiIntegrand {
  double n2;
};

double phi_integrand(double x, const void* ctx) {
  const auto* c = static_cast<const PhiIntegrand*>(ctx);
  return c->n2 / (2.0 * x * x * std::log(x));
}

double simpson(double fa, double fm, double fb, double h) {
  return (fa + 4.0 * fm + fb) * h / 6.0;
}

double adapt(double (*f)(double, const void*), const void* ctx, double a,
             double m, double b, double fa, double fm, double fb, double whole,
             double panel_tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm, ctx);
  const double frm = f(rm, ctx);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double err = left + right - whole;
  // The relative floor keeps far-from-root evaluations (bracketing probes
  // whose integrals dwarf the target) terminating; near the root the
  // absolute panel tolerance is the binding one.
  const double tol = std::max(panel_tol, 1e-13 * std::abs(whole));
  if (std::abs(err) <= 15.0 * tol || depth >= 48) {
    return left + right + err / 15.0;
  }
  return adapt(f, ctx, a, lm, m, fa, flm, fm, left, panel_tol, depth + 1) +
         adapt(f, ctx, m, rm, b, fm, frm, fb, right, panel_tol, depth + 1);
}

}  // namespace

double integrate_adaptive(double (*f)(double, const void*), const void* ctx,
                          double a, double b, double panel_tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a, ctx);
  const double fm = f(m, ctx);
  const double fb = f(b, ctx);
  return adapt(f, ctx, a, m, b, fa, fm, fb, simpson(fa, fm, fb, b - a),
               panel_tol, 0);
}

PhiSolution phi_solve(std::uint64_t n, double delta) {
  if (n < 2) throw std::domain_error("phi_solve: n must be >= 2");
  if (!(delta > 0.0)) throw std::domain_error("phi_solve: delta must be positive");

  const PhiIntegrand ctx{static_cast<double>(n) * static_cast<double>(n)};
  const double panel_tol = 1e-12 * delta;
  const auto eval = [&](double phi) {
    return integrate_adaptive(&phi_integrand, &ctx, phi, 2.0 * phi, panel_tol);
  };

  const double e = 2.718281828459045;
  if (eval(e) < delta) {
    throw infeasible_error("phi_solve: no root with phi > e; n too small for delta");
  }

  // Seed from phi ln(phi) ~ n^2/(4 delta), then expand until bracketing.
  double guess = ctx.n2 / (4.0 * delta);
  for (int i = 0; i < 4; ++i) {
    guess = ctx.n2 / (4.0 * delta * std::max(1.0, std::log(guess)));
  }
  double lo = std::max(e, guess / 4.0);
  double hi = std::max(2.0 * e, guess * 4.0);
  while (eval(lo) < delta && lo > e) lo = std::max(e, lo / 2.0);
  while (eval(hi) > delta) hi *= 2.0;

  PhiSolution sol;
  sol.n = n;
  sol.delta = delta;
  const double target_residual = 0.5e-9 * delta;
  double mid = lo, fmid = 0.0;
  for (int it = 0; it < 400; ++it) {
    mid = 0.5 * (lo + hi);
    fmid = eval(mid);
    if (std::abs(fmid - delta) <= target_residual) break;
    if (fmid > delta) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * mid) break;
  }
  sol.phi = mid;
  sol.residual = std::abs(fmid - delta);
  return sol;
}

PhiEnvelope phi_envelope_check(const PhiSolution& sol) {
  if (sol.n < 16) throw std::domain_error("phi_envelope_check: requires n >= 16");
  PhiEnvelope env;
  const double n2 = static_cast<double>(sol.n) * static_cast<double>(sol.n);
  env.lower_ok = sol.phi > n2 / (8.0 * sol.delta * std::log(static_cast<double>(sol.n)));
  env.upper_ok = sol.phi < n2 / 2.0;
  env.ratio = sol.phi * std::log(sol.phi) * sol.delta / n2;
  return env;
}

double tail_weight_bound(std::uint64_t cutoff) {
  if (cutoff < 2) throw std::domain_error("tail_weight_bound: cutoff must be >= 2");
  const double x = static_cast<double>(cutoff);
  return (std::log(x) + 1.0) / x;
}

ConstantsScan find_constants_cutoff(double s, double cs_target,
                                    double rad_target, double tol,
                                    std::uint64_t max_cutoff) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("constants scan: s must lie in (0,1)");
  ConstantsScan scan;
  KahanSum cs_acc, rad_acc;
  for_each_prime_while(max_cutoff, [&](std::uint64_t p) {
    cs_acc.add(log_cs_factor(p, s));
    rad_acc.add(log_radical_factor(p, s));
    const double cs_v = std::exp(cs_acc.value());
    const double rad_v = std::exp(rad_acc.value());
    if (std::abs(cs_v - cs_target) <= tol && std::abs(rad_v - rad_target) <= tol) {
      scan.found = true;
      scan.cutoff = p;
      scan.cs_value = cs_v;
      scan.radical_value = rad_v;
      scan.cs_log_tail = tail_log_bound(p, s);
      scan.radical_log_tail = scan.cs_log_tail;
      scan.ratio = cs_v / rad_v;
      return false;
    }
    // Both products are monotone in the cutoff; once past both target
    // windows there is nothing left to find.
    return !(cs_v > cs_target + tol && rad_v > rad_target + tol);
  });
  return scan;
}

}  // namespace maxgcd
