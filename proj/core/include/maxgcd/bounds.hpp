#pragma once

#include <cstdint>

#include "maxgcd/natural.hpp"

namespace maxgcd {

// Exact per-prime factor 1 + (p^s - 1)/(p^2 - p^s): the exponential moment
// of p^{s min(X', X'')} for two independent geometric multiplicities.
double exact_min_moment(std::uint64_t p, double s);

struct ProductResult {
  double value = 1.0;
  std::uint64_t cutoff = 0;      // largest prime included
  double log_tail_bound = 0.0;   // log-mass omitted beyond requested cutoff
  double s = 0.0;
};

// Truncated Euler products, accumulated in log space with compensated
// summation. log_tail_bound = X^{s-1}/(1-s), from sum_{n>X} n^{s-2}.
ProductResult cs_product(double s, std::uint64_t cutoff);
ProductResult radical_product(double s, std::uint64_t cutoff);

// ceil(n^{2/s} b^{1/s}) as an exact Natural.
Natural markov_threshold(std::uint64_t n, double s, double b);

struct PhiSolution {
  std::uint64_t n = 0;
  double delta = 0.0;
  double phi = 0.0;
  double residual = 0.0;  // |integral - delta|
};

// Solves  int_phi^{2 phi} n^2 dx / (2 x^2 ln x) = delta  for phi > e by
// bisection over an adaptive-Simpson evaluation of the integral.
PhiSolution phi_solve(std::uint64_t n, double delta);

struct PhiEnvelope {
  bool lower_ok = false;  // phi > n^2/(8 delta ln n)
  bool upper_ok = false;  // phi < n^2/2
  double ratio = 0.0;     // phi ln(phi) delta / n^2, tends to 1/4
};

PhiEnvelope phi_envelope_check(const PhiSolution& sol);

// Rigorous bound on sum_{p > cutoff} ln(p)/p^2 via (ln X + 1)/X.
double tail_weight_bound(std::uint64_t cutoff);

// Streaming scan of both truncated products for the first prime cutoff at
// which cs matches cs_target and radical matches rad_target within tol
// simultaneously. Used to pin down the truncation behind quoted constants.
struct ConstantsScan {
  bool found = false;
  std::uint64_t cutoff = 0;      // prime at which both targets are met
  double cs_value = 0.0;
  double radical_value = 0.0;
  double cs_log_tail = 0.0;      // tail bound at `cutoff`
  double radical_log_tail = 0.0;
  double ratio = 0.0;            // cs_value / radical_value
};

ConstantsScan find_constants_cutoff(double s, double cs_target,
                                    double rad_target, double tol,
                                    std::uint64_t max_cutoff);

// Adaptive Simpson on [a,b] with a per-panel absolute tolerance.
double integrate_adaptive(double (*f)(double, const void*), const void* ctx,
                          double a, double b, double panel_tol);

}  // namespace maxgcd
