#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "maxgcd/primes.hpp"
#include "maxgcd/rng.hpp"

namespace maxgcd {

// Geometric multiplicity with tail P[X >= m] = p^{-m}, via inverse tail.
unsigned sample_geometric(std::uint64_t p, RngStream& stream);

// One row of the truncated geometric model: multiplicities per prime index,
// zero entries omitted (rows are sparse in practice).
struct GeometricRow {
  std::uint64_t prime_cutoff = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;  // (index, mult)
};

GeometricRow sample_geometric_row(const PrimeTable& table, RngStream& stream);

// L = sum over shared primes of min(mult_a, mult_b) * ln p. Rows must share
// the same cutoff. Truncation bias is bounded by tail_weight_bound and is
// reported, not corrected.
double pair_log_gcd(const GeometricRow& a, const GeometricRow& b,
                    const PrimeTable& table);

struct MomentEstimate {
  double mean = 0.0;
  double ci_halfwidth = 0.0;  // 99% normal CI
  std::size_t samples = 0;
};

// Monte Carlo estimate of E[e^{s L}] over independent geometric pairs,
// comparable to the truncated cs product at the same cutoff.
MomentEstimate moment_estimate(double s, std::size_t n_samples,
                               const PrimeTable& table, RngStream& stream);

// Binomial(n, q): inversion when the mean is small, Bernoulli sum otherwise.
std::uint64_t binomial_draw(std::uint64_t n, double q, RngStream& stream);

struct UrnConfig {
  std::uint64_t n = 0;
  PrimeWindow window;
  std::vector<double> weights;  // a_p = sqrt(ln p), aligned with window.primes

  static UrnConfig make(std::uint64_t n, PrimeWindow w);
};

struct UrnTrial {
  bool collision = false;
  std::optional<std::uint64_t> largest_colliding_prime;
};

// D_p ~ Binomial(n, 1/p) per window prime (distributionally identical to
// materializing n * |window| Bernoullis); collision when some D_p >= 2.
UrnTrial urn_trial(const UrnConfig& config, RngStream& stream);

// prod over the window of (1 - 1/p)^n (1 + n/(p-1)), exact up to rounding.
double urn_exact_no_collision(std::uint64_t n, const PrimeWindow& window);

// Tail sequence q_1 >= q_2 >= ... with q_k <= p^{-k}; the geometric-side
// thresholds are precomputed once so that sampling and validation compare
// against identical values.
struct CouplingSpec {
  std::uint64_t p = 0;
  std::vector<double> tails;            // q_k for k = 1..K
  std::vector<double> geometric_tails;  // p^{-k} for k = 1..K

  static CouplingSpec make(std::uint64_t p, std::vector<double> tails);
  // tails = geometric tails themselves (q_k = p^{-k}).
  static CouplingSpec geometric(std::uint64_t p, std::size_t k_max);
};

struct CoupledDraw {
  unsigned constrained = 0;
  unsigned geometric = 0;
};

// Single-uniform monotone coupling: both marginals exact, dominance
// constrained <= geometric on every draw.
CoupledDraw couple_inverse_tail(const CouplingSpec& spec, RngStream& stream);

// Product-of-uniforms construction executed literally:
//   X' = min{k: U_0...U_k > p^{-k}},  X1 = min{k: U_0...U_k > q_k}.
// Dominance is guaranteed by threshold ordering; the marginals are measured
// by callers, not asserted. Draws that never cross within K+64 steps are
// censored at that cap.
CoupledDraw couple_verbatim(const CouplingSpec& spec, RngStream& stream);

}  // namespace maxgcd
