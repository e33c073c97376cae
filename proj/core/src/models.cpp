#include "maxgcd/models.hpp"

#include <cmath>
#include <stdexcept>

#include "maxgcd/kahan.hpp"

namespace maxgcd {

unsigned sample_geometric(std::uint64_t p, RngStream& stream) {
  if (p < 2) throw std::domain_error("sample_geometric: p must be >= 2");
  const double u = stream.next_unit();
  const double inv_lp = 1.0 / std::log(static_cast<double>(p));
  if (u > 1.0 / static_cast<double>(p)) return 0;  // X >= 1 iff u <= 1/p
  return static_cast<unsigned>(std::floor(-std::log(u) * inv_lp));
}

GeometricRow sample_geometric_row(const PrimeTable& table, RngStream& stream) {
  GeometricRow row;
  row.prime_cutoff = table.limit;
  for (std::uint32_t i = 0; i < table.primes.size(); ++i) {
    const double u = stream.next_unit();
    const double pd = static_cast<double>(table.primes[i]);
    if (u > 1.0 / pd) continue;
    const auto mult =
        static_cast<std::uint32_t>(std::floor(-std::log(u) / std::log(pd)));
    if (mult > 0) row.entries.emplace_back(i, mult);
  }
  return row;
}

double pair_log_gcd(const GeometricRow& a, const GeometricRow& b,
                    const PrimeTable& table) {
  if (a.prime_cutoff != b.prime_cutoff) {
    throw std::domain_error("pair_log_gcd: rows have mismatched prime cutoffs");
  }
  KahanSum acc;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      const std::uint32_t m = std::min(ia->second, ib->second);
      acc.add(static_cast<double>(m) *
              std::log(static_cast<double>(table.primes[ia->first])));
      ++ia;
      ++ib;
    }
  }
  return acc.value();
}

MomentEstimate moment_estimate(double s, std::size_t n_samples,
                               const PrimeTable& table, RngStream& stream) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("moment_estimate: s must lie in (0,1)");
  if (n_samples < 2) throw std::domain_error("moment_estimate: need at least 2 samples");
  KahanSum sum, sum_sq;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const GeometricRow r1 = sample_geometric_row(table, stream);
    const GeometricRow r2 = sample_geometric_row(table, stream);
    const double x = std::exp(s * pair_log_gcd(r1, r2, table));
    sum.add(x);
    sum_sq.add(x * x);
  }
  MomentEstimate out;
  out.samples = n_samples;
  const double n = static_cast<double>(n_samples);
  out.mean = sum.value() / n;
  const double var = std::max(0.0, sum_sq.value() / n - out.mean * out.mean);
  const double z99 = 2.5758293035489004;
  out.ci_halfwidth = z99 * std::sqrt(var / n);
  return out;
}

std::uint64_t binomial_draw(std::uint64_t n, double q, RngStream& stream) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("binomial_draw: q outside [0,1]");
  if (n == 0 || q == 0.0) return 0;
  if (q == 1.0) return n;
  const double mean = static_cast<double>(n) * q;
  if (mean < 10.0) {
    // Inversion: walk the pmf from k = 0.
    const double u = stream.next_unit();
    double pk = std::exp(static_cast<double>(n) * std::log1p(-q));
    double cdf = pk;
    std::uint64_t k = 0;
    const double ratio = q / (1.0 - q);
    while (u > cdf && k < n) {
      pk *= static_cast<double>(n - k) / static_cast<double>(k + 1) * ratio;
      ++k;
      cdf += pk;
      if (pk == 0.0) break;  // beyond double resolution: tail mass exhausted
    }
    return k;
  }
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < n; ++i) count += stream.next_bernoulli(q);
  return count;
}

UrnConfig UrnConfig::make(std::uint64_t n, PrimeWindow w) {
  if (n < 1) throw std::domain_error("urn: n must be >= 1");
  UrnConfig c;
  c.n = n;
  c.weights.reserve(w.primes.size());
  for (const std::uint64_t p : w.primes) {
    c.weights.push_back(std::sqrt(std::log(static_cast<double>(p))));
  }
  c.window = std::move(w);
  return c;
}

UrnTrial urn_trial(const UrnConfig& config, RngStream& stream) {
  if (config.window.primes.empty()) {
    throw std::domain_error("urn_trial: window must be nonempty");
  }
  UrnTrial t;
  for (const std::uint64_t p : config.window.primes) {
    const std::uint64_t d =
        binomial_draw(config.n, 1.0 / static_cast<double>(p), stream);
    if (d >= 2) {
      t.collision = true;
      t.largest_colliding_prime = p;  // ascending scan: last wins
    }
  }
  return t;
}

double urn_exact_no_collision(std::uint64_t n, const PrimeWindow& window) {
  if (n < 1) throw std::domain_error("urn_exact_no_collision: n must be >= 1");
  KahanSum log_acc;
  const double nd = static_cast<double>(n);
  for (const std::uint64_t p : window.primes) {
    const double pd = static_cast<double>(p);
    log_acc.add(nd * std::log1p(-1.0 / pd));
    log_acc.add(std::log1p(nd / (pd - 1.0)));
  }
  return std::exp(log_acc.value());
}

CouplingSpec CouplingSpec::make(std::uint64_t p, std::vector<double> tails) {
  if (p < 2) throw std::domain_error("coupling: p must be >= 2");
  CouplingSpec spec;
  spec.p = p;
  spec.geometric_tails.reserve(tails.size());
  double t = 1.0;
  const double inv_p = 1.0 / static_cast<double>(p);
  double prev = 1.0;
  for (std::size_t k = 0; k < tails.size(); ++k) {
    t *= inv_p;
    spec.geometric_tails.push_back(t);
    const double q = tails[k];
    if (!(q >= 0.0) || q > prev || q > t) {
      throw std::domain_error(
          "coupling: tails must be nonincreasing, nonnegative and dominated by p^-k");
    }
    prev = q;
  }
  spec.tails = std::move(tails);
  return spec;
}

CouplingSpec CouplingSpec::geometric(std::uint64_t p, std::size_t k_max) {
  std::vector<double> tails;
  tails.reserve(k_max);
  double t = 1.0;
  const double inv_p = 1.0 / static_cast<double>(p);
  for (std::size_t k = 0; k < k_max; ++k) {
    t *= inv_p;
    tails.push_back(t);
  }
  return make(p, std::move(tails));
}

CoupledDraw couple_inverse_tail(const CouplingSpec& spec, RngStream& stream) {
  const double u = stream.next_unit();
  CoupledDraw d;
  // Constrained: tail law given by spec.tails, zero beyond K.
  while (d.constrained < spec.tails.size() && u <= spec.tails[d.constrained]) {
    ++d.constrained;
  }
  // Geometric: same uniform against p^{-k}; continue past K as needed.
  while (d.geometric < spec.geometric_tails.size() &&
         u <= spec.geometric_tails[d.geometric]) {
    ++d.geometric;
  }
  if (d.geometric == spec.geometric_tails.size()) {
    double t = spec.geometric_tails.empty() ? 1.0 : spec.geometric_tails.back();
    const double inv_p = 1.0 / static_cast<double>(spec.p);
    while (true) {
      t *= inv_p;
      if (!(u <= t)) break;
      ++d.geometric;
    }
  }
  return d;
}

CoupledDraw couple_verbatim(const CouplingSpec& spec, RngStream& stream) {
  const std::size_t cap = spec.tails.size() + 64;
  const double inv_p = 1.0 / static_cast<double>(spec.p);
  double prod = 1.0;
  double geo_thr = 1.0;  // p^{-k} at step k
  bool have_con = false, have_geo = false;
  CoupledDraw d;
  for (std::size_t k = 0; k <= cap; ++k) {
    prod *= stream.next_unit();
    const double con_thr =
        k == 0 ? 1.0 : (k <= spec.tails.size() ? spec.tails[k - 1] : 0.0);
    if (!have_con && prod > con_thr) {
      d.constrained = static_cast<unsigned>(k);
      have_con = true;
    }
    if (!have_geo && prod > geo_thr) {
      d.geometric = static_cast<unsigned>(k);
      have_geo = true;
    }
    if (have_con && have_geo) return d;
    geo_thr *= inv_p;
  }
  // Censor at the cap; q_k <= p^{-k} keeps the order even here.
  if (!have_con) d.constrained = static_cast<unsigned>(cap + 1);
  if (!have_geo) d.geometric = static_cast<unsigned>(cap + 1);
  return d;
}

}  // namespace maxgcd
