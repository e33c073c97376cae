// Acceptance suite: one pass/fail line per criterion, all criteria always
// run, nonzero exit if any fails.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "maxgcd/bounds.hpp"
#include "maxgcd/gcd_stats.hpp"
#include "maxgcd/harness.hpp"
#include "maxgcd/models.hpp"
#include "maxgcd/poly.hpp"
#include "maxgcd/primes.hpp"
#include "maxgcd/report.hpp"
#include "maxgcd/sampler.hpp"
#include "maxgcd/semigroup.hpp"

using namespace maxgcd;

namespace {

int g_failures = 0;
std::vector<std::string> g_lines;

void report(int id, const char* name, bool ok, const std::string& detail) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), "[%s] criterion %2d: %s  (%s)",
                ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::puts(buf);
  std::fflush(stdout);
  g_lines.push_back(buf);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, ...) {
  va_list args;
  va_start(args, f);
  char buf[448];
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---- 1: quoted constants 17.64 / 12.44 reproduced at a documented cutoff.
void criterion_1() {
  const auto scan = find_constants_cutoff(0.999, 17.64, 12.44, 0.05, 40000000);
  bool ok = scan.found;
  std::string detail = "no simultaneous cutoff below 4e7";
  if (scan.found) {
    const auto deeper = cs_product(0.999, 10 * scan.cutoff);
    const double ratio_1e5 =
        cs_product(0.999, 100000).value / radical_product(0.999, 100000).value;
    const double ratio_xstar = scan.ratio;
    ok = std::abs(scan.cs_value - 17.64) <= 0.05 &&
         std::abs(scan.radical_value - 12.44) <= 0.05 &&
         std::abs(ratio_1e5 - 1.418) <= 0.005 &&
         std::abs(ratio_xstar - 1.418) <= 0.005 &&
         deeper.value > scan.cs_value + 0.05;  // converged exceeds the quote
    detail = fmt(
        "X*=%llu cs=%.4f rad=%.4f ratio(1e5)=%.4f; bracket: converged <= "
        "cs*exp(%.3g), and cs(10X*)=%.3f already exceeds the quote",
        (unsigned long long)scan.cutoff, scan.cs_value, scan.radical_value,
        ratio_1e5, scan.cs_log_tail, deeper.value);
  }
  report(1, "paper constants 17.64 / 12.44 at documented truncation", ok, detail);
}

// ---- 2: urn collision rate vs the exact product, n=2000, delta=1.
void criterion_2() {
  ExperimentConfig c;
  c.mode = Mode::Urn;
  c.n = 2000;
  c.delta = 1.0;
  c.theta = 8.0;
  c.trials = 1000;
  c.master_seed = 20140904;
  const auto r = run_urn_experiment(c);
  const auto* ev = r.find_event("window_collision");
  const double exact = ev->reference;  // 1 - exact_no_collision
  const double limit = 1.0 - std::exp(-1.0);
  const bool freq_ok = ev->wilson_lo <= exact && exact <= ev->wilson_hi;
  const bool limit_ok = std::abs(exact - limit) <= 0.03;
  report(2, "urn collision rate matches exact product and e^-1 limit",
         freq_ok && limit_ok,
         fmt("freq=%.4f wilson3=[%.4f,%.4f] exact=%.4f |exact-(1-e^-1)|=%.4f",
             ev->estimate, ev->wilson_lo, ev->wilson_hi, exact,
             std::abs(exact - limit)));
}

// ---- 3: real integers, n=100, alpha=1, delta=1: collision near 1-e^-1.
SummaryReport g_theta8_report;  // shared with criterion 5

void criterion_3() {
  ExperimentConfig c;
  c.mode = Mode::Integers;
  c.n = 100;
  c.alpha = Alpha::parse("1");
  c.theta = 8.0;
  c.delta = 1.0;
  c.trials = 1000;
  c.master_seed = 1;
  g_theta8_report = run_integer_experiment(c);
  const auto* ev = g_theta8_report.find_event("window_collision");
  const double limit = 1.0 - std::exp(-1.0);
  const bool ok = ev->estimate >= limit - 0.08 && ev->estimate <= limit + 0.08;
  report(3, "integer window-collision rate within 1-e^-1 +- 0.08 (finite-N slack)",
         ok,
         fmt("freq=%.4f target=%.4f+-0.08", ev->estimate, limit));
}

// ---- 4: geometric model: Markov bound and moment identity.
void criterion_4() {
  ExperimentConfig c;
  c.mode = Mode::Geometric;
  c.n = 50;
  c.s = 0.9;
  c.b = 0.0;  // truncated C_s
  c.trials = 2000;
  c.prime_cutoff = 10000;
  c.moment_samples = 400000;
  c.master_seed = 8;
  const auto r = run_geometric_experiment(c);
  const auto* ev = r.find_event("delta_exceeds_threshold");
  const double bound = ev->reference;  // C_s/(2b) = 1/2
  const double sigma = std::sqrt(bound * (1.0 - bound) / double(c.trials));
  const bool markov_ok = ev->estimate <= bound + 3.0 * sigma;
  const double mean = std::get<double>(*r.find_derived("moment_mean"));
  const double ci = std::get<double>(*r.find_derived("moment_ci99"));
  const double exact = std::get<double>(*r.find_derived("moment_exact_truncated"));
  const bool moment_ok = std::abs(mean - exact) <= ci;
  report(4, "geometric model respects the exceedance bound and moment identity",
         markov_ok && moment_ok,
         fmt("exceed=%.4f <= %.4f; moment=%.3f+-%.3f vs exact %.3f",
             ev->estimate, bound + 3.0 * sigma, mean, ci, exact));
}

// ---- 5: lower-bound orientation P[Lambda* < N^2/ln N^theta] <= e^{-theta/8}.
void criterion_5() {
  bool all_ok = true;
  std::string detail;
  for (const double theta : {4.0, 8.0}) {
    SummaryReport r;
    if (theta == 8.0) {
      r = g_theta8_report;  // same config as criterion 3
    } else {
      ExperimentConfig c;
      c.mode = Mode::Integers;
      c.n = 100;
      c.alpha = Alpha::parse("1");
      c.theta = theta;
      c.delta = theta / 8.0;
      c.trials = 1000;
      c.master_seed = 1;
      r = run_integer_experiment(c);
    }
    const auto* ev = r.find_event("lambda_below_threshold");
    const double bound = std::exp(-theta / 8.0);
    const double sigma = std::sqrt(bound * (1.0 - bound) / double(ev->trials));
    if (ev->estimate > bound + 3.0 * sigma) all_ok = false;
    detail += fmt("theta=%g: %.4f <= %.4f  ", theta, ev->estimate,
                  bound + 3.0 * sigma);
  }
  report(5, "largest-common-prime lower bound keeps its orientation", all_ok,
         detail);
}

// ---- 6: sandwich frequency at desk scale, eta = 1.
void criterion_6() {
  ExperimentConfig c;
  c.mode = Mode::Integers;
  c.n = 100;
  c.alpha = Alpha::parse("1");
  c.theta = 8.0;
  c.delta = 1.0;
  c.eta = 1.0;
  c.trials = 500;
  c.master_seed = 27182818;
  const auto r = run_integer_experiment(c);
  const auto* ev = r.find_event("sandwich");
  report(6, "max GCD lands in (N, N^3) at least 90% of the time", ev->estimate >= 0.90,
         fmt("freq=%.4f (window (100, 1e6))", ev->estimate));
}

// ---- 7: condition (5) dominance, exhaustive sweep.
void criterion_7() {
  std::uint64_t checked = 0, violations = 0;
  for (std::uint64_t M = 1; M <= 5000; ++M) {
    for (std::uint64_t r = 1; r <= 50 && r <= M; ++r) {
      for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        if (r % p == 0) continue;
        for (unsigned m = 1; m <= 5; ++m) {
          ++checked;
          if (!dominance_ratio(M, r, p, m).ok) ++violations;
        }
      }
    }
  }
  report(7, "conditional divisibility dominance has zero violations",
         violations == 0,
         fmt("%llu cases checked, %llu violations", (unsigned long long)checked,
             (unsigned long long)violations));
}

// ---- 8: phi_solve residuals and envelope across the grid.
void criterion_8() {
  bool ok = true;
  std::string worst = "";
  for (const std::uint64_t n : {1000, 10000, 100000, 1000000}) {
    for (const double delta : {0.5, 1.0, 2.0}) {
      const auto sol = phi_solve(n, delta);
      const auto env = phi_envelope_check(sol);
      if (sol.residual > 1e-9 * delta || !env.lower_ok || !env.upper_ok) {
        ok = false;
        worst = fmt("n=%llu delta=%g residual=%.3g", (unsigned long long)n,
                    delta, sol.residual);
      }
      if (n == 1000000 && (env.ratio < 0.24 || env.ratio > 0.26)) {
        ok = false;
        worst = fmt("ratio=%.4f at n=1e6 delta=%g", env.ratio, delta);
      }
    }
  }
  report(8, "phi_N[delta] residuals <= 1e-9 delta with envelope bounds", ok,
         ok ? "12 grid points, all residuals and envelopes in contract"
            : worst);
}

// ---- 9: couplings, 1e6 draws each.
void criterion_9() {
  const std::uint64_t p = 2;
  std::vector<double> tails;
  double t = 1.0;
  for (int k = 1; k <= 20; ++k) {
    t *= 0.5;
    tails.push_back(t * 0.5);
  }
  const auto spec = CouplingSpec::make(p, tails);
  RngStream s1(97, 0);
  const std::size_t n = 1000000;
  std::vector<std::uint64_t> c_con(24, 0), c_geo(24, 0);
  bool dominance = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = couple_inverse_tail(spec, s1);
    if (d.constrained > d.geometric) dominance = false;
    c_con[std::min<unsigned>(d.constrained, 23)]++;
    c_geo[std::min<unsigned>(d.geometric, 23)]++;
  }
  // chi-square both marginals at significance 1e-3 (Wilson-Hilferty crit).
  auto chi2 = [&](const std::vector<std::uint64_t>& counts,
                  const std::vector<double>& law_tails, double* df) {
    std::vector<double> expected;
    std::vector<double> observed;
    double ea = 0, oa = 0;
    for (std::size_t m = 0; m < counts.size(); ++m) {
      const double hi =
          m == 0 ? 1.0 : (m - 1 < law_tails.size() ? law_tails[m - 1] : 0.0);
      const double lo = m < law_tails.size() ? law_tails[m] : 0.0;
      ea += (hi - lo) * static_cast<double>(n);
      oa += static_cast<double>(counts[m]);
      if (ea >= 8.0) {
        expected.push_back(ea);
        observed.push_back(oa);
        ea = oa = 0;
      }
    }
    if (ea > 0 && !expected.empty()) {
      expected.back() += ea;
      observed.back() += oa;
    }
    double stat = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const double d = observed[i] - expected[i];
      stat += d * d / expected[i];
    }
    *df = static_cast<double>(expected.size()) - 1.0;
    return stat;
  };
  auto chi2_crit = [](double df) {
    const double z = 3.090232306167814;  // upper 1e-3
    const double a = 2.0 / (9.0 * df);
    const double u = 1.0 - a + z * std::sqrt(a);
    return df * u * u * u;
  };
  double df_con = 0, df_geo = 0;
  const double stat_con = chi2(c_con, spec.tails, &df_con);
  const double stat_geo = chi2(c_geo, spec.geometric_tails, &df_geo);
  const bool marginals_ok = stat_con < chi2_crit(df_con) && stat_geo < chi2_crit(df_geo);

  // Verbatim construction: dominance holds; measure the geometric-side tail.
  RngStream s2(97, 1);
  bool v_dominance = true;
  std::vector<std::uint64_t> v_ge(8, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = couple_verbatim(spec, s2);
    if (d.constrained > d.geometric) v_dominance = false;
    for (unsigned m = 1; m <= 7; ++m) v_ge[m] += d.geometric >= m;
  }
  std::string finding = "verbatim tail vs 2^-m:";
  for (unsigned m = 1; m <= 5; ++m) {
    finding += fmt(" m=%u:%.3f/%.3f", m, double(v_ge[m]) / double(n),
                   std::pow(2.0, -double(m)));
  }
  std::printf("  [note] %s (discrepancy is a recorded finding, not a failure)\n",
              finding.c_str());

  report(9, "couplings: dominance everywhere, inverse-tail marginals exact",
         dominance && marginals_ok && v_dominance,
         fmt("inverse-tail chi2 %.1f/%.1f (crit %.1f/%.1f), verbatim dominance %s",
             stat_con, stat_geo, chi2_crit(df_con), chi2_crit(df_geo),
             v_dominance ? "held" : "VIOLATED"));
}

// ---- 10: determinism: byte-identical files; thread-count invariance.
void criterion_10() {
  ExperimentConfig c;
  c.mode = Mode::Integers;
  c.n = 40;
  c.alpha = Alpha::parse("1");
  c.theta = 8.0;
  c.delta = 1.0;
  c.trials = 120;
  c.master_seed = 41421356;

  setenv("MAXGCD_THREADS", "1", 1);
  const auto r1 = run_integer_experiment(c);
  emit_report(r1, "json", "/tmp/maxgcd_accept_a.json");
  emit_report(r1, "csv", "/tmp/maxgcd_accept_a.csv");
  const auto r1b = run_integer_experiment(c);
  emit_report(r1b, "json", "/tmp/maxgcd_accept_b.json");
  emit_report(r1b, "csv", "/tmp/maxgcd_accept_b.csv");
  setenv("MAXGCD_THREADS", "8", 1);
  const auto r8 = run_integer_experiment(c);
  unsetenv("MAXGCD_THREADS");

  const bool bytes_ok =
      slurp("/tmp/maxgcd_accept_a.json") == slurp("/tmp/maxgcd_accept_b.json") &&
      slurp("/tmp/maxgcd_accept_a.csv") == slurp("/tmp/maxgcd_accept_b.csv") &&
      !slurp("/tmp/maxgcd_accept_a.json").empty();
  const bool threads_ok = r1 == r8;
  std::remove("/tmp/maxgcd_accept_a.json");
  std::remove("/tmp/maxgcd_accept_b.json");
  std::remove("/tmp/maxgcd_accept_a.csv");
  std::remove("/tmp/maxgcd_accept_b.csv");
  report(10, "byte-identical reports; MAXGCD_THREADS 1 vs 8 agree",
         bytes_ok && threads_ok,
         fmt("bytes %s, aggregates %s", bytes_ok ? "equal" : "DIFFER",
             threads_ok ? "equal" : "DIFFER"));
}

// ---- 11: polynomial instance: counts vs exhaustive testing; full pipeline.
void criterion_11() {
  // Exhaustive oracle: sieve out every product of two lower-degree monics.
  auto exhaustive_count = [](int d) -> std::uint64_t {
    const std::uint32_t q = 2;
    const std::size_t total = std::size_t{1} << d;
    std::vector<char> composite(total, 0);
    for (int da = 1; da <= d / 2; ++da) {
      const int db = d - da;
      for (std::size_t ia = 0; ia < (std::size_t{1} << da); ++ia) {
        std::vector<std::uint32_t> ca(da + 1, 0);
        ca[da] = 1;
        for (int bit = 0; bit < da; ++bit) ca[bit] = (ia >> bit) & 1;
        const PolyElement a(q, ca);
        for (std::size_t ib = 0; ib < (std::size_t{1} << db); ++ib) {
          std::vector<std::uint32_t> cb(db + 1, 0);
          cb[db] = 1;
          for (int bit = 0; bit < db; ++bit) cb[bit] = (ib >> bit) & 1;
          const PolyElement prod = poly_mul(a, PolyElement(q, cb));
          std::size_t idx = 0;
          for (int bit = 0; bit < d; ++bit) {
            idx |= static_cast<std::size_t>(prod.coeffs()[bit]) << bit;
          }
          composite[idx] = 1;
        }
      }
    }
    std::uint64_t count = 0;
    for (const char c : composite) count += !c;
    return count;
  };

  bool counts_ok = true;
  std::string bad;
  for (int d = 1; d <= 12; ++d) {
    const auto enumerated = irreducibles_of_degree(2, d).size();
    const auto formula = irreducible_count(2, d);
    const auto brute = exhaustive_count(d);
    if (enumerated != brute || formula != brute) {
      counts_ok = false;
      bad = fmt("degree %d: enum=%zu formula=%llu brute=%llu", d, enumerated,
                (unsigned long long)formula, (unsigned long long)brute);
    }
  }

  ExperimentConfig c;
  c.mode = Mode::Semigroup;
  c.instance = "poly";
  c.q = 2;
  c.n = 40;
  c.alpha = Alpha::parse("1");
  c.delta = 1.0;
  c.theta = 8.0;
  c.trials = 300;
  c.master_seed = 17320508;
  const auto r = run_semigroup_experiment(c);
  const auto* ev = r.find_event("window_collision");
  const bool pipeline_ok = ev != nullptr && r.trials.size() == c.trials;
  report(11, "F2[x] irreducible counts exhaustively verified; pipeline runs",
         counts_ok && pipeline_ok,
         counts_ok
             ? fmt("degrees 1..12 agree; poly collision rate %.3f vs 1-e^-1=%.3f "
                   "(qualitative)",
                   ev->estimate, 1.0 - std::exp(-1.0))
             : bad);
}

}  // namespace

int main() {
  std::puts("maxgcd acceptance suite");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("\n%d/11 criteria passed\n", 11 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
