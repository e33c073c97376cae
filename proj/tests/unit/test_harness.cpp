#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "maxgcd/errors.hpp"
#include "maxgcd/gcd_stats.hpp"
#include "maxgcd/harness.hpp"
#include "maxgcd/primes.hpp"
#include "maxgcd/report.hpp"
#include "maxgcd/sampler.hpp"

using namespace maxgcd;

TEST_SUITE_BEGIN("harness");

namespace {

ExperimentConfig small_integer_config() {
  ExperimentConfig c;
  c.mode = Mode::Integers;
  c.n = 20;
  c.alpha = Alpha::parse("1");
  c.theta = 8.0;
  c.delta = 1.0;
  c.trials = 40;
  c.prime_cutoff = 10000;
  c.master_seed = 7;
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("wilson interval boundaries and worked value") {
  CHECK(wilson_interval(0, 50, 1.96).first == 0.0);
  CHECK(wilson_interval(50, 50, 1.96).second == 1.0);
  const auto [lo, hi] = wilson_interval(632, 1000, 1.96);
  CHECK(lo == doctest::Approx(0.6018).epsilon(1.5e-3));
  CHECK(hi == doctest::Approx(0.6617).epsilon(1.5e-3));
  CHECK_THROWS_AS(wilson_interval(5, 0, 1.96), std::domain_error);
  CHECK_THROWS_AS(wilson_interval(5, 4, 1.96), std::domain_error);
  CHECK_THROWS_AS(wilson_interval(1, 4, 0.0), std::domain_error);
}

TEST_CASE("config validation") {
  ExperimentConfig c = small_integer_config();
  CHECK_NOTHROW(c.validate());
  c.theta = 4.0;  // now theta != 8 delta
  CHECK_THROWS_AS(c.validate(), config_error);
  c.theta = 8.0;
  c.s = 1.0;
  CHECK_THROWS_AS(c.validate(), config_error);
}

TEST_CASE("summary report is a pure function of config and seed") {
  const auto c = small_integer_config();
  const auto r1 = run_integer_experiment(c);
  const auto r2 = run_integer_experiment(c);
  CHECK(r1 == r2);
  CHECK(report_to_json(r1) == report_to_json(r2));

  ExperimentConfig u = c;
  u.mode = Mode::Urn;
  u.n = 100;
  CHECK(run_urn_experiment(u) == run_urn_experiment(u));

  ExperimentConfig g = c;
  g.mode = Mode::Geometric;
  g.prime_cutoff = 500;
  g.moment_samples = 500;
  CHECK(run_geometric_experiment(g) == run_geometric_experiment(g));
}

TEST_CASE("thread count does not change aggregates or bytes") {
  const auto c = small_integer_config();
  setenv("MAXGCD_THREADS", "1", 1);
  const auto r1 = run_integer_experiment(c);
  setenv("MAXGCD_THREADS", "8", 1);
  const auto r8 = run_integer_experiment(c);
  unsetenv("MAXGCD_THREADS");
  CHECK(r1 == r8);
  CHECK(report_to_json(r1) == report_to_json(r8));
}

TEST_CASE("json round-trip reproduces the report") {
  const auto r = run_integer_experiment(small_integer_config());
  const auto parsed = parse_report_json(report_to_json(r));
  CHECK(parsed == r);
}

TEST_CASE("csv has trials + 1 rows and fixed columns") {
  const auto c = small_integer_config();
  const auto r = run_integer_experiment(c);
  const std::string csv = report_to_csv(r);
  std::size_t rows = 0;
  for (char ch : csv) rows += ch == '\n';
  CHECK(rows == c.trials + 1);
  CHECK(csv.rfind("trial_index,collision,event_lambda_low,event_markov_gamma,"
                  "event_markov_rad,event_sandwich,gamma_star,lambda_star,"
                  "largest_colliding_prime,rad_star",
                  0) == 0);
}

TEST_CASE("emit_report writes byte-identical files across runs") {
  const auto c = small_integer_config();
  const auto r1 = run_integer_experiment(c);
  const auto r2 = run_integer_experiment(c);
  emit_report(r1, "json", "/tmp/maxgcd_det_a.json");
  emit_report(r2, "json", "/tmp/maxgcd_det_b.json");
  CHECK(slurp("/tmp/maxgcd_det_a.json") == slurp("/tmp/maxgcd_det_b.json"));
  std::remove("/tmp/maxgcd_det_a.json");
  std::remove("/tmp/maxgcd_det_b.json");
  CHECK_THROWS_AS(emit_report(r1, "json", "/nonexistent-dir/x.json"), io_error);
  CHECK_THROWS_AS(emit_report(r1, "xml", ""), config_error);
}

TEST_CASE("integer-mode collision indicator equals a gcd recomputation") {
  // Some pair shares p in the window  <=>  p divides that pairwise gcd.
  ExperimentConfig c = small_integer_config();
  c.n = 10;
  c.trials = 30;
  const auto r = run_integer_experiment(c);
  const auto* phi = std::get_if<double>(r.find_derived("phi"));
  REQUIRE(phi != nullptr);
  const auto win = window(*phi);
  const auto range = SampleRange::make(c.alpha, c.n);
  for (const auto& trial : r.trials) {
    RngStream stream(c.master_seed, trial.trial_index);
    const auto batch = draw_batch(range, c.n, stream);
    bool shared = false;
    for (std::size_t j = 0; j < batch.size() && !shared; ++j) {
      for (std::size_t k = j + 1; k < batch.size() && !shared; ++k) {
        const Natural g = gcd(batch[j], batch[k]);
        for (const auto p : win.primes) {
          if (mpz_divisible_ui_p(g.get_mpz_t(), p)) {
            shared = true;
            break;
          }
        }
      }
    }
    const auto* flag = std::get_if<bool>(trial.find("collision"));
    REQUIRE(flag != nullptr);
    CHECK(*flag == shared);
  }
}

TEST_CASE("event orientations match their inequalities") {
  ExperimentConfig c = small_integer_config();
  c.n = 12;
  c.trials = 20;
  c.eta = 1.0;
  const auto r = run_integer_experiment(c);
  const auto* threshold_str = std::get_if<std::string>(r.find_derived("markov_threshold"));
  REQUIRE(threshold_str != nullptr);
  const Natural threshold(*threshold_str);
  for (const auto& trial : r.trials) {
    const Natural gamma(std::get<std::string>(*trial.find("gamma_star")));
    const Natural rad(std::get<std::string>(*trial.find("rad_star")));
    // eta = 1: sandwich bounds are exact integers n^1 and n^3.
    const bool sandwich = gamma > Natural(12) && gamma < Natural(12 * 12 * 12);
    CHECK(std::get<bool>(*trial.find("event_sandwich")) == sandwich);
    CHECK(std::get<bool>(*trial.find("event_markov_gamma")) == (gamma >= threshold));
    CHECK(std::get<bool>(*trial.find("event_markov_rad")) == (rad >= threshold));
  }
}

TEST_CASE("integer-mode Markov events stay under their one-sided bound") {
  ExperimentConfig c = small_integer_config();
  c.n = 40;
  c.trials = 150;
  c.s = 0.9;
  c.b = 0.0;  // b = truncated C_s, so both references are 1/2
  const auto r = run_integer_experiment(c);
  const auto* gamma_ev = r.find_event("gamma_exceeds_markov");
  REQUIRE(gamma_ev != nullptr);
  CHECK(gamma_ev->reference == doctest::Approx(0.5));  // C_s/(2 C_s)
  const auto* rad_ev = r.find_event("rad_exceeds_markov");
  REQUIRE(rad_ev != nullptr);
  CHECK(rad_ev->reference < 0.5);  // radical product is the smaller one
  for (const auto* ev : {gamma_ev, rad_ev}) {
    const double sigma = std::sqrt(ev->reference * (1 - ev->reference) /
                                   double(c.trials));
    CHECK(ev->estimate <= ev->reference + 3.0 * sigma);
  }
}

TEST_CASE("urn experiment matches its exact product reference") {
  ExperimentConfig c;
  c.mode = Mode::Urn;
  c.n = 200;
  c.delta = 1.0;
  c.theta = 8.0;
  c.trials = 400;
  c.master_seed = 11;
  const auto r = run_urn_experiment(c);
  const auto* ev = r.find_event("window_collision");
  REQUIRE(ev != nullptr);
  CHECK(ev->reference_kind == "exact");
  CHECK(ev->estimate >= ev->wilson_lo);
  CHECK(ev->estimate <= ev->wilson_hi);
  // 3-sigma interval should capture the exact value
  CHECK(ev->reference >= ev->wilson_lo);
  CHECK(ev->reference <= ev->wilson_hi);
}

TEST_CASE("urn monotonicity in delta") {
  ExperimentConfig c;
  c.mode = Mode::Urn;
  c.n = 300;
  c.trials = 300;
  c.master_seed = 3;
  c.delta = 0.5;
  c.theta = 4.0;
  const auto lo = run_urn_experiment(c);
  c.delta = 2.0;
  c.theta = 16.0;
  const auto hi = run_urn_experiment(c);
  CHECK(lo.find_event("window_collision")->estimate <
        hi.find_event("window_collision")->estimate);
}

TEST_CASE("geometric exceedance respects the Markov bound across scales") {
  // One-sided bound C_s/(2b) at a second (n, s, b) point on the desk range.
  ExperimentConfig c;
  c.mode = Mode::Geometric;
  c.n = 150;
  c.s = 0.1;
  c.b = 10.0;
  c.trials = 400;
  c.prime_cutoff = 2000;
  c.moment_samples = 2000;
  c.master_seed = 77;
  const auto r = run_geometric_experiment(c);
  const auto* ev = r.find_event("delta_exceeds_threshold");
  const double bound = ev->reference;  // C_0.1(2000)/(2*10) ~ 0.05
  CHECK(bound < 0.06);
  CHECK(ev->estimate <= bound + 3.0 * std::sqrt(bound * (1 - bound) / 400.0));
}

TEST_CASE("geometric experiment: nonnegative deltas, moment consistency") {
  ExperimentConfig c;
  c.mode = Mode::Geometric;
  c.n = 12;
  c.s = 0.9;
  c.trials = 60;
  c.prime_cutoff = 2000;
  c.moment_samples = 20000;
  c.master_seed = 5;
  const auto r = run_geometric_experiment(c);
  for (const auto& t : r.trials) {
    CHECK(std::get<double>(*t.find("delta_n")) >= 0.0);
  }
  CHECK(std::get<bool>(*r.find_derived("moment_consistent")));
  const auto* ev = r.find_event("delta_exceeds_threshold");
  REQUIRE(ev != nullptr);
  // b defaults to the truncated C_s, so the Markov reference is 1/2.
  CHECK(ev->reference == doctest::Approx(0.5));
}

TEST_CASE("semigroup integer instance reproduces integer-mode collisions") {
  ExperimentConfig ci = small_integer_config();
  ci.n = 15;
  ci.trials = 25;

  ExperimentConfig cs = ci;
  cs.mode = Mode::Semigroup;
  cs.instance = "int";

  const auto ri = run_integer_experiment(ci);
  const auto rs = run_semigroup_experiment(cs);
  REQUIRE(ri.trials.size() == rs.trials.size());
  for (std::size_t i = 0; i < ri.trials.size(); ++i) {
    CHECK(std::get<bool>(*ri.trials[i].find("collision")) ==
          std::get<bool>(*rs.trials[i].find("collision")));
  }
  CHECK(ri.find_event("window_collision")->successes ==
        rs.find_event("window_collision")->successes);
}

TEST_CASE("semigroup poly instance runs the same statistics path") {
  ExperimentConfig c;
  c.mode = Mode::Semigroup;
  c.instance = "poly";
  c.q = 2;
  c.n = 15;
  c.alpha = Alpha::parse("1");
  c.delta = 1.0;
  c.theta = 8.0;
  c.trials = 25;
  c.master_seed = 2;
  const auto r = run_semigroup_experiment(c);
  CHECK(r.find_event("window_collision") != nullptr);
  CHECK(r.trials.size() == 25);
  const auto r2 = run_semigroup_experiment(c);
  CHECK(r == r2);
  CHECK(parse_report_json(report_to_json(r)) == r);
}

TEST_CASE("wide eta degenerates the sandwich lower edge gracefully") {
  ExperimentConfig c = small_integer_config();
  c.n = 12;
  c.trials = 15;
  c.eta = 2.5;  // N^{2-eta} < 1: the event reduces to Gamma* < N^{4.5}
  const auto r = run_integer_experiment(c);
  for (const auto& t : r.trials) {
    const Natural gamma(std::get<std::string>(*t.find("gamma_star")));
    const bool expect =
        compare_with_power(gamma, 12, 4.5) < 0;  // lower edge is vacuous
    CHECK(std::get<bool>(*t.find("event_sandwich")) == expect);
  }
}

TEST_CASE("power-range mode draws from [1, n^r]") {
  ExperimentConfig c = small_integer_config();
  c.mode = Mode::PowerRange;
  c.n = 30;
  c.power_r = 3;
  c.trials = 10;
  const auto r = run_integer_experiment(c);
  for (const auto& t : r.trials) {
    const Natural gamma(std::get<std::string>(*t.find("gamma_star")));
    CHECK(gamma <= Natural(30 * 30 * 30));
  }
}

TEST_CASE("infeasible window surfaces as infeasible_error") {
  ExperimentConfig c = small_integer_config();
  c.n = 2;
  c.trials = 1;
  CHECK_THROWS_AS(run_integer_experiment(c), infeasible_error);
}

TEST_SUITE_END();
