// Command-line front end: analytic bounds, Monte Carlo experiments, and the
// exhaustive divisibility-ratio verification.

#include <cinttypes>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "maxgcd/bounds.hpp"
#include "maxgcd/errors.hpp"
#include "maxgcd/gcd_stats.hpp"
#include "maxgcd/harness.hpp"
#include "maxgcd/primes.hpp"
#include "maxgcd/report.hpp"
#include "maxgcd/sampler.hpp"

namespace {

struct SimArgs {
  std::uint64_t n = 100;
  std::string alpha = "1";
  double delta = 1.0;
  double theta = 8.0;
  double eta = 0.5;
  double s = 0.9;
  double b = 0.0;
  std::uint64_t trials = 1000;
  std::uint64_t cutoff = 100000;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string instance = "int";
  std::uint32_t q = 2;
  unsigned r = 3;
  std::string out;
  std::string format = "json";
};

void add_output_opts(CLI::App* cmd, SimArgs& a) {
  cmd->add_option("--trials", a.trials, "Monte Carlo trials");
  cmd->add_option("--seed", a.seed, "master seed (64-bit)");
  cmd->add_option("--out", a.out, "output path (default: stdout)");
  cmd->add_option("--format", a.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

maxgcd::ExperimentConfig to_config(const SimArgs& a, maxgcd::Mode mode,
                                   bool theta_given, bool delta_given) {
  maxgcd::ExperimentConfig c;
  c.mode = mode;
  c.n = a.n;
  c.alpha = maxgcd::Alpha::parse(a.alpha);
  if (theta_given && !delta_given) {
    c.theta = a.theta;
    c.delta = a.theta / 8.0;
  } else if (delta_given && !theta_given) {
    c.delta = a.delta;
    c.theta = 8.0 * a.delta;
  } else {
    c.theta = a.theta;
    c.delta = a.delta;
  }
  c.eta = a.eta;
  c.s = a.s;
  c.b = a.b;
  c.trials = a.trials;
  c.prime_cutoff = a.cutoff;
  c.moment_samples = a.samples;
  c.master_seed = a.seed;
  c.instance = a.instance;
  c.q = a.q;
  c.power_r = a.r;
  c.out_path = a.out;
  c.format = a.format;
  return c;
}

void run_and_emit(const maxgcd::ExperimentConfig& config) {
  const maxgcd::SummaryReport report = maxgcd::run_experiment(config);
  maxgcd::emit_report(report, config.format, config.out_path);
  if (!config.out_path.empty()) {
    std::fprintf(stderr, "report written to %s (%" PRIu64 " trials, %u threads)\n",
                 config.out_path.c_str(), config.trials,
                 maxgcd::harness_thread_cap());
  }
}

void print_product(const char* name, const maxgcd::ProductResult& r) {
  std::printf("%s(s=%.6g) truncated at prime %" PRIu64 ": %.10g\n", name, r.s,
              r.cutoff, r.value);
  std::printf("  rigorous bracket: value <= converged <= value * exp(%.6g)\n",
              r.log_tail_bound);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximum pairwise GCD of random integers: bounds, models, experiments"};
  app.require_subcommand(1);

  // ---- bounds ----
  auto* bounds = app.add_subcommand("bounds", "deterministic analytic quantities");
  bounds->require_subcommand(1);

  double b_s = 0.999;
  std::uint64_t b_cutoff = 100000;
  auto* cs_cmd = bounds->add_subcommand("cs", "truncated Euler product C_s");
  cs_cmd->add_option("--s", b_s, "exponent s in (0,1)");
  cs_cmd->add_option("--cutoff", b_cutoff, "largest prime included");

  auto* rad_cmd = bounds->add_subcommand("radical", "truncated radical product");
  rad_cmd->add_option("--s", b_s, "exponent s in (0,1)");
  rad_cmd->add_option("--cutoff", b_cutoff, "largest prime included");

  std::uint64_t phi_n = 1000;
  double phi_delta = 1.0;
  auto* phi_cmd = bounds->add_subcommand("phi", "implicit collision threshold phi_N[delta]");
  phi_cmd->add_option("--n", phi_n, "sample count N");
  phi_cmd->add_option("--delta", phi_delta, "target delta");

  double const_tol = 0.05;
  std::uint64_t const_max = 40000000;
  auto* const_cmd = bounds->add_subcommand(
      "constants", "locate the truncation behind the quoted 17.64 / 12.44");
  const_cmd->add_option("--tol", const_tol, "match tolerance");
  const_cmd->add_option("--max-cutoff", const_max, "scan limit");

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "Monte Carlo experiments");
  sim->require_subcommand(1);
  SimArgs ia, ua, ga, sa, pa;

  auto* ints = sim->add_subcommand("integers", "real big-integer experiment");
  ints->add_option("--n", ia.n, "sample count N");
  ints->add_option("--alpha", ia.alpha, "range exponent: decimal or ln(<k>)");
  auto* ints_theta = ints->add_option("--theta", ia.theta, "lower-bound exponent");
  auto* ints_delta = ints->add_option("--delta", ia.delta, "window delta (= theta/8)");
  ints->add_option("--eta", ia.eta, "sandwich exponent margin");
  ints->add_option("--s", ia.s, "moment exponent");
  ints->add_option("--b", ia.b, "Markov scale (0: truncated C_s)");
  ints->add_option("--cutoff", ia.cutoff, "prime cutoff for C_s");
  add_output_opts(ints, ia);

  auto* urn = sim->add_subcommand("urn", "Bernoulli urn model");
  urn->add_option("--n", ua.n, "ball count N");
  urn->add_option("--delta", ua.delta, "window delta");
  add_output_opts(urn, ua);

  auto* geo = sim->add_subcommand("geometric", "geometric multiplicity model");
  geo->add_option("--n", ga.n, "vector count N");
  geo->add_option("--s", ga.s, "moment exponent");
  geo->add_option("--b", ga.b, "Markov scale (0: truncated C_s)");
  geo->add_option("--cutoff", ga.cutoff, "prime cutoff of the truncated model");
  geo->add_option("--samples", ga.samples, "moment-estimate sample count");
  add_output_opts(geo, ga);

  auto* sg = sim->add_subcommand("semigroup", "arithmetical semigroup pipeline");
  sg->add_option("--instance", sa.instance, "int | poly")
      ->check(CLI::IsMember({"int", "poly"}));
  sg->add_option("--q", sa.q, "field size for the poly instance");
  sg->add_option("--n", sa.n, "sample count N");
  sg->add_option("--alpha", sa.alpha, "norm-ball exponent");
  sg->add_option("--delta", sa.delta, "window delta");
  add_output_opts(sg, sa);

  auto* pw = sim->add_subcommand("power", "exploratory range [1, N^r]");
  pw->add_option("--n", pa.n, "sample count N");
  pw->add_option("--r", pa.r, "range exponent r >= 2");
  auto* pw_theta = pw->add_option("--theta", pa.theta, "lower-bound exponent");
  auto* pw_delta = pw->add_option("--delta", pa.delta, "window delta (= theta/8)");
  pw->add_option("--eta", pa.eta, "sandwich exponent margin");
  pw->add_option("--s", pa.s, "moment exponent");
  pw->add_option("--b", pa.b, "Markov scale (0: truncated C_s)");
  pw->add_option("--cutoff", pa.cutoff, "prime cutoff for C_s");
  add_output_opts(pw, pa);

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "exhaustive checks");
  unsigned v_max_m = 5;
  std::uint64_t v_max_r = 50, v_max_p = 47, v_max_M = 5000;
  auto* cond5 = verify->add_subcommand(
      "condition5", "conditional divisibility dominance, exhaustive");
  cond5->add_option("--max-m", v_max_m, "largest exponent m");
  cond5->add_option("--max-r", v_max_r, "largest conditioning divisor r");
  cond5->add_option("--max-p", v_max_p, "largest prime p");
  cond5->add_option("--max-M", v_max_M, "largest range bound M");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cs_cmd->parsed()) {
      print_product("C", maxgcd::cs_product(b_s, b_cutoff));
    } else if (rad_cmd->parsed()) {
      print_product("R", maxgcd::radical_product(b_s, b_cutoff));
    } else if (phi_cmd->parsed()) {
      const auto sol = maxgcd::phi_solve(phi_n, phi_delta);
      std::printf("phi_N[delta]: n=%" PRIu64 " delta=%.6g -> phi=%.10g (residual %.3g)\n",
                  sol.n, sol.delta, sol.phi, sol.residual);
      if (sol.n >= 16) {
        const auto env = maxgcd::phi_envelope_check(sol);
        std::printf("  envelope: lower %s, upper %s, phi*ln(phi)*delta/n^2 = %.6g\n",
                    env.lower_ok ? "ok" : "VIOLATED",
                    env.upper_ok ? "ok" : "VIOLATED", env.ratio);
      }
      if (sol.phi <= 5e7) {
        const auto w = maxgcd::window(sol.phi);
        std::printf("  window (%.6g, %.6g]: %zu primes\n", sol.phi, 2 * sol.phi,
                    w.primes.size());
      } else {
        std::printf("  window (%.6g, %.6g] left unenumerated at this size\n",
                    sol.phi, 2 * sol.phi);
      }
    } else if (const_cmd->parsed()) {
      const auto scan =
          maxgcd::find_constants_cutoff(0.999, 17.64, 12.44, const_tol, const_max);
      if (!scan.found) {
        std::printf("no simultaneous cutoff found below %" PRIu64 "\n", const_max);
        return 1;
      }
      std::printf("cutoff X* = %" PRIu64 "\n", scan.cutoff);
      std::printf("  C_0.999 truncated       = %.6f (target 17.64)\n", scan.cs_value);
      std::printf("  radical 0.999 truncated = %.6f (target 12.44)\n",
                  scan.radical_value);
      std::printf("  ratio = %.6f\n", scan.ratio);
      std::printf("  rigorous bracket: truncated <= converged <= truncated * exp(%.4g)\n",
                  scan.cs_log_tail);
      const auto deeper = maxgcd::cs_product(0.999, 10 * scan.cutoff);
      std::printf("  at cutoff %" PRIu64 " the product already reaches %.4f: the quoted\n"
                  "  values are truncations, not limits\n",
                  deeper.cutoff, deeper.value);
    } else if (ints->parsed()) {
      run_and_emit(to_config(ia, maxgcd::Mode::Integers, ints_theta->count() > 0,
                             ints_delta->count() > 0));
    } else if (urn->parsed()) {
      run_and_emit(to_config(ua, maxgcd::Mode::Urn, false, true));
    } else if (geo->parsed()) {
      auto cfg = to_config(ga, maxgcd::Mode::Geometric, false, false);
      run_and_emit(cfg);
    } else if (sg->parsed()) {
      run_and_emit(to_config(sa, maxgcd::Mode::Semigroup, false, true));
    } else if (pw->parsed()) {
      run_and_emit(to_config(pa, maxgcd::Mode::PowerRange, pw_theta->count() > 0,
                             pw_delta->count() > 0));
    } else if (cond5->parsed()) {
      std::uint64_t checked = 0, violations = 0;
      for (std::uint64_t M = 1; M <= v_max_M; ++M) {
        for (std::uint64_t r = 1; r <= std::min(v_max_r, M); ++r) {
          for (std::uint64_t p = 2; p <= v_max_p; ++p) {
            if (!maxgcd::is_probable_prime(maxgcd::Natural(p)) || r % p == 0) continue;
            for (unsigned m = 1; m <= v_max_m; ++m) {
              const auto check = maxgcd::dominance_ratio(M, r, p, m);
              ++checked;
              if (!check.ok) {
                ++violations;
                std::printf("VIOLATION M=%" PRIu64 " r=%" PRIu64 " p=%" PRIu64
                            " m=%u\n", M, r, p, m);
              }
            }
          }
        }
      }
      std::printf("condition (5) dominance: %" PRIu64 " cases, %" PRIu64
                  " violations\n", checked, violations);
      return violations == 0 ? 0 : 1;
    }
  } catch (const maxgcd::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const maxgcd::resource_error& e) {
    std::fprintf(stderr, "resource error: %s\n", e.what());
    return 2;
  } catch (const maxgcd::infeasible_error& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return 3;
  } catch (const maxgcd::io_error& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
