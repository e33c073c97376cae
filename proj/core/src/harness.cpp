#include "maxgcd/harness.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "maxgcd/bounds.hpp"
#include "maxgcd/errors.hpp"
#include "maxgcd/gcd_stats.hpp"
#include "maxgcd/models.hpp"
#include "maxgcd/primes.hpp"
#include "maxgcd/sampler.hpp"
#include "maxgcd/semigroup.hpp"

namespace maxgcd {

namespace {

constexpr double kReportZ = 3.0;  // 3-sigma Wilson intervals throughout

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Stream index space: trials use [0, trials); auxiliary consumers (moment
// estimation) start at 2^32 to stay disjoint.
constexpr std::uint64_t kAuxStreamBase = std::uint64_t{1} << 32;

void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t)>& fn) {
  const unsigned threads =
      std::min<std::uint64_t>(harness_thread_cap(), count ? count : 1);
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mu;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (std::uint64_t i = t; i < count; i += threads) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

EventStat make_event(std::string name, std::uint64_t successes,
                     std::uint64_t trials, double reference,
                     std::string reference_kind) {
  EventStat e;
  e.name = std::move(name);
  e.successes = successes;
  e.trials = trials;
  e.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  const auto [lo, hi] = wilson_interval(successes, trials, kReportZ);
  e.wilson_lo = lo;
  e.wilson_hi = hi;
  e.z = kReportZ;
  e.reference = reference;
  e.reference_kind = std::move(reference_kind);
  return e;
}

void echo_common_config(SummaryReport& r, const ExperimentConfig& c) {
  r.mode = mode_name(c.mode);
  r.set_config("mode", mode_name(c.mode));
  r.set_config("n", std::to_string(c.n));
  r.set_config("trials", std::to_string(c.trials));
  r.set_config("master_seed", std::to_string(c.master_seed));
  r.set_config("format", c.format);
}

double resolve_b(const ExperimentConfig& c) {
  if (c.b > 0.0) return c.b;
  return cs_product(c.s, c.prime_cutoff).value;
}

struct WindowSetup {
  PhiSolution phi;
  PrimeWindow win;
};

WindowSetup window_for(std::uint64_t n, double delta) {
  WindowSetup w;
  w.phi = phi_solve(n, delta);
  w.win = window(w.phi.phi);
  return w;
}

void echo_window(SummaryReport& r, const WindowSetup& w) {
  r.set_derived("phi", w.phi.phi);
  r.set_derived("phi_residual", w.phi.residual);
  r.set_derived("window_lo", static_cast<std::uint64_t>(w.win.lo));
  r.set_derived("window_hi", static_cast<std::uint64_t>(w.win.hi));
  r.set_derived("window_size", static_cast<std::uint64_t>(w.win.primes.size()));
}

}  // namespace

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::Integers: return "integers";
    case Mode::Urn: return "urn";
    case Mode::Geometric: return "geometric";
    case Mode::Semigroup: return "semigroup";
    case Mode::PowerRange: return "power-range";
  }
  return "unknown";
}

unsigned harness_thread_cap() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MAXGCD_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) cap = static_cast<unsigned>(v);
  }
  return cap;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw config_error("trials must be >= 1");
  if (n < 2) throw config_error("experiments need n >= 2");
  if (!(delta > 0.0)) throw config_error("delta must be positive");
  if (!(theta > 0.0)) throw config_error("theta must be positive");
  if (std::abs(theta - 8.0 * delta) > 1e-12 * std::max(1.0, theta)) {
    throw config_error("theta and delta are coupled: theta = 8*delta");
  }
  if (!(eta > 0.0)) throw config_error("eta must be positive");
  if (!(s > 0.0 && s < 1.0)) throw config_error("s must lie in (0,1)");
  if (prime_cutoff < 2) throw config_error("prime_cutoff must be >= 2");
  if (mode == Mode::Semigroup && instance != "int" && instance != "poly") {
    throw config_error("semigroup instance must be 'int' or 'poly'");
  }
  if (mode == Mode::Semigroup && instance == "poly" && !is_probable_prime(Natural(q))) {
    throw config_error("poly instance requires prime field size q");
  }
  if (mode == Mode::PowerRange && power_r < 2) {
    throw config_error("power-range mode requires r >= 2");
  }
  if (format != "json" && format != "csv") {
    throw config_error("format must be 'json' or 'csv'");
  }
}

namespace {

SummaryReport run_integer_like(const ExperimentConfig& config, const Natural& bound) {
  if (config.n < 2) throw config_error("integer experiment needs n >= 2");
  const double b = resolve_b(config);
  const ProductResult cs = cs_product(config.s, config.prime_cutoff);
  const ProductResult rad = radical_product(config.s, config.prime_cutoff);
  const Natural threshold = markov_threshold(config.n, config.s, b);

  WindowSetup w;
  try {
    w = window_for(config.n, config.theta / 8.0);
  } catch (const infeasible_error& e) {
    throw infeasible_error(std::string(e.what()) +
                           " (window for theta/8; raise n or theta)");
  }

  struct Outcome {
    bool sandwich = false, markov_gamma = false, markov_rad = false,
         lambda_low = false, collision = false;
    std::uint64_t largest_colliding_prime = 0;
    std::string gamma_star, lambda_star, rad_star;
  };
  std::vector<Outcome> outcomes(config.trials);

  const double lo_exp = 2.0 - config.eta;
  const double hi_exp = 2.0 + config.eta;
  // For eta >= 2 the lower edge N^{2-eta} is at most 1; the strict lower
  // comparison degenerates to Gamma* > 1 (eta = 2) or to always-true.
  const auto above_lower_edge = [&](const Natural& gamma) {
    if (lo_exp > 0.0) return compare_with_power(gamma, config.n, lo_exp) > 0;
    if (lo_exp == 0.0) return gamma > 1;
    return true;
  };

  parallel_for(config.trials, [&](std::uint64_t t) {
    RngStream stream(config.master_seed, t);
    std::vector<Natural> batch;
    batch.reserve(config.n);
    for (std::uint64_t i = 0; i < config.n; ++i) {
      batch.push_back(uniform_natural(bound, stream));
    }
    const PairExtremes ex = pair_extremes(batch);
    Outcome& o = outcomes[t];
    o.sandwich = above_lower_edge(ex.max_gcd) &&
                 compare_with_power(ex.max_gcd, config.n, hi_exp) < 0;
    o.markov_gamma = ex.max_gcd >= threshold;
    o.markov_rad = ex.max_radical >= threshold;
    o.lambda_low =
        compare_with_lambda_threshold(ex.max_common_prime, config.n, config.theta) < 0;
    for (const std::uint64_t p : w.win.primes) {
      std::uint64_t hits = 0;
      for (const Natural& v : batch) {
        if (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
          if (++hits >= 2) break;
        }
      }
      if (hits >= 2) {
        o.collision = true;
        o.largest_colliding_prime = p;
      }
    }
    o.gamma_star = to_decimal(ex.max_gcd);
    o.lambda_star = to_decimal(ex.max_common_prime);
    o.rad_star = to_decimal(ex.max_radical);
  });

  SummaryReport r;
  echo_common_config(r, config);
  r.set_config("alpha", config.alpha.str());
  r.set_config("eta", fmt_double(config.eta));
  r.set_config("theta", fmt_double(config.theta));
  r.set_config("delta", fmt_double(config.theta / 8.0));
  r.set_config("s", fmt_double(config.s));
  r.set_config("b", fmt_double(config.b));
  r.set_config("prime_cutoff", std::to_string(config.prime_cutoff));
  if (config.mode == Mode::PowerRange) {
    r.set_config("power_r", std::to_string(config.power_r));
  }
  echo_window(r, w);
  r.set_derived("bound_bits", static_cast<std::uint64_t>(bit_length(bound)));
  r.set_derived("b", b);
  r.set_derived("cs_truncated", cs.value);
  r.set_derived("radical_truncated", rad.value);
  r.set_derived("markov_threshold", to_decimal(threshold));
  r.set_derived("lambda_threshold",
                static_cast<double>(config.n) * static_cast<double>(config.n) /
                    (config.theta * std::log(static_cast<double>(config.n))));
  r.set_derived("collision_limit", 1.0 - std::exp(-config.theta / 8.0));

  std::uint64_t c_sand = 0, c_mg = 0, c_mr = 0, c_ll = 0, c_col = 0;
  for (const auto& o : outcomes) {
    c_sand += o.sandwich;
    c_mg += o.markov_gamma;
    c_mr += o.markov_rad;
    c_ll += o.lambda_low;
    c_col += o.collision;
  }
  r.events.push_back(make_event("sandwich", c_sand, config.trials, 1.0, "limit"));
  r.events.push_back(make_event("gamma_exceeds_markov", c_mg, config.trials,
                                cs.value / (2.0 * b), "upper-bound"));
  r.events.push_back(make_event("rad_exceeds_markov", c_mr, config.trials,
                                rad.value / (2.0 * b), "upper-bound"));
  r.events.push_back(make_event("lambda_below_threshold", c_ll, config.trials,
                                std::exp(-config.theta / 8.0), "upper-bound"));
  r.events.push_back(make_event("window_collision", c_col, config.trials,
                                1.0 - std::exp(-config.theta / 8.0), "limit"));

  r.trials.reserve(config.trials);
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    const auto& o = outcomes[t];
    TrialRecord rec;
    rec.trial_index = t;
    rec.set("collision", o.collision);
    rec.set("event_lambda_low", o.lambda_low);
    rec.set("event_markov_gamma", o.markov_gamma);
    rec.set("event_markov_rad", o.markov_rad);
    rec.set("event_sandwich", o.sandwich);
    rec.set("gamma_star", o.gamma_star);
    rec.set("lambda_star", o.lambda_star);
    rec.set("largest_colliding_prime", o.largest_colliding_prime);
    rec.set("rad_star", o.rad_star);
    r.trials.push_back(std::move(rec));
  }
  return r;
}

}  // namespace

SummaryReport run_integer_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.mode == Mode::PowerRange) {
    Natural bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(config.n),
                  config.power_r);
    return run_integer_like(config, bound);
  }
  const Natural bound = range_bound(config.alpha, config.n);
  return run_integer_like(config, bound);
}

SummaryReport run_urn_experiment(const ExperimentConfig& config) {
  config.validate();
  const WindowSetup w = window_for(config.n, config.delta);
  const UrnConfig urn = UrnConfig::make(config.n, w.win);
  const double exact_no_collision = urn_exact_no_collision(config.n, w.win);

  struct Outcome {
    bool collision = false;
    std::uint64_t largest = 0;
  };
  std::vector<Outcome> outcomes(config.trials);
  parallel_for(config.trials, [&](std::uint64_t t) {
    RngStream stream(config.master_seed, t);
    const UrnTrial trial = urn_trial(urn, stream);
    outcomes[t].collision = trial.collision;
    outcomes[t].largest = trial.largest_colliding_prime.value_or(0);
  });

  SummaryReport r;
  echo_common_config(r, config);
  r.set_config("delta", fmt_double(config.delta));
  echo_window(r, w);
  r.set_derived("exact_no_collision", exact_no_collision);
  r.set_derived("collision_exact", 1.0 - exact_no_collision);
  r.set_derived("collision_limit", 1.0 - std::exp(-config.delta));

  std::uint64_t c_col = 0;
  for (const auto& o : outcomes) c_col += o.collision;
  r.events.push_back(make_event("window_collision", c_col, config.trials,
                                1.0 - exact_no_collision, "exact"));

  r.trials.reserve(config.trials);
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    TrialRecord rec;
    rec.trial_index = t;
    rec.set("collision", outcomes[t].collision);
    rec.set("largest_colliding_prime", outcomes[t].largest);
    r.trials.push_back(std::move(rec));
  }
  return r;
}

SummaryReport run_geometric_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.n < 2) throw config_error("geometric experiment needs n >= 2");
  const PrimeTable table = primes_upto(config.prime_cutoff);
  const ProductResult cs = cs_product(config.s, config.prime_cutoff);
  const double b = config.b > 0.0 ? config.b : cs.value;
  const double threshold =
      2.0 / config.s * std::log(static_cast<double>(config.n)) +
      std::log(b) / config.s;

  struct Outcome {
    double delta_n = 0.0;
    bool exceed = false;
  };
  std::vector<Outcome> outcomes(config.trials);
  parallel_for(config.trials, [&](std::uint64_t t) {
    RngStream stream(config.master_seed, t);
    std::vector<GeometricRow> rows;
    rows.reserve(config.n);
    for (std::uint64_t i = 0; i < config.n; ++i) {
      rows.push_back(sample_geometric_row(table, stream));
    }
    double best = 0.0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      for (std::size_t k = j + 1; k < rows.size(); ++k) {
        best = std::max(best, pair_log_gcd(rows[j], rows[k], table));
      }
    }
    outcomes[t].delta_n = best;
    outcomes[t].exceed = best >= threshold;
  });

  RngStream aux(config.master_seed, kAuxStreamBase);
  const MomentEstimate moment =
      moment_estimate(config.s, config.moment_samples, table, aux);

  SummaryReport r;
  echo_common_config(r, config);
  r.set_config("s", fmt_double(config.s));
  r.set_config("b", fmt_double(config.b));
  r.set_config("prime_cutoff", std::to_string(config.prime_cutoff));
  r.set_config("moment_samples", std::to_string(config.moment_samples));
  r.set_derived("b", b);
  r.set_derived("cs_truncated", cs.value);
  r.set_derived("cs_log_tail_bound", cs.log_tail_bound);
  r.set_derived("delta_threshold", threshold);
  r.set_derived("truncation_log_gcd_bias_bound",
                tail_weight_bound(config.prime_cutoff));
  r.set_derived("moment_mean", moment.mean);
  r.set_derived("moment_ci99", moment.ci_halfwidth);
  r.set_derived("moment_exact_truncated", cs.value);
  r.set_derived("moment_consistent",
                std::abs(moment.mean - cs.value) <= moment.ci_halfwidth);

  std::uint64_t c_ex = 0;
  for (const auto& o : outcomes) c_ex += o.exceed;
  r.events.push_back(make_event("delta_exceeds_threshold", c_ex, config.trials,
                                cs.value / (2.0 * b), "upper-bound"));

  r.trials.reserve(config.trials);
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    TrialRecord rec;
    rec.trial_index = t;
    rec.set("delta_n", outcomes[t].delta_n);
    rec.set("event_exceed", outcomes[t].exceed);
    r.trials.push_back(std::move(rec));
  }
  return r;
}

namespace {

template <ArithmeticalSemigroup G>
SummaryReport run_semigroup_impl(const G& g, const typename G::Ball& ball,
                                 const ExperimentConfig& config,
                                 double ball_log_norm) {
  if (config.n < 2) throw config_error("semigroup experiment needs n >= 2");
  const WindowSetup w = window_for(config.n, config.delta);

  // Window primes of G: norm in (phi, 2 phi].
  std::vector<typename G::Element> window_primes;
  for (const auto& p : g.primes_upto(2.0 * w.phi.phi)) {
    if (g.norm(p) > w.phi.phi) window_primes.push_back(p);
  }

  struct Outcome {
    bool collision = false;
    double largest_norm = 0.0;
    double max_gcd_log_norm = 0.0;
  };
  std::vector<Outcome> outcomes(config.trials);
  parallel_for(config.trials, [&](std::uint64_t t) {
    RngStream stream(config.master_seed, t);
    std::vector<typename G::Element> batch;
    batch.reserve(config.n);
    for (std::uint64_t i = 0; i < config.n; ++i) {
      batch.push_back(g.sample(ball, stream));
    }
    Outcome& o = outcomes[t];
    for (const auto& p : window_primes) {
      std::uint64_t hits = 0;
      for (const auto& v : batch) {
        if (g.divides(p, v)) {
          if (++hits >= 2) break;
        }
      }
      if (hits >= 2) {
        o.collision = true;
        o.largest_norm = std::max(o.largest_norm, g.norm(p));
      }
    }
    double best = 0.0;
    for (std::size_t j = 0; j < batch.size(); ++j) {
      for (std::size_t k = j + 1; k < batch.size(); ++k) {
        best = std::max(best, g.log_norm(g.gcd(batch[j], batch[k])));
      }
    }
    o.max_gcd_log_norm = best;
  });

  SummaryReport r;
  echo_common_config(r, config);
  r.set_config("alpha", config.alpha.str());
  r.set_config("delta", fmt_double(config.delta));
  r.set_config("instance", config.instance);
  if (config.instance == "poly") r.set_config("q", std::to_string(config.q));
  echo_window(r, w);
  r.set_derived("ball_log_norm", ball_log_norm);
  r.set_derived("window_primes_G",
                static_cast<std::uint64_t>(window_primes.size()));
  r.set_derived("collision_limit", 1.0 - std::exp(-config.delta));

  std::uint64_t c_col = 0;
  for (const auto& o : outcomes) c_col += o.collision;
  r.events.push_back(make_event("window_collision", c_col, config.trials,
                                1.0 - std::exp(-config.delta), "limit"));

  r.trials.reserve(config.trials);
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    TrialRecord rec;
    rec.trial_index = t;
    rec.set("collision", outcomes[t].collision);
    rec.set("largest_colliding_norm", outcomes[t].largest_norm);
    rec.set("max_gcd_log_norm", outcomes[t].max_gcd_log_norm);
    r.trials.push_back(std::move(rec));
  }
  return r;
}

}  // namespace

SummaryReport run_semigroup_experiment(const ExperimentConfig& config) {
  config.validate();
  const Natural m = range_bound(config.alpha, config.n);
  if (config.instance == "poly") {
    PolySemigroup g{config.q};
    // Largest degree with q^d <= M, exact integer comparison.
    PolySemigroup::Ball ball;
    Natural qd = config.q;
    while (qd <= m) {
      ++ball.max_degree;
      qd *= config.q;
    }
    const double ball_log_norm =
        ball.max_degree * std::log(static_cast<double>(config.q));
    return run_semigroup_impl(g, ball, config, ball_log_norm);
  }
  IntegerSemigroup g;
  return run_semigroup_impl(g, m, config, log_natural(m));
}

SummaryReport run_experiment(const ExperimentConfig& config) {
  switch (config.mode) {
    case Mode::Integers:
    case Mode::PowerRange:
      return run_integer_experiment(config);
    case Mode::Urn:
      return run_urn_experiment(config);
    case Mode::Geometric:
      return run_geometric_experiment(config);
    case Mode::Semigroup:
      return run_semigroup_experiment(config);
  }
  throw config_error("unknown experiment mode");
}

}  // namespace maxgcd
