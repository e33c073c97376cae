#pragma once

#include <cstdint>
#include <string>

#include "maxgcd/certified.hpp"
#include "maxgcd/report.hpp"

namespace maxgcd {

enum class Mode { Integers, Urn, Geometric, Semigroup, PowerRange };

std::string mode_name(Mode mode);

struct ExperimentConfig {
  Mode mode = Mode::Integers;
  std::uint64_t n = 100;
  Alpha alpha;        // integers / semigroup / power
  double delta = 1.0;
  double theta = 8.0;  // kept at theta = 8 delta
  double eta = 0.5;
  double s = 0.9;
  double b = 0.0;  // <= 0: resolved to the truncated C_s at prime_cutoff
  std::uint64_t trials = 1000;
  std::uint64_t prime_cutoff = 100000;
  std::uint64_t moment_samples = 100000;
  std::uint64_t master_seed = 1;
  std::string instance = "int";  // semigroup mode: "int" | "poly"
  std::uint32_t q = 2;           // poly field size
  unsigned power_r = 3;          // power-range exponent
  std::string out_path;
  std::string format = "json";

  void validate() const;  // throws config_error
};

SummaryReport run_integer_experiment(const ExperimentConfig& config);
SummaryReport run_urn_experiment(const ExperimentConfig& config);
SummaryReport run_geometric_experiment(const ExperimentConfig& config);
SummaryReport run_semigroup_experiment(const ExperimentConfig& config);

SummaryReport run_experiment(const ExperimentConfig& config);

// Worker count: min(MAXGCD_THREADS, hardware_concurrency), at least 1.
unsigned harness_thread_cap();

}  // namespace maxgcd
