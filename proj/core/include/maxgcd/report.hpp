#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace maxgcd {

using PayloadValue = std::variant<bool, std::uint64_t, double, std::string>;

// One trial's payload; fields are kept sorted by key so CSV columns and
// JSON objects come out in a fixed order.
struct TrialRecord {
  std::uint64_t trial_index = 0;
  std::vector<std::pair<std::string, PayloadValue>> fields;

  void set(std::string key, PayloadValue value);
  const PayloadValue* find(const std::string& key) const;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// Frequency estimate for one event, with Wilson score interval and the
// reference value (bound or limit) it is judged against.
struct EventStat {
  std::string name;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  double z = 0.0;
  double reference = 0.0;
  std::string reference_kind;  // "upper-bound" | "limit" | "exact"

  friend bool operator==(const EventStat&, const EventStat&) = default;
};

struct SummaryReport {
  std::string schema = "maxgcd-report/1";
  std::string mode;
  std::vector<std::pair<std::string, std::string>> config;   // echo, sorted
  std::vector<std::pair<std::string, PayloadValue>> derived;  // sorted
  std::vector<EventStat> events;
  std::vector<TrialRecord> trials;

  void set_config(std::string key, std::string value);
  void set_derived(std::string key, PayloadValue value);
  const PayloadValue* find_derived(const std::string& key) const;
  const EventStat* find_event(const std::string& name) const;

  friend bool operator==(const SummaryReport&, const SummaryReport&) = default;
};

std::string report_to_json(const SummaryReport& report);
std::string report_to_csv(const SummaryReport& report);
SummaryReport parse_report_json(const std::string& text);

// format "json" or "csv"; empty path writes to stdout. Two runs with the
// same config and seed produce byte-identical files.
void emit_report(const SummaryReport& report, const std::string& format,
                 const std::string& path);

// Wilson score interval. Throws on domain violations.
std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t trials, double z);

}  // namespace maxgcd
