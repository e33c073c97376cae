#include "maxgcd/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

#include "maxgcd/errors.hpp"

namespace maxgcd {

using ordered_json = nlohmann::ordered_json;

void TrialRecord::set(std::string key, PayloadValue value) {
  auto it = std::lower_bound(fields.begin(), fields.end(), key,
                             [](const auto& kv, const std::string& k) {
                               return kv.first < k;
                             });
  if (it != fields.end() && it->first == key) {
    it->second = std::move(value);
  } else {
    fields.insert(it, {std::move(key), std::move(value)});
  }
}

const PayloadValue* TrialRecord::find(const std::string& key) const {
  for (const auto& [k, v] : fields) {
    if (k == key) return &v;
  }
  return nullptr;
}

void SummaryReport::set_config(std::string key, std::string value) {
  auto it = std::lower_bound(config.begin(), config.end(), key,
                             [](const auto& kv, const std::string& k) {
                               return kv.first < k;
                             });
  if (it != config.end() && it->first == key) {
    it->second = std::move(value);
  } else {
    config.insert(it, {std::move(key), std::move(value)});
  }
}

void SummaryReport::set_derived(std::string key, PayloadValue value) {
  auto it = std::lower_bound(derived.begin(), derived.end(), key,
                             [](const auto& kv, const std::string& k) {
                               return kv.first < k;
                             });
  if (it != derived.end() && it->first == key) {
    it->second = std::move(value);
  } else {
    derived.insert(it, {std::move(key), std::move(value)});
  }
}

const PayloadValue* SummaryReport::find_derived(const std::string& key) const {
  for (const auto& [k, v] : derived) {
    if (k == key) return &v;
  }
  return nullptr;
}

const EventStat* SummaryReport::find_event(const std::string& name) const {
  for (const auto& e : events) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

namespace {

ordered_json payload_to_json(const PayloadValue& v) {
  ordered_json j;
  std::visit([&](const auto& x) { j = x; }, v);
  return j;
}

PayloadValue payload_from_json(const ordered_json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number()) return j.get<double>();
  return j.get<std::string>();
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string payload_to_csv(const PayloadValue& v) {
  if (std::holds_alternative<bool>(v)) {
    return std::get<bool>(v) ? "1" : "0";
  }
  if (std::holds_alternative<std::uint64_t>(v)) {
    return std::to_string(std::get<std::uint64_t>(v));
  }
  if (std::holds_alternative<double>(v)) {
    return format_double(std::get<double>(v));
  }
  return std::get<std::string>(v);
}

}  // namespace

std::string report_to_json(const SummaryReport& report) {
  ordered_json j;
  j["schema"] = report.schema;
  j["mode"] = report.mode;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : report.config) cfg[k] = v;
  j["config"] = cfg;
  ordered_json der = ordered_json::object();
  for (const auto& [k, v] : report.derived) der[k] = payload_to_json(v);
  j["derived"] = der;
  ordered_json events = ordered_json::array();
  for (const auto& e : report.events) {
    ordered_json je;
    je["name"] = e.name;
    je["successes"] = e.successes;
    je["trials"] = e.trials;
    je["estimate"] = e.estimate;
    je["wilson_lo"] = e.wilson_lo;
    je["wilson_hi"] = e.wilson_hi;
    je["z"] = e.z;
    je["reference"] = e.reference;
    je["reference_kind"] = e.reference_kind;
    events.push_back(je);
  }
  j["events"] = events;
  ordered_json trials = ordered_json::array();
  for (const auto& t : report.trials) {
    ordered_json jt;
    jt["trial_index"] = t.trial_index;
    for (const auto& [k, v] : t.fields) jt[k] = payload_to_json(v);
    trials.push_back(jt);
  }
  j["trials"] = trials;
  return j.dump(2) + "\n";
}

SummaryReport parse_report_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  SummaryReport r;
  r.schema = j.at("schema").get<std::string>();
  r.mode = j.at("mode").get<std::string>();
  for (const auto& [k, v] : j.at("config").items()) {
    r.config.emplace_back(k, v.get<std::string>());
  }
  for (const auto& [k, v] : j.at("derived").items()) {
    r.derived.emplace_back(k, payload_from_json(v));
  }
  for (const auto& je : j.at("events")) {
    EventStat e;
    e.name = je.at("name").get<std::string>();
    e.successes = je.at("successes").get<std::uint64_t>();
    e.trials = je.at("trials").get<std::uint64_t>();
    e.estimate = je.at("estimate").get<double>();
    e.wilson_lo = je.at("wilson_lo").get<double>();
    e.wilson_hi = je.at("wilson_hi").get<double>();
    e.z = je.at("z").get<double>();
    e.reference = je.at("reference").get<double>();
    e.reference_kind = je.at("reference_kind").get<std::string>();
    r.events.push_back(e);
  }
  for (const auto& jt : j.at("trials")) {
    TrialRecord t;
    t.trial_index = jt.at("trial_index").get<std::uint64_t>();
    for (const auto& [k, v] : jt.items()) {
      if (k == "trial_index") continue;
      t.fields.emplace_back(k, payload_from_json(v));
    }
    r.trials.push_back(std::move(t));
  }
  return r;
}

std::string report_to_csv(const SummaryReport& report) {
  std::string out = "trial_index";
  if (!report.trials.empty()) {
    for (const auto& [k, v] : report.trials.front().fields) out += "," + k;
  }
  out += "\n";
  for (const auto& t : report.trials) {
    out += std::to_string(t.trial_index);
    for (const auto& [k, v] : t.fields) out += "," + payload_to_csv(v);
    out += "\n";
  }
  return out;
}

void emit_report(const SummaryReport& report, const std::string& format,
                 const std::string& path) {
  std::string body;
  if (format == "json") {
    body = report_to_json(report);
  } else if (format == "csv") {
    body = report_to_csv(report);
  } else {
    throw config_error("emit_report: unknown format '" + format + "'");
  }
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("emit_report: cannot open '" + path + "' for writing");
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw io_error("emit_report: write failed for '" + path + "'");
}

std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t trials, double z) {
  if (trials < 1) throw std::domain_error("wilson_interval: trials must be >= 1");
  if (successes > trials) throw std::domain_error("wilson_interval: successes > trials");
  if (!(z > 0.0)) throw std::domain_error("wilson_interval: z must be positive");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace maxgcd
