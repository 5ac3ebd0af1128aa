#include "qpc/report_json.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace qpc {

namespace {

using ordered_json = nlohmann::ordered_json;

// Rates are rounded to six decimals before serialization so lines stay
// byte-stable and diff-friendly.
double round6(double v) { return std::round(v * 1e6) / 1e6; }

std::string hex_of(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << v;
  return out.str();
}

ordered_json config_fields(const SessionConfig& config) {
  ordered_json j;
  j["n"] = config.n_bits;
  j["x"] = hex_of(config.x);
  j["y"] = hex_of(config.y);
  j["mode"] = to_string(config.locality);
  j["measure"] = to_string(config.measurement);
  j["quantumness"] = to_string(config.quantumness);
  j["decoys"] = config.decoys_per_channel;
  if (config.attack) {
    ordered_json a;
    a["model"] = to_string(config.attack->kind);
    a["channel"] = to_string(config.attack->target);
    j["attack"] = a;
  } else {
    j["attack"] = nullptr;
  }
  return j;
}

ordered_json check_fields(const CheckResult& check) {
  ordered_json j;
  j["tested"] = check.tested;
  j["mismatches"] = check.mismatches;
  j["error_rate"] = round6(check.error_rate);
  j["pass"] = check.pass;
  return j;
}

}  // namespace

std::string run_report_line(const SessionReport& report) {
  ordered_json j;
  j["command"] = "run";
  j["seed"] = report.config.seed;
  j.update(config_fields(report.config));
  j["verdict"] = to_string(report.verdict);
  j["attack_rejected"] = report.attack_rejected;
  j["checks"] = ordered_json::array(
      {check_fields(report.check_alice), check_fields(report.check_bob)});
  ordered_json groups = ordered_json::array();
  for (const auto& g : report.groups) {
    ordered_json gj;
    gj["g_a"] = g.g_a.to_string();
    gj["g_b"] = g.g_b.to_string();
    gj["m_a"] = g.m_a.to_string();
    gj["m_b"] = g.m_b.to_string();
    gj["m_c1"] = g.m_c1.to_string();
    gj["m_c2"] = g.m_c2.to_string();
    gj["r_a"] = g.r_a.to_string();
    gj["r_b"] = g.r_b.to_string();
    gj["r_ab"] = g.r_ab.to_string();
    gj["r"] = g.r.to_string();
    gj["k_ab"] = g.k_ab.to_string();
    gj["k_ac"] = g.k_ac.to_string();
    gj["k_bc"] = g.k_bc.to_string();
    groups.push_back(gj);
  }
  j["groups"] = groups;
  j["qubit_efficiency"] = report.qubit_efficiency;
  return j.dump() + "\n";
}

std::string attack_report_line(const DetectionReport& detection, std::uint64_t seed) {
  ordered_json j;
  j["command"] = "attack";
  j["seed"] = seed;
  j["model"] = to_string(detection.model.kind);
  j["channel"] = to_string(detection.model.target);
  j["decoys"] = detection.decoys;
  j["trials"] = detection.trials;
  j["aborted"] = detection.aborted;
  j["rate"] = round6(detection.rate);
  j["half_width"] = round6(detection.half_width);
  if (detection.expected) {
    j["expected_rate"] = round6(*detection.expected);
  } else {
    j["expected_rate"] = nullptr;
  }
  return j.dump() + "\n";
}

std::string verify_report_line(const SuiteResult& suite, std::uint64_t seed) {
  ordered_json j;
  j["command"] = "verify";
  j["seed"] = seed;
  j["suite"] = suite.suite;
  j["pass"] = suite.pass;
  j["max_deviation"] = round6(suite.max_deviation);
  j["detail"] = suite.detail;
  return j.dump() + "\n";
}

}  // namespace qpc
