#pragma once

#include <string>

#include "qpc/experiment.hpp"
#include "qpc/session.hpp"

namespace qpc {

/// One newline-terminated JSON object per report, schema-stable with fixed
/// field order; identical plans and seeds serialize byte-identically.
std::string run_report_line(const SessionReport& report);
std::string attack_report_line(const DetectionReport& detection, std::uint64_t seed);
std::string verify_report_line(const SuiteResult& suite, std::uint64_t seed);

}  // namespace qpc
