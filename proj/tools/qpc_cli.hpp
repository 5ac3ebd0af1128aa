#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpc/session.hpp"

namespace qpc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitAborted = 2;
inline constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Help was requested; `text` holds the message to print on stdout.
struct HelpRequested {
  std::string text;
};

enum class Command { Run, Attack, Verify };

struct RunPlan {
  Command command = Command::Run;
  SessionConfig session;                // run / base parameters for attack
  std::string attack_model;             // attack (and optional run tap)
  std::string attack_channel = "a";
  std::vector<std::size_t> decoy_sweep; // attack accepts several l values
  std::size_t trials = 20000;
  std::vector<std::string> suites;      // verify; empty means nothing to do
  std::uint64_t seed = kDefaultSeed;
  std::string out_path;                 // empty writes to stdout
};

/// Parses argv (without the program name). Flags override the optional
/// `--config` file; the seed falls back to QPC_SEED, then to the documented
/// default. Throws UsageError on bad input, HelpRequested for -h/--help.
RunPlan parse_plan(const std::vector<std::string>& args);

/// Executes the plan, returning one JSON line per result and the process
/// exit code (0 clean, 1 failed verification, 2 protocol abort).
std::vector<std::string> execute_plan(const RunPlan& plan, int& exit_code);

/// Writes newline-delimited JSON to the plan's sink (stdout when no path).
void emit_report(const std::vector<std::string>& lines, const std::string& out_path);

}  // namespace qpc::cli
