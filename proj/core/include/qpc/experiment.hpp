#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "qpc/session.hpp"

namespace qpc {

/// Empirical session-detection rate for an attack model: `trials` independent
/// sessions (per-trial derived seeds), counting the Aborted fraction.
struct DetectionReport {
  AttackModel model;
  std::size_t decoys = 0;
  std::size_t trials = 0;
  std::size_t aborted = 0;
  double rate = 0.0;
  double half_width = 0.0;            // 95% normal-approximation interval
  std::optional<double> expected;     // analytic curve where one is known
};

/// Analytic detection curve, where the attack admits one: disturbing taps
/// pass each decoy with probability 3/4, so a channel guarded by l decoys
/// catches them with 1 - (3/4)^l; stealth probes and a clean man-in-middle
/// interposition are never caught.
std::optional<double> expected_detection_rate(const AttackModel& model,
                                              std::size_t decoys);

/// The canonical experiment places the tap on one channel (TP to Alice)
/// guarded by `decoys` decoy photons, so the reported rate composes per-decoy
/// pass probabilities directly. `proto` overrides session parameters other
/// than seed/decoys/attack; `workers` <= 0 uses the hardware concurrency.
DetectionReport detection_experiment(const AttackModel& model, std::size_t decoys,
                                     std::size_t trials, std::uint64_t seed,
                                     const SessionConfig* proto = nullptr,
                                     int workers = 0);

/// Named verification suite outcome (also surfaced by the CLI).
struct SuiteResult {
  std::string suite;
  bool pass = false;
  double max_deviation = 0.0;
  std::string detail;
};

SuiteResult verify_state_support();
SuiteResult verify_eq18(std::uint64_t seed, std::size_t samples = 100000);
SuiteResult verify_truth_table();
SuiteResult verify_marginals();
SuiteResult verify_bell_pairing(std::uint64_t seed, std::size_t trials = 10000);

/// Which Bell-measured pairs of the carrier state share a label. Found by
/// brute force over the three pairings of {(1,2),(3,4),(5,6),(7,8)}.
struct BellPairingReport {
  int partner_of_12 = 0;              // first qubit of the pair matched to (1,2)
  std::array<double, 3> agreement{};  // label-agreement rate per candidate
  bool perfect = false;               // chosen pairing agreed in every trial
  std::size_t trials = 0;
};

BellPairingReport find_bell_pairing(std::size_t trials, std::uint64_t seed);

/// Feeds `decoys` random decoy photons through an entangling probe and the
/// preparation-basis check, counting mismatches.
struct ProbeCheckReport {
  std::size_t decoys = 0;
  std::size_t mismatches = 0;
  double per_decoy_rate = 0.0;
};

ProbeCheckReport probe_decoy_experiment(const ProbeUnitary& probe,
                                        std::size_t decoys, std::uint64_t seed);

/// Fidelity of (carrier + probed ancillas on particles 3 and 4) against
/// carrier (x) |e00> (x) |e00>; exactly 1 for a stealth probe.
double stealth_payload_fidelity(const ProbeUnitary& probe);

}  // namespace qpc
