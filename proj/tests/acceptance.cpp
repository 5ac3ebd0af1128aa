// Acceptance suite: one line per criterion, non-zero exit on any failure.
// Criteria 10 and 11 drive the installed CLI binary (path via --cli).

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qpc/experiment.hpp"
#include "qpc/report_json.hpp"
#include "qpc/session.hpp"

using namespace qpc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string g_cli_path;

std::uint64_t mask_for(int n_bits) {
  return n_bits >= 64 ? ~0ull : ((1ull << n_bits) - 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = g_cli_path + " " + args + " 2>/dev/null";
  return std::system(cmd.c_str());
}

// ---------------------------------------------------------------------------

Outcome c1_state_reproduction() {
  // The sixteen kets of the carrier state, as printed.
  static const char* kKets[16] = {
      "00000000", "00010001", "00100010", "00110011", "01000100", "01010101",
      "01100110", "01110111", "10001000", "10011001", "10101010", "10111011",
      "11001100", "11011101", "11101110", "11111111"};

  const PureState st = make_state(StateKind::EightQubit);
  std::size_t nonzero = 0;
  double worst = 0.0;
  bool support_ok = true;
  for (std::uint32_t i = 0; i < 256; ++i) {
    const Complex a = st.amplitude(i);
    if (std::abs(a) == 0.0) continue;
    ++nonzero;
    worst = std::max(worst, std::abs(a - Complex(0.25, 0.0)));
    support_ok = support_ok && ((i >> 4) == (i & 0xfu));
  }
  bool printed_ok = true;
  for (const char* ket : kKets) {
    std::uint32_t idx = 0;
    for (const char* c = ket; *c; ++c) idx = (idx << 1) | std::uint32_t(*c - '0');
    printed_ok = printed_ok && std::abs(st.amplitude(idx) - Complex(0.25, 0.0)) <= 1e-15;
  }
  Outcome out;
  out.pass = nonzero == 16 && worst <= 1e-15 && support_ok && printed_ok;
  std::ostringstream detail;
  detail << "nonzero=" << nonzero << " max|amp-1/4|=" << worst;
  out.detail = detail.str();
  return out;
}

Outcome c2_pair_identity() {
  const SuiteResult r = verify_eq18(kDefaultSeed, 100000);
  return {r.pass, r.detail};
}

Outcome c3_truth_table() {
  const SuiteResult r = verify_truth_table();
  return {r.pass, r.detail};
}

Outcome c4_marginals() {
  const SuiteResult r = verify_marginals();
  return {r.pass, r.detail};
}

Outcome c5_end_to_end() {
  const Locality locs[] = {Locality::CoLocated, Locality::Remote,
                           Locality::RemoteAuthenticated};
  const Measurement meas[] = {Measurement::SingleParticleZ, Measurement::Bell};
  const Quantumness quant[] = {Quantumness::Full, Quantumness::Semi};

  RandomStream meta(20250809);
  std::size_t sessions = 0, correct = 0;
  for (int t = 0; t < 1000; ++t) {
    SessionConfig cfg;
    cfg.n_bits = 1 + int(meta.next_below(64));
    cfg.x = meta.next_u64() & mask_for(cfg.n_bits);
    cfg.y = (t % 2 == 0) ? cfg.x : (meta.next_u64() & mask_for(cfg.n_bits));
    cfg.decoys_per_channel = 4;
    cfg.seed = RandomStream::derive_seed(42, std::uint64_t(t));
    const Verdict expected = cfg.x == cfg.y ? Verdict::Equal : Verdict::NotEqual;
    for (const auto loc : locs) {
      for (const auto m : meas) {
        for (const auto q : quant) {
          cfg.locality = loc;
          cfg.measurement = m;
          cfg.quantumness = q;
          ++sessions;
          correct += run_session(cfg).verdict == expected ? 1 : 0;
        }
      }
    }
  }
  Outcome out;
  out.pass = correct == sessions;
  std::ostringstream detail;
  detail << "verdicts=" << correct << "/" << sessions << " over 1000 triples x 12 combos";
  out.detail = detail.str();
  return out;
}

Outcome c6_detection_curve() {
  Outcome out;
  out.pass = true;
  std::ostringstream detail;
  for (const std::size_t l : {4, 8, 16}) {
    const DetectionReport det = detection_experiment(
        intercept_resend(ChannelTarget::ToAlice), l, 20000,
        RandomStream::derive_seed(kDefaultSeed, l));
    const double expected = 1.0 - std::pow(0.75, double(l));
    const double gap = std::abs(det.rate - expected);
    out.pass = out.pass && gap <= 0.02;
    detail << "l=" << l << ":" << det.rate << "(|d|=" << gap << ") ";
  }
  out.detail = detail.str();
  return out;
}

Outcome c7_stealth_probe() {
  const ProbeUnitary stealth = ProbeUnitary::stealth();
  const ProbeCheckReport quiet = probe_decoy_experiment(stealth, 10000, 7001);
  const double fidelity = stealth_payload_fidelity(stealth);
  const ProbeCheckReport noisy =
      probe_decoy_experiment(ProbeUnitary::cnot(), 10000, 7002);

  Outcome out;
  out.pass = quiet.mismatches == 0 && std::abs(fidelity - 1.0) <= 1e-10 &&
             std::abs(noisy.per_decoy_rate - 0.25) <= 0.02;
  std::ostringstream detail;
  detail << "stealth_mismatches=" << quiet.mismatches
         << " |fidelity-1|=" << std::abs(fidelity - 1.0)
         << " cnot_rate=" << noisy.per_decoy_rate;
  out.detail = detail.str();
  return out;
}

Outcome c8_view_equality() {
  std::size_t passes = 0;
  const std::size_t trials = 100;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t seed = RandomStream::derive_seed(88, t);
    RandomStream meta(seed);
    const int n = 8 + int(meta.next_below(9));
    const std::uint64_t mask = mask_for(n);
    const std::uint64_t x = meta.next_u64() & mask;
    const std::uint64_t y = meta.next_u64() & mask;
    const std::uint64_t shift = meta.next_u64() & mask;

    SessionConfig cfg;
    cfg.n_bits = n;
    cfg.decoys_per_channel = 0;  // no aborts: isolates the privacy claim
    cfg.seed = seed;
    cfg.locality = t % 2 == 0 ? Locality::CoLocated : Locality::RemoteAuthenticated;
    cfg.attack = intercept_resend(ChannelTarget::Both);

    cfg.x = x;
    cfg.y = y;
    const SessionReport base = run_session(cfg);
    cfg.x = x ^ shift;
    cfg.y = y ^ shift;
    const SessionReport shifted = run_session(cfg);

    const bool views_equal =
        tp_view_fingerprint(base) == tp_view_fingerprint(shifted) &&
        base.adversary && shifted.adversary &&
        adversary_view_fingerprint(*base.adversary) ==
            adversary_view_fingerprint(*shifted.adversary);

    // Flip one bit of one secret only: some group result must move.
    cfg.y ^= 1ull << meta.next_below(std::uint32_t(n));
    const SessionReport different = run_session(cfg);
    bool r_differs = false;
    for (std::size_t i = 0; i < base.groups.size(); ++i) {
      r_differs = r_differs || !(different.groups[i].r == base.groups[i].r);
    }
    if (views_equal && r_differs) ++passes;
  }
  Outcome out;
  out.pass = passes == trials;
  std::ostringstream detail;
  detail << "pair_trials=" << passes << "/" << trials;
  out.detail = detail.str();
  return out;
}

Outcome c9_bell_pairing() {
  const BellPairingReport pairing = find_bell_pairing(10000, 909);
  const SuiteResult suite = verify_bell_pairing(kDefaultSeed, 10000);
  Outcome out;
  out.pass = pairing.perfect && pairing.partner_of_12 == 5 && suite.pass;
  std::ostringstream detail;
  detail << "partner_of_(1,2)=(" << pairing.partner_of_12 << ","
         << pairing.partner_of_12 + 1 << ") agreement=" << pairing.agreement[1]
         << " suite=" << (suite.pass ? "pass" : "fail");
  out.detail = detail.str();
  return out;
}

Outcome c10_efficiency() {
  bool all = true;
  // Library-level reports across modes.
  for (const Locality loc : {Locality::CoLocated, Locality::Remote,
                             Locality::RemoteAuthenticated}) {
    SessionConfig cfg;
    cfg.n_bits = 11;
    cfg.x = 0x5a5 & mask_for(11);
    cfg.y = cfg.x;
    cfg.locality = loc;
    cfg.seed = 1010;
    const SessionReport report = run_session(cfg);
    all = all && report.qubit_efficiency == 0.25;
    all = all && run_report_line(report).find("\"qubit_efficiency\":0.25") !=
                     std::string::npos;
  }
  // CLI-level run report.
  const std::string path = "acceptance_c10.jsonl";
  const int rc = run_cli("run --n 16 --x 1234 --y 1234 --seed 77 --out " + path);
  const std::string body = read_file(path);
  std::remove(path.c_str());
  all = all && rc == 0 && body.find("\"qubit_efficiency\":0.25") != std::string::npos;
  return {all, all ? "0.25 in every report" : "missing or wrong efficiency"};
}

Outcome c11_determinism() {
  const std::array<std::string, 3> plans = {
      "run --n 32 --x a1b2c3d4 --y a1b2c3d4 --mode remote --measure bell "
      "--decoys 12 --seed 42",
      "attack --model intercept-resend --channel a --decoys 4,8 --trials 400 "
      "--seed 7",
      "verify --suite state,truth-table,marginals --seed 3",
  };
  bool all = true;
  std::ostringstream detail;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const std::string path_a = "acceptance_c11_a.jsonl";
    const std::string path_b = "acceptance_c11_b.jsonl";
    run_cli(plans[i] + " --out " + path_a);
    run_cli(plans[i] + " --out " + path_b);
    const std::string body_a = read_file(path_a);
    const std::string body_b = read_file(path_b);
    std::remove(path_a.c_str());
    std::remove(path_b.c_str());
    const bool same = !body_a.empty() && body_a == body_b;
    all = all && same;
    detail << "plan" << i + 1 << "=" << (same ? "identical" : "diverged") << " ";
  }
  return {all, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") g_cli_path = argv[i + 1];
  }
  if (g_cli_path.empty()) g_cli_path = "./tools/qpc";

  struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"C1 state reproduction", 1.0, c1_state_reproduction},
      {"C2 pair-XOR identity and uniformity", 10.0, c2_pair_identity},
      {"C3 truth table", 1.0, c3_truth_table},
      {"C4 marginals", 1.0, c4_marginals},
      {"C5 end-to-end correctness", 60.0, c5_end_to_end},
      {"C6 detection curve", 120.0, c6_detection_curve},
      {"C7 stealth and cnot probes", 0.0, c7_stealth_probe},
      {"C8 privacy view-equality", 0.0, c8_view_equality},
      {"C9 bell pairing oracle", 0.0, c9_bell_pairing},
      {"C10 qubit efficiency", 0.0, c10_efficiency},
      {"C11 CLI determinism", 0.0, c11_determinism},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto started = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.check();
    } catch (const std::exception& err) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + err.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    if (criterion.budget_seconds > 0.0 && elapsed > criterion.budget_seconds) {
      outcome.pass = false;
      outcome.detail += " [over budget]";
    }
    std::printf("[%s] %s: %s (%.2fs)\n", outcome.pass ? "PASS" : "FAIL",
                criterion.name, outcome.detail.c_str(), elapsed);
    failures += outcome.pass ? 0 : 1;
  }
  return failures;
}
