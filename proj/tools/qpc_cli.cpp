#include "qpc_cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qpc/experiment.hpp"
#include "qpc/report_json.hpp"

namespace qpc::cli {

namespace {

std::uint64_t parse_hex(const std::string& text) {
  std::string body = text;
  if (body.rfind("0x", 0) == 0 || body.rfind("0X", 0) == 0) body = body.substr(2);
  if (body.empty() || body.size() > 16 ||
      body.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
    throw UsageError("expected a hexadecimal value, got '" + text + "'");
  }
  return std::stoull(body, nullptr, 16);
}

AttackModel build_attack(const std::string& model, const std::string& channel) {
  ChannelTarget target;
  if (channel == "a") {
    target = ChannelTarget::ToAlice;
  } else if (channel == "b") {
    target = ChannelTarget::ToBob;
  } else if (channel == "both") {
    target = ChannelTarget::Both;
  } else {
    throw UsageError("unknown channel '" + channel + "' (use a|b|both)");
  }
  if (model == "intercept-resend") return intercept_resend(target);
  if (model == "measure-resend") return measure_resend(target);
  if (model == "entangle-stealth") {
    return entangle_measure(ProbeUnitary::stealth(), target);
  }
  if (model == "entangle-cnot") {
    return entangle_measure(ProbeUnitary::cnot(), target);
  }
  if (model == "mitm") return man_in_middle(target);
  throw UsageError("unknown attack model '" + model + "'");
}

std::uint64_t env_or_default_seed() {
  if (const char* env = std::getenv("QPC_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != nullptr && *end == '\0') return v;
    throw UsageError("QPC_SEED must be a decimal integer");
  }
  return kDefaultSeed;
}

const std::vector<std::string> kKnownSuites = {
    "state", "truth-table", "marginals", "bell-pairing", "eq18"};

}  // namespace

RunPlan parse_plan(const std::vector<std::string>& args) {
  CLI::App app{"qpc: two-party private-comparison protocol simulator"};
  app.require_subcommand(1);
  app.set_config("--config");

  RunPlan plan;
  std::string x_hex = "0", y_hex = "0";
  std::string mode = "colocated", measure = "z", quantumness = "full";
  std::string suites_joined;

  auto add_session_flags = [&](CLI::App* cmd, bool is_run) {
    cmd->add_option("--n", plan.session.n_bits, "secret width in bits (1..64)")
        ->check(CLI::Range(1, 64));
    cmd->add_option("--x", x_hex, "Alice's secret, hexadecimal");
    cmd->add_option("--y", y_hex, "Bob's secret, hexadecimal");
    cmd->add_option("--mode", mode, "colocated|remote|remote-auth");
    cmd->add_option("--measure", measure, "z|bell");
    cmd->add_option("--quantumness", quantumness, "full|semi");
    if (is_run) {
      cmd->add_option("--decoys", plan.session.decoys_per_channel,
                      "decoy photons per channel");
      cmd->add_option("--model", plan.attack_model,
                      "optional channel tap for this run");
      cmd->add_option("--channel", plan.attack_channel, "a|b|both");
    }
  };

  CLI::App* run = app.add_subcommand("run", "run one protocol session");
  add_session_flags(run, true);

  CLI::App* attack = app.add_subcommand("attack", "Monte Carlo detection experiment");
  add_session_flags(attack, false);
  attack->add_option("--model", plan.attack_model, "attack model")->required();
  attack->add_option("--channel", plan.attack_channel, "a|b|both");
  attack
      ->add_option("--decoys", plan.decoy_sweep,
                   "decoy count(s); several values sweep the curve")
      ->delimiter(',')
      ->required();
  attack->add_option("--trials", plan.trials, "sessions per decoy count")
      ->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand("verify", "identity/property suites");
  verify
      ->add_option("--suite", plan.suites,
                   "state|truth-table|marginals|bell-pairing|eq18|all")
      ->delimiter(',');

  std::uint64_t seed_flag = 0;
  app.add_option("--seed", seed_flag, "master seed (QPC_SEED, then 1729)");
  for (auto* cmd : {run, attack, verify}) {
    cmd->add_option("--seed", seed_flag, "master seed");
    cmd->add_option("--out", plan.out_path, "output file (default stdout)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& err) {
    throw UsageError(err.what());
  }

  const bool seed_given =
      app.count("--seed") > 0 || run->count("--seed") > 0 ||
      attack->count("--seed") > 0 || verify->count("--seed") > 0;
  plan.seed = seed_given ? seed_flag : env_or_default_seed();

  if (run->parsed()) plan.command = Command::Run;
  if (attack->parsed()) plan.command = Command::Attack;
  if (verify->parsed()) plan.command = Command::Verify;

  plan.session.x = parse_hex(x_hex);
  plan.session.y = parse_hex(y_hex);
  plan.session.seed = plan.seed;

  if (mode == "colocated") {
    plan.session.locality = Locality::CoLocated;
  } else if (mode == "remote") {
    plan.session.locality = Locality::Remote;
  } else if (mode == "remote-auth") {
    plan.session.locality = Locality::RemoteAuthenticated;
  } else {
    throw UsageError("unknown mode '" + mode + "'");
  }
  if (measure == "z") {
    plan.session.measurement = Measurement::SingleParticleZ;
  } else if (measure == "bell") {
    plan.session.measurement = Measurement::Bell;
  } else {
    throw UsageError("unknown measurement '" + measure + "'");
  }
  if (quantumness == "full") {
    plan.session.quantumness = Quantumness::Full;
  } else if (quantumness == "semi") {
    plan.session.quantumness = Quantumness::Semi;
  } else {
    throw UsageError("unknown quantumness '" + quantumness + "'");
  }

  try {
    plan.session.validate();
  } catch (const std::invalid_argument& err) {
    throw UsageError(err.what());
  }

  if (plan.command == Command::Run && !plan.attack_model.empty()) {
    plan.session.attack = build_attack(plan.attack_model, plan.attack_channel);
  }
  if (plan.command == Command::Attack) {
    build_attack(plan.attack_model, plan.attack_channel);  // validate early
  }
  if (plan.command == Command::Verify) {
    std::vector<std::string> expanded;
    for (const auto& s : plan.suites) {
      if (s == "all") {
        expanded.insert(expanded.end(), kKnownSuites.begin(), kKnownSuites.end());
      } else if (std::find(kKnownSuites.begin(), kKnownSuites.end(), s) !=
                 kKnownSuites.end()) {
        expanded.push_back(s);
      } else {
        throw UsageError("unknown suite '" + s + "'");
      }
    }
    plan.suites = std::move(expanded);
  }
  return plan;
}

std::vector<std::string> execute_plan(const RunPlan& plan, int& exit_code) {
  std::vector<std::string> lines;
  exit_code = kExitOk;

  switch (plan.command) {
    case Command::Run: {
      const SessionReport report = run_session(plan.session);
      lines.push_back(run_report_line(report));
      if (report.verdict == Verdict::Aborted) exit_code = kExitAborted;
      break;
    }
    case Command::Attack: {
      const AttackModel model = build_attack(plan.attack_model, plan.attack_channel);
      SessionConfig proto = plan.session;
      proto.attack.reset();
      for (const std::size_t decoys : plan.decoy_sweep) {
        const DetectionReport det =
            detection_experiment(model, decoys, plan.trials, plan.seed, &proto);
        lines.push_back(attack_report_line(det, plan.seed));
      }
      break;
    }
    case Command::Verify: {
      bool all_pass = true;
      for (const std::string& suite : plan.suites) {
        SuiteResult result;
        if (suite == "state") {
          result = verify_state_support();
        } else if (suite == "truth-table") {
          result = verify_truth_table();
        } else if (suite == "marginals") {
          result = verify_marginals();
        } else if (suite == "bell-pairing") {
          result = verify_bell_pairing(plan.seed);
        } else {
          result = verify_eq18(plan.seed);
        }
        all_pass = all_pass && result.pass;
        lines.push_back(verify_report_line(result, plan.seed));
      }
      if (!all_pass) exit_code = kExitError;
      break;
    }
  }
  return lines;
}

void emit_report(const std::vector<std::string>& lines, const std::string& out_path) {
  if (out_path.empty()) {
    for (const auto& line : lines) std::cout << line;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  for (const auto& line : lines) out << line;
  if (!out.good()) throw std::runtime_error("write failed: " + out_path);
}

}  // namespace qpc::cli
