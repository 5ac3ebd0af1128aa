#include "qpc/session.hpp"

#include <memory>
#include <sstream>
#include <stdexcept>

namespace qpc {

const char* to_string(Locality v) {
  switch (v) {
    case Locality::CoLocated: return "colocated";
    case Locality::Remote: return "remote";
    case Locality::RemoteAuthenticated: return "remote-auth";
  }
  return "?";
}

const char* to_string(Measurement v) {
  return v == Measurement::SingleParticleZ ? "z" : "bell";
}

const char* to_string(Quantumness v) {
  return v == Quantumness::Full ? "full" : "semi";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::NotEqual: return "not-equal";
    case Verdict::Aborted: return "aborted";
  }
  return "?";
}

void SessionConfig::validate() const {
  if (n_bits < 1 || n_bits > 64) {
    throw std::invalid_argument("secret width must be 1..64 bits");
  }
  if (n_bits < 64 && ((x >> n_bits) != 0 || (y >> n_bits) != 0)) {
    throw std::invalid_argument("secret exceeds the stated bit width");
  }
}

std::vector<BitPair> KeyDealer::deal(KeyPair which, std::size_t count,
                                     RandomStream& rng) const {
  if (locality_ == Locality::CoLocated) {
    throw std::logic_error("key dealing is undefined for co-located sessions");
  }
  if (locality_ == Locality::RemoteAuthenticated && which != KeyPair::AliceBob) {
    throw std::logic_error(
        "authenticated sessions use only the participants' shared key");
  }
  std::vector<BitPair> keys;
  keys.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    keys.push_back(BitPair::from_index(static_cast<int>(rng.next_below(4))));
  }
  return keys;
}

namespace {

struct ChannelState {
  TransmittedSequence seq;
  std::vector<DecoyRecord> records;
  std::unique_ptr<ChannelTap> tap;
  std::optional<MitmChannelResult> mitm;
};

std::vector<BitPair> pair_up(const std::vector<int>& bits) {
  std::vector<BitPair> pairs;
  pairs.reserve(bits.size() / 2);
  for (std::size_t i = 0; i + 1 < bits.size(); i += 2) {
    pairs.emplace_back(bits[i], bits[i + 1]);
  }
  return pairs;
}

std::unique_ptr<ChannelTap> make_tap(const AttackModel& model) {
  switch (model.kind) {
    case AttackKind::InterceptResend:
      return std::make_unique<InterceptResendTap>();
    case AttackKind::MeasureResend:
      return std::make_unique<MeasureResendTap>();
    case AttackKind::EntangleMeasure:
      return std::make_unique<EntangleMeasureTap>(*model.probe);
    case AttackKind::ManInMiddle:
      return nullptr;  // interposes on the whole exchange, handled separately
  }
  return nullptr;
}

std::vector<BitPair> measure_payload_groups(RegisterArena& arena,
                                            const std::vector<ParticleHandle>& payload,
                                            Measurement mode, RandomStream& rng) {
  std::vector<BitPair> out;
  out.reserve(payload.size() / 2);
  for (std::size_t i = 0; i + 1 < payload.size(); i += 2) {
    if (mode == Measurement::Bell) {
      const ParticleHandle first = payload[i];
      const ParticleHandle second = payload[i + 1];
      if (first.register_id != second.register_id) {
        // Pairs split across registers (e.g. substituted fakes) are measured
        // in Z and coded by the Z rule; a Bell label cannot straddle them.
        const int b1 = arena.measure(first, Basis::Z, rng);
        const int b2 = arena.measure(second, Basis::Z, rng);
        out.emplace_back(b1, b2);
      } else {
        const BellLabel label =
            arena.state_of(first).measure_bell(first.qubit, second.qubit, rng);
        out.push_back(encode_bell_label(label));
      }
    } else {
      const int b1 = arena.measure(payload[i], Basis::Z, rng);
      const int b2 = arena.measure(payload[i + 1], Basis::Z, rng);
      out.emplace_back(b1, b2);
    }
  }
  return out;
}

}  // namespace

SessionReport run_session(const SessionConfig& config) {
  config.validate();

  SessionReport report;
  report.config = config;

  RandomStream rng(config.seed);

  const GroupedSecret secret_a = GroupedSecret::from_value(config.x, config.n_bits);
  const GroupedSecret secret_b = GroupedSecret::from_value(config.y, config.n_bits);
  const std::size_t groups = secret_a.group_count();

  // compared bits over consumed carrier qubits: 2 per copy of 8
  report.qubit_efficiency =
      (2.0 * static_cast<double>(groups)) / (8.0 * static_cast<double>(groups));

  // Authentication gate: a man-in-middle interposition needs to pass itself
  // off as the endpoints, which authenticated channels refuse at setup.
  std::optional<AttackModel> attack = config.attack;
  if (attack && attack->kind == AttackKind::ManInMiddle &&
      config.locality == Locality::RemoteAuthenticated) {
    report.attack_rejected = true;
    attack.reset();
  }

  AdversaryView view;
  const bool tapped_a = attack && targets_alice(*attack);
  const bool tapped_b = attack && targets_bob(*attack);

  // Keys are dealt up front in a fixed order.
  KeyDealer dealer(config.locality);
  std::vector<BitPair> k_ab, k_ac, k_bc;
  if (config.locality == Locality::Remote) {
    k_ab = dealer.deal(KeyPair::AliceBob, groups, rng);
    k_ac = dealer.deal(KeyPair::AliceTP, groups, rng);
    k_bc = dealer.deal(KeyPair::BobTP, groups, rng);
  } else if (config.locality == Locality::RemoteAuthenticated) {
    k_ab = dealer.deal(KeyPair::AliceBob, groups, rng);
  }
  const BitPair zero{};

  // Step 1: carrier copies and the three particle sequences.
  RegisterArena arena(config.seed);
  std::vector<ParticleHandle> seq_alice, seq_bob;
  std::vector<std::uint32_t> carriers(groups);
  seq_alice.reserve(2 * groups);
  seq_bob.reserve(2 * groups);
  for (std::size_t i = 0; i < groups; ++i) {
    carriers[i] = arena.add(make_state(StateKind::EightQubit));
    seq_alice.push_back(arena.handle(carriers[i], 3));
    seq_alice.push_back(arena.handle(carriers[i], 4));
    seq_bob.push_back(arena.handle(carriers[i], 5));
    seq_bob.push_back(arena.handle(carriers[i], 6));
  }

  // Step 2: decoys in, sequences in transit (Alice's channel first).
  ChannelState ch_a, ch_b;
  ch_a.seq = insert_decoys(arena, seq_alice, config.decoys_per_channel, rng,
                           ch_a.records);
  ch_b.seq = insert_decoys(arena, seq_bob, config.decoys_per_channel, rng,
                           ch_b.records);

  const bool bell_mode = config.measurement == Measurement::Bell;
  auto run_transit = [&](ChannelState& ch, bool tapped, bool to_alice) {
    if (!tapped) {
      transmit(ch.seq, arena, nullptr, rng);
      return;
    }
    if (attack->kind == AttackKind::ManInMiddle) {
      ch.mitm = man_in_middle_transit(arena, std::move(ch.seq), ch.records,
                                      to_alice, bell_mode,
                                      config.decoys_per_channel, rng);
      ch.seq = ch.mitm->delivered;
      ch.records = ch.mitm->delivered_records;
      return;
    }
    ch.tap = make_tap(*attack);
    transmit(ch.seq, arena, ch.tap.get(), rng);
  };
  run_transit(ch_a, tapped_a, true);
  run_transit(ch_b, tapped_b, false);

  // Step 3: eavesdropping checks on both channels; any mismatch aborts.
  const CheckStyle style = config.quantumness == Quantumness::Semi
                               ? CheckStyle::Semi
                               : CheckStyle::Full;
  report.check_alice = eavesdrop_check(ch_a.seq, arena, ch_a.records, style, rng);
  report.check_bob = eavesdrop_check(ch_b.seq, arena, ch_b.records, style, rng);

  auto collect_transit_logs = [&]() {
    auto log_of = [](const ChannelState& ch) {
      std::vector<int> log;
      if (auto* t = dynamic_cast<const InterceptResendTap*>(ch.tap.get())) {
        for (std::size_t i = 0; i < t->transit_outcomes().size(); ++i) {
          const int basis_bit = t->transit_bases()[i] == Basis::X ? 1 : 0;
          log.push_back(basis_bit * 2 + t->transit_outcomes()[i]);
        }
      } else if (auto* t2 = dynamic_cast<const MeasureResendTap*>(ch.tap.get())) {
        log = t2->transit_outcomes();
      } else if (ch.mitm) {
        log = ch.mitm->true_payload_bits;
      }
      return log;
    };
    view.transit_log_a = log_of(ch_a);
    view.transit_log_b = log_of(ch_b);
  };

  if (!report.check_alice.pass || !report.check_bob.pass) {
    report.verdict = Verdict::Aborted;
    if (attack) {
      view.detected = true;
      collect_transit_logs();
      report.adversary = std::move(view);
    }
    return report;
  }

  // Positions become public; taps take their post-announcement measurements.
  auto announce = [&](ChannelState& ch, std::vector<BitPair>& claimed) {
    if (ch.mitm) {
      claimed = ch.mitm->claimed_groups;
      view.mitm_first_leg.push_back(ch.mitm->first_leg);
      return;
    }
    if (!ch.tap) return;
    const auto positions = decoy_positions(ch.records);
    ch.tap->on_positions_announced(positions, arena, rng);
    if (auto* t = dynamic_cast<const InterceptResendTap*>(ch.tap.get())) {
      claimed = pair_up(t->claimed_payload_bits());
    } else if (auto* t2 = dynamic_cast<const MeasureResendTap*>(ch.tap.get())) {
      claimed = pair_up(t2->claimed_payload_bits());
    } else if (auto* t3 = dynamic_cast<const EntangleMeasureTap*>(ch.tap.get())) {
      claimed = pair_up(t3->claimed_payload_bits());
    }
  };
  announce(ch_a, view.claimed_m_a);
  announce(ch_b, view.claimed_m_b);
  collect_transit_logs();

  // Step 4: participants measure and mask.
  const auto payload_a = strip_decoys(ch_a.seq, ch_a.records);
  const auto payload_b = strip_decoys(ch_b.seq, ch_b.records);
  if (payload_a.size() != 2 * groups || payload_b.size() != 2 * groups) {
    throw std::logic_error("payload handle count mismatch");
  }
  const auto m_a = measure_payload_groups(arena, payload_a, config.measurement, rng);
  const auto m_b = measure_payload_groups(arena, payload_b, config.measurement, rng);

  report.groups.resize(groups);
  for (std::size_t i = 0; i < groups; ++i) {
    GroupTranscript& g = report.groups[i];
    g.g_a = secret_a.groups[i];
    g.g_b = secret_b.groups[i];
    g.m_a = m_a[i];
    g.m_b = m_b[i];
    g.k_ab = k_ab.empty() ? zero : k_ab[i];
    g.k_ac = k_ac.empty() ? zero : k_ac[i];
    g.k_bc = k_bc.empty() ? zero : k_bc[i];
    switch (config.locality) {
      case Locality::CoLocated:
        g.r_a = participant_response_colocated(g.g_a, g.m_a);
        g.r_b = participant_response_colocated(g.g_b, g.m_b);
        g.r_ab = g.r_a ^ g.r_b;  // joint private computation; only r_ab is public
        break;
      case Locality::Remote:
        g.r_a = participant_response_remote(g.g_a, g.m_a, g.k_ab, g.k_ac);
        g.r_b = participant_response_remote(g.g_b, g.m_b, g.k_ab, g.k_bc);
        g.r_ab = g.r_a ^ g.r_b;  // TP combines the two public announcements
        break;
      case Locality::RemoteAuthenticated:
        g.r_a = participant_response_authenticated(g.g_a, g.m_a, g.k_ab);
        g.r_b = participant_response_authenticated(g.g_b, g.m_b, g.k_ab);
        g.r_ab = g.r_a ^ g.r_b;
        break;
    }
  }

  // Step 5: TP measures its quadruples and resolves each group.
  bool all_zero = true;
  for (std::size_t i = 0; i < groups; ++i) {
    GroupTranscript& g = report.groups[i];
    PureState& carrier = arena.state_of(arena.handle(carriers[i], 1));
    if (bell_mode) {
      g.m_c1 = encode_bell_label(carrier.measure_bell(1, 2, rng));
      g.m_c2 = encode_bell_label(carrier.measure_bell(7, 8, rng));
    } else {
      const int b1 = carrier.measure(1, Basis::Z, rng);
      const int b2 = carrier.measure(2, Basis::Z, rng);
      const int b7 = carrier.measure(7, Basis::Z, rng);
      const int b8 = carrier.measure(8, Basis::Z, rng);
      g.m_c1 = BitPair(b1, b2);
      g.m_c2 = BitPair(b7, b8);
    }
    if (config.locality == Locality::Remote) {
      g.r = tp_group_result_remote(g.r_a, g.r_b, g.m_c1, g.m_c2, g.k_ac, g.k_bc);
    } else {
      g.r = tp_group_result_joint(g.r_ab, g.m_c1, g.m_c2);
    }
    all_zero = all_zero && g.r.is_zero();
  }
  report.verdict = all_zero ? Verdict::Equal : Verdict::NotEqual;

  // Public announcements reach the adversary; she back-substitutes.
  if (attack) {
    for (const auto& g : report.groups) {
      if (config.locality == Locality::Remote) {
        view.announced_r_a.push_back(g.r_a);
        view.announced_r_b.push_back(g.r_b);
      } else {
        view.announced_r_ab.push_back(g.r_ab);
      }
    }
    const bool both = tapped_a && tapped_b;
    for (std::size_t i = 0; i < groups; ++i) {
      if (both && i < view.claimed_m_a.size() && i < view.claimed_m_b.size()) {
        const BitPair sum = (config.locality == Locality::Remote)
                                ? view.announced_r_a[i] ^ view.announced_r_b[i]
                                : view.announced_r_ab[i];
        view.xor_guess.push_back(sum ^ view.claimed_m_a[i] ^ view.claimed_m_b[i]);
      }
      if (config.locality == Locality::Remote) {
        if (tapped_a && i < view.claimed_m_a.size()) {
          view.guess_g_a.push_back(view.announced_r_a[i] ^ view.claimed_m_a[i]);
        }
        if (tapped_b && i < view.claimed_m_b.size()) {
          view.guess_g_b.push_back(view.announced_r_b[i] ^ view.claimed_m_b[i]);
        }
      }
    }
    report.adversary = std::move(view);
  } else if (report.attack_rejected) {
    view.rejected_by_authentication = true;
    report.adversary = std::move(view);
  }

  return report;
}

namespace {

void append_pairs(std::ostringstream& out, const char* tag,
                  const std::vector<BitPair>& pairs) {
  out << tag << ':';
  for (const auto& p : pairs) out << p.to_string();
  out << ';';
}

}  // namespace

std::string tp_view_fingerprint(const SessionReport& report) {
  std::ostringstream out;
  out << "verdict:" << to_string(report.verdict) << ';';
  out << "checks:" << report.check_alice.tested << ',' << report.check_alice.mismatches
      << ',' << report.check_bob.tested << ',' << report.check_bob.mismatches << ';';
  std::vector<BitPair> announced_ab, announced_a, announced_b, mc1, mc2, r;
  for (const auto& g : report.groups) {
    if (report.config.locality == Locality::Remote) {
      announced_a.push_back(g.r_a);
      announced_b.push_back(g.r_b);
    } else {
      announced_ab.push_back(g.r_ab);
    }
    mc1.push_back(g.m_c1);
    mc2.push_back(g.m_c2);
    r.push_back(g.r);
  }
  append_pairs(out, "r_ab", announced_ab);
  append_pairs(out, "r_a", announced_a);
  append_pairs(out, "r_b", announced_b);
  append_pairs(out, "m_c1", mc1);
  append_pairs(out, "m_c2", mc2);
  append_pairs(out, "r", r);
  return out.str();
}

std::string adversary_view_fingerprint(const AdversaryView& view) {
  std::ostringstream out;
  out << "detected:" << view.detected << ';';
  out << "transit_a:";
  for (int v : view.transit_log_a) out << v;
  out << ";transit_b:";
  for (int v : view.transit_log_b) out << v;
  out << ';';
  append_pairs(out, "claimed_a", view.claimed_m_a);
  append_pairs(out, "claimed_b", view.claimed_m_b);
  append_pairs(out, "r_ab", view.announced_r_ab);
  append_pairs(out, "r_a", view.announced_r_a);
  append_pairs(out, "r_b", view.announced_r_b);
  append_pairs(out, "xor_guess", view.xor_guess);
  return out.str();
}

}  // namespace qpc
