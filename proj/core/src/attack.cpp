#include "qpc/attack.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpc {

AttackModel intercept_resend(ChannelTarget target) {
  return AttackModel{AttackKind::InterceptResend, target, std::nullopt};
}

AttackModel measure_resend(ChannelTarget target) {
  return AttackModel{AttackKind::MeasureResend, target, std::nullopt};
}

AttackModel entangle_measure(ProbeUnitary probe, ChannelTarget target) {
  return AttackModel{AttackKind::EntangleMeasure, target, std::move(probe)};
}

AttackModel man_in_middle(ChannelTarget target) {
  return AttackModel{AttackKind::ManInMiddle, target, std::nullopt};
}

bool targets_alice(const AttackModel& model) {
  return model.target != ChannelTarget::ToBob;
}

bool targets_bob(const AttackModel& model) {
  return model.target != ChannelTarget::ToAlice;
}

const char* to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::InterceptResend: return "intercept-resend";
    case AttackKind::MeasureResend: return "measure-resend";
    case AttackKind::EntangleMeasure: return "entangle-measure";
    case AttackKind::ManInMiddle: return "man-in-middle";
  }
  return "?";
}

const char* to_string(ChannelTarget target) {
  switch (target) {
    case ChannelTarget::ToAlice: return "a";
    case ChannelTarget::ToBob: return "b";
    case ChannelTarget::Both: return "both";
  }
  return "?";
}

namespace {

StateKind eigenstate_kind(Basis basis, int bit) {
  if (basis == Basis::Z) {
    return bit == 0 ? StateKind::DecoyZero : StateKind::DecoyOne;
  }
  return bit == 0 ? StateKind::DecoyPlus : StateKind::DecoyMinus;
}

std::vector<std::size_t> payload_positions(std::size_t total,
                                           std::span<const std::size_t> decoys) {
  std::vector<bool> is_decoy(total, false);
  for (std::size_t p : decoys) is_decoy[p] = true;
  std::vector<std::size_t> out;
  out.reserve(total - decoys.size());
  for (std::size_t p = 0; p < total; ++p) {
    if (!is_decoy[p]) out.push_back(p);
  }
  return out;
}

}  // namespace

void InterceptResendTap::intercept(TransmittedSequence& seq, RegisterArena& arena,
                                   RandomStream& rng) {
  retained_.reserve(seq.items.size());
  bases_.reserve(seq.items.size());
  transit_outcomes_.reserve(seq.items.size());
  for (auto& h : seq.items) {
    const Basis basis = rng.next_bit() == 0 ? Basis::Z : Basis::X;
    const int outcome = arena.measure(h, basis, rng);
    const std::uint32_t fake = arena.add(make_state(eigenstate_kind(basis, outcome)));
    retained_.push_back(h);
    bases_.push_back(basis);
    transit_outcomes_.push_back(outcome);
    h = arena.handle(fake, 1);
  }
}

void InterceptResendTap::on_positions_announced(
    std::span<const std::size_t> decoy_positions, RegisterArena& arena,
    RandomStream& rng) {
  claimed_.clear();
  for (std::size_t p : payload_positions(retained_.size(), decoy_positions)) {
    claimed_.push_back(arena.measure(retained_[p], Basis::Z, rng));
  }
}

void MeasureResendTap::intercept(TransmittedSequence& seq, RegisterArena& arena,
                                 RandomStream& rng) {
  retained_.reserve(seq.items.size());
  transit_outcomes_.reserve(seq.items.size());
  for (auto& h : seq.items) {
    const int outcome = arena.measure(h, Basis::Z, rng);
    const std::uint32_t fake = arena.add(make_state(eigenstate_kind(Basis::Z, outcome)));
    retained_.push_back(h);
    transit_outcomes_.push_back(outcome);
    h = arena.handle(fake, 1);
  }
}

void MeasureResendTap::on_positions_announced(
    std::span<const std::size_t> decoy_positions, RegisterArena& /*arena*/,
    RandomStream& /*rng*/) {
  claimed_.clear();
  for (std::size_t p : payload_positions(transit_outcomes_.size(), decoy_positions)) {
    claimed_.push_back(transit_outcomes_[p]);
  }
}

void EntangleMeasureTap::intercept(TransmittedSequence& seq, RegisterArena& arena,
                                   RandomStream& /*rng*/) {
  ancillas_.reserve(seq.items.size());
  for (const auto& h : seq.items) {
    const ParticleHandle ancilla = arena.attach_ancilla(h);
    const int pair[2] = {h.qubit, ancilla.qubit};
    arena.state_of(h).apply_unitary(pair, probe_.matrix());
    ancillas_.push_back(ancilla);
  }
}

void EntangleMeasureTap::on_positions_announced(
    std::span<const std::size_t> decoy_positions, RegisterArena& arena,
    RandomStream& rng) {
  claimed_.clear();
  for (std::size_t p : payload_positions(ancillas_.size(), decoy_positions)) {
    claimed_.push_back(arena.measure(ancillas_[p], Basis::Z, rng));
  }
}

MitmChannelResult man_in_middle_transit(RegisterArena& arena,
                                        TransmittedSequence true_seq,
                                        std::span<const DecoyRecord> true_records,
                                        bool to_alice, bool bell_mode,
                                        std::size_t decoy_count, RandomStream& rng) {
  MitmChannelResult result;

  // Leg 1: Eve plays the receiver against the sender's check. She measures
  // each true decoy in its announced preparation basis, so nothing mismatches.
  result.first_leg = eavesdrop_check(true_seq, arena, true_records,
                                     CheckStyle::Full, rng);

  // With positions public she measures the real payload in Z.
  const auto payload = strip_decoys(true_seq, true_records);
  result.true_payload_bits.reserve(payload.size());
  for (const auto& h : payload) {
    result.true_payload_bits.push_back(arena.measure(h, Basis::Z, rng));
  }

  // Fresh carrier states: the receiver gets the same particle roles it
  // expects; Eve keeps the correlated partner pair of each copy.
  const std::size_t groups = payload.size() / 2;
  const int send_first = to_alice ? 3 : 5;
  const int partner_first = to_alice ? 7 : 1;
  std::vector<ParticleHandle> fake_payload;
  std::vector<ParticleHandle> partners;
  fake_payload.reserve(payload.size());
  partners.reserve(payload.size());
  for (std::size_t i = 0; i < groups; ++i) {
    const std::uint32_t reg = arena.add(make_state(StateKind::EightQubit));
    fake_payload.push_back(arena.handle(reg, send_first));
    fake_payload.push_back(arena.handle(reg, send_first + 1));
    partners.push_back(arena.handle(reg, partner_first));
    partners.push_back(arena.handle(reg, partner_first + 1));
  }

  // Her copies tell her exactly what the receiver will observe.
  result.claimed_groups.reserve(groups);
  for (std::size_t i = 0; i < groups; ++i) {
    if (bell_mode) {
      const ParticleHandle first = partners[2 * i];
      const BellLabel label = arena.state_of(first).measure_bell(
          first.qubit, partners[2 * i + 1].qubit, rng);
      result.claimed_groups.push_back(encode_bell_label(label));
    } else {
      const int b1 = arena.measure(partners[2 * i], Basis::Z, rng);
      const int b2 = arena.measure(partners[2 * i + 1], Basis::Z, rng);
      result.claimed_groups.push_back(BitPair(b1, b2));
    }
  }

  // Leg 2 setup: Eve-as-sender interleaves her own decoys; the receiver's
  // later check runs against these records and passes.
  result.delivered =
      insert_decoys(arena, fake_payload, decoy_count, rng, result.delivered_records);
  return result;
}

}  // namespace qpc
