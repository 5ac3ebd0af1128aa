#include "qpc/channel.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpc {

ParticleHandle RegisterArena::handle(std::uint32_t register_id, int qubit) const {
  if (register_id >= registers_.size()) {
    throw std::out_of_range("register id out of range");
  }
  return ParticleHandle{session_id_, register_id, qubit};
}

PureState& RegisterArena::state_of(const ParticleHandle& h) {
  if (h.session_id != session_id_) {
    throw std::invalid_argument("handle belongs to a foreign session");
  }
  if (h.register_id >= registers_.size()) {
    throw std::out_of_range("register id out of range");
  }
  return registers_[h.register_id];
}

const PureState& RegisterArena::state_of(const ParticleHandle& h) const {
  return const_cast<RegisterArena*>(this)->state_of(h);
}

ParticleHandle RegisterArena::attach_ancilla(const ParticleHandle& h) {
  PureState& reg = state_of(h);
  reg.attach(PureState::computational(1, 0));
  return ParticleHandle{session_id_, h.register_id, reg.num_qubits()};
}

TransmittedSequence insert_decoys(RegisterArena& arena,
                                  std::span<const ParticleHandle> payload,
                                  std::size_t count, RandomStream& rng,
                                  std::vector<DecoyRecord>& records_out) {
  TransmittedSequence seq;
  seq.items.assign(payload.begin(), payload.end());

  // Track each decoy's handle alongside a parallel flag vector so final
  // positions can be recovered after all insertions shift earlier ones.
  std::vector<int> decoy_index_at(seq.items.size(), -1);
  std::vector<DecoyRecord> records;
  records.reserve(count);

  static constexpr StateKind kDecoyKinds[4] = {
      StateKind::DecoyZero, StateKind::DecoyOne, StateKind::DecoyPlus,
      StateKind::DecoyMinus};

  for (std::size_t d = 0; d < count; ++d) {
    const StateKind kind = kDecoyKinds[rng.next_below(4)];
    const std::size_t pos =
        rng.next_below(static_cast<std::uint32_t>(seq.items.size() + 1));
    const std::uint32_t reg = arena.add(make_state(kind));
    seq.items.insert(seq.items.begin() + static_cast<std::ptrdiff_t>(pos),
                     arena.handle(reg, 1));
    decoy_index_at.insert(decoy_index_at.begin() + static_cast<std::ptrdiff_t>(pos),
                          static_cast<int>(d));
    records.push_back(DecoyRecord{0, kind, decoy_basis(kind)});
  }

  for (std::size_t p = 0; p < decoy_index_at.size(); ++p) {
    if (decoy_index_at[p] >= 0) {
      records[static_cast<std::size_t>(decoy_index_at[p])].position = p;
    }
  }
  records_out = std::move(records);
  return seq;
}

void transmit(TransmittedSequence& seq, RegisterArena& arena, ChannelTap* tap,
              RandomStream& rng) {
  for (const auto& h : seq.items) {
    arena.state_of(h);  // validates session ownership and liveness
  }
  if (tap != nullptr) {
    tap->intercept(seq, arena, rng);
  }
}

CheckResult eavesdrop_check(const TransmittedSequence& seq, RegisterArena& arena,
                            std::span<const DecoyRecord> records, CheckStyle style,
                            RandomStream& rng, double threshold) {
  CheckResult result;
  for (const auto& rec : records) {
    if (rec.position >= seq.items.size()) {
      throw std::out_of_range("decoy record position outside sequence");
    }
    const ParticleHandle h = seq.items[rec.position];
    const int expected = decoy_bit(rec.prepared);

    if (style == CheckStyle::Full) {
      const int observed = arena.measure(h, rec.basis, rng);
      ++result.tested;
      result.mismatches += (observed != expected) ? 1u : 0u;
      continue;
    }

    // Semi style: the limited party either measure-resends in Z or reflects.
    const bool reflect = rng.next_bit() == 0;
    if (reflect) {
      // Sender verifies the reflected photon in its preparation basis.
      const int observed = arena.measure(h, rec.basis, rng);
      ++result.tested;
      result.mismatches += (observed != expected) ? 1u : 0u;
    } else {
      const int resent = arena.measure(h, Basis::Z, rng);
      if (rec.basis == Basis::Z) {
        // Freshly prepared Z state comes back; its value must match.
        ++result.tested;
        result.mismatches += (resent != expected) ? 1u : 0u;
      }
      // X-prepared decoys that were measured carry a legitimately random
      // outcome and are excluded from the tally.
    }
  }
  result.error_rate = result.tested == 0
                          ? 0.0
                          : static_cast<double>(result.mismatches) /
                                static_cast<double>(result.tested);
  result.pass = result.error_rate <= threshold;
  return result;
}

std::vector<ParticleHandle> strip_decoys(const TransmittedSequence& seq,
                                         std::span<const DecoyRecord> records) {
  std::vector<bool> is_decoy(seq.items.size(), false);
  for (const auto& rec : records) {
    if (rec.position >= seq.items.size()) {
      throw std::out_of_range("decoy record position outside sequence");
    }
    is_decoy[rec.position] = true;
  }
  std::vector<ParticleHandle> payload;
  payload.reserve(seq.items.size() - records.size());
  for (std::size_t p = 0; p < seq.items.size(); ++p) {
    if (!is_decoy[p]) payload.push_back(seq.items[p]);
  }
  return payload;
}

std::vector<std::size_t> decoy_positions(std::span<const DecoyRecord> records) {
  std::vector<std::size_t> positions;
  positions.reserve(records.size());
  for (const auto& rec : records) positions.push_back(rec.position);
  std::sort(positions.begin(), positions.end());
  return positions;
}

}  // namespace qpc
