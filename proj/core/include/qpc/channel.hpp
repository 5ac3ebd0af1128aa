#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qpc/pure_state.hpp"
#include "qpc/random.hpp"

namespace qpc {

/// Opaque reference to one live qubit inside a session's register arena.
struct ParticleHandle {
  std::uint64_t session_id = 0;
  std::uint32_t register_id = 0;
  int qubit = 1;  // 1-based within the register

  friend bool operator==(const ParticleHandle&, const ParticleHandle&) = default;
};

/// Owns every quantum register of one session. Handles stay valid for the
/// session's lifetime; registers may grow when ancillas are attached.
class RegisterArena {
 public:
  explicit RegisterArena(std::uint64_t session_id) : session_id_(session_id) {}

  std::uint32_t add(PureState state) {
    registers_.push_back(std::move(state));
    return static_cast<std::uint32_t>(registers_.size() - 1);
  }

  ParticleHandle handle(std::uint32_t register_id, int qubit) const;

  PureState& state_of(const ParticleHandle& h);
  const PureState& state_of(const ParticleHandle& h) const;

  int measure(const ParticleHandle& h, Basis basis, RandomStream& rng) {
    return state_of(h).measure(h.qubit, basis, rng);
  }

  /// Attaches a fresh |0> ancilla to the handle's register and returns its
  /// handle within the same register.
  ParticleHandle attach_ancilla(const ParticleHandle& h);

  std::uint64_t session_id() const { return session_id_; }
  std::size_t register_count() const { return registers_.size(); }

 private:
  std::uint64_t session_id_;
  std::vector<PureState> registers_;
};

struct TransmittedSequence {
  std::vector<ParticleHandle> items;
};

/// Sender-side record of one inserted decoy photon.
struct DecoyRecord {
  std::size_t position = 0;  // index in the transmitted sequence
  StateKind prepared = StateKind::DecoyZero;
  Basis basis = Basis::Z;
};

struct CheckResult {
  std::size_t tested = 0;
  std::size_t mismatches = 0;
  double error_rate = 0.0;
  bool pass = true;
};

enum class CheckStyle {
  Full,  // receiver measures each decoy in its announced preparation basis
  Semi,  // receiver measure-resends (Z) or reflects, chosen per decoy
};

/// Adversary-side hook applied while a sequence is in transit. Taps see only
/// handles; nothing marks which positions carry decoys.
class ChannelTap {
 public:
  virtual ~ChannelTap() = default;

  virtual void intercept(TransmittedSequence& seq, RegisterArena& arena,
                         RandomStream& rng) = 0;

  /// Called once decoy positions become public (the step-3 announcement),
  /// and only if the session was not aborted first.
  virtual void on_positions_announced(std::span<const std::size_t> decoy_positions,
                                      RegisterArena& arena, RandomStream& rng) {}
};

/// Randomly interleaves `count` fresh decoy photons with the payload.
/// Preserves payload order; draws, per decoy, first the prepared state then
/// the insertion position.
TransmittedSequence insert_decoys(RegisterArena& arena,
                                  std::span<const ParticleHandle> payload,
                                  std::size_t count, RandomStream& rng,
                                  std::vector<DecoyRecord>& records_out);

/// Delivers the sequence, applying the tap (if any) while in transit.
void transmit(TransmittedSequence& seq, RegisterArena& arena, ChannelTap* tap,
              RandomStream& rng);

/// Step-3 eavesdropping check over the delivered decoys. Full style counts a
/// mismatch whenever the preparation-basis measurement disagrees with the
/// prepared value. Semi style draws reflect-or-measure per decoy; X-prepared
/// decoys that were measured-and-resent are excluded from the tested count.
/// Passes iff error_rate <= threshold (default: strict zero).
CheckResult eavesdrop_check(const TransmittedSequence& seq, RegisterArena& arena,
                            std::span<const DecoyRecord> records, CheckStyle style,
                            RandomStream& rng, double threshold = 0.0);

/// The payload, in original order, left after removing decoy positions.
std::vector<ParticleHandle> strip_decoys(const TransmittedSequence& seq,
                                         std::span<const DecoyRecord> records);

std::vector<std::size_t> decoy_positions(std::span<const DecoyRecord> records);

}  // namespace qpc
