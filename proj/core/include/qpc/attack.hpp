#pragma once

#include <optional>
#include <vector>

#include "qpc/bitpair.hpp"
#include "qpc/channel.hpp"
#include "qpc/probe.hpp"

namespace qpc {

enum class AttackKind {
  InterceptResend,   // measure in a random basis, forward the observed state
  MeasureResend,     // measure in Z, forward the observed state
  EntangleMeasure,   // entangle a probe ancilla with each transiting qubit
  ManInMiddle,       // impersonate both endpoints around the check
};

enum class ChannelTarget { ToAlice, ToBob, Both };

/// Tagged description of an adversary tap on the quantum channels.
struct AttackModel {
  AttackKind kind = AttackKind::InterceptResend;
  ChannelTarget target = ChannelTarget::Both;
  std::optional<ProbeUnitary> probe;  // EntangleMeasure only
};

AttackModel intercept_resend(ChannelTarget target = ChannelTarget::Both);
AttackModel measure_resend(ChannelTarget target = ChannelTarget::Both);
AttackModel entangle_measure(ProbeUnitary probe,
                             ChannelTarget target = ChannelTarget::Both);
AttackModel man_in_middle(ChannelTarget target = ChannelTarget::Both);

bool targets_alice(const AttackModel& model);
bool targets_bob(const AttackModel& model);

const char* to_string(AttackKind kind);
const char* to_string(ChannelTarget target);

/// What the adversary accumulated across one session. Guesses are filled in
/// after the public announcements by XOR back-substitution; xor_guess exists
/// only when both channels were tapped.
struct AdversaryView {
  bool detected = false;
  bool rejected_by_authentication = false;

  std::vector<int> transit_log_a;    // raw transit observations per item
  std::vector<int> transit_log_b;

  std::vector<BitPair> claimed_m_a;  // believed delivered outcomes, per group
  std::vector<BitPair> claimed_m_b;

  std::vector<BitPair> announced_r_ab;  // co-located / authenticated sessions
  std::vector<BitPair> announced_r_a;   // remote sessions
  std::vector<BitPair> announced_r_b;

  std::vector<BitPair> xor_guess;  // estimate of G_a^i xor G_b^i
  std::vector<BitPair> guess_g_a;  // per-party estimates (remote announcements)
  std::vector<BitPair> guess_g_b;

  std::vector<CheckResult> mitm_first_leg;  // Eve-as-receiver checks with TP
};

/// Textbook intercept-resend: each transiting qubit is measured in a
/// uniformly random basis and a fresh preparation of the observed eigenstate
/// is forwarded; the collapsed original stays with the adversary. Once decoy
/// positions are announced, retained payload qubits are measured in Z and
/// recorded as the claimed outcomes.
class InterceptResendTap final : public ChannelTap {
 public:
  void intercept(TransmittedSequence& seq, RegisterArena& arena,
                 RandomStream& rng) override;
  void on_positions_announced(std::span<const std::size_t> decoy_positions,
                              RegisterArena& arena, RandomStream& rng) override;

  const std::vector<int>& claimed_payload_bits() const { return claimed_; }
  const std::vector<ParticleHandle>& retained_originals() const { return retained_; }
  const std::vector<Basis>& transit_bases() const { return bases_; }
  const std::vector<int>& transit_outcomes() const { return transit_outcomes_; }

 private:
  std::vector<ParticleHandle> retained_;
  std::vector<Basis> bases_;
  std::vector<int> transit_outcomes_;
  std::vector<int> claimed_;
};

/// Immediate Z measurement of everything in transit; the observed state is
/// re-prepared and forwarded. Decoys cannot be told apart from payload, so
/// X-basis decoys are disturbed.
class MeasureResendTap final : public ChannelTap {
 public:
  void intercept(TransmittedSequence& seq, RegisterArena& arena,
                 RandomStream& rng) override;
  void on_positions_announced(std::span<const std::size_t> decoy_positions,
                              RegisterArena& arena, RandomStream& rng) override;

  const std::vector<int>& claimed_payload_bits() const { return claimed_; }
  const std::vector<int>& transit_outcomes() const { return transit_outcomes_; }

 private:
  std::vector<ParticleHandle> retained_;
  std::vector<int> transit_outcomes_;
  std::vector<int> claimed_;
};

/// Attaches a fresh ancilla to every transiting qubit and applies the probe
/// unitary to the (qubit, ancilla) pair; ancillas are measured in Z once the
/// payload positions are known.
class EntangleMeasureTap final : public ChannelTap {
 public:
  explicit EntangleMeasureTap(ProbeUnitary probe) : probe_(std::move(probe)) {}

  void intercept(TransmittedSequence& seq, RegisterArena& arena,
                 RandomStream& rng) override;
  void on_positions_announced(std::span<const std::size_t> decoy_positions,
                              RegisterArena& arena, RandomStream& rng) override;

  const std::vector<int>& claimed_payload_bits() const { return claimed_; }
  const std::vector<ParticleHandle>& ancillas() const { return ancillas_; }

 private:
  ProbeUnitary probe_;
  std::vector<ParticleHandle> ancillas_;
  std::vector<int> claimed_;
};

/// Outcome of a man-in-middle interposition on one channel: Eve completes
/// the check with the sender, measures the real payload, then hands the
/// receiver particles from carrier states she prepared herself (keeping the
/// correlated partners) behind her own decoys.
struct MitmChannelResult {
  TransmittedSequence delivered;
  std::vector<DecoyRecord> delivered_records;
  CheckResult first_leg;
  std::vector<int> true_payload_bits;     // Z outcomes of the intercepted payload
  std::vector<BitPair> claimed_groups;    // what the receiver will measure
};

MitmChannelResult man_in_middle_transit(RegisterArena& arena,
                                        TransmittedSequence true_seq,
                                        std::span<const DecoyRecord> true_records,
                                        bool to_alice, bool bell_mode,
                                        std::size_t decoy_count, RandomStream& rng);

}  // namespace qpc
