#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpc/attack.hpp"
#include "qpc/bitpair.hpp"
#include "qpc/channel.hpp"

namespace qpc {

inline constexpr std::uint64_t kDefaultSeed = 1729;

enum class Locality { CoLocated, Remote, RemoteAuthenticated };
enum class Measurement { SingleParticleZ, Bell };
enum class Quantumness { Full, Semi };
enum class Verdict { Equal, NotEqual, Aborted };

const char* to_string(Locality v);
const char* to_string(Measurement v);
const char* to_string(Quantumness v);
const char* to_string(Verdict v);

struct SessionConfig {
  int n_bits = 8;
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  Locality locality = Locality::CoLocated;
  Measurement measurement = Measurement::SingleParticleZ;
  Quantumness quantumness = Quantumness::Full;
  std::size_t decoys_per_channel = 16;
  std::uint64_t seed = kDefaultSeed;
  std::optional<AttackModel> attack;

  void validate() const;
};

enum class KeyPair { AliceBob, AliceTP, BobTP };

/// Ideal trusted dealer standing in for QKD/SQKD key generation: both
/// endpoints of a pair receive identical uniformly random two-bit keys.
class KeyDealer {
 public:
  explicit KeyDealer(Locality locality) : locality_(locality) {}

  std::vector<BitPair> deal(KeyPair which, std::size_t count, RandomStream& rng) const;

 private:
  Locality locality_;
};

// Per-group masking rules. Participants encode their measured pair, XOR in
// their secret group and (depending on locality) shared keys, and announce.
constexpr BitPair participant_response_colocated(BitPair g, BitPair m) {
  return g ^ m;
}
constexpr BitPair participant_response_remote(BitPair g, BitPair m, BitPair k_ab,
                                              BitPair k_tp) {
  return g ^ m ^ k_ab ^ k_tp;
}
constexpr BitPair participant_response_authenticated(BitPair g, BitPair m,
                                                     BitPair k_ab) {
  return g ^ m ^ k_ab;
}
constexpr BitPair tp_group_result_joint(BitPair r_ab, BitPair m_c1, BitPair m_c2) {
  return r_ab ^ m_c1 ^ m_c2;
}
constexpr BitPair tp_group_result_remote(BitPair r_a, BitPair r_b, BitPair m_c1,
                                         BitPair m_c2, BitPair k_ac, BitPair k_bc) {
  return r_a ^ r_b ^ m_c1 ^ m_c2 ^ k_ac ^ k_bc;
}

struct GroupTranscript {
  BitPair g_a, g_b;
  BitPair m_a, m_b, m_c1, m_c2;
  BitPair r_a, r_b, r_ab, r;
  BitPair k_ab, k_ac, k_bc;
};

struct SessionReport {
  SessionConfig config;
  Verdict verdict = Verdict::Aborted;
  std::vector<GroupTranscript> groups;
  CheckResult check_alice, check_bob;
  double qubit_efficiency = 0.0;  // compared bits / consumed carrier qubits
  bool attack_rejected = false;   // authentication refused the tap at setup
  std::optional<AdversaryView> adversary;
};

/// Runs one full protocol session.
///
/// Random draws follow a fixed order: key dealing (AB, A-TP, B-TP); decoy
/// insertion for Alice's channel then Bob's; transit taps in the same channel
/// order; the two eavesdropping checks; adversary post-announcement
/// measurements; Alice's payload measurements, then Bob's, then TP's (per
/// group: particles 1,2 then 7,8). Draws never depend on the secrets, only
/// on the seed and configuration.
SessionReport run_session(const SessionConfig& config);

/// Everything TP sees in a session: the public announcements, its own
/// outcomes, the per-group results and the verdict, serialized canonically.
std::string tp_view_fingerprint(const SessionReport& report);

/// The adversary's complete view serialized canonically.
std::string adversary_view_fingerprint(const AdversaryView& view);

}  // namespace qpc
