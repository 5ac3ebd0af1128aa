#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qpc/bitpair.hpp"
#include "qpc/random.hpp"

namespace qpc {

using Complex = std::complex<double>;

enum class Basis { Z, X };

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Public two-bit coding rule for Bell outcomes: phi+ -> 00, phi- -> 01,
/// psi+ -> 10, psi- -> 11.
constexpr BitPair encode_bell_label(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return {0, 0};
    case BellLabel::PhiMinus: return {0, 1};
    case BellLabel::PsiPlus: return {1, 0};
    case BellLabel::PsiMinus: return {1, 1};
  }
  return {0, 0};
}

const char* to_string(BellLabel label);

enum class StateKind {
  EightQubit,  // uniform superposition of the 16 strings b||b, b in 0..15
  DecoyZero,
  DecoyOne,
  DecoyPlus,
  DecoyMinus,
};

constexpr Basis decoy_basis(StateKind kind) {
  return (kind == StateKind::DecoyZero || kind == StateKind::DecoyOne)
             ? Basis::Z
             : Basis::X;
}

/// Bit value a decoy reads as in its own preparation basis.
constexpr int decoy_bit(StateKind kind) {
  return (kind == StateKind::DecoyOne || kind == StateKind::DecoyMinus) ? 1
                                                                        : 0;
}

/// Single-qubit reduced density matrix, row-major [rho00, rho01, rho10, rho11].
struct DensityMatrix2 {
  std::array<Complex, 4> m{};

  Complex trace() const { return m[0] + m[3]; }
  double max_abs_diff(const DensityMatrix2& other) const;
  /// Largest entrywise deviation from the maximally mixed state I/2.
  double deviation_from_mixed() const;
};

/// Normalized amplitude vector over 1..16 qubits. Qubit 1 is the most
/// significant bit of the basis index, so printed kets read off literally:
/// amplitude(0b00110011) is the coefficient of |00110011>.
///
/// Measurements collapse in place and draw from the caller's RandomStream.
/// Branches with probability below 1e-12 are never sampled; when only one
/// branch survives, the outcome is returned without consuming a draw.
class PureState {
 public:
  static constexpr int kMaxQubits = 16;
  static constexpr double kNormTolerance = 1e-9;
  static constexpr double kBranchGuard = 1e-12;

  PureState(int num_qubits, std::vector<Complex> amplitudes);

  static PureState computational(int num_qubits, std::uint32_t basis_index);
  static PureState bell_pair(BellLabel label);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  Complex amplitude(std::uint32_t basis_index) const;
  double norm_squared() const;

  /// Z- or X-basis measurement of one qubit (1-based index). Returns the
  /// coded bit (0 for |0>/|+>, 1 for |1>/|->) and leaves the state collapsed.
  int measure(int qubit, Basis basis, RandomStream& rng);

  /// Projects qubits (a, b) onto the Bell basis, collapses, returns the label.
  BellLabel measure_bell(int qubit_a, int qubit_b, RandomStream& rng);

  /// Applies a 2^k x 2^k row-major unitary to the listed qubits (qubits[0]
  /// is the most significant sub-index bit). Identity elsewhere.
  void apply_unitary(std::span<const int> qubits, std::span<const Complex> matrix);

  /// Tensor product; `other`'s qubit j becomes qubit num_qubits()+j.
  void attach(const PureState& other);

  /// Partial trace down to the given qubit.
  DensityMatrix2 reduced_single(int qubit) const;

  Complex inner_product(const PureState& other) const;
  double fidelity(const PureState& other) const;

 private:
  PureState() = default;
  void check_qubit(int qubit) const;
  std::size_t bit_mask(int qubit) const;
  void collapse_bit(int qubit, int outcome, double branch_prob);

  int num_qubits_ = 0;
  std::vector<Complex> amps_;
};

PureState make_state(StateKind kind);

}  // namespace qpc
