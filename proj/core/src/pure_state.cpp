#include "qpc/pure_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

const char* to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return "phi+";
    case BellLabel::PhiMinus: return "phi-";
    case BellLabel::PsiPlus: return "psi+";
    case BellLabel::PsiMinus: return "psi-";
  }
  return "?";
}

double DensityMatrix2::max_abs_diff(const DensityMatrix2& other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    worst = std::max(worst, std::abs(m[i] - other.m[i]));
  }
  return worst;
}

double DensityMatrix2::deviation_from_mixed() const {
  DensityMatrix2 mixed;
  mixed.m = {Complex(0.5, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
             Complex(0.5, 0.0)};
  return max_abs_diff(mixed);
}

PureState::PureState(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be 1..16");
  }
  if (amps_.size() != (std::size_t{1} << num_qubits)) {
    throw std::invalid_argument("amplitude vector has wrong length");
  }
  if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized");
  }
}

PureState PureState::computational(int num_qubits, std::uint32_t basis_index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be 1..16");
  }
  std::vector<Complex> amps(std::size_t{1} << num_qubits, Complex{});
  if (basis_index >= amps.size()) {
    throw std::out_of_range("basis index out of range");
  }
  amps[basis_index] = Complex(1.0, 0.0);
  PureState st;
  st.num_qubits_ = num_qubits;
  st.amps_ = std::move(amps);
  return st;
}

PureState PureState::bell_pair(BellLabel label) {
  std::vector<Complex> amps(4, Complex{});
  switch (label) {
    case BellLabel::PhiPlus:
      amps[0b00] = kInvSqrt2;
      amps[0b11] = kInvSqrt2;
      break;
    case BellLabel::PhiMinus:
      amps[0b00] = kInvSqrt2;
      amps[0b11] = -kInvSqrt2;
      break;
    case BellLabel::PsiPlus:
      amps[0b01] = kInvSqrt2;
      amps[0b10] = kInvSqrt2;
      break;
    case BellLabel::PsiMinus:
      amps[0b01] = kInvSqrt2;
      amps[0b10] = -kInvSqrt2;
      break;
  }
  PureState st;
  st.num_qubits_ = 2;
  st.amps_ = std::move(amps);
  return st;
}

PureState make_state(StateKind kind) {
  switch (kind) {
    case StateKind::EightQubit: {
      // 1/4 on every basis string whose first four bits equal its last four
      std::vector<Complex> amps(256, Complex{});
      for (std::uint32_t b = 0; b < 16; ++b) {
        amps[(b << 4) | b] = Complex(0.25, 0.0);
      }
      return PureState(8, std::move(amps));
    }
    case StateKind::DecoyZero:
      return PureState(1, {Complex(1.0, 0.0), Complex(0.0, 0.0)});
    case StateKind::DecoyOne:
      return PureState(1, {Complex(0.0, 0.0), Complex(1.0, 0.0)});
    case StateKind::DecoyPlus:
      return PureState(1, {Complex(kInvSqrt2, 0.0), Complex(kInvSqrt2, 0.0)});
    case StateKind::DecoyMinus:
      return PureState(1, {Complex(kInvSqrt2, 0.0), Complex(-kInvSqrt2, 0.0)});
  }
  throw std::invalid_argument("unknown state kind");
}

Complex PureState::amplitude(std::uint32_t basis_index) const {
  if (basis_index >= amps_.size()) {
    throw std::out_of_range("basis index out of range");
  }
  return amps_[basis_index];
}

double PureState::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

void PureState::check_qubit(int qubit) const {
  if (qubit < 1 || qubit > num_qubits_) {
    throw std::out_of_range("qubit index out of range");
  }
}

std::size_t PureState::bit_mask(int qubit) const {
  return std::size_t{1} << (num_qubits_ - qubit);
}

void PureState::collapse_bit(int qubit, int outcome, double branch_prob) {
  const std::size_t mask = bit_mask(qubit);
  const double scale = 1.0 / std::sqrt(branch_prob);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const int bit = (i & mask) ? 1 : 0;
    if (bit == outcome) {
      amps_[i] *= scale;
    } else {
      amps_[i] = Complex{};
    }
  }
}

int PureState::measure(int qubit, Basis basis, RandomStream& rng) {
  check_qubit(qubit);
  if (basis == Basis::X) {
    // Hadamard rotates the X basis onto Z; rotate, measure, rotate back.
    static const std::array<Complex, 4> h = {Complex(kInvSqrt2), Complex(kInvSqrt2),
                                             Complex(kInvSqrt2), Complex(-kInvSqrt2)};
    const int qubits[1] = {qubit};
    apply_unitary(qubits, h);
    const int outcome = measure(qubit, Basis::Z, rng);
    apply_unitary(qubits, h);
    return outcome;
  }

  const std::size_t mask = bit_mask(qubit);
  double p0 = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (!(i & mask)) p0 += std::norm(amps_[i]);
  }

  int outcome;
  if (p0 < kBranchGuard) {
    outcome = 1;
  } else if (1.0 - p0 < kBranchGuard) {
    outcome = 0;
  } else {
    outcome = (rng.next_unit() < p0) ? 0 : 1;
  }
  collapse_bit(qubit, outcome, outcome == 0 ? p0 : 1.0 - p0);
  return outcome;
}

BellLabel PureState::measure_bell(int qubit_a, int qubit_b, RandomStream& rng) {
  check_qubit(qubit_a);
  check_qubit(qubit_b);
  if (qubit_a == qubit_b) {
    throw std::out_of_range("Bell measurement needs two distinct qubits");
  }

  const std::size_t mask_a = bit_mask(qubit_a);
  const std::size_t mask_b = bit_mask(qubit_b);

  // Bell coefficients per rest-index: phi+/- from (c00, c11), psi+/- from
  // (c01, c10). Label order fixed as phi+, phi-, psi+, psi-.
  auto bell_component = [&](std::size_t i, int label) -> Complex {
    const std::size_t i00 = i & ~mask_a & ~mask_b;
    switch (label) {
      case 0: return (amps_[i00] + amps_[i00 | mask_a | mask_b]) * kInvSqrt2;
      case 1: return (amps_[i00] - amps_[i00 | mask_a | mask_b]) * kInvSqrt2;
      case 2: return (amps_[i00 | mask_b] + amps_[i00 | mask_a]) * kInvSqrt2;
      default: return (amps_[i00 | mask_b] - amps_[i00 | mask_a]) * kInvSqrt2;
    }
  };

  std::array<double, 4> prob{};
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask_a) || (i & mask_b)) continue;  // one visit per rest-index
    for (int k = 0; k < 4; ++k) prob[k] += std::norm(bell_component(i, k));
  }

  int live = 0;
  double live_total = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (prob[k] < kBranchGuard) {
      prob[k] = 0.0;
    } else {
      ++live;
      live_total += prob[k];
    }
  }

  int picked = 0;
  if (live <= 1) {
    for (int k = 0; k < 4; ++k) {
      if (prob[k] > 0.0) picked = k;
    }
  } else {
    const double u = rng.next_unit() * live_total;
    double cumulative = 0.0;
    picked = 3;
    for (int k = 0; k < 4; ++k) {
      cumulative += prob[k];
      if (u < cumulative) {
        picked = k;
        break;
      }
    }
  }

  // Collapse onto the picked Bell state.
  const double scale = 1.0 / std::sqrt(prob[picked]);
  const bool phi = picked < 2;
  const double sign = (picked % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask_a) || (i & mask_b)) continue;
    const Complex beta = bell_component(i, picked) * (scale * kInvSqrt2);
    const std::size_t i00 = i;
    const std::size_t i01 = i | mask_b;
    const std::size_t i10 = i | mask_a;
    const std::size_t i11 = i | mask_a | mask_b;
    if (phi) {
      amps_[i00] = beta;
      amps_[i11] = sign * beta;
      amps_[i01] = Complex{};
      amps_[i10] = Complex{};
    } else {
      amps_[i01] = beta;
      amps_[i10] = sign * beta;
      amps_[i00] = Complex{};
      amps_[i11] = Complex{};
    }
  }

  switch (picked) {
    case 0: return BellLabel::PhiPlus;
    case 1: return BellLabel::PhiMinus;
    case 2: return BellLabel::PsiPlus;
    default: return BellLabel::PsiMinus;
  }
}

void PureState::apply_unitary(std::span<const int> qubits,
                              std::span<const Complex> matrix) {
  const std::size_t k = qubits.size();
  if (k == 0 || k > static_cast<std::size_t>(num_qubits_)) {
    throw std::invalid_argument("bad qubit list");
  }
  const std::size_t sub_dim = std::size_t{1} << k;
  if (matrix.size() != sub_dim * sub_dim) {
    throw std::invalid_argument("matrix dimension does not match qubit list");
  }

  std::vector<std::size_t> masks(k);
  std::size_t all_targets = 0;
  for (std::size_t j = 0; j < k; ++j) {
    check_qubit(qubits[j]);
    masks[j] = bit_mask(qubits[j]);
    if (all_targets & masks[j]) {
      throw std::invalid_argument("duplicate qubit in list");
    }
    all_targets |= masks[j];
  }

  // U^dagger U = I within 1e-9
  for (std::size_t r = 0; r < sub_dim; ++r) {
    for (std::size_t c = 0; c < sub_dim; ++c) {
      Complex dot{};
      for (std::size_t t = 0; t < sub_dim; ++t) {
        dot += std::conj(matrix[t * sub_dim + r]) * matrix[t * sub_dim + c];
      }
      const Complex expect = (r == c) ? Complex(1.0, 0.0) : Complex{};
      if (std::abs(dot - expect) > 1e-9) {
        throw std::invalid_argument("matrix is not unitary");
      }
    }
  }

  // qubits[0] carries the most significant sub-index bit
  auto scatter = [&](std::size_t sub) {
    std::size_t out = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (sub & (std::size_t{1} << (k - 1 - j))) out |= masks[j];
    }
    return out;
  };
  std::vector<std::size_t> offsets(sub_dim);
  for (std::size_t s = 0; s < sub_dim; ++s) offsets[s] = scatter(s);

  std::vector<Complex> in(sub_dim), out(sub_dim);
  for (std::size_t base = 0; base < amps_.size(); ++base) {
    if (base & all_targets) continue;
    for (std::size_t s = 0; s < sub_dim; ++s) in[s] = amps_[base | offsets[s]];
    for (std::size_t r = 0; r < sub_dim; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < sub_dim; ++c) {
        acc += matrix[r * sub_dim + c] * in[c];
      }
      out[r] = acc;
    }
    for (std::size_t s = 0; s < sub_dim; ++s) amps_[base | offsets[s]] = out[s];
  }
}

void PureState::attach(const PureState& other) {
  if (num_qubits_ + other.num_qubits_ > kMaxQubits) {
    throw std::length_error("qubit budget (16) exceeded");
  }
  std::vector<Complex> joint(amps_.size() * other.amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    for (std::size_t j = 0; j < other.amps_.size(); ++j) {
      joint[i * other.amps_.size() + j] = amps_[i] * other.amps_[j];
    }
  }
  num_qubits_ += other.num_qubits_;
  amps_ = std::move(joint);
}

DensityMatrix2 PureState::reduced_single(int qubit) const {
  check_qubit(qubit);
  const std::size_t mask = bit_mask(qubit);
  DensityMatrix2 rho;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) continue;
    const Complex a0 = amps_[i];
    const Complex a1 = amps_[i | mask];
    rho.m[0] += a0 * std::conj(a0);
    rho.m[1] += a0 * std::conj(a1);
    rho.m[2] += a1 * std::conj(a0);
    rho.m[3] += a1 * std::conj(a1);
  }
  return rho;
}

Complex PureState::inner_product(const PureState& other) const {
  if (num_qubits_ != other.num_qubits_) {
    throw std::invalid_argument("qubit counts differ");
  }
  Complex acc{};
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    acc += std::conj(amps_[i]) * other.amps_[i];
  }
  return acc;
}

double PureState::fidelity(const PureState& other) const {
  return std::norm(inner_product(other));
}

}  // namespace qpc
