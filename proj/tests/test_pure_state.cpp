#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "qpc/probe.hpp"
#include "qpc/pure_state.hpp"

using namespace qpc;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Independent oracle: plain dense matrix-vector product, no shared code with
// PureState::apply_unitary.
std::vector<Complex> matvec(const std::vector<Complex>& m,
                            const std::vector<Complex>& v) {
  const std::size_t n = v.size();
  std::vector<Complex> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    Complex acc{};
    for (std::size_t c = 0; c < n; ++c) acc += m[r * n + c] * v[c];
    out[r] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("carrier state has the printed sixteen-ket support") {
  const PureState st = make_state(StateKind::EightQubit);
  CHECK(st.num_qubits() == 8);
  CHECK(std::abs(st.amplitude(0b00110011).real() - 0.25) < 1e-15);
  CHECK(std::abs(st.amplitude(0b00000001)) == 0.0);

  std::size_t nonzero = 0;
  for (std::uint32_t i = 0; i < 256; ++i) {
    const double mag = std::abs(st.amplitude(i));
    if (mag == 0.0) continue;
    ++nonzero;
    CHECK(std::abs(mag - 0.25) < 1e-15);
    CHECK((i >> 4) == (i & 0xf));  // first four bits equal last four
  }
  CHECK(nonzero == 16);
}

TEST_CASE("decoy preparations") {
  const PureState plus = make_state(StateKind::DecoyPlus);
  CHECK(plus.amplitude(0).real() == doctest::Approx(kInvSqrt2).epsilon(1e-12));
  CHECK(plus.amplitude(1).real() == doctest::Approx(kInvSqrt2).epsilon(1e-12));
  const PureState zero = make_state(StateKind::DecoyZero);
  CHECK(zero.amplitude(0) == Complex(1.0, 0.0));
  CHECK(zero.amplitude(1) == Complex(0.0, 0.0));
  const PureState minus = make_state(StateKind::DecoyMinus);
  CHECK(minus.amplitude(1).real() == doctest::Approx(-kInvSqrt2));
}

TEST_CASE("eigenstate measurements are deterministic") {
  RandomStream rng(7);
  PureState zero = make_state(StateKind::DecoyZero);
  CHECK(zero.measure(1, Basis::Z, rng) == 0);
  CHECK(zero.amplitude(0) == Complex(1.0, 0.0));

  PureState plus = make_state(StateKind::DecoyPlus);
  CHECK(plus.measure(1, Basis::X, rng) == 0);
  CHECK(plus.amplitude(0).real() == doctest::Approx(kInvSqrt2));
  CHECK(plus.amplitude(1).real() == doctest::Approx(kInvSqrt2));

  PureState minus = make_state(StateKind::DecoyMinus);
  CHECK(minus.measure(1, Basis::X, rng) == 1);
}

TEST_CASE("born rule frequency for |+> in Z") {
  // Oracle: probability of bit 0 read directly off the amplitudes.
  const PureState probe = make_state(StateKind::DecoyPlus);
  const double p0 = std::norm(probe.amplitude(0));
  CHECK(p0 == doctest::Approx(0.5).epsilon(1e-12));

  RandomStream rng(42);
  int zeros = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    PureState s = make_state(StateKind::DecoyPlus);
    if (s.measure(1, Basis::Z, rng) == 0) ++zeros;
  }
  CHECK(std::abs(zeros / double(trials) - 0.5) < 0.02);
}

TEST_CASE("measurement collapse and idempotence") {
  RandomStream rng(3);
  for (int t = 0; t < 50; ++t) {
    PureState st = make_state(StateKind::EightQubit);
    const int q = 1 + int(rng.next_below(8));
    const Basis basis = rng.next_bit() ? Basis::Z : Basis::X;
    const int first = st.measure(q, basis, rng);
    CHECK(st.norm_squared() == doctest::Approx(1.0).epsilon(1e-9));
    const int again = st.measure(q, basis, rng);
    CHECK(first == again);
  }
}

TEST_CASE("identical seeds replay identical outcome sequences") {
  auto run = [](std::uint64_t seed) {
    RandomStream rng(seed);
    std::vector<int> bits;
    PureState st = make_state(StateKind::EightQubit);
    for (int q = 1; q <= 8; ++q) bits.push_back(st.measure(q, Basis::Z, rng));
    for (int t = 0; t < 20; ++t) {
      PureState plus = make_state(StateKind::DecoyPlus);
      bits.push_back(plus.measure(1, Basis::Z, rng));
    }
    return bits;
  };
  CHECK(run(99) == run(99));
  CHECK(run(99) != run(100));
}

TEST_CASE("full-Z sampling respects the support and the pair identity") {
  RandomStream rng(1234);
  std::set<std::uint32_t> seen;
  for (int t = 0; t < 4000; ++t) {
    PureState st = make_state(StateKind::EightQubit);
    std::array<int, 9> m{};
    std::uint32_t word = 0;
    for (int q = 1; q <= 8; ++q) {
      m[q] = st.measure(q, Basis::Z, rng);
      word = (word << 1) | std::uint32_t(m[q]);
    }
    seen.insert(word);
    CHECK((word >> 4) == (word & 0xfu));
    const BitPair left = BitPair(m[1], m[2]) ^ BitPair(m[7], m[8]);
    const BitPair right = BitPair(m[3], m[4]) ^ BitPair(m[5], m[6]);
    CHECK(left == right);
  }
  CHECK(seen.size() == 16);
}

TEST_CASE("bell measurement of a fresh pair is an eigenstate") {
  RandomStream rng(5);
  for (const BellLabel label : {BellLabel::PhiPlus, BellLabel::PhiMinus,
                                BellLabel::PsiPlus, BellLabel::PsiMinus}) {
    PureState st = PureState::bell_pair(label);
    CHECK(st.measure_bell(1, 2, rng) == label);
    CHECK(st.measure_bell(1, 2, rng) == label);  // idempotent after collapse
  }
}

TEST_CASE("bell measurement of |00> splits between phi+ and phi-") {
  // Oracle: |<phi+|00>|^2 = |<phi-|00>|^2 = 1/2, psi components vanish.
  RandomStream rng(8);
  int phi_plus = 0, phi_minus = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    PureState st = PureState::computational(2, 0b00);
    const BellLabel label = st.measure_bell(1, 2, rng);
    if (label == BellLabel::PhiPlus) ++phi_plus;
    if (label == BellLabel::PhiMinus) ++phi_minus;
  }
  CHECK(phi_plus + phi_minus == trials);
  CHECK(std::abs(phi_plus / double(trials) - 0.5) < 0.02);
}

TEST_CASE("carrier bell labels correlate (3,4) with (7,8)") {
  RandomStream rng(21);
  for (int t = 0; t < 10000; ++t) {
    PureState st = make_state(StateKind::EightQubit);
    const BellLabel first = st.measure_bell(3, 4, rng);
    const BellLabel second = st.measure_bell(7, 8, rng);
    REQUIRE(first == second);
  }
}

TEST_CASE("apply_unitary identity leaves amplitudes bit-exact") {
  PureState st = make_state(StateKind::EightQubit);
  const std::vector<Complex> before = st.amplitudes();
  std::array<Complex, 4> eye = {Complex(1.0), Complex(0.0), Complex(0.0),
                                Complex(1.0)};
  const int q[1] = {5};
  st.apply_unitary(q, eye);
  CHECK(st.amplitudes() == before);
}

TEST_CASE("CNOT against a dense matvec oracle") {
  PureState st = make_state(StateKind::DecoyPlus);
  st.attach(make_state(StateKind::DecoyZero));

  const std::vector<Complex> cnot = {
      {1, 0}, {0, 0}, {0, 0}, {0, 0},
      {0, 0}, {1, 0}, {0, 0}, {0, 0},
      {0, 0}, {0, 0}, {0, 0}, {1, 0},
      {0, 0}, {0, 0}, {1, 0}, {0, 0},
  };
  const std::vector<Complex> expected = matvec(cnot, st.amplitudes());

  const int qubits[2] = {1, 2};
  st.apply_unitary(qubits, cnot);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(st.amplitudes()[i] - expected[i]) < 1e-12);
  }
  CHECK(std::abs(st.amplitude(0b00).real() - kInvSqrt2) < 1e-12);
  CHECK(std::abs(st.amplitude(0b11).real() - kInvSqrt2) < 1e-12);
  CHECK(std::abs(st.amplitude(0b01)) < 1e-12);
}

TEST_CASE("stealth probe leaves the carrier in a product with its ancillas") {
  // W = Hadamard, so the ancilla record state is |+>.
  const std::array<Complex, 4> hadamard = {Complex(kInvSqrt2), Complex(kInvSqrt2),
                                           Complex(kInvSqrt2), Complex(-kInvSqrt2)};
  const ProbeUnitary probe = ProbeUnitary::stealth(hadamard);

  PureState st = make_state(StateKind::EightQubit);
  st.attach(PureState::computational(1, 0));
  st.attach(PureState::computational(1, 0));
  const int first[2] = {3, 9};
  const int second[2] = {4, 10};
  st.apply_unitary(first, probe.matrix());
  st.apply_unitary(second, probe.matrix());

  PureState reference = make_state(StateKind::EightQubit);
  reference.attach(make_state(StateKind::DecoyPlus));
  reference.attach(make_state(StateKind::DecoyPlus));
  CHECK(std::abs(st.fidelity(reference) - 1.0) < 1e-10);
}

TEST_CASE("attach composes indices and enforces the qubit budget") {
  PureState zero = make_state(StateKind::DecoyZero);
  zero.attach(make_state(StateKind::DecoyOne));
  CHECK(zero.num_qubits() == 2);
  CHECK(zero.amplitude(0b01) == Complex(1.0, 0.0));

  PureState carrier = make_state(StateKind::EightQubit);
  carrier.attach(make_state(StateKind::DecoyZero));
  CHECK(carrier.num_qubits() == 9);
  CHECK(carrier.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));

  PureState nine_a = PureState::computational(9, 0);
  const PureState nine_b = PureState::computational(9, 0);
  CHECK_THROWS_AS(nine_a.attach(nine_b), std::length_error);
}

TEST_CASE("reduced density matrices") {
  const PureState carrier = make_state(StateKind::EightQubit);
  for (int q = 1; q <= 8; ++q) {
    CHECK(carrier.reduced_single(q).deviation_from_mixed() <= 1e-12);
  }

  // Hermitian and trace-one for arbitrary collapsed states.
  RandomStream rng(11);
  for (int t = 0; t < 20; ++t) {
    PureState st = make_state(StateKind::EightQubit);
    st.measure(1 + int(rng.next_below(8)), rng.next_bit() ? Basis::X : Basis::Z,
               rng);
    const DensityMatrix2 rho = st.reduced_single(1 + int(rng.next_below(8)));
    CHECK(std::abs(rho.trace() - Complex(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(rho.m[1] - std::conj(rho.m[2])) <= 1e-12);
  }

  const PureState zero = make_state(StateKind::DecoyZero);
  const DensityMatrix2 rho = zero.reduced_single(1);
  CHECK(std::abs(rho.m[0] - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(rho.m[3]) < 1e-15);

  const PureState pair = PureState::bell_pair(BellLabel::PhiPlus);
  CHECK(pair.reduced_single(1).deviation_from_mixed() < 1e-12);
  CHECK(pair.reduced_single(2).deviation_from_mixed() < 1e-12);
}

TEST_CASE("norm preserved through mixed operation sequences") {
  RandomStream rng(77);
  for (int t = 0; t < 30; ++t) {
    PureState st = make_state(StateKind::EightQubit);
    st.attach(make_state(StateKind::DecoyPlus));
    const int q1[1] = {int(1 + rng.next_below(9))};
    const std::array<Complex, 4> h = {Complex(kInvSqrt2), Complex(kInvSqrt2),
                                      Complex(kInvSqrt2), Complex(-kInvSqrt2)};
    st.apply_unitary(q1, h);
    st.measure(1 + int(rng.next_below(9)), rng.next_bit() ? Basis::X : Basis::Z, rng);
    st.measure_bell(1, 2, rng);
    CHECK(st.norm_squared() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("error paths") {
  RandomStream rng(1);
  PureState st = make_state(StateKind::EightQubit);
  CHECK_THROWS_AS(st.measure(0, Basis::Z, rng), std::out_of_range);
  CHECK_THROWS_AS(st.measure(9, Basis::Z, rng), std::out_of_range);
  CHECK_THROWS_AS(st.measure_bell(3, 3, rng), std::out_of_range);

  const std::array<Complex, 4> not_unitary = {Complex(1.0), Complex(1.0),
                                              Complex(0.0), Complex(1.0)};
  const int q[1] = {1};
  CHECK_THROWS_AS(st.apply_unitary(q, not_unitary), std::invalid_argument);

  const std::array<Complex, 4> eye2 = {Complex(1.0), Complex(0.0), Complex(0.0),
                                       Complex(1.0)};
  const int two[2] = {1, 2};
  CHECK_THROWS_AS(st.apply_unitary(two, eye2), std::invalid_argument);

  CHECK_THROWS_AS(PureState(2, {Complex(1.0), Complex(1.0), Complex(0.0),
                                Complex(0.0)}),
                  std::invalid_argument);
}
