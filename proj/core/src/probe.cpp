#include "qpc/probe.hpp"

#include <cmath>
#include <stdexcept>

namespace qpc {

namespace {

double column_dot_deviation(const ProbeUnitary::Matrix4& u) {
  double worst = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      Complex dot{};
      for (int t = 0; t < 4; ++t) dot += std::conj(u[t * 4 + r]) * u[t * 4 + c];
      const Complex expect = (r == c) ? Complex(1.0) : Complex{};
      worst = std::max(worst, std::abs(dot - expect));
    }
  }
  return worst;
}

}  // namespace

ProbeUnitary::ProbeUnitary(const Matrix4& matrix) : u_(matrix) {
  if (column_dot_deviation(u_) > 1e-9) {
    throw std::invalid_argument("probe matrix is not unitary");
  }
}

ProbeUnitary ProbeUnitary::stealth(const std::array<Complex, 4>& w) {
  Matrix4 u{};
  for (int d = 0; d < 2; ++d) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        u[(2 * d + r) * 4 + (2 * d + c)] = w[r * 2 + c];
      }
    }
  }
  return ProbeUnitary(u);
}

ProbeUnitary ProbeUnitary::cnot() {
  Matrix4 u{};
  u[0 * 4 + 0] = 1.0;  // |00> -> |00>
  u[1 * 4 + 1] = 1.0;  // |01> -> |01>
  u[2 * 4 + 3] = 1.0;  // |11> -> |10>
  u[3 * 4 + 2] = 1.0;  // |10> -> |11>
  return ProbeUnitary(u);
}

ProbeUnitary ProbeUnitary::from_branch_columns(
    const std::array<Complex, 4>& on_data0, const std::array<Complex, 4>& on_data1) {
  Matrix4 u{};
  for (int r = 0; r < 4; ++r) {
    u[r * 4 + 0] = on_data0[r];  // column for |0>|0>
    u[r * 4 + 2] = on_data1[r];  // column for |1>|0>
  }
  // Complete columns 1 and 3 by Gram-Schmidt over the standard basis.
  int filled = 0;
  for (int seed = 0; seed < 4 && filled < 2; ++seed) {
    std::array<Complex, 4> v{};
    v[seed] = 1.0;
    for (int c : {0, 2, 1}) {
      if (c == 1 && filled == 0) break;
      Complex overlap{};
      for (int r = 0; r < 4; ++r) overlap += std::conj(u[r * 4 + c]) * v[r];
      for (int r = 0; r < 4; ++r) v[r] -= overlap * u[r * 4 + c];
    }
    double norm_sq = 0.0;
    for (const auto& x : v) norm_sq += std::norm(x);
    if (norm_sq < 1e-12) continue;
    const double inv = 1.0 / std::sqrt(norm_sq);
    const int target = (filled == 0) ? 1 : 3;
    for (int r = 0; r < 4; ++r) u[r * 4 + target] = v[r] * inv;
    ++filled;
  }
  if (filled != 2) {
    throw std::invalid_argument("branch columns cannot be completed to a unitary");
  }
  return ProbeUnitary(u);  // also validates the caller's columns
}

Complex ProbeUnitary::lambda(int x, int y) const {
  const int col = 2 * x;  // input |x>|0>
  const Complex top = u_[(2 * y + 0) * 4 + col];
  const Complex bottom = u_[(2 * y + 1) * 4 + col];
  const double magnitude = std::sqrt(std::norm(top) + std::norm(bottom));
  if (magnitude < 1e-15) return Complex{};
  // Phase convention: fold the branch phase into lambda so that |e_xy> has a
  // nonnegative real leading component.
  Complex lead = (std::abs(top) >= 1e-15) ? top : bottom;
  return magnitude * (lead / std::abs(lead));
}

std::optional<ProbeUnitary::Vector2> ProbeUnitary::ancilla_state(int x, int y) const {
  const int col = 2 * x;
  const Complex top = u_[(2 * y + 0) * 4 + col];
  const Complex bottom = u_[(2 * y + 1) * 4 + col];
  const Complex lam = lambda(x, y);
  if (std::abs(lam) < 1e-12) return std::nullopt;
  return Vector2{top / lam, bottom / lam};
}

bool ProbeUnitary::is_stealth(double tol) const {
  if (std::abs(lambda(0, 1)) > tol || std::abs(lambda(1, 0)) > tol) return false;
  const auto e00 = ancilla_state(0, 0);
  const auto e11 = ancilla_state(1, 1);
  if (!e00 || !e11) return false;
  Complex overlap = std::conj((*e00)[0]) * (*e11)[0] + std::conj((*e00)[1]) * (*e11)[1];
  return std::abs(std::abs(overlap) - 1.0) <= tol &&
         std::abs(std::abs(lambda(0, 0)) - 1.0) <= tol &&
         std::abs(std::abs(lambda(1, 1)) - 1.0) <= tol;
}

}  // namespace qpc
