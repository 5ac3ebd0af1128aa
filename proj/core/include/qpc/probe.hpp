#pragma once

#include <array>
#include <optional>

#include "qpc/pure_state.hpp"

namespace qpc {

/// A 4x4 unitary acting on (data qubit, one-qubit ancilla), the ancilla
/// starting in |0>. Its action decomposes per data bit x as
///   U |x>|0> = lambda_x0 |0>|e_x0> + lambda_x1 |1>|e_x1>
/// with |lambda_x0|^2 + |lambda_x1|^2 = 1. A probe evades every decoy check
/// exactly when lambda_01 = lambda_10 = 0 and |e_00> = |e_11>, in which case
/// it factors as I (x) W and learns nothing.
class ProbeUnitary {
 public:
  using Matrix4 = std::array<Complex, 16>;  // row-major, index |data,anc> = 2d+a
  using Vector2 = std::array<Complex, 2>;

  explicit ProbeUnitary(const Matrix4& matrix);

  /// I (x) W with W a single-qubit unitary (default identity).
  static ProbeUnitary stealth(const std::array<Complex, 4>& w = {
                                  Complex(1.0), Complex(0.0), Complex(0.0),
                                  Complex(1.0)});

  /// Data qubit controls a NOT on the ancilla; detectable on X-basis decoys.
  static ProbeUnitary cnot();

  /// Builds a probe from its action on the ancilla-|0> inputs; the two given
  /// columns must be orthonormal and are completed to a unitary.
  static ProbeUnitary from_branch_columns(const std::array<Complex, 4>& on_data0,
                                          const std::array<Complex, 4>& on_data1);

  const Matrix4& matrix() const { return u_; }

  /// lambda_xy read off the ancilla-|0> columns (x = data in, y = data out).
  Complex lambda(int x, int y) const;
  /// Normalized |e_xy>; nullopt when the branch amplitude vanishes.
  std::optional<Vector2> ancilla_state(int x, int y) const;

  bool is_stealth(double tol = 1e-9) const;

 private:
  Matrix4 u_{};
};

}  // namespace qpc
