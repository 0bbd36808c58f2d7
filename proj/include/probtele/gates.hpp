// Copyright 2026 The probtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

namespace probtele {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Tolerance used for "is unitary" and "is normalized" checks.
inline constexpr double kUnitaryTolerance = 1e-10;

enum class GateKind { Identity, PauliX, PauliZ, Hadamard, RotationY, General };

/**
 * A single-qubit unitary.
 *
 * Besides the matrix, a gate remembers how it was built (a named gate, an
 * R_y rotation with its angle, or an arbitrary matrix). Netlist text output
 * uses that to print `H`, `RY 0.5` etc. and to parse back the bit-identical
 * matrix. Equality compares kind, angle and every matrix entry exactly.
 */
class Gate2x2 {
 public:
  using Matrix2 = Eigen::Matrix2cd;

  /// Identity.
  Gate2x2();

  /// Arbitrary matrix; throws std::invalid_argument if not unitary within
  /// kUnitaryTolerance or if any entry is not finite.
  static Gate2x2 from_matrix(const Matrix2& m);

  const Matrix2& matrix() const { return matrix_; }
  GateKind kind() const { return kind_; }
  /// Rotation angle, only for GateKind::RotationY.
  std::optional<double> angle() const;

  Complex operator()(int row, int col) const { return matrix_(row, col); }

  Gate2x2 adjoint() const;

  friend bool operator==(const Gate2x2& a, const Gate2x2& b);

 private:
  Gate2x2(GateKind kind, double angle, const Matrix2& m);

  GateKind kind_;
  double angle_;
  Matrix2 matrix_;

  friend Gate2x2 standard_gate(std::string_view name);
  friend Gate2x2 ry(double theta);
};

/// One of "I", "X", "Z", "H". Throws std::invalid_argument otherwise.
Gate2x2 standard_gate(std::string_view name);

Gate2x2 identity_gate();
Gate2x2 pauli_x();
Gate2x2 pauli_z();
Gate2x2 hadamard();

/**
 * Real rotation [[cos t/2, -sin t/2], [sin t/2, cos t/2]].
 *
 * This is the matrix the recovery blocks u_i are printed as, so
 * `ry(theta_i)` is u_i when cos(theta_i/2) = y0/yi. The half-angle pieces of
 * the two-control expansion are `ry(theta/4)` and `ry(-theta/4)`.
 */
Gate2x2 ry(double theta);

/// Angle t with cos(t/2) = y0/yi, i.e. compensator(y0, yi) == ry(t) up to
/// rounding.
double compensator_angle(double y0, double yi);

/**
 * Amplitude-equalizing rotation
 *   [[y0/yi, -sqrt(1 - y0^2/yi^2)], [sqrt(1 - y0^2/yi^2), y0/yi]].
 *
 * Requires 0 < y0 <= yi; throws std::invalid_argument otherwise.
 */
Gate2x2 compensator(double y0, double yi);

/// Matrix of Λ_n(u): identity of size 2^(n+1) with u in the bottom-right
/// 2x2 block (lexicographic basis, controls first, target last).
Matrix lambda_matrix(std::size_t n_controls, const Gate2x2& u);

/// max_ij |(U^† U - I)_ij|. Throws std::invalid_argument for non-square input.
double unitarity_residual(const Matrix& m);

bool is_unitary(const Matrix& m, double tol = kUnitaryTolerance);
bool is_unitary(const Gate2x2& g, double tol = kUnitaryTolerance);

}  // namespace probtele
