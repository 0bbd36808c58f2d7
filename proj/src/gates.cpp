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

#include "probtele/gates.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace probtele {

namespace {

Gate2x2::Matrix2 make2(Complex a, Complex b, Complex c, Complex d) {
  Gate2x2::Matrix2 m;
  m << a, b, c, d;
  return m;
}

}  // namespace

Gate2x2::Gate2x2() : Gate2x2(GateKind::Identity, 0.0, Matrix2::Identity()) {}

Gate2x2::Gate2x2(GateKind kind, double angle, const Matrix2& m)
    : kind_(kind), angle_(angle), matrix_(m) {}

Gate2x2 Gate2x2::from_matrix(const Matrix2& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("gate matrix has non-finite entries");
  }
  const double residual = unitarity_residual(m);
  if (residual > kUnitaryTolerance) {
    throw std::invalid_argument(
        "gate matrix is not unitary (residual " + std::to_string(residual) +
        ")");
  }
  return Gate2x2(GateKind::General, 0.0, m);
}

std::optional<double> Gate2x2::angle() const {
  if (kind_ != GateKind::RotationY) return std::nullopt;
  return angle_;
}

Gate2x2 Gate2x2::adjoint() const {
  if (kind_ == GateKind::RotationY) return ry(-angle_);
  if (kind_ != GateKind::General) return *this;  // I, X, Z, H are Hermitian
  return Gate2x2(GateKind::General, 0.0, matrix_.adjoint());
}

bool operator==(const Gate2x2& a, const Gate2x2& b) {
  return a.kind_ == b.kind_ && a.angle_ == b.angle_ && a.matrix_ == b.matrix_;
}

Gate2x2 standard_gate(std::string_view name) {
  const double s = 1.0 / std::sqrt(2.0);
  if (name == "I") return Gate2x2();
  if (name == "X") return Gate2x2(GateKind::PauliX, 0.0, make2(0, 1, 1, 0));
  if (name == "Z") return Gate2x2(GateKind::PauliZ, 0.0, make2(1, 0, 0, -1));
  if (name == "H") return Gate2x2(GateKind::Hadamard, 0.0, make2(s, s, s, -s));
  throw std::invalid_argument("unknown gate name '" + std::string(name) + "'");
}

Gate2x2 identity_gate() { return standard_gate("I"); }
Gate2x2 pauli_x() { return standard_gate("X"); }
Gate2x2 pauli_z() { return standard_gate("Z"); }
Gate2x2 hadamard() { return standard_gate("H"); }

Gate2x2 ry(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("rotation angle must be finite");
  }
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  return Gate2x2(GateKind::RotationY, theta, make2(c, -s, s, c));
}

namespace {

void check_compensator_args(double y0, double yi) {
  if (!(yi > 0.0) || !std::isfinite(yi)) {
    throw std::invalid_argument("compensator: yi must be a positive real");
  }
  if (!(y0 > 0.0)) {
    throw std::invalid_argument("compensator: y0 must be a positive real");
  }
  if (y0 > yi) {
    throw std::invalid_argument(
        "compensator: y0 > yi (y0 must be the smallest channel amplitude)");
  }
}

}  // namespace

double compensator_angle(double y0, double yi) {
  check_compensator_args(y0, yi);
  return 2.0 * std::acos(y0 / yi);
}

Gate2x2 compensator(double y0, double yi) {
  check_compensator_args(y0, yi);
  const double r = y0 / yi;
  const double s = std::sqrt(1.0 - r * r);
  return Gate2x2::from_matrix(make2(r, -s, s, r));
}

Matrix lambda_matrix(std::size_t n_controls, const Gate2x2& u) {
  const Eigen::Index dim = Eigen::Index{2} << n_controls;
  Matrix m = Matrix::Identity(dim, dim);
  m.bottomRightCorner(2, 2) = u.matrix();
  return m;
}

double unitarity_residual(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("unitarity check needs a square matrix");
  }
  const Matrix d = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff();
}

bool is_unitary(const Matrix& m, double tol) {
  return unitarity_residual(m) <= tol;
}

bool is_unitary(const Gate2x2& g, double tol) {
  return is_unitary(Matrix(g.matrix()), tol);
}

}  // namespace probtele
