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

#include "probtele/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace probtele {

namespace {

std::size_t checked_dimension(std::size_t n_qubits) {
  if (n_qubits == 0 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
  }
  return std::size_t{1} << n_qubits;
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits)
    : n_qubits_(n_qubits), amps_(checked_dimension(n_qubits)) {}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
  if (amps_.size() != checked_dimension(n_qubits)) {
    throw std::invalid_argument("amplitude array has length " +
                                std::to_string(amps_.size()) + ", expected 2^" +
                                std::to_string(n_qubits));
  }
  for (const Complex& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("amplitude is not finite");
    }
  }
}

double StateVector::squared_norm() const {
  double s = 0.0;
  for (const Complex& a : amps_) s += std::norm(a);
  return s;
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(squared_norm() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
  const double n2 = squared_norm();
  if (n2 == 0.0) throw std::domain_error("cannot normalize a zero vector");
  StateVector out = *this;
  const double scale = 1.0 / std::sqrt(n2);
  for (Complex& a : out.amps_) a *= scale;
  return out;
}

std::size_t StateVector::mask_of(QubitIndex q) const {
  if (q.value < 1 || q.value > n_qubits_) {
    throw std::out_of_range("qubit " + std::to_string(q.value) +
                            " out of range for a " + std::to_string(n_qubits_) +
                            "-qubit state");
  }
  return std::size_t{1} << (n_qubits_ - q.value);
}

StateVector basis_state(std::size_t n_qubits, std::size_t index) {
  StateVector sv(n_qubits);
  if (index >= sv.dimension()) {
    throw std::out_of_range("basis index " + std::to_string(index) +
                            " out of range for " + std::to_string(n_qubits) +
                            " qubits");
  }
  sv[index] = 1.0;
  return sv;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out(a.n_qubits() + b.n_qubits());
  const std::size_t db = b.dimension();
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if (a[i] == Complex{}) continue;
    for (std::size_t j = 0; j < db; ++j) out[i * db + j] = a[i] * b[j];
  }
  return out;
}

StateVector apply_single(StateVector sv, const Gate2x2& g, QubitIndex target) {
  const std::size_t stride = sv.mask_of(target);
  const Complex m00 = g(0, 0), m01 = g(0, 1), m10 = g(1, 0), m11 = g(1, 1);
  auto amps = sv.amplitudes();
  for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const Complex a0 = amps[k];
      const Complex a1 = amps[k + stride];
      amps[k] = m00 * a0 + m01 * a1;
      amps[k + stride] = m10 * a0 + m11 * a1;
    }
  }
  return sv;
}

StateVector apply_cnot(StateVector sv, QubitIndex control, QubitIndex target) {
  if (control == target) {
    throw std::invalid_argument("CNOT control and target must differ");
  }
  const std::size_t cmask = sv.mask_of(control);
  const std::size_t tmask = sv.mask_of(target);
  auto amps = sv.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
  }
  return sv;
}

StateVector apply_multi_controlled(StateVector sv,
                                   std::span<const QubitIndex> controls,
                                   const Gate2x2& u, QubitIndex target) {
  const std::size_t tmask = sv.mask_of(target);
  std::size_t cmask = 0;
  for (QubitIndex c : controls) {
    const std::size_t m = sv.mask_of(c);
    if (m == tmask) {
      throw std::invalid_argument("control qubit " + std::to_string(c.value) +
                                  " coincides with the target");
    }
    if (cmask & m) {
      throw std::invalid_argument("control qubit " + std::to_string(c.value) +
                                  " listed twice");
    }
    cmask |= m;
  }
  const Complex m00 = u(0, 0), m01 = u(0, 1), m10 = u(1, 0), m11 = u(1, 1);
  auto amps = sv.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & cmask) != cmask || (i & tmask)) continue;
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | tmask];
    amps[i] = m00 * a0 + m01 * a1;
    amps[i | tmask] = m10 * a0 + m11 * a1;
  }
  return sv;
}

StateVector apply_matrix(StateVector sv, std::span<const QubitIndex> targets,
                         const Matrix& m) {
  const std::size_t k = targets.size();
  const std::size_t sub = std::size_t{1} << k;
  if (k == 0 || m.rows() != static_cast<Eigen::Index>(sub) ||
      m.cols() != static_cast<Eigen::Index>(sub)) {
    throw std::invalid_argument("matrix dimension does not match " +
                                std::to_string(k) + " target qubits");
  }
  // offsets[r] = the basis-index bits contributed by row r of the submatrix.
  std::vector<std::size_t> offsets(sub, 0);
  std::size_t tmask = 0;
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t mask = sv.mask_of(targets[t]);
    if (tmask & mask) {
      throw std::invalid_argument("target qubit " +
                                  std::to_string(targets[t].value) +
                                  " listed twice");
    }
    tmask |= mask;
    const std::size_t local = std::size_t{1} << (k - 1 - t);
    for (std::size_t r = 0; r < sub; ++r) {
      if (r & local) offsets[r] |= mask;
    }
  }
  auto amps = sv.amplitudes();
  Eigen::VectorXcd in(static_cast<Eigen::Index>(sub));
  for (std::size_t base = 0; base < amps.size(); ++base) {
    if (base & tmask) continue;
    for (std::size_t r = 0; r < sub; ++r) {
      in[static_cast<Eigen::Index>(r)] = amps[base | offsets[r]];
    }
    const Eigen::VectorXcd out = m * in;
    for (std::size_t r = 0; r < sub; ++r) {
      amps[base | offsets[r]] = out[static_cast<Eigen::Index>(r)];
    }
  }
  return sv;
}

std::pair<StateVector, StateVector> split_on_qubit(const StateVector& sv,
                                                   QubitIndex q) {
  const std::size_t mask = sv.mask_of(q);
  StateVector zero = sv;
  StateVector one = sv;
  for (std::size_t i = 0; i < sv.dimension(); ++i) {
    if (i & mask) {
      zero[i] = 0.0;
    } else {
      one[i] = 0.0;
    }
  }
  return {std::move(zero), std::move(one)};
}

Measurement measure_qubit(const StateVector& sv, QubitIndex q, double rand01) {
  const double total = sv.squared_norm();
  if (total == 0.0) throw std::domain_error("cannot measure a zero vector");
  auto [zero, one] = split_on_qubit(sv, q);
  const double p0 = zero.squared_norm() / total;
  if (rand01 < p0) return {0, zero.normalized(), p0};
  return {1, one.normalized(), 1.0 - p0};
}

StateVector discard_qubit(const StateVector& sv, QubitIndex q, int bit) {
  const std::size_t mask = sv.mask_of(q);
  if (sv.n_qubits() < 2) {
    throw std::invalid_argument("cannot discard the only qubit of a state");
  }
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  StateVector out(sv.n_qubits() - 1);
  const std::size_t low = mask - 1;
  for (std::size_t j = 0; j < out.dimension(); ++j) {
    const std::size_t i = ((j & ~low) << 1) | (j & low) | (bit ? mask : 0);
    out[j] = sv[i];
  }
  return out;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("inner product of states with " +
                                std::to_string(a.n_qubits()) + " and " +
                                std::to_string(b.n_qubits()) + " qubits");
  }
  Complex s{};
  for (std::size_t i = 0; i < a.dimension(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::min(1.0, std::norm(inner_product(a, b)));
}

}  // namespace probtele
