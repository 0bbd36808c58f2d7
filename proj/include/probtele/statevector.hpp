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

#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "probtele/gates.hpp"

namespace probtele {

/// 1-based qubit label. Qubit 1 is the most significant bit of a basis index.
struct QubitIndex {
  std::size_t value = 1;

  constexpr QubitIndex() = default;
  constexpr explicit QubitIndex(std::size_t v) : value(v) {}

  friend constexpr auto operator<=>(QubitIndex, QubitIndex) = default;
};

/// Largest register the dense kernels accept.
inline constexpr std::size_t kMaxQubits = 24;

/**
 * Dense amplitude vector over n qubits, lexicographically ordered
 * (|0..00>, |0..01>, ..., |1..11>).
 *
 * Branch states produced by split_on_qubit keep the full dimension and carry
 * their (sub-unit) probability as squared norm.
 */
class StateVector {
 public:
  /// Zero vector over n qubits.
  explicit StateVector(std::size_t n_qubits);
  /// Throws std::invalid_argument unless amps.size() == 2^n and all entries
  /// are finite.
  StateVector(std::size_t n_qubits, std::vector<Complex> amps);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amps_.size(); }

  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }

  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }

  double squared_norm() const;
  bool is_normalized(double tol = kUnitaryTolerance) const;
  /// Throws std::domain_error on a zero vector.
  StateVector normalized() const;

  /// Bit mask of qubit q inside a basis index; throws std::out_of_range.
  std::size_t mask_of(QubitIndex q) const;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::size_t n_qubits_;
  std::vector<Complex> amps_;
};

StateVector basis_state(std::size_t n_qubits, std::size_t index);

/// a's qubits come first: result[i * 2^b.n + j] = a[i] * b[j].
StateVector tensor(const StateVector& a, const StateVector& b);

StateVector apply_single(StateVector sv, const Gate2x2& g, QubitIndex target);

/// Throws std::invalid_argument when control == target.
StateVector apply_cnot(StateVector sv, QubitIndex control, QubitIndex target);

/// Applies u to `target` on every basis component whose control bits are all
/// 1. With no controls this is apply_single.
StateVector apply_multi_controlled(StateVector sv,
                                   std::span<const QubitIndex> controls,
                                   const Gate2x2& u, QubitIndex target);

/**
 * Applies a 2^k x 2^k matrix to the listed qubits. targets[0] is the most
 * significant qubit of the matrix's own basis ordering.
 */
StateVector apply_matrix(StateVector sv, std::span<const QubitIndex> targets,
                         const Matrix& m);

/// Unnormalized projections onto q = 0 and q = 1, both full dimension.
std::pair<StateVector, StateVector> split_on_qubit(const StateVector& sv,
                                                   QubitIndex q);

struct Measurement {
  int bit;
  StateVector state;   // renormalized post-measurement state
  double probability;  // of the observed outcome
};

/// Outcome 0 iff rand01 < P(q = 0). Throws std::domain_error on zero norm.
Measurement measure_qubit(const StateVector& sv, QubitIndex q, double rand01);

/**
 * Removes qubit q, keeping the components where it equals `bit`.
 * The result has n - 1 qubits and is not renormalized.
 */
StateVector discard_qubit(const StateVector& sv, QubitIndex q, int bit);

Complex inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>|^2 for normalized inputs. Throws std::invalid_argument on a
/// dimension mismatch.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace probtele
