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

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "probtele/channel.hpp"
#include "probtele/gates.hpp"
#include "probtele/statevector.hpp"

namespace probtele {

struct SingleOp {
  Gate2x2 gate;
  QubitIndex target;
  friend bool operator==(const SingleOp&, const SingleOp&) = default;
};

struct CnotOp {
  QubitIndex control;
  QubitIndex target;
  friend bool operator==(const CnotOp&, const CnotOp&) = default;
};

/// Parallel NOT gates; targets kept sorted ascending.
struct XLayerOp {
  std::vector<QubitIndex> targets;
  friend bool operator==(const XLayerOp&, const XLayerOp&) = default;
};

/// Λ_k(gate): gate on target iff every control is 1.
struct MultiControlledOp {
  std::vector<QubitIndex> controls;
  Gate2x2 gate;
  QubitIndex target;
  friend bool operator==(const MultiControlledOp&,
                         const MultiControlledOp&) = default;
};

using GateOp = std::variant<SingleOp, CnotOp, XLayerOp, MultiControlledOp>;

/**
 * Ordered gate program. ops() is in time order: ops()[0] acts first, so
 * an operator product A B C written right-to-left becomes {C, B, A}.
 *
 * Each qubit carries a display label (the particle name, e.g. "5" or "a")
 * used by the text format.
 */
class Netlist {
 public:
  /// Labels default to "1".."n". Throws std::invalid_argument on a label
  /// count mismatch or duplicate labels.
  explicit Netlist(std::size_t n_qubits, std::vector<std::string> labels = {});

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<GateOp>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }

  /// Validates indices against n_qubits and mutual distinctness; XLayer
  /// targets get sorted. Empty XLayers are dropped.
  void append(GateOp op);
  /// Appends another program over the same qubit count.
  void append(const Netlist& other);

  /// Throws std::out_of_range for an unknown label.
  QubitIndex qubit(std::string_view label) const;

  friend bool operator==(const Netlist&, const Netlist&) = default;

 private:
  std::size_t n_qubits_;
  std::vector<std::string> labels_;
  std::vector<GateOp> ops_;
};

/// Full 2^n x 2^n matrix of one op, built from Kronecker products of 2x2
/// factors (independent of the state-vector kernels).
Matrix op_matrix(const GateOp& op, std::size_t n_qubits);

/// Product of op matrices in time order (last op leftmost).
Matrix netlist_matrix(const Netlist& nl);

/// Runs the program on a state with the state-vector kernels.
StateVector simulate(const Netlist& nl, StateVector sv);

/// U_N = diag(I, u_1, ..., u_{2^N-1}) with u_i = compensator(y0, y_i);
/// dimension 2^(N+1), ancilla least significant.
Matrix build_un_matrix(const ChannelSpec& channel);

/**
 * Order in which the conjugated Λ_N(u_i) factors are emitted.
 *
 * Descending: u_{2^N-1} first in time (the canonical order).
 * Ascending: u_1 first in time, preceded by the X^(N-1) layer; the same list
 * read as the generic-N product.
 */
enum class FactorOrder { Descending, Ascending };

/**
 * U_N as alternating X-layers and Λ_N(u_i) on N+1 qubits (controls 1..N,
 * target N+1). Before each Λ_N(u_i) the layer moves the cumulative flip mask
 * to (2^N-1) XOR i, so the factor fires exactly on control pattern i; a
 * closing layer restores the mask to zero.
 *
 * Labels are the receiver's particles 2N+1..3N followed by "a".
 */
Netlist un_netlist(const ChannelSpec& channel,
                   FactorOrder order = FactorOrder::Descending);

/**
 * Builds a U_N program from a compact factor list in time order, e.g.
 * "L3 X2 L2 X12 L1 X1": `L<i>` is Λ_N(u_i), `X<digits>` an X-layer on the
 * listed control qubits. Used to state expected factor sequences literally.
 * Throws std::invalid_argument on a malformed token.
 */
Netlist un_netlist_from_factors(const ChannelSpec& channel,
                                std::string_view factors);

/**
 * Λ_2(ry(theta)) from CNOTs and R_y pieces only, over qubits
 * {1: first control, 2: second control, 3: target}:
 *
 *   C23 B C23 A C12 C23 A C23 B C12 C13 B C13 A    (time order)
 *
 * with A = ry(theta/4), B = ry(-theta/4).
 */
Netlist lambda2_cnot_block(double theta);

/// lambda2_cnot_block for block i (1..3) of a two-qubit-message channel.
Netlist lambda2_cnot_expansion(const ChannelSpec& channel, std::size_t block);

/**
 * Reference Λ_2(u) for any unitary u: controlled-V on (2,3), CNOT(1,2),
 * controlled-V^† on (2,3), CNOT(1,2), controlled-V on (1,3), with V the
 * principal square root of u.
 */
Netlist lambda2_reference(const Gate2x2& u);

/// The whole CNOT-level U_2: X on q1, block 1, X on q1 q2, block 2, X on q2,
/// block 3. Only SingleOp and CnotOp entries. Throws unless channel.n() == 2.
Netlist expand_u2_full(const ChannelSpec& channel);

/// Where two matrices differ the most.
struct MatrixComparison {
  double max_abs_diff = 0.0;
  Eigen::Index row = -1;
  Eigen::Index col = -1;
  bool within(double tol) const { return max_abs_diff <= tol; }
};

/// Throws std::invalid_argument on a shape mismatch.
MatrixComparison compare_matrices(const Matrix& a, const Matrix& b);

/// Result of checking a gate-level expansion against its target matrix.
struct VerificationReport {
  std::string name;
  double tolerance = 0.0;
  MatrixComparison comparison;
  bool passed() const { return comparison.within(tolerance); }
  std::string describe() const;
};

/// Checks the CNOT-level block for u_i against both lambda_matrix(2, u_i) and
/// lambda2_reference(u_i). Mismatches are reported, never patched.
std::vector<VerificationReport> verify_lambda2_expansion(
    const ChannelSpec& channel, double tol = 1e-10);

struct OpCensus {
  std::size_t cnots = 0;
  std::size_t rotations = 0;  // SingleOp with an R_y gate
  std::size_t x_singles = 0;  // SingleOp with the X gate
  std::size_t other_singles = 0;
  std::size_t x_layers = 0;
  std::size_t multi_controlled = 0;
};

OpCensus census(const Netlist& nl);

}  // namespace probtele
