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

// Probabilistic teleportation of an N-qubit state through the channel
// sum_i y_i |i>|i>.
//
// Qubit layout of the full register (1-based, qubit 1 most significant):
//   1 .. N        message (sender)
//   N+1 .. 2N     sender's half of the channel
//   2N+1 .. 3N    receiver's half of the channel
//   3N+1          receiver's ancilla (only while recovering)
//
// The sender applies CNOT(j, N+j) and then H(j) for j = 1..N and measures
// qubits 1..2N. The receiver appends an ancilla |0>, applies
// U_N = diag(I, u_1, ..., u_{2^N-1}) and measures the ancilla: 0 heralds
// success, after which X^{n_j} then Z^{m_j} on receiver qubit j restores the
// message exactly (m = results on 1..N, n = results on N+1..2N).

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "probtele/channel.hpp"
#include "probtele/netlist.hpp"
#include "probtele/statevector.hpp"

namespace probtele {

/// Measurement record. Bit strings are stored with qubit 1 as the MSB, so
/// m == 0b100 means "1 on message qubit 1, 0 on the others".
struct Outcome {
  std::size_t n = 1;
  std::uint32_t m = 0;      // message qubits 1..N (after the Hadamards)
  std::uint32_t nbits = 0;  // sender's channel qubits N+1..2N
  std::optional<int> ancilla;

  bool m_bit(std::size_t j) const { return (m >> (n - j)) & 1u; }
  bool n_bit(std::size_t j) const { return (nbits >> (n - j)) & 1u; }
  std::string m_string() const;
  std::string n_string() const;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct OutcomeRecord {
  Outcome outcome;
  /// Joint probability of the full outcome (sender bits and ancilla).
  double probability = 0.0;
  /// Receiver's normalized, corrected N-qubit state; zero if probability is 0.
  StateVector bob_state{1};
  /// fidelity(bob_state, message); 0 for zero-probability branches.
  double fidelity = 0.0;
};

/// Per receiver qubit j (index j-1): X if apply_x, then Z if apply_z.
struct CorrectionPlan {
  std::vector<bool> apply_x;
  std::vector<bool> apply_z;
  friend bool operator==(const CorrectionPlan&, const CorrectionPlan&) = default;
};

/// How the receiver realizes U_N.
enum class UnPath {
  Matrix,   // block-diagonal matrix on receiver qubits + ancilla
  Netlist,  // X-layers and Λ_N(u_i) gates
  Cnot,     // CNOTs and single-qubit gates only; N = 2 only
};

std::string to_string(UnPath path);
/// "matrix" | "netlist" | "cnot"; throws std::invalid_argument otherwise.
UnPath parse_un_path(std::string_view s);

/// y_i on basis state i * 2^N + i over 2N qubits.
StateVector prepare_channel_direct(const ChannelSpec& ch);

/**
 * Netlist over 2N qubits that maps |0...0> to prepare_channel_direct(ch).
 *
 * A binary tree of 2^N - 1 R_y rotations loads the y_i onto qubits 1..N
 * (qubit k's rotation is controlled on qubits 1..k-1, with X-layers selecting
 * each prefix), then CNOT(j, N+j) copies the pattern onto qubits N+1..2N.
 * Labels are particles N+1..3N.
 */
Netlist prepare_channel_circuit(const ChannelSpec& ch);

/// message (x) channel over 3N qubits.
StateVector total_state(const MessageSpec& msg, const ChannelSpec& ch);

/// CNOT(j, N+j) for j = 1..N, then H on 1..N. Throws unless the state has
/// 3N qubits.
StateVector alice_encode(StateVector total, std::size_t n);

/// Throws std::invalid_argument on a failure outcome (ancilla == 1).
CorrectionPlan correction_plan(const Outcome& out);

StateVector apply_correction(StateVector bob, const CorrectionPlan& plan);

/// What the receiver ends up with for one sender outcome.
struct Recovery {
  double p_success = 0.0;  // joint weight of ancilla = 0 (branch norm included)
  double p_failure = 0.0;  // joint weight of ancilla = 1
  StateVector recovered{1};  // corrected, normalized ancilla = 0 state
  StateVector failed{1};     // corrected, normalized ancilla = 1 state or zero
};

/**
 * Applies U_N for a fixed channel. Construction builds the chosen
 * realization once; calls are const and thread-safe.
 */
class Receiver {
 public:
  Receiver(const ChannelSpec& ch, UnPath path);

  /// `branch` is the receiver's unnormalized N-qubit state for outcome `out`
  /// (ancilla ignored). Throws std::domain_error on a zero branch.
  Recovery recover(const StateVector& branch, const Outcome& out) const;

  /// U_N applied to an (N+1)-qubit state with the ancilla last.
  StateVector apply_un(StateVector sv) const;

  const ChannelSpec& channel() const { return channel_; }
  UnPath path() const { return path_; }

 private:
  ChannelSpec channel_;
  UnPath path_;
  Matrix un_matrix_;
  std::optional<Netlist> un_netlist_;
};

Recovery bob_recover(const StateVector& branch, const ChannelSpec& ch,
                     const Outcome& out, UnPath path = UnPath::Matrix);

/// Receiver's unnormalized N-qubit state after the sender's measurement of
/// (m, nbits) on an encoded 3N-qubit state.
StateVector bob_branch(const StateVector& encoded, std::size_t n,
                       std::uint32_t m, std::uint32_t nbits);

/**
 * Exact enumeration of all 2 * 4^N outcomes, measure-first ordering:
 * iterated split_on_qubit over the sender's 2N qubits, then the receiver's
 * recovery and classically-controlled correction per branch. Records are
 * ordered by (m, nbits, ancilla).
 */
std::vector<OutcomeRecord> enumerate_branches(const MessageSpec& msg,
                                              const ChannelSpec& ch,
                                              UnPath path = UnPath::Matrix);

/**
 * Same table computed with every classically-controlled step replaced by its
 * quantum-controlled counterpart on the full 3N+1 register (corrections as
 * CNOT(N+j, 2N+j) and CZ(j, 2N+j)), measuring everything at the end.
 */
std::vector<OutcomeRecord> enumerate_branches_coherent(const MessageSpec& msg,
                                                       const ChannelSpec& ch);

/// 2^N * y0^2.
double success_probability(const ChannelSpec& ch);

/// Sum of probabilities over ancilla = 0 records.
double observed_success(const std::vector<OutcomeRecord>& records);

/**
 * One sampled run. Randomness comes only from derive_seed(master_seed,
 * stream, shot_index), so shots can run in any order or in parallel.
 * The sender's qubits are measured first and the receiver's corrections are
 * classically controlled on those bits.
 */
OutcomeRecord sample_shot(const MessageSpec& msg, const ChannelSpec& ch,
                          std::uint64_t master_seed, std::uint64_t shot_index,
                          UnPath path = UnPath::Matrix);

/// Same as sample_shot with a prebuilt receiver.
OutcomeRecord sample_shot(const MessageSpec& msg, const Receiver& receiver,
                          std::uint64_t master_seed, std::uint64_t shot_index);

}  // namespace probtele
