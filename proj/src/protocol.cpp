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

#include "probtele/protocol.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "probtele/random.hpp"

namespace probtele {

namespace {

std::string bits_string(std::uint32_t v, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t j = 1; j <= n; ++j) {
    if ((v >> (n - j)) & 1u) s[j - 1] = '1';
  }
  return s;
}

void check_same_n(const MessageSpec& msg, const ChannelSpec& ch) {
  if (msg.n() != ch.n()) {
    throw std::invalid_argument("message has " + std::to_string(msg.n()) +
                                " qubits but the channel is built for " +
                                std::to_string(ch.n()));
  }
}

/// Sender's CNOT + H stage on any register whose first 3N qubits follow the
/// protocol layout.
StateVector encode(StateVector sv, std::size_t n) {
  const Gate2x2 h = hadamard();
  for (std::size_t j = 1; j <= n; ++j) {
    sv = apply_cnot(std::move(sv), QubitIndex(j), QubitIndex(n + j));
  }
  for (std::size_t j = 1; j <= n; ++j) {
    sv = apply_single(std::move(sv), h, QubitIndex(j));
  }
  return sv;
}

/// Normalized copy, or the zero vector itself when the branch is empty.
StateVector normalized_or_zero(const StateVector& sv, double norm2) {
  return norm2 > 0.0 ? sv.normalized() : sv;
}

OutcomeRecord make_record(const Outcome& out, double probability,
                          StateVector bob, const StateVector& message) {
  OutcomeRecord rec;
  rec.outcome = out;
  rec.probability = probability;
  rec.fidelity = probability > 0.0 ? fidelity(bob, message) : 0.0;
  rec.bob_state = std::move(bob);
  return rec;
}

}  // namespace

std::string Outcome::m_string() const { return bits_string(m, n); }
std::string Outcome::n_string() const { return bits_string(nbits, n); }

std::string to_string(UnPath path) {
  switch (path) {
    case UnPath::Matrix: return "matrix";
    case UnPath::Netlist: return "netlist";
    case UnPath::Cnot: return "cnot";
  }
  return "matrix";
}

UnPath parse_un_path(std::string_view s) {
  if (s == "matrix") return UnPath::Matrix;
  if (s == "netlist") return UnPath::Netlist;
  if (s == "cnot") return UnPath::Cnot;
  throw std::invalid_argument("un_path must be matrix, netlist or cnot, got '" +
                              std::string(s) + "'");
}

StateVector prepare_channel_direct(const ChannelSpec& ch) {
  const std::size_t n = ch.n();
  StateVector sv(2 * n);
  for (std::size_t i = 0; i < ch.blocks(); ++i) sv[(i << n) | i] = ch.y()[i];
  return sv;
}

Netlist prepare_channel_circuit(const ChannelSpec& ch) {
  const std::size_t n = ch.n();
  std::vector<std::string> labels;
  for (std::size_t p = n + 1; p <= 3 * n; ++p) labels.push_back(std::to_string(p));
  Netlist nl(2 * n, labels);

  // weight[k][p] = sqrt(sum of y_i^2 over indices whose top k bits equal p)
  std::vector<std::vector<double>> weight(n + 1);
  weight[n].resize(ch.blocks());
  for (std::size_t i = 0; i < ch.blocks(); ++i) weight[n][i] = ch.y()[i] * ch.y()[i];
  for (std::size_t k = n; k-- > 0;) {
    weight[k].resize(std::size_t{1} << k);
    for (std::size_t p = 0; p < weight[k].size(); ++p) {
      weight[k][p] = weight[k + 1][2 * p] + weight[k + 1][2 * p + 1];
    }
  }

  for (std::size_t k = 1; k <= n; ++k) {
    const QubitIndex target(k);
    std::vector<QubitIndex> controls;
    for (std::size_t q = 1; q < k; ++q) controls.emplace_back(q);
    for (std::size_t p = 0; p < weight[k - 1].size(); ++p) {
      const double w0 = std::sqrt(weight[k][2 * p]);
      const double w1 = std::sqrt(weight[k][2 * p + 1]);
      const Gate2x2 rot = ry(2.0 * std::atan2(w1, w0));
      if (controls.empty()) {
        nl.append(SingleOp{rot, target});
        continue;
      }
      XLayerOp zeros;
      for (std::size_t q = 1; q < k; ++q) {
        if (!((p >> (k - 1 - q)) & 1u)) zeros.targets.emplace_back(q);
      }
      nl.append(zeros);
      nl.append(MultiControlledOp{controls, rot, target});
      nl.append(zeros);
    }
  }
  for (std::size_t j = 1; j <= n; ++j) {
    nl.append(CnotOp{QubitIndex(j), QubitIndex(n + j)});
  }
  return nl;
}

StateVector total_state(const MessageSpec& msg, const ChannelSpec& ch) {
  check_same_n(msg, ch);
  return tensor(msg.state(), prepare_channel_direct(ch));
}

StateVector alice_encode(StateVector total, std::size_t n) {
  if (n == 0 || total.n_qubits() != 3 * n) {
    throw std::invalid_argument("sender encoding expects a " +
                                std::to_string(3 * n) + "-qubit state, got " +
                                std::to_string(total.n_qubits()));
  }
  return encode(std::move(total), n);
}

CorrectionPlan correction_plan(const Outcome& out) {
  if (out.ancilla && *out.ancilla != 0) {
    throw std::invalid_argument("no correction exists for a failed outcome");
  }
  CorrectionPlan plan;
  for (std::size_t j = 1; j <= out.n; ++j) {
    plan.apply_x.push_back(out.n_bit(j));
    plan.apply_z.push_back(out.m_bit(j));
  }
  return plan;
}

StateVector apply_correction(StateVector bob, const CorrectionPlan& plan) {
  if (plan.apply_x.size() != bob.n_qubits() ||
      plan.apply_z.size() != bob.n_qubits()) {
    throw std::invalid_argument("correction plan width differs from the state");
  }
  const Gate2x2 x = pauli_x();
  const Gate2x2 z = pauli_z();
  for (std::size_t j = 1; j <= bob.n_qubits(); ++j) {
    if (plan.apply_x[j - 1]) bob = apply_single(std::move(bob), x, QubitIndex(j));
    if (plan.apply_z[j - 1]) bob = apply_single(std::move(bob), z, QubitIndex(j));
  }
  return bob;
}

Receiver::Receiver(const ChannelSpec& ch, UnPath path)
    : channel_(ch), path_(path), un_matrix_(build_un_matrix(ch)) {
  if (path == UnPath::Netlist) un_netlist_ = un_netlist(ch);
  if (path == UnPath::Cnot) un_netlist_ = expand_u2_full(ch);
}

StateVector Receiver::apply_un(StateVector sv) const {
  const std::size_t n = channel_.n();
  if (sv.n_qubits() != n + 1) {
    throw std::invalid_argument("U_N acts on N+1 qubits");
  }
  if (un_netlist_) return simulate(*un_netlist_, std::move(sv));
  std::vector<QubitIndex> targets;
  for (std::size_t q = 1; q <= n + 1; ++q) targets.emplace_back(q);
  return apply_matrix(std::move(sv), targets, un_matrix_);
}

Recovery Receiver::recover(const StateVector& branch,
                           const Outcome& out) const {
  const std::size_t n = channel_.n();
  if (branch.n_qubits() != n || out.n != n) {
    throw std::invalid_argument("receiver branch must have N qubits");
  }
  if (branch.squared_norm() == 0.0) {
    throw std::domain_error("receiver branch is the zero vector");
  }
  StateVector with_ancilla = apply_un(tensor(branch, basis_state(1, 0)));
  const QubitIndex ancilla(n + 1);
  auto [ok, bad] = split_on_qubit(with_ancilla, ancilla);

  Outcome success = out;
  success.ancilla = 0;
  const CorrectionPlan plan = correction_plan(success);

  Recovery r;
  r.p_success = ok.squared_norm();
  r.p_failure = bad.squared_norm();
  r.recovered = apply_correction(
      normalized_or_zero(discard_qubit(ok, ancilla, 0), r.p_success), plan);
  r.failed = apply_correction(
      normalized_or_zero(discard_qubit(bad, ancilla, 1), r.p_failure), plan);
  return r;
}

Recovery bob_recover(const StateVector& branch, const ChannelSpec& ch,
                     const Outcome& out, UnPath path) {
  return Receiver(ch, path).recover(branch, out);
}

StateVector bob_branch(const StateVector& encoded, std::size_t n,
                       std::uint32_t m, std::uint32_t nbits) {
  if (encoded.n_qubits() != 3 * n) {
    throw std::invalid_argument("expected a 3N-qubit register");
  }
  StateVector bob(n);
  const std::size_t prefix = ((std::size_t{m} << n) | nbits) << n;
  for (std::size_t j = 0; j < bob.dimension(); ++j) bob[j] = encoded[prefix | j];
  return bob;
}

std::vector<OutcomeRecord> enumerate_branches(const MessageSpec& msg,
                                              const ChannelSpec& ch,
                                              UnPath path) {
  const std::size_t n = ch.n();
  const StateVector message = msg.state();
  const Receiver receiver(ch, path);
  std::vector<OutcomeRecord> records;
  records.reserve(std::size_t{2} << (2 * n));

  // Depth-first over the sender's qubits 1..2N; `bits` collects results with
  // qubit 1 as the MSB.
  std::function<void(const StateVector&, std::size_t, std::uint32_t)> walk =
      [&](const StateVector& sv, std::size_t q, std::uint32_t bits) {
        if (q > 2 * n) {
          Outcome out;
          out.n = n;
          out.m = bits >> n;
          out.nbits = bits & ((1u << n) - 1);
          const StateVector branch = bob_branch(sv, n, out.m, out.nbits);
          const Recovery r = receiver.recover(branch, out);
          out.ancilla = 0;
          records.push_back(make_record(out, r.p_success, r.recovered, message));
          out.ancilla = 1;
          records.push_back(make_record(out, r.p_failure, r.failed, message));
          return;
        }
        auto [zero, one] = split_on_qubit(sv, QubitIndex(q));
        walk(zero, q + 1, bits << 1);
        walk(one, q + 1, (bits << 1) | 1u);
      };
  walk(alice_encode(total_state(msg, ch), n), 1, 0);
  return records;
}

std::vector<OutcomeRecord> enumerate_branches_coherent(const MessageSpec& msg,
                                                       const ChannelSpec& ch) {
  const std::size_t n = ch.n();
  const StateVector message = msg.state();
  StateVector sv = encode(tensor(total_state(msg, ch), basis_state(1, 0)), n);

  std::vector<QubitIndex> receiver_qubits;
  for (std::size_t q = 2 * n + 1; q <= 3 * n + 1; ++q) {
    receiver_qubits.emplace_back(q);
  }
  sv = apply_matrix(std::move(sv), receiver_qubits, build_un_matrix(ch));

  const Gate2x2 z = pauli_z();
  for (std::size_t j = 1; j <= n; ++j) {
    const QubitIndex bob(2 * n + j);
    sv = apply_cnot(std::move(sv), QubitIndex(n + j), bob);
    const QubitIndex control[] = {QubitIndex(j)};
    sv = apply_multi_controlled(std::move(sv), control, z, bob);
  }

  std::vector<OutcomeRecord> records;
  records.reserve(std::size_t{2} << (2 * n));
  const std::uint32_t alice_outcomes = 1u << (2 * n);
  for (std::uint32_t bits = 0; bits < alice_outcomes; ++bits) {
    StateVector rest = sv;
    for (std::size_t q = 1; q <= 2 * n; ++q) {
      rest = discard_qubit(rest, QubitIndex(1), (bits >> (2 * n - q)) & 1u);
    }
    for (int a = 0; a <= 1; ++a) {
      StateVector bob = discard_qubit(rest, QubitIndex(n + 1), a);
      const double p = bob.squared_norm();
      Outcome out{n, bits >> n, bits & ((1u << n) - 1), a};
      records.push_back(make_record(out, p, normalized_or_zero(bob, p), message));
    }
  }
  return records;
}

double success_probability(const ChannelSpec& ch) {
  return static_cast<double>(ch.blocks()) * ch.y0() * ch.y0();
}

double observed_success(const std::vector<OutcomeRecord>& records) {
  double p = 0.0;
  for (const OutcomeRecord& r : records) {
    if (r.outcome.ancilla == 0) p += r.probability;
  }
  return p;
}

OutcomeRecord sample_shot(const MessageSpec& msg, const ChannelSpec& ch,
                          std::uint64_t master_seed, std::uint64_t shot_index,
                          UnPath path) {
  return sample_shot(msg, Receiver(ch, path), master_seed, shot_index);
}

OutcomeRecord sample_shot(const MessageSpec& msg, const Receiver& receiver,
                          std::uint64_t master_seed, std::uint64_t shot_index) {
  const ChannelSpec& ch = receiver.channel();
  const std::size_t n = ch.n();
  Rng rng(derive_seed(master_seed, kShotStream, shot_index));

  StateVector sv = alice_encode(total_state(msg, ch), n);
  double probability = 1.0;
  std::uint32_t bits = 0;
  for (std::size_t q = 1; q <= 2 * n; ++q) {
    Measurement meas = measure_qubit(sv, QubitIndex(q), rng.uniform01());
    probability *= meas.probability;
    bits = (bits << 1) | static_cast<std::uint32_t>(meas.bit);
    sv = std::move(meas.state);
  }

  Outcome out;
  out.n = n;
  out.m = bits >> n;
  out.nbits = bits & ((1u << n) - 1);
  const Recovery r = receiver.recover(bob_branch(sv, n, out.m, out.nbits), out);
  const double total = r.p_success + r.p_failure;
  const double p0 = r.p_success / total;
  const bool success = rng.uniform01() < p0;
  out.ancilla = success ? 0 : 1;
  probability *= success ? p0 : 1.0 - p0;
  return make_record(out, probability, success ? r.recovered : r.failed,
                     msg.state());
}

}  // namespace probtele
