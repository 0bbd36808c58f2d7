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

#include "probtele/netlist.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace probtele {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_qubit(QubitIndex q, std::size_t n) {
  if (q.value < 1 || q.value > n) {
    throw std::out_of_range("netlist op addresses qubit " +
                            std::to_string(q.value) + " of " +
                            std::to_string(n));
  }
}

void check_distinct(std::vector<QubitIndex> qs) {
  std::sort(qs.begin(), qs.end());
  if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) {
    throw std::invalid_argument("netlist op uses a qubit more than once");
  }
}

/// Qubits touched by an op, in declaration order.
std::vector<QubitIndex> touched(const GateOp& op) {
  return std::visit(
      overloaded{
          [](const SingleOp& s) { return std::vector<QubitIndex>{s.target}; },
          [](const CnotOp& c) {
            return std::vector<QubitIndex>{c.control, c.target};
          },
          [](const XLayerOp& x) { return x.targets; },
          [](const MultiControlledOp& m) {
            std::vector<QubitIndex> qs = m.controls;
            qs.push_back(m.target);
            return qs;
          },
      },
      op);
}

using Matrix2 = Gate2x2::Matrix2;

/// factors[q-1] acts on qubit q; qubit 1 is the leftmost Kronecker factor.
Matrix kron_chain(const std::vector<Matrix2>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix2& f : factors) {
    Matrix next = Eigen::kroneckerProduct(out, f).eval();
    out = std::move(next);
  }
  return out;
}

Matrix controlled_matrix(std::span<const QubitIndex> controls,
                         const Matrix2& u, QubitIndex target, std::size_t n) {
  Matrix2 p1 = Matrix2::Zero();
  p1(1, 1) = 1.0;
  std::vector<Matrix2> proj(n, Matrix2::Identity());
  for (QubitIndex c : controls) proj[c.value - 1] = p1;
  std::vector<Matrix2> fired = proj;
  fired[target.value - 1] = u;
  const Eigen::Index dim = Eigen::Index{1} << n;
  return Matrix::Identity(dim, dim) - kron_chain(proj) + kron_chain(fired);
}

std::vector<std::string> un_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t j = 1; j <= n; ++j) labels.push_back(std::to_string(2 * n + j));
  labels.push_back("a");
  return labels;
}

/// Qubits (1..n) whose bit is set in a mask where qubit 1 is the MSB.
std::vector<QubitIndex> mask_qubits(std::size_t mask, std::size_t n) {
  std::vector<QubitIndex> out;
  for (std::size_t q = 1; q <= n; ++q) {
    if (mask & (std::size_t{1} << (n - q))) out.emplace_back(q);
  }
  return out;
}

}  // namespace

Netlist::Netlist(std::size_t n_qubits, std::vector<std::string> labels)
    : n_qubits_(n_qubits), labels_(std::move(labels)) {
  if (n_qubits_ == 0 || n_qubits_ > kMaxQubits) {
    throw std::invalid_argument("netlist qubit count out of range");
  }
  if (labels_.empty()) {
    for (std::size_t q = 1; q <= n_qubits_; ++q) {
      labels_.push_back(std::to_string(q));
    }
  }
  if (labels_.size() != n_qubits_) {
    throw std::invalid_argument("netlist needs one label per qubit");
  }
  std::set<std::string> seen;
  for (const std::string& l : labels_) {
    if (l.empty() || !seen.insert(l).second) {
      throw std::invalid_argument("netlist labels must be non-empty and unique");
    }
  }
}

void Netlist::append(GateOp op) {
  const std::vector<QubitIndex> qs = touched(op);
  for (QubitIndex q : qs) check_qubit(q, n_qubits_);
  check_distinct(qs);
  if (auto* layer = std::get_if<XLayerOp>(&op)) {
    if (layer->targets.empty()) return;
    std::sort(layer->targets.begin(), layer->targets.end());
  }
  ops_.push_back(std::move(op));
}

void Netlist::append(const Netlist& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("cannot concatenate netlists of different width");
  }
  for (const GateOp& op : other.ops_) append(op);
}

QubitIndex Netlist::qubit(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return QubitIndex(i + 1);
  }
  throw std::out_of_range("unknown qubit label '" + std::string(label) + "'");
}

Matrix op_matrix(const GateOp& op, std::size_t n) {
  for (QubitIndex q : touched(op)) check_qubit(q, n);
  return std::visit(
      overloaded{
          [n](const SingleOp& s) {
            std::vector<Matrix2> f(n, Matrix2::Identity());
            f[s.target.value - 1] = s.gate.matrix();
            return kron_chain(f);
          },
          [n](const CnotOp& c) {
            const QubitIndex controls[] = {c.control};
            return controlled_matrix(controls, pauli_x().matrix(), c.target, n);
          },
          [n](const XLayerOp& x) {
            std::vector<Matrix2> f(n, Matrix2::Identity());
            for (QubitIndex q : x.targets) f[q.value - 1] = pauli_x().matrix();
            return kron_chain(f);
          },
          [n](const MultiControlledOp& m) {
            return controlled_matrix(m.controls, m.gate.matrix(), m.target, n);
          },
      },
      op);
}

Matrix netlist_matrix(const Netlist& nl) {
  const Eigen::Index dim = Eigen::Index{1} << nl.n_qubits();
  Matrix acc = Matrix::Identity(dim, dim);
  for (const GateOp& op : nl.ops()) {
    Matrix next = op_matrix(op, nl.n_qubits()) * acc;
    acc = std::move(next);
  }
  return acc;
}

StateVector simulate(const Netlist& nl, StateVector sv) {
  if (sv.n_qubits() != nl.n_qubits()) {
    throw std::invalid_argument("state and netlist widths differ");
  }
  for (const GateOp& op : nl.ops()) {
    sv = std::visit(
        overloaded{
            [&sv](const SingleOp& s) {
              return apply_single(std::move(sv), s.gate, s.target);
            },
            [&sv](const CnotOp& c) {
              return apply_cnot(std::move(sv), c.control, c.target);
            },
            [&sv](const XLayerOp& x) {
              const Gate2x2 not_gate = pauli_x();
              for (QubitIndex q : x.targets) {
                sv = apply_single(std::move(sv), not_gate, q);
              }
              return std::move(sv);
            },
            [&sv](const MultiControlledOp& m) {
              return apply_multi_controlled(std::move(sv), m.controls, m.gate,
                                            m.target);
            },
        },
        op);
  }
  return sv;
}

Matrix build_un_matrix(const ChannelSpec& channel) {
  const Eigen::Index blocks = static_cast<Eigen::Index>(channel.blocks());
  Matrix u = Matrix::Zero(2 * blocks, 2 * blocks);
  u.topLeftCorner(2, 2) = Matrix2::Identity();
  for (Eigen::Index i = 1; i < blocks; ++i) {
    u.block(2 * i, 2 * i, 2, 2) =
        compensator(channel.y0(), channel.y()[static_cast<std::size_t>(i)])
            .matrix();
  }
  return u;
}

Netlist un_netlist(const ChannelSpec& channel, FactorOrder order) {
  const std::size_t n = channel.n();
  const std::size_t full = channel.blocks() - 1;
  Netlist nl(n + 1, un_labels(n));

  std::vector<QubitIndex> controls;
  for (std::size_t q = 1; q <= n; ++q) controls.emplace_back(q);
  const QubitIndex target(n + 1);

  std::vector<std::size_t> blocks;
  for (std::size_t i = 1; i <= full; ++i) blocks.push_back(i);
  if (order == FactorOrder::Descending) std::reverse(blocks.begin(), blocks.end());

  std::size_t mask = 0;
  for (std::size_t i : blocks) {
    const std::size_t want = full ^ i;
    nl.append(XLayerOp{mask_qubits(mask ^ want, n)});
    mask = want;
    nl.append(MultiControlledOp{controls,
                                compensator(channel.y0(), channel.y()[i]),
                                target});
  }
  nl.append(XLayerOp{mask_qubits(mask, n)});
  return nl;
}

Netlist un_netlist_from_factors(const ChannelSpec& channel,
                                std::string_view factors) {
  const std::size_t n = channel.n();
  Netlist nl(n + 1, un_labels(n));
  std::vector<QubitIndex> controls;
  for (std::size_t q = 1; q <= n; ++q) controls.emplace_back(q);

  std::istringstream is{std::string(factors)};
  for (std::string tok; is >> tok;) {
    const std::string rest = tok.substr(1);
    const bool digits = !rest.empty() &&
        std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (!digits || (tok[0] != 'L' && tok[0] != 'X')) {
      throw std::invalid_argument("bad factor token '" + tok + "'");
    }
    if (tok[0] == 'L') {
      const std::size_t i = std::stoul(rest);
      if (i < 1 || i >= channel.blocks()) {
        throw std::invalid_argument("factor " + tok + " has no block");
      }
      nl.append(MultiControlledOp{controls,
                                  compensator(channel.y0(), channel.y()[i]),
                                  QubitIndex(n + 1)});
    } else {
      XLayerOp layer;
      for (char c : rest) {
        const std::size_t q = static_cast<std::size_t>(c - '0');
        if (q < 1 || q > n) throw std::invalid_argument("factor " + tok + " names a non-control qubit");
        layer.targets.emplace_back(q);
      }
      nl.append(std::move(layer));
    }
  }
  return nl;
}

Netlist lambda2_cnot_block(double theta) {
  const Gate2x2 a = ry(theta / 4);
  const Gate2x2 b = ry(-theta / 4);
  const QubitIndex c1(1), c2(2), t(3);
  Netlist nl(3);
  nl.append(CnotOp{c2, t});
  nl.append(SingleOp{b, t});
  nl.append(CnotOp{c2, t});
  nl.append(SingleOp{a, t});
  nl.append(CnotOp{c1, c2});
  nl.append(CnotOp{c2, t});
  nl.append(SingleOp{a, t});
  nl.append(CnotOp{c2, t});
  nl.append(SingleOp{b, t});
  nl.append(CnotOp{c1, c2});
  nl.append(CnotOp{c1, t});
  nl.append(SingleOp{b, t});
  nl.append(CnotOp{c1, t});
  nl.append(SingleOp{a, t});
  return nl;
}

namespace {

void require_two_qubit_message(const ChannelSpec& channel) {
  if (channel.n() != 2) {
    throw std::invalid_argument(
        "the CNOT-level expansion exists only for two-qubit messages (n = 2)");
  }
}

/// Re-labels a 3-qubit block onto the receiver's particles 5, 6, a.
Netlist relabel_u2(const Netlist& block) {
  Netlist out(3, un_labels(2));
  out.append(block);
  return out;
}

}  // namespace

Netlist lambda2_cnot_expansion(const ChannelSpec& channel, std::size_t block) {
  require_two_qubit_message(channel);
  if (block < 1 || block > 3) {
    throw std::out_of_range("block index must be 1, 2 or 3");
  }
  const double theta = compensator_angle(channel.y0(), channel.y()[block]);
  return relabel_u2(lambda2_cnot_block(theta));
}

Netlist lambda2_reference(const Gate2x2& u) {
  Eigen::ComplexEigenSolver<Matrix2> es(u.matrix());
  const Matrix2 w = es.eigenvectors();
  const Eigen::Vector2cd d = es.eigenvalues().array().sqrt();
  const Matrix2 v_mat = w * d.asDiagonal() * w.inverse();
  const Gate2x2 v = Gate2x2::from_matrix(v_mat);
  const Gate2x2 v_dag = v.adjoint();
  const QubitIndex c1(1), c2(2), t(3);
  Netlist nl(3);
  nl.append(MultiControlledOp{{c2}, v, t});
  nl.append(CnotOp{c1, c2});
  nl.append(MultiControlledOp{{c2}, v_dag, t});
  nl.append(CnotOp{c1, c2});
  nl.append(MultiControlledOp{{c1}, v, t});
  return nl;
}

Netlist expand_u2_full(const ChannelSpec& channel) {
  require_two_qubit_message(channel);
  const Gate2x2 x = pauli_x();
  const QubitIndex q1(1), q2(2);
  Netlist nl(3, un_labels(2));
  nl.append(SingleOp{x, q1});
  nl.append(lambda2_cnot_expansion(channel, 1));
  nl.append(SingleOp{x, q1});
  nl.append(SingleOp{x, q2});
  nl.append(lambda2_cnot_expansion(channel, 2));
  nl.append(SingleOp{x, q2});
  nl.append(lambda2_cnot_expansion(channel, 3));
  return nl;
}

MatrixComparison compare_matrices(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("cannot compare matrices of different shape");
  }
  MatrixComparison out;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      const double d = std::abs(a(r, c) - b(r, c));
      if (d > out.max_abs_diff || out.row < 0) {
        out.max_abs_diff = d;
        out.row = r;
        out.col = c;
      }
    }
  }
  return out;
}

std::string VerificationReport::describe() const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%s: max|diff| = %.3e at (%ld, %ld), tol %.1e -> %s",
                name.c_str(), comparison.max_abs_diff,
                static_cast<long>(comparison.row),
                static_cast<long>(comparison.col), tolerance,
                passed() ? "ok" : "MISMATCH");
  return buf;
}

std::vector<VerificationReport> verify_lambda2_expansion(
    const ChannelSpec& channel, double tol) {
  require_two_qubit_message(channel);
  std::vector<VerificationReport> reports;
  for (std::size_t i = 1; i <= 3; ++i) {
    const Gate2x2 u = compensator(channel.y0(), channel.y()[i]);
    const Matrix expanded = netlist_matrix(lambda2_cnot_expansion(channel, i));
    const std::string tag = "u" + std::to_string(i);
    reports.push_back({"cnot block " + tag + " vs lambda_matrix", tol,
                       compare_matrices(expanded, lambda_matrix(2, u))});
    reports.push_back(
        {"cnot block " + tag + " vs reference decomposition", tol,
         compare_matrices(expanded, netlist_matrix(lambda2_reference(u)))});
  }
  reports.push_back({"full CNOT-level U_2 vs U_2 matrix", tol,
                     compare_matrices(netlist_matrix(expand_u2_full(channel)),
                                      build_un_matrix(channel))});
  return reports;
}

OpCensus census(const Netlist& nl) {
  OpCensus c;
  for (const GateOp& op : nl.ops()) {
    std::visit(overloaded{
                   [&c](const SingleOp& s) {
                     switch (s.gate.kind()) {
                       case GateKind::RotationY: ++c.rotations; break;
                       case GateKind::PauliX: ++c.x_singles; break;
                       default: ++c.other_singles; break;
                     }
                   },
                   [&c](const CnotOp&) { ++c.cnots; },
                   [&c](const XLayerOp&) { ++c.x_layers; },
                   [&c](const MultiControlledOp&) { ++c.multi_controlled; },
               },
               op);
  }
  return c;
}

}  // namespace probtele
