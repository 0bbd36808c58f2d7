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

// Invariant suites behind `probtele verify`.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "probtele/harness.hpp"
#include "probtele/netlist_io.hpp"
#include "probtele/random.hpp"

namespace probtele {

namespace {

// Factor sequences of U_2, U_3, U_4 in time order (rightmost printed factor
// of the operator product first).
constexpr const char* kU2Factors = "L3 X2 L2 X12 L1 X1";
constexpr const char* kU3Factors =
    "L7 X3 L6 X23 L5 X3 L4 X123 L3 X3 L2 X23 L1 X12";
constexpr const char* kU4Factors =
    "L15 X4 L14 X34 L13 X4 L12 X234 L11 X4 L10 X34 L9 X4 L8 X1234 "
    "L7 X4 L6 X34 L5 X4 L4 X234 L3 X4 L2 X34 L1 X123";

/// Accumulates the worst residual of one named check.
class Check {
 public:
  Check(std::string name, double tol) { result_.name = std::move(name); result_.tolerance = tol; }

  void residual(double r, const std::string& where = {}) {
    if (std::isnan(r) || r > result_.worst_residual) {
      result_.worst_residual = r;
      if (!where.empty()) result_.detail = "worst at " + where;
    }
    if (!(r <= result_.tolerance)) result_.passed = false;
  }
  void require(bool ok, const std::string& what) {
    if (!ok) {
      result_.passed = false;
      if (result_.detail.empty()) result_.detail = what;
    }
  }
  void note(const std::string& s) {
    if (result_.passed) result_.detail = s;
  }
  CheckResult done() && { return std::move(result_); }

 private:
  CheckResult result_;
};

double state_diff(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

StateVector random_state(std::size_t n, Rng& rng) {
  std::vector<Complex> amps(std::size_t{1} << n);
  for (Complex& a : amps) {
    const double re = rng.normal();
    const double im = rng.normal();
    a = {re, im};
  }
  return StateVector(n, std::move(amps)).normalized();
}

std::string tag(std::size_t n, std::size_t trial) {
  return "N=" + std::to_string(n) + " trial " + std::to_string(trial);
}

struct Context {
  std::size_t max_n;
  std::size_t trials;
  std::uint64_t seed;

  Rng rng(std::uint64_t salt, std::size_t n, std::size_t trial) const {
    return Rng(derive_seed(seed, kVerifyStream, (salt << 32) ^ (n << 16) ^ trial));
  }
  template <class F>
  void each(F&& f) const {
    for (std::size_t n = 1; n <= max_n; ++n) {
      for (std::size_t t = 0; t < trials; ++t) f(n, t);
    }
  }
};

CheckResult norm_conservation(const Context& ctx) {
  Check c("statevector.norm_conservation", 1e-12);
  ctx.each([&](std::size_t n, std::size_t t) {
    Rng rng = ctx.rng(1, n, t);
    const std::size_t width = 3 * n + 1;
    StateVector sv = random_state(width, rng);
    const Gate2x2 gates[] = {hadamard(), pauli_x(), pauli_z(),
                             ry(rng.uniform(-3, 3)), random_unitary(rng)};
    for (const Gate2x2& g : gates) {
      const double before = sv.squared_norm();
      const auto q = QubitIndex(1 + static_cast<std::size_t>(rng.uniform01() * width));
      sv = apply_single(std::move(sv), g, q);
      c.residual(std::abs(sv.squared_norm() - before), tag(n, t));
    }
    const double before = sv.squared_norm();
    sv = apply_cnot(std::move(sv), QubitIndex(1), QubitIndex(width));
    c.residual(std::abs(sv.squared_norm() - before), tag(n, t));
  });
  return std::move(c).done();
}

CheckResult self_inverse(const Context& ctx) {
  Check c("statevector.self_inverse_gates", 1e-12);
  ctx.each([&](std::size_t n, std::size_t t) {
    Rng rng = ctx.rng(2, n, t);
    const StateVector sv = random_state(n + 1, rng);
    for (const Gate2x2& g : {pauli_x(), pauli_z(), hadamard()}) {
      StateVector twice = apply_single(apply_single(sv, g, QubitIndex(1)), g, QubitIndex(1));
      c.residual(state_diff(sv, twice), tag(n, t));
    }
    StateVector cc = apply_cnot(apply_cnot(sv, QubitIndex(1), QubitIndex(n + 1)),
                                QubitIndex(1), QubitIndex(n + 1));
    c.residual(state_diff(sv, cc), tag(n, t));
  });
  return std::move(c).done();
}

CheckResult multi_controlled_semantics(const Context& ctx) {
  Check c("statevector.multi_controlled_vs_lambda_matrix", 1e-12);
  ctx.each([&](std::size_t n, std::size_t t) {
    Rng rng = ctx.rng(3, n, t);
    const Gate2x2 u = random_unitary(rng);
    const Matrix lam = lambda_matrix(n, u);
    std::vector<QubitIndex> controls;
    for (std::size_t q = 1; q <= n; ++q) controls.emplace_back(q);
    for (std::size_t col = 0; col < (std::size_t{2} << n); ++col) {
      const StateVector out = apply_multi_controlled(basis_state(n + 1, col), controls, u,
                                                     QubitIndex(n + 1));
      for (std::size_t r = 0; r < out.dimension(); ++r) {
        c.residual(std::abs(out[r] - lam(static_cast<Eigen::Index>(r),
                                         static_cast<Eigen::Index>(col))),
                   tag(n, t));
      }
    }
    // Λ_1(X) is CNOT, exactly.
    const QubitIndex one[] = {QubitIndex(1)};
    for (std::size_t b = 0; b < (std::size_t{1} << (n + 1)); ++b) {
      const StateVector s = basis_state(n + 1, b);
      c.require(apply_multi_controlled(s, one, pauli_x(), QubitIndex(n + 1)) ==
                    apply_cnot(s, QubitIndex(1), QubitIndex(n + 1)),
                "Λ_1(X) differs from CNOT");
    }
  });
  return std::move(c).done();
}

CheckResult split_completeness(const Context& ctx) {
  Check c("statevector.split_completeness", 1e-12);
  ctx.each([&](std::size_t n, std::size_t t) {
    Rng rng = ctx.rng(4, n, t);
    const StateVector sv = random_state(2 * n, rng);
    for (std::size_t q = 1; q <= 2 * n; ++q) {
      auto [zero, one] = split_on_qubit(sv, QubitIndex(q));
      c.residual(std::abs(zero.squared_norm() + one.squared_norm() - sv.squared_norm()),
                 tag(n, t));
      c.residual(std::abs(inner_product(zero, one)), tag(n, t));
    }
  });
  return std::move(c).done();
}

CheckResult compensator_orthogonal(const Context& ctx) {
  Check c("gates.compensator_orthogonal", 1e-12);
  ctx.each([&](std::size_t n, std::size_t t) {
    Rng rng = ctx.rng(5, n, t);
    const ChannelSpec ch = random_channel(n, rng);
    for (std::size_t i = 1; i < ch.blocks(); ++i) {
      const Gate2x2 u = compensator(ch.y0(), ch.y()[i]);
      c.residual(std::abs(u.matrix().determinant() - 1.0), tag(n, t));
      c.residual(unitarity_residual(u.matrix()), tag(n, t));
      c.residual(std::abs(u(0, 0) * ch.y()[i] - ch.y0()), tag(n, t));
    }
  });
  return std::move(c).done();
}

CheckResult lambda_and_rule(const Context& ctx) {
  Check c("gates.lambda_and_rule", 0.0);
  for (std::size_t n = 0; n <= ctx.max_n; ++n) {
    const Matrix lam = lambda_matrix(n, pauli_x());
    const std::size_t dim = std::size_t{2} << n;
    for (std::size_t col = 0; col < dim; ++col) {
      const bool all_ones = (col >> 1) == (dim >> 1) - 1;
      const std::size_t expect = all_ones ? (col ^ 1u) : col;
      for (std::size_t r = 0; r < dim; ++r) {
        const Complex want = r == expect ? 1.0 : 0.0;
        c.residual(std::abs(lam(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) - want),
                   "n_controls=" + std::to_string(n));
      }
    }
  }
  return std::move(c).done();
}

CheckResult un_netlist_matrix(const Context& ctx) {
  Check c("netlist.un_netlist_vs_matrix", 1e-12);
  ctx.each([&](std::size_t n, std::size_t t) {
    Rng rng = ctx.rng(6, n, t);
    const ChannelSpec ch = random_channel(n, rng);
    const Matrix un = build_un_matrix(ch);
    c.residual(unitarity_residual(un), tag(n, t));
    for (FactorOrder order : {FactorOrder::Descending, FactorOrder::Ascending}) {
      c.residual(compare_matrices(netlist_matrix(un_netlist(ch, order)), un).max_abs_diff,
                 tag(n, t));
    }
  });
  return std::move(c).done();
}

CheckResult factor_structure(const Context& ctx) {
  Check c("netlist.factor_sequences", 0.0);
  const std::pair<std::size_t, const char*> expected[] = {
      {2, kU2Factors}, {3, kU3Factors}, {4, kU4Factors}};
  std::string covered;
  for (const auto& [n, factors] : expected) {
    if (n > ctx.max_n) continue;
    for (std::size_t t = 0; t < ctx.trials; ++t) {
      Rng rng = ctx.rng(7, n, t);
      const ChannelSpec ch = random_channel(n, rng);
      c.require(un_netlist(ch) == un_netlist_from_factors(ch, factors),
                "U_" + std::to_string(n) + " factor sequence differs");
    }
    covered += (covered.empty() ? "U_" : ", U_") + std::to_string(n);
  }
  c.note(covered.empty() ? "no N >= 2 requested" : "matched " + covered);
  return std::move(c).done();
}

CheckResult xlayer_involution(const Context& ctx) {
  Check c("netlist.xlayer_involution", 0.0);
  for (std::size_t n = 1; n <= ctx.max_n; ++n) {
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      XLayerOp layer;
      for (std::size_t q = 1; q <= n; ++q) {
        if (mask & (std::size_t{1} << (n - q))) layer.targets.emplace_back(q);
      }
      const Matrix m = op_matrix(layer, n + 1);
      c.residual(compare_matrices(m * m, Matrix::Identity(m.rows(), m.cols())).max_abs_diff);
    }
  }
  return std::move(c).done();
}

CheckResult cnot_expansion(const Context& ctx) {
  Check c("netlist.u2_cnot_expansion", 1e-10);
  if (ctx.max_n < 2) {
    c.note("skipped (needs max_n >= 2)");
    return std::move(c).done();
  }
  for (std::size_t t = 0; t < ctx.trials; ++t) {
    Rng rng = ctx.rng(8, 2, t);
    for (const VerificationReport& r : verify_lambda2_expansion(random_channel(2, rng))) {
      c.residual(r.comparison.max_abs_diff, r.name);
    }
  }
  return std::move(c).done();
}

CheckResult text_roundtrip(const Context& ctx) {
  Check c("netlist.text_roundtrip", 0.0);
  ctx.each([&](std::size_t n, std::size_t t) {
    Rng rng = ctx.rng(9, n, t);
    const ChannelSpec ch = random_channel(n, rng);
    std::vector<Netlist> programs = {un_netlist(ch), prepare_channel_circuit(ch)};
    if (n == 2) programs.push_back(expand_u2_full(ch));
    for (const Netlist& nl : programs) {
      c.require(parse_netlist(to_text(nl)) == nl, "round trip changed a netlist at " + tag(n, t));
    }
  });
  return std::move(c).done();
}

CheckResult channel_circuit(const Context& ctx) {
  Check c("protocol.channel_circuit", 1e-10);
  ctx.each([&](std::size_t n, std::size_t t) {
    Rng rng = ctx.rng(10, n, t);
    const ChannelSpec ch = random_channel(n, rng);
    const StateVector prepared = simulate(prepare_channel_circuit(ch), basis_state(2 * n, 0));
    c.residual(state_diff(prepared, prepare_channel_direct(ch)), tag(n, t));
  });
  return std::move(c).done();
}

/// Probability completeness, success law, success fidelity, message
/// independence and failure informativeness over one shared set of runs.
std::vector<CheckResult> protocol_laws(const Context& ctx) {
  Check completeness("protocol.probability_completeness", 1e-10);
  Check law("protocol.success_law", 1e-10);
  Check perfect("protocol.success_fidelity", 1e-10);
  Check informative("protocol.failure_informative", 0.0);
  bool saw_failure_below_one = false;
  ctx.each([&](std::size_t n, std::size_t t) {
    Rng rng = ctx.rng(11, n, t);
    const ChannelSpec ch = random_channel(n, rng);
    for (int k = 0; k < 2; ++k) {
      const MessageSpec msg = random_message(n, rng);
      const auto records = enumerate_branches(msg, ch);
      double total = 0.0;
      for (const OutcomeRecord& r : records) {
        total += r.probability;
        if (r.outcome.ancilla == 0) {
          perfect.residual(1.0 - r.fidelity, tag(n, t));
        } else if (r.probability > 1e-12 && r.fidelity < 1.0 - 1e-6) {
          saw_failure_below_one = true;
        }
      }
      completeness.residual(std::abs(total - 1.0), tag(n, t));
      law.residual(std::abs(observed_success(records) - success_probability(ch)), tag(n, t));
    }
  });
  informative.require(saw_failure_below_one, "no failure branch with fidelity < 1");
  return {std::move(completeness).done(), std::move(law).done(),
          std::move(perfect).done(), std::move(informative).done()};
}

double table_diff(const std::vector<OutcomeRecord>& a, const std::vector<OutcomeRecord>& b) {
  if (a.size() != b.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i].outcome == b[i].outcome)) return INFINITY;
    d = std::max(d, std::abs(a[i].probability - b[i].probability));
    d = std::max(d, state_diff(a[i].bob_state, b[i].bob_state));
  }
  return d;
}

CheckResult un_paths(const Context& ctx) {
  Check c("protocol.matrix_vs_netlist_path", 1e-12);
  ctx.each([&](std::size_t n, std::size_t t) {
    Rng rng = ctx.rng(12, n, t);
    const ChannelSpec ch = random_channel(n, rng);
    const MessageSpec msg = random_message(n, rng);
    c.residual(table_diff(enumerate_branches(msg, ch, UnPath::Matrix),
                          enumerate_branches(msg, ch, UnPath::Netlist)),
               tag(n, t));
  });
  return std::move(c).done();
}

CheckResult cnot_path(const Context& ctx) {
  Check c("protocol.matrix_vs_cnot_path", 1e-10);
  if (ctx.max_n < 2) {
    c.note("skipped (needs max_n >= 2)");
    return std::move(c).done();
  }
  for (std::size_t t = 0; t < ctx.trials; ++t) {
    Rng rng = ctx.rng(13, 2, t);
    const ChannelSpec ch = random_channel(2, rng);
    const MessageSpec msg = random_message(2, rng);
    c.residual(table_diff(enumerate_branches(msg, ch, UnPath::Matrix),
                          enumerate_branches(msg, ch, UnPath::Cnot)),
               tag(2, t));
  }
  return std::move(c).done();
}

CheckResult correction_exhaustive(const Context& ctx) {
  Check c("protocol.correction_exhaustive", 1e-10);
  std::size_t outcomes = 0;
  for (std::size_t n = 1; n <= std::min<std::size_t>(3, ctx.max_n); ++n) {
    Rng rng = ctx.rng(14, n, 0);
    const ChannelSpec ch = random_channel(n, rng);
    const MessageSpec msg = random_message(n, rng);
    const StateVector encoded = alice_encode(total_state(msg, ch), n);
    const Receiver receiver(ch, UnPath::Matrix);
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      for (std::uint32_t nb = 0; nb < (1u << n); ++nb) {
        const Outcome out{n, m, nb, std::nullopt};
        const Recovery r = receiver.recover(bob_branch(encoded, n, m, nb), out);
        c.residual(1.0 - fidelity(r.recovered, msg.state()),
                   "N=" + std::to_string(n) + " m=" + out.m_string() + " n=" + out.n_string());
        ++outcomes;
      }
    }
  }
  c.note(std::to_string(outcomes) + " outcomes checked");
  return std::move(c).done();
}

CheckResult deferred_measurement(const Context& ctx) {
  Check c("protocol.deferred_measurement", 1e-12);
  for (std::size_t n = 1; n <= std::min<std::size_t>(3, ctx.max_n); ++n) {
    for (std::size_t t = 0; t < ctx.trials; ++t) {
      Rng rng = ctx.rng(15, n, t);
      const ChannelSpec ch = random_channel(n, rng);
      const MessageSpec msg = random_message(n, rng);
      c.residual(table_diff(enumerate_branches(msg, ch), enumerate_branches_coherent(msg, ch)),
                 tag(n, t));
    }
  }
  return std::move(c).done();
}

CheckResult sample_determinism(const Context& ctx) {
  Check c("protocol.sample_determinism", 0.0);
  ctx.each([&](std::size_t n, std::size_t t) {
    Rng rng = ctx.rng(16, n, t);
    const ChannelSpec ch = random_channel(n, rng);
    const MessageSpec msg = random_message(n, rng);
    const OutcomeRecord a = sample_shot(msg, ch, ctx.seed, t);
    const OutcomeRecord b = sample_shot(msg, ch, ctx.seed, t);
    c.require(a.outcome == b.outcome && a.probability == b.probability &&
                  a.bob_state == b.bob_state,
              "replayed shot differs at " + tag(n, t));
  });
  return std::move(c).done();
}

}  // namespace

VerifyReport run_verify(std::size_t max_n, std::size_t trials, std::uint64_t seed) {
  if (max_n < 1 || max_n > 4) throw ConfigError("max_n", "must be in [1, 4]");
  if (trials == 0) throw ConfigError("trials", "must be positive");
  const Context ctx{max_n, trials, seed};
  VerifyReport rep{max_n, trials, seed, {}};
  const std::function<CheckResult(const Context&)> suites[] = {
      norm_conservation, self_inverse,   multi_controlled_semantics,
      split_completeness, compensator_orthogonal, lambda_and_rule,
      un_netlist_matrix, factor_structure, xlayer_involution,
      cnot_expansion,    text_roundtrip, channel_circuit,
      un_paths,          cnot_path,      correction_exhaustive,
      deferred_measurement, sample_determinism};
  for (const auto& suite : suites) rep.checks.push_back(suite(ctx));
  for (CheckResult& r : protocol_laws(ctx)) rep.checks.push_back(std::move(r));
  return rep;
}

}  // namespace probtele
