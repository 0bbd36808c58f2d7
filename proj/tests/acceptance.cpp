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

// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any criterion fails. Reference values come from tests/oracle.hpp.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "probtele/harness.hpp"
#include "probtele/netlist.hpp"
#include "probtele/protocol.hpp"
#include "probtele/random.hpp"
#include "test_util.hpp"

using namespace probtele;
using testutil::max_diff;
using testutil::vec;

namespace {

constexpr const char* kU2 = "L3 X2 L2 X12 L1 X1";
constexpr const char* kU3 = "L7 X3 L6 X23 L5 X3 L4 X123 L3 X3 L2 X23 L1 X12";
constexpr const char* kU4 =
    "L15 X4 L14 X34 L13 X4 L12 X234 L11 X4 L10 X34 L9 X4 L8 X1234 "
    "L7 X4 L6 X34 L5 X4 L4 X234 L3 X4 L2 X34 L1 X123";

constexpr std::uint64_t kSeed = 20260101;

struct Verdict {
  bool passed = true;
  std::string detail;
};

char buf[512];

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Rng rng_for(int criterion, std::size_t n) {
  return Rng(derive_seed(kSeed, 100 + criterion, n));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Criteria 1 and 2 share one set of exact enumerations.
struct LawRun {
  double worst_law = 0.0;
  double worst_spread = 0.0;
  double worst_fidelity = 0.0;
  std::size_t success_branches = 0;
  double seconds = 0.0;
};

const LawRun& law_run() {
  static const LawRun run = [] {
    LawRun r;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t n = 1; n <= 4; ++n) {
      Rng rng = rng_for(1, n);
      for (int c = 0; c < 20; ++c) {
        const ChannelSpec ch = random_channel(n, rng);
        const double law = std::pow(2.0, static_cast<double>(n)) * ch.y0() * ch.y0();
        double lo = 2.0, hi = -1.0;
        for (int m = 0; m < 10; ++m) {
          const MessageSpec msg = random_message(n, rng);
          const oracle::Vec x = oracle::to_vec(msg.x());
          double success = 0.0;
          for (const OutcomeRecord& rec : enumerate_branches(msg, ch)) {
            if (rec.outcome.ancilla != 0) continue;
            success += rec.probability;
            ++r.success_branches;
            r.worst_fidelity = std::max(r.worst_fidelity,
                                        std::abs(1.0 - oracle::fidelity(vec(rec.bob_state), x)));
          }
          r.worst_law = std::max(r.worst_law, std::abs(success - law));
          lo = std::min(lo, success);
          hi = std::max(hi, success);
        }
        r.worst_spread = std::max(r.worst_spread, hi - lo);
      }
    }
    r.seconds = seconds_since(t0);
    return r;
  }();
  return run;
}

Verdict success_law() {
  const LawRun& r = law_run();
  Verdict o;
  o.passed = r.worst_law <= 1e-10 && r.worst_spread <= 1e-10 && r.seconds < 30.0;
  o.detail = fmt("N=1..4, 20 channels x 10 messages: worst |P0 - 2^N y0^2| = %.2e, "
                 "worst spread over messages = %.2e (tol 1e-10), %.2f s (limit 30 s)",
                 r.worst_law, r.worst_spread, r.seconds);
  return o;
}

Verdict perfect_teleportation() {
  const LawRun& r = law_run();
  Verdict o;
  o.passed = r.worst_fidelity <= 1e-10 && r.success_branches > 0;
  o.detail = fmt("%zu ancilla=0 branches: worst |1 - F| = %.2e (tol 1e-10)",
                 r.success_branches, r.worst_fidelity);
  return o;
}

Verdict decomposition_equivalence() {
  Verdict o;
  double worst = 0.0;
  bool structural = true;
  const char* literal[] = {nullptr, nullptr, kU2, kU3, kU4};
  for (std::size_t n = 1; n <= 4; ++n) {
    Rng rng = rng_for(3, n);
    for (int c = 0; c < 100; ++c) {
      const ChannelSpec ch = random_channel(n, rng);
      const Matrix want = build_un_matrix(ch);
      worst = std::max(worst, max_diff(want, oracle::un(ch.y())));
      const Netlist desc = un_netlist(ch);
      std::vector<Netlist> programs = {desc, un_netlist(ch, FactorOrder::Ascending)};
      if (literal[n] != nullptr) {
        const Netlist lit = un_netlist_from_factors(ch, literal[n]);
        structural = structural && (lit == desc);
        programs.push_back(lit);
      }
      for (const Netlist& nl : programs) worst = std::max(worst, max_diff(netlist_matrix(nl), want));
    }
  }
  o.passed = worst <= 1e-12 && structural;
  o.detail = fmt("N=1..4, 100 channels each, U_2/U_3/U_4 factor lists + mask generator "
                 "(both orders): worst residual %.2e (tol 1e-12); factor sequences %s",
                 worst, structural ? "identical" : "DIFFER");
  return o;
}

Verdict cnot_level_u2() {
  Verdict o;
  double worst = 0.0;
  std::size_t failed_reports = 0;
  std::string first_failure;
  Rng rng = rng_for(4, 2);
  OpCensus c;
  for (int k = 0; k < 100; ++k) {
    const ChannelSpec ch = random_channel(2, rng);
    const Netlist nl = expand_u2_full(ch);
    c = census(nl);
    worst = std::max(worst, max_diff(netlist_matrix(nl), oracle::un(ch.y())));
    for (const VerificationReport& r : verify_lambda2_expansion(ch)) {
      if (r.passed()) continue;
      if (failed_reports++ == 0) first_failure = r.describe();
    }
  }
  const bool only_cnot_level = c.multi_controlled == 0 && c.x_layers == 0 && c.other_singles == 0;
  o.passed = worst <= 1e-10 && failed_reports == 0 && only_cnot_level;
  o.detail = fmt("100 channels: worst residual vs U_2 %.2e (tol 1e-10); %zu CNOTs, "
                 "%zu R_y, %zu X per circuit; reference-decomposition mismatches: %zu",
                 worst, c.cnots, c.rotations, c.x_singles, failed_reports);
  if (!first_failure.empty()) o.detail += "; first: " + first_failure;
  return o;
}

Verdict correction_rule() {
  Verdict o;
  double worst = 0.0;
  std::size_t checked = 0;
  auto check = [&](const ChannelSpec& ch, const MessageSpec& msg, std::uint32_t m,
                   std::uint32_t nb) {
    const std::size_t n = ch.n();
    StateVector branch(n, [&] {
      const oracle::Vec b = oracle::receiver_branch(n, msg.x(), ch.y(), m, nb);
      return std::vector<Complex>(b.data(), b.data() + b.size());
    }());
    const Recovery rec = bob_recover(branch, ch, Outcome{n, m, nb, 0});
    const double miss = std::abs(1.0 - oracle::fidelity(vec(rec.recovered),
                                                         oracle::to_vec(msg.x())));
    worst = std::max(worst, miss);
    ++checked;
    return miss;
  };
  for (std::size_t n = 1; n <= 3; ++n) {
    Rng rng = rng_for(5, n);
    for (int t = 0; t < 3; ++t) {
      const ChannelSpec ch = random_channel(n, rng);
      const MessageSpec msg = random_message(n, rng);
      for (std::uint32_t m = 0; m < (1u << n); ++m) {
        for (std::uint32_t nb = 0; nb < (1u << n); ++nb) check(ch, msg, m, nb);
      }
    }
  }
  Rng rng = rng_for(5, 4);
  for (int t = 0; t < 200; ++t) {
    const ChannelSpec ch = random_channel(4, rng);
    const MessageSpec msg = random_message(4, rng);
    const auto m = static_cast<std::uint32_t>(rng.engine()() & 15u);
    const auto nb = static_cast<std::uint32_t>(rng.engine()() & 15u);
    check(ch, msg, m, nb);
  }

  // Worked example: N=3, sender reads 1,0,0 and 1,0,0 -> X then Z on the
  // receiver's first particle (particle 7) only.
  const CorrectionPlan plan = correction_plan(Outcome{3, 0b100, 0b100, 0});
  const bool named = plan.apply_x == std::vector<bool>{true, false, false} &&
                     plan.apply_z == std::vector<bool>{true, false, false};
  Rng rng3 = rng_for(5, 30);
  const ChannelSpec ch3 = random_channel(3, rng3);
  const MessageSpec msg3 = random_message(3, rng3);
  const bool named_fid = check(ch3, msg3, 0b100, 0b100) <= 1e-10;

  o.passed = worst <= 1e-10 && named && named_fid;
  o.detail = fmt("%zu outcomes (all 4^N for N=1..3 over 3 inputs each, 200 random at N=4): "
                 "worst |1 - F| = %.2e (tol 1e-10); outcome m=100 n=100 -> X then Z on "
                 "particle 7: %s",
                 checked, worst, named ? "yes" : "NO");
  return o;
}

Verdict lambda_semantics() {
  Verdict o;
  double worst = 0.0;
  Rng rng = rng_for(6, 0);
  for (int t = 0; t < 50; ++t) {
    const Gate2x2 u = random_unitary(rng);
    for (std::size_t k = 0; k <= 4; ++k) {
      worst = std::max(worst, max_diff(lambda_matrix(k, u),
                                       oracle::controlled_by_action(k, u.matrix())));
      // the simulator kernel against the same basis-state action
      std::vector<QubitIndex> controls;
      for (std::size_t c = 1; c <= k; ++c) controls.emplace_back(c);
      const oracle::Mat want = oracle::controlled_by_action(k, u.matrix());
      for (std::size_t i = 0; i < (std::size_t{2} << k); ++i) {
        const StateVector out = apply_multi_controlled(basis_state(k + 1, i), controls, u,
                                                       QubitIndex(k + 1));
        worst = std::max(worst, max_diff(vec(out), want.col(static_cast<Eigen::Index>(i))));
      }
    }
  }
  const Gate2x2 u = random_unitary(rng);
  const bool lambda0 = lambda_matrix(0, u) == Matrix(u.matrix());
  const bool lambda1 = lambda_matrix(1, pauli_x()) == oracle::cnot(2, 1, 2);
  o.passed = worst <= 1e-12 && lambda0 && lambda1;
  o.detail = fmt("k=0..4 controls, 50 random unitaries: worst residual %.2e; "
                 "Lambda_0(u) == u: %s; Lambda_1(X) == CNOT: %s",
                 worst, lambda0 ? "exact" : "NO", lambda1 ? "exact" : "NO");
  return o;
}

Verdict channel_circuit() {
  Verdict o;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    Rng rng = rng_for(7, n);
    for (int c = 0; c < 50; ++c) {
      const ChannelSpec ch = random_channel(n, rng);
      const StateVector prepared = simulate(prepare_channel_circuit(ch), basis_state(2 * n, 0));
      worst = std::max(worst, max_diff(vec(prepared), oracle::channel_state(ch.y())));
      worst = std::max(worst, max_diff(prepared, prepare_channel_direct(ch)));
    }
  }
  o.passed = worst <= 1e-10;
  o.detail = fmt("N=1..4, 50 channels each: worst residual %.2e (tol 1e-10)", worst);
  return o;
}

Verdict monte_carlo() {
  Verdict o;
  ExperimentConfig cfg;
  cfg.n = 1;
  cfg.channel = ChannelSpec(1, {0.6, 0.8});
  cfg.mode = Mode::Sample;
  cfg.shots = 100000;
  cfg.seed = kSeed;
  const auto t0 = std::chrono::steady_clock::now();
  const Report first = run(cfg);
  const double seconds = seconds_since(t0);
  cfg.threads = 1;
  const Report replay = run(cfg);
  const bool identical = dump(first.to_json()) == dump(replay.to_json());
  const double sigma = std::sqrt(0.72 * 0.28 / 1e5);
  const double dev = std::abs(first.tally->rate - 0.72);
  o.passed = dev <= 3.0 * sigma && identical && seconds < 10.0 &&
             first.tally->min_success_fidelity >= 1.0 - 1e-10;
  o.detail = fmt("10^5 shots, y=(0.6, 0.8): rate %.5f vs 0.72, |dev| = %.2f sigma (limit 3); "
                 "replay %s; %.2f s (limit 10 s)",
                 first.tally->rate, dev / sigma, identical ? "byte-identical" : "DIFFERS",
                 seconds);
  return o;
}

Verdict deferred_measurement() {
  Verdict o;
  double worst_p = 0.0, worst_s = 0.0;
  for (std::size_t n = 1; n <= 3; ++n) {
    Rng rng = rng_for(9, n);
    for (int c = 0; c < 20; ++c) {
      const ChannelSpec ch = random_channel(n, rng);
      const MessageSpec msg = random_message(n, rng);
      const auto a = enumerate_branches(msg, ch);
      const auto b = enumerate_branches_coherent(msg, ch);
      if (a.size() != b.size()) {
        o.passed = false;
        continue;
      }
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (!(a[k].outcome == b[k].outcome)) o.passed = false;
        worst_p = std::max(worst_p, std::abs(a[k].probability - b[k].probability));
        worst_s = std::max(worst_s, max_diff(a[k].bob_state, b[k].bob_state));
      }
    }
  }
  o.passed = o.passed && worst_p <= 1e-12 && worst_s <= 1e-12;
  o.detail = fmt("N=1..3, 20 inputs each: worst probability diff %.2e, worst state diff %.2e "
                 "(tol 1e-12)",
                 worst_p, worst_s);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"1 success-probability law", success_law},
      {"2 perfect teleportation on success", perfect_teleportation},
      {"3 U_N decomposition equivalence", decomposition_equivalence},
      {"4 CNOT-level U_2", cnot_level_u2},
      {"5 Pauli correction rule", correction_rule},
      {"6 Lambda_N semantics", lambda_semantics},
      {"7 channel preparation circuit", channel_circuit},
      {"8 Monte Carlo consistency", monte_carlo},
      {"9 deferred-measurement equivalence", deferred_measurement},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.passed ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.passed) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
