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

#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "probtele/netlist.hpp"
#include "probtele/netlist_io.hpp"
#include "probtele/protocol.hpp"
#include "test_util.hpp"

using namespace probtele;
using testutil::mat;
using testutil::max_diff;

namespace {

// U_N factor sequences in time order. `L<i>` is the conjugated Λ_N(u_i),
// `X<digits>` a NOT layer on those controls.
constexpr const char* kU2 = "L3 X2 L2 X12 L1 X1";
constexpr const char* kU3 = "L7 X3 L6 X23 L5 X3 L4 X123 L3 X3 L2 X23 L1 X12";
constexpr const char* kU4 =
    "L15 X4 L14 X34 L13 X4 L12 X234 L11 X4 L10 X34 L9 X4 L8 X1234 "
    "L7 X4 L6 X34 L5 X4 L4 X234 L3 X4 L2 X34 L1 X123";

ChannelSpec channel_n2() { return ChannelSpec(2, {0.3, 0.3, 0.3, std::sqrt(0.73)}); }

}  // namespace

TEST_CASE("netlist validation") {
  Netlist nl(3);
  CHECK(nl.labels() == std::vector<std::string>{"1", "2", "3"});
  CHECK_THROWS_AS(nl.append(CnotOp{QubitIndex(1), QubitIndex(1)}), std::invalid_argument);
  CHECK_THROWS_AS(nl.append(CnotOp{QubitIndex(1), QubitIndex(4)}), std::out_of_range);
  CHECK_THROWS_AS(nl.append(MultiControlledOp{{QubitIndex(1), QubitIndex(3)}, pauli_x(), QubitIndex(3)}),
                  std::invalid_argument);
  nl.append(XLayerOp{});
  CHECK(nl.size() == 0);
  nl.append(XLayerOp{{QubitIndex(3), QubitIndex(1)}});
  CHECK(std::get<XLayerOp>(nl.ops()[0]).targets == testutil::qs({1, 3}));
  CHECK_THROWS_AS(Netlist(2, {"a", "a"}), std::invalid_argument);
  CHECK_THROWS_AS(Netlist(2, {"a"}), std::invalid_argument);
  CHECK_THROWS_AS(Netlist(2).append(Netlist(3)), std::invalid_argument);
  CHECK(Netlist(2, {"5", "a"}).qubit("a") == QubitIndex(2));
  CHECK_THROWS_AS(Netlist(2).qubit("z"), std::out_of_range);
}

TEST_CASE("op matrices agree with simulation") {
  Rng rng(31);
  Netlist nl(4);
  nl.append(SingleOp{random_unitary(rng), QubitIndex(2)});
  nl.append(CnotOp{QubitIndex(4), QubitIndex(1)});
  nl.append(XLayerOp{testutil::qs({1, 3})});
  nl.append(MultiControlledOp{testutil::qs({3, 1}), random_unitary(rng), QubitIndex(2)});
  nl.append(MultiControlledOp{testutil::qs({1, 2, 4}), random_unitary(rng), QubitIndex(3)});
  const Matrix m = netlist_matrix(nl);
  for (std::size_t i = 0; i < 16; ++i) {
    const StateVector out = simulate(nl, basis_state(4, i));
    CHECK(max_diff(testutil::vec(out), m.col(static_cast<Eigen::Index>(i))) < 1e-14);
  }
}

TEST_CASE("U_N matrix is the block diagonal of compensators") {
  Rng rng(32);
  for (std::size_t n = 1; n <= 4; ++n) {
    const ChannelSpec ch = random_channel(n, rng);
    const Matrix u = build_un_matrix(ch);
    CHECK(u.rows() == (2 << n));
    CHECK(max_diff(u, oracle::un(ch.y())) < 1e-15);
    CHECK(is_unitary(u));
  }
}

TEST_CASE("mask generator reproduces U_N in both factor orders") {
  Rng rng(33);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int t = 0; t < 5; ++t) {
      const ChannelSpec ch = random_channel(n, rng);
      const Matrix want = oracle::un(ch.y());
      CHECK(max_diff(netlist_matrix(un_netlist(ch)), want) <= 1e-12);
      CHECK(max_diff(netlist_matrix(un_netlist(ch, FactorOrder::Ascending)), want) <= 1e-12);
    }
  }
}

TEST_CASE("factor sequences of U_2, U_3, U_4") {
  Rng rng(34);
  const ChannelSpec c2 = random_channel(2, rng);
  const ChannelSpec c3 = random_channel(3, rng);
  const ChannelSpec c4 = random_channel(4, rng);
  CHECK(un_netlist(c2) == un_netlist_from_factors(c2, kU2));
  CHECK(un_netlist(c3) == un_netlist_from_factors(c3, kU3));
  CHECK(un_netlist(c4) == un_netlist_from_factors(c4, kU4));
  CHECK(max_diff(netlist_matrix(un_netlist_from_factors(c3, kU3)), oracle::un(c3.y())) <= 1e-12);

  const Netlist u2 = un_netlist(c2);
  CHECK(u2.labels() == std::vector<std::string>{"5", "6", "a"});
  CHECK(census(u2).multi_controlled == 3);
  CHECK(census(u2).x_layers == 3);

  CHECK_THROWS_AS(un_netlist_from_factors(c2, "L4"), std::invalid_argument);
  CHECK_THROWS_AS(un_netlist_from_factors(c2, "L1 X3"), std::invalid_argument);
  CHECK_THROWS_AS(un_netlist_from_factors(c2, "Q1"), std::invalid_argument);
}

TEST_CASE("X layers are involutions") {
  Netlist nl(3);
  nl.append(XLayerOp{testutil::qs({1, 2})});
  nl.append(XLayerOp{testutil::qs({1, 2})});
  CHECK(max_diff(netlist_matrix(nl), oracle::Mat::Identity(8, 8)) == 0.0);
}

TEST_CASE("CNOT-level two-control block") {
  SUBCASE("theta = 0 is the identity") {
    CHECK(max_diff(netlist_matrix(lambda2_cnot_block(0.0)), oracle::Mat::Identity(8, 8)) < 1e-15);
  }
  SUBCASE("theta = pi") {
    const double pi = std::numbers::pi;
    CHECK(max_diff(netlist_matrix(lambda2_cnot_block(pi)),
                   oracle::controlled_by_action(2, mat(ry(pi)))) < 1e-15);
  }
  SUBCASE("random angles") {
    Rng rng(35);
    for (int t = 0; t < 20; ++t) {
      const double th = rng.uniform(0.0, std::numbers::pi);
      CHECK(max_diff(netlist_matrix(lambda2_cnot_block(th)),
                     oracle::controlled_by_action(2, mat(ry(th)))) < 1e-14);
    }
  }
  SUBCASE("reference decomposition") {
    Rng rng(36);
    for (int t = 0; t < 10; ++t) {
      const Gate2x2 u = random_unitary(rng);
      CHECK(max_diff(netlist_matrix(lambda2_reference(u)),
                     oracle::controlled_by_action(2, mat(u))) < 1e-12);
    }
  }
}

TEST_CASE("full CNOT-level U_2") {
  const ChannelSpec ch = channel_n2();
  const Netlist nl = expand_u2_full(ch);
  const OpCensus c = census(nl);
  CHECK(c.cnots == 24);
  CHECK(c.rotations == 18);
  CHECK(c.x_singles == 4);
  CHECK(c.other_singles == 0);
  CHECK(c.x_layers == 0);
  CHECK(c.multi_controlled == 0);
  CHECK(max_diff(netlist_matrix(nl), oracle::un(ch.y())) < 1e-10);

  for (const VerificationReport& r : verify_lambda2_expansion(ch)) {
    INFO(r.describe());
    CHECK(r.passed());
  }
  CHECK_THROWS_AS(expand_u2_full(ChannelSpec(1, {0.6, 0.8})), std::invalid_argument);
  CHECK_THROWS_AS(lambda2_cnot_expansion(ch, 4), std::out_of_range);
}

TEST_CASE("verification reports mismatches instead of hiding them") {
  VerificationReport r{"demo", 1e-10, compare_matrices(oracle::I2(), oracle::X())};
  CHECK_FALSE(r.passed());
  CHECK(r.comparison.max_abs_diff == 1.0);
  CHECK(r.describe().find("demo") != std::string::npos);
  CHECK_THROWS_AS(compare_matrices(oracle::I2(), oracle::Mat::Identity(4, 4)), std::invalid_argument);
}

TEST_CASE("text round trip") {
  Rng rng(37);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int t = 0; t < 5; ++t) {
      const ChannelSpec ch = random_channel(n, rng);
      std::vector<Netlist> programs = {un_netlist(ch), prepare_channel_circuit(ch)};
      if (n == 2) programs.push_back(expand_u2_full(ch));
      for (const Netlist& nl : programs) {
        const std::string text = to_text(nl);
        const Netlist back = parse_netlist(text);
        CHECK(back == nl);
        CHECK(to_text(back) == text);
      }
    }
  }
  Netlist misc(2, {"p", "q"});
  misc.append(SingleOp{hadamard(), QubitIndex(1)});
  misc.append(SingleOp{pauli_z(), QubitIndex(2)});
  misc.append(SingleOp{identity_gate(), QubitIndex(2)});
  misc.append(SingleOp{random_unitary(rng), QubitIndex(1)});
  misc.append(MultiControlledOp{testutil::qs({2}), random_unitary(rng), QubitIndex(1)});
  CHECK(parse_netlist(to_text(misc)) == misc);
}

TEST_CASE("text format details") {
  const Netlist nl = parse_netlist(
      "# comment\n"
      "QUBITS q5 q6 qa\n"
      "\n"
      "  X q6 q5\n"
      "NOT qa\n");
  REQUIRE(nl.size() == 2);
  CHECK(std::get<XLayerOp>(nl.ops()[0]).targets == testutil::qs({1, 2}));
  CHECK(std::get<SingleOp>(nl.ops()[1]).gate == pauli_x());
  CHECK(nl.labels() == std::vector<std::string>{"5", "6", "a"});
}

TEST_CASE("text parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_netlist(text);
    } catch (const NetlistParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("") == 1);
  CHECK(line_of("CNOT q1 q2\n") == 1);
  CHECK(line_of("QUBITS q1 q2\nCNOT q1 q3\n") == 2);
  CHECK(line_of("QUBITS q1 q2\nCNOT q1 q1\n") == 2);
  CHECK(line_of("QUBITS q1 q2\n\nRY abc q1\n") == 3);
  CHECK(line_of("QUBITS q1 q2\nU q1 [(1,0) (0,0) (0,0) (2,0)]\n") == 2);
  CHECK(line_of("QUBITS q1 q2\nU q1 [(1,0) (0,0) (0,0)]\n") == 2);
  CHECK(line_of("QUBITS q1 q2\nFOO q1\n") == 2);
  CHECK(line_of("QUBITS q1 q2\nQUBITS q1\n") == 2);
  CHECK(line_of("QUBITS q1 q2\nCU q1 q2\n") == 2);
}
