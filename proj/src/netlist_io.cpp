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

#include "probtele/netlist_io.hpp"

#include <charconv>
#include <cstdio>
#include <optional>
#include <sstream>
#include <vector>

namespace probtele {

namespace {

std::string real_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string entries_text(const Gate2x2& g) {
  std::string s = "[";
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (r + c > 0) s += ' ';
      s += '(' + real_text(g(r, c).real()) + ',' + real_text(g(r, c).imag()) +
           ')';
    }
  }
  return s + "]";
}

class Printer {
 public:
  explicit Printer(const Netlist& nl) : nl_(nl) {}

  std::string q(QubitIndex i) const { return "q" + nl_.labels()[i.value - 1]; }

  std::string line(const GateOp& op) const {
    if (const auto* s = std::get_if<SingleOp>(&op)) return single(*s);
    if (const auto* c = std::get_if<CnotOp>(&op)) {
      return "CNOT " + q(c->control) + " " + q(c->target);
    }
    if (const auto* x = std::get_if<XLayerOp>(&op)) {
      std::string out = "X";
      for (QubitIndex t : x->targets) out += " " + q(t);
      return out;
    }
    const auto& m = std::get<MultiControlledOp>(op);
    const bool rot = m.gate.kind() == GateKind::RotationY;
    std::string out = rot ? "CRY " + real_text(*m.gate.angle()) : "CU";
    for (QubitIndex c : m.controls) out += " " + q(c);
    out += " -> " + q(m.target);
    return rot ? out : out + " " + entries_text(m.gate);
  }

 private:
  std::string single(const SingleOp& s) const {
    const std::string t = q(s.target);
    switch (s.gate.kind()) {
      case GateKind::Identity: return "I " + t;
      case GateKind::PauliX: return "NOT " + t;
      case GateKind::PauliZ: return "Z " + t;
      case GateKind::Hadamard: return "H " + t;
      case GateKind::RotationY: return "RY " + real_text(*s.gate.angle()) + " " + t;
      case GateKind::General: break;
    }
    return "U " + t + " " + entries_text(s.gate);
  }

  const Netlist& nl_;
};

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

class LineParser {
 public:
  LineParser(std::size_t line_no, const std::vector<std::string>* labels)
      : line_no_(line_no), labels_(labels) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw NetlistParseError(line_no_, what);
  }

  double real(std::string_view tok) const {
    double v = 0.0;
    const char* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
      fail("bad number '" + std::string(tok) + "'");
    }
    return v;
  }

  QubitIndex qubit(std::string_view tok) const {
    if (tok.size() < 2 || tok.front() != 'q') {
      fail("expected a qubit name like q5, got '" + std::string(tok) + "'");
    }
    const std::string_view label = tok.substr(1);
    for (std::size_t i = 0; i < labels_->size(); ++i) {
      if ((*labels_)[i] == label) return QubitIndex(i + 1);
    }
    fail("undeclared qubit '" + std::string(tok) + "'");
  }

  /// Parses "[(re,im) (re,im) (re,im) (re,im)]".
  Gate2x2 entries(std::string_view text) const {
    const auto open = text.find('[');
    const auto close = text.rfind(']');
    if (open == std::string_view::npos || close == std::string_view::npos ||
        close < open) {
      fail("expected [4 complex entries]");
    }
    std::string body(text.substr(open + 1, close - open - 1));
    std::vector<Complex> vals;
    std::size_t pos = 0;
    while ((pos = body.find('(', pos)) != std::string::npos) {
      const auto comma = body.find(',', pos);
      const auto end = body.find(')', pos);
      if (comma == std::string::npos || end == std::string::npos || comma > end) {
        fail("malformed complex entry");
      }
      vals.emplace_back(real(std::string_view(body).substr(pos + 1, comma - pos - 1)),
                        real(std::string_view(body).substr(comma + 1, end - comma - 1)));
      pos = end + 1;
    }
    if (vals.size() != 4) fail("expected exactly 4 complex entries");
    Gate2x2::Matrix2 m;
    m << vals[0], vals[1], vals[2], vals[3];
    try {
      return Gate2x2::from_matrix(m);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

 private:
  std::size_t line_no_;
  const std::vector<std::string>* labels_;
};

}  // namespace

std::string to_text(const Netlist& nl) {
  Printer p(nl);
  std::string out = "QUBITS";
  for (const std::string& l : nl.labels()) out += " q" + l;
  out += '\n';
  for (const GateOp& op : nl.ops()) out += p.line(op) + '\n';
  return out;
}

Netlist parse_netlist(std::string_view text) {
  std::optional<Netlist> nl;
  std::vector<std::string> labels;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    const std::vector<std::string> toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    LineParser lp(line_no, &labels);
    const std::string& verb = toks[0];

    if (!nl) {
      if (verb != "QUBITS" || toks.size() < 2) {
        lp.fail("netlist must start with a QUBITS declaration");
      }
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (toks[i].size() < 2 || toks[i][0] != 'q') {
          lp.fail("qubit names look like q<label>, got '" + toks[i] + "'");
        }
        labels.push_back(toks[i].substr(1));
      }
      try {
        nl.emplace(labels.size(), labels);
      } catch (const std::exception& e) {
        lp.fail(e.what());
      }
      continue;
    }

    auto want = [&](std::size_t count) {
      if (toks.size() != count) {
        lp.fail(verb + " expects " + std::to_string(count - 1) + " operands");
      }
    };
    GateOp op;
    if (verb == "QUBITS") {
      lp.fail("duplicate QUBITS declaration");
    } else if (verb == "X") {
      XLayerOp layer;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        layer.targets.push_back(lp.qubit(toks[i]));
      }
      if (layer.targets.empty()) lp.fail("X layer needs at least one qubit");
      op = std::move(layer);
    } else if (verb == "NOT" || verb == "I" || verb == "Z" || verb == "H") {
      want(2);
      const Gate2x2 g = standard_gate(verb == "NOT" ? "X" : verb);
      op = SingleOp{g, lp.qubit(toks[1])};
    } else if (verb == "RY") {
      want(3);
      op = SingleOp{ry(lp.real(toks[1])), lp.qubit(toks[2])};
    } else if (verb == "U") {
      if (toks.size() < 3) lp.fail("U expects a qubit and 4 entries");
      op = SingleOp{lp.entries(line), lp.qubit(toks[1])};
    } else if (verb == "CNOT") {
      want(3);
      op = CnotOp{lp.qubit(toks[1]), lp.qubit(toks[2])};
    } else if (verb == "CU" || verb == "CRY") {
      const bool rot = verb == "CRY";
      if (rot && toks.size() < 2) lp.fail("CRY expects an angle");
      MultiControlledOp m;
      std::size_t i = rot ? 2 : 1;
      for (; i < toks.size() && toks[i] != "->"; ++i) {
        m.controls.push_back(lp.qubit(toks[i]));
      }
      if (i + 1 >= toks.size()) lp.fail(verb + " expects '-> target'");
      m.target = lp.qubit(toks[i + 1]);
      if (rot) {
        if (i + 2 != toks.size()) lp.fail("CRY takes no entries after the target");
        m.gate = ry(lp.real(toks[1]));
      } else {
        m.gate = lp.entries(line);
      }
      op = std::move(m);
    } else {
      lp.fail("unknown op '" + verb + "'");
    }
    try {
      nl->append(std::move(op));
    } catch (const std::exception& e) {
      lp.fail(e.what());
    }
  }
  if (!nl) throw NetlistParseError(line_no, "empty netlist text");
  return std::move(*nl);
}

}  // namespace probtele
