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

// Line-oriented netlist text format. See docs/netlist_format.md.
//
//   QUBITS q5 q6 qa
//   X q5 q6
//   CU q5 q6 -> qa [(0.5,0) (-0.866,0) (0.866,0) (0.5,0)]
//   CNOT q5 qa
//   RY -0.785 qa

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "probtele/netlist.hpp"

namespace probtele {

class NetlistParseError : public std::runtime_error {
 public:
  NetlistParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reals are printed with 17 significant digits, so parse(to_text(nl)) == nl.
std::string to_text(const Netlist& nl);

Netlist parse_netlist(std::string_view text);

}  // namespace probtele
