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
#include <vector>

#include "probtele/statevector.hpp"

namespace probtele {

/// Largest message size the protocol code accepts (3N+1 qubits simulated).
inline constexpr std::size_t kMaxMessageQubits = 6;

/**
 * Shared channel sum_i y_i |i>|i> over 2N qubits.
 *
 * Valid when every y_i is a positive real, sum y_i^2 = 1 within 1e-10, and
 * y[0] is the minimum. A channel whose smallest amplitude sits elsewhere has
 * to be relabelled by the caller; the constructor refuses it.
 */
class ChannelSpec {
 public:
  /// Throws std::invalid_argument with a description of the violated rule.
  ChannelSpec(std::size_t n, std::vector<double> y);

  std::size_t n() const { return n_; }
  const std::vector<double>& y() const { return y_; }
  double y0() const { return y_.front(); }
  std::size_t blocks() const { return y_.size(); }

  /// True when all amplitudes are equal within 1e-12.
  bool is_maximal() const;

  friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;

 private:
  std::size_t n_;
  std::vector<double> y_;
};

/// Unknown N-qubit message sum_i x_i |i>, normalized within 1e-10.
class MessageSpec {
 public:
  MessageSpec(std::size_t n, std::vector<Complex> x);

  std::size_t n() const { return n_; }
  const std::vector<Complex>& x() const { return x_; }
  StateVector state() const { return StateVector(n_, x_); }

  friend bool operator==(const MessageSpec&, const MessageSpec&) = default;

 private:
  std::size_t n_;
  std::vector<Complex> x_;
};

}  // namespace probtele
