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

#include "probtele/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace probtele {

namespace {

void check_size(const char* what, std::size_t n, std::size_t len) {
  if (n < 1 || n > kMaxMessageQubits) {
    throw std::invalid_argument(std::string(what) + ".n must be in [1, " +
                                std::to_string(kMaxMessageQubits) + "], got " +
                                std::to_string(n));
  }
  if (len != (std::size_t{1} << n)) {
    throw std::invalid_argument(std::string(what) + " needs 2^n = " +
                                std::to_string(std::size_t{1} << n) +
                                " amplitudes, got " + std::to_string(len));
  }
}

}  // namespace

ChannelSpec::ChannelSpec(std::size_t n, std::vector<double> y)
    : n_(n), y_(std::move(y)) {
  check_size("channel", n_, y_.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < y_.size(); ++i) {
    if (!std::isfinite(y_[i]) || !(y_[i] > 0.0)) {
      throw std::invalid_argument("channel.y[" + std::to_string(i) +
                                  "] must be a positive real");
    }
    sum += y_[i] * y_[i];
  }
  if (std::abs(sum - 1.0) > kUnitaryTolerance) {
    throw std::invalid_argument("channel.y is not normalized (sum y_i^2 = " +
                                std::to_string(sum) + ")");
  }
  const auto min_it = std::min_element(y_.begin(), y_.end());
  if (*min_it < y_.front()) {
    throw std::invalid_argument(
        "channel.y[0] must be the smallest amplitude; y[" +
        std::to_string(min_it - y_.begin()) +
        "] is smaller (relabel the basis so the minimum comes first)");
  }
}

bool ChannelSpec::is_maximal() const {
  const auto [lo, hi] = std::minmax_element(y_.begin(), y_.end());
  return *hi - *lo <= 1e-12;
}

MessageSpec::MessageSpec(std::size_t n, std::vector<Complex> x)
    : n_(n), x_(std::move(x)) {
  check_size("message", n_, x_.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i].real()) || !std::isfinite(x_[i].imag())) {
      throw std::invalid_argument("message.x[" + std::to_string(i) +
                                  "] is not finite");
    }
    sum += std::norm(x_[i]);
  }
  if (std::abs(sum - 1.0) > kUnitaryTolerance) {
    throw std::invalid_argument("message is not normalized (sum |x_i|^2 = " +
                                std::to_string(sum) + ")");
  }
}

}  // namespace probtele
