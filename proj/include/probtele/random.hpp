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

#include <cstdint>
#include <random>

#include "probtele/channel.hpp"

namespace probtele {

/// Independent random streams derived from one master seed.
enum SeedStream : std::uint64_t {
  kChannelStream = 1,
  kMessageStream = 2,
  kShotStream = 3,
  kVerifyStream = 4,
};

/// Mixes (master, stream, index) into an independent 64-bit seed. Each shot
/// or trial gets its own stream so results never depend on execution order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index = 0);

/// Seeded generator with a platform-independent uniform draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) from the top 53 bits of one engine output.
  double uniform01();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double normal();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// 2^n complex standard-normal draws, normalized (uniform on the sphere).
MessageSpec random_message(std::size_t n, Rng& rng);

/// Positive amplitudes drawn uniformly from [0.05, 1), normalized, with the
/// smallest swapped to index 0.
ChannelSpec random_channel(std::size_t n, Rng& rng);

/// Haar-ish random single-qubit unitary (QR of a complex Gaussian matrix).
Gate2x2 random_unitary(Rng& rng);

}  // namespace probtele
