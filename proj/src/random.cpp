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

#include "probtele/random.hpp"

#include <algorithm>
#include <cmath>

namespace probtele {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index) {
  return mix(mix(mix(master) ^ stream) ^ index);
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() { return normal_(engine_); }

MessageSpec random_message(std::size_t n, Rng& rng) {
  std::vector<Complex> x(std::size_t{1} << n);
  double sum = 0.0;
  do {
    sum = 0.0;
    for (Complex& c : x) {
      const double re = rng.normal();
      const double im = rng.normal();
      c = {re, im};
      sum += std::norm(c);
    }
  } while (sum == 0.0);
  const double scale = 1.0 / std::sqrt(sum);
  for (Complex& c : x) c *= scale;
  return MessageSpec(n, std::move(x));
}

ChannelSpec random_channel(std::size_t n, Rng& rng) {
  std::vector<double> y(std::size_t{1} << n);
  double sum = 0.0;
  for (double& v : y) {
    v = rng.uniform(0.05, 1.0);
    sum += v * v;
  }
  const double scale = 1.0 / std::sqrt(sum);
  for (double& v : y) v *= scale;
  std::iter_swap(y.begin(), std::min_element(y.begin(), y.end()));
  return ChannelSpec(n, std::move(y));
}

Gate2x2 random_unitary(Rng& rng) {
  Gate2x2::Matrix2 g;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Gate2x2::Matrix2> qr(g);
  Gate2x2::Matrix2 q = qr.householderQ();
  return Gate2x2::from_matrix(q);
}

}  // namespace probtele
