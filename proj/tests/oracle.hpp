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

// Test-side reference model. Nothing here calls into the library except for
// plain data types; every operator is built from dense Kronecker products so
// the kernels under test are checked against an unrelated implementation.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

inline Mat m2(C a, C b, C c, C d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Mat I2() { return Mat::Identity(2, 2); }
inline Mat X() { return m2(0, 1, 1, 0); }
inline Mat Z() { return m2(1, 0, 0, -1); }
inline Mat H() {
  const double s = 1.0 / std::sqrt(2.0);
  return m2(s, s, s, -s);
}
inline Mat P0() { return m2(1, 0, 0, 0); }
inline Mat P1() { return m2(0, 0, 0, 1); }

/// Tensor product of one 2x2 factor per qubit (qubit 1 leftmost).
inline Mat embed(const std::vector<Mat>& per_qubit) {
  Mat out = Mat::Identity(1, 1);
  for (const Mat& f : per_qubit) out = kron(out, f);
  return out;
}

/// g on qubit q (1-based) of an n-qubit register.
inline Mat on(std::size_t n, std::size_t q, const Mat& g) {
  std::vector<Mat> f(n, I2());
  f[q - 1] = g;
  return embed(f);
}

inline Mat cnot(std::size_t n, std::size_t c, std::size_t t) {
  std::vector<Mat> a(n, I2()), b(n, I2());
  a[c - 1] = P0();
  b[c - 1] = P1();
  b[t - 1] = X();
  return embed(a) + embed(b);
}

/// The action |c_1..c_k, t> -> |c_1..c_k> u^(c_1 AND .. AND c_k) |t>,
/// written out basis state by basis state.
inline Mat controlled_by_action(std::size_t k, const Mat& u) {
  const std::size_t dim = std::size_t{2} << k;
  Mat out = Mat::Zero(dim, dim);
  const std::size_t all = (std::size_t{1} << k) - 1;
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t controls = col >> 1;
    const std::size_t t = col & 1;
    if (controls != all) {
      out(col, col) = 1;
      continue;
    }
    out((controls << 1) | 0, col) = u(0, t);
    out((controls << 1) | 1, col) = u(1, t);
  }
  return out;
}

/// [[r, -s], [s, r]] with r = y0 / yi.
inline Mat compensator(double y0, double yi) {
  const double r = y0 / yi;
  const double s = std::sqrt(std::max(0.0, 1.0 - r * r));
  return m2(r, -s, s, r);
}

/// diag(I, u_1, .., u_{2^N - 1}) with the ancilla least significant.
inline Mat un(const std::vector<double>& y) {
  const Eigen::Index blocks = static_cast<Eigen::Index>(y.size());
  Mat out = Mat::Zero(2 * blocks, 2 * blocks);
  out.block(0, 0, 2, 2) = I2();
  for (Eigen::Index i = 1; i < blocks; ++i) {
    out.block(2 * i, 2 * i, 2, 2) = compensator(y[0], y[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// Sum_i y_i |i>|i> on 2N qubits.
inline Vec channel_state(const std::vector<double>& y) {
  const Eigen::Index d = static_cast<Eigen::Index>(y.size());
  Vec v = Vec::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) v(i * d + i) = y[static_cast<std::size_t>(i)];
  return v;
}

inline Vec to_vec(const std::vector<C>& x) {
  Vec v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) v(static_cast<Eigen::Index>(i)) = x[i];
  return v;
}

inline double fidelity(const Vec& a, const Vec& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

inline int parity(std::uint32_t v) { return __builtin_popcount(v) & 1; }

struct Branch {
  std::uint32_t m = 0;
  std::uint32_t n = 0;
  int ancilla = 0;
  double probability = 0.0;  // joint
  Vec state;                 // corrected, normalized; empty if probability 0
};

/// Receiver's unnormalized state right after the sender measures (m, n),
/// before anything else: 2^(-N/2) sum_j x_{j^n} (-1)^{m.(j^n)} y_j |j>.
inline Vec receiver_branch(std::size_t n_qubits, const std::vector<C>& x,
                           const std::vector<double>& y, std::uint32_t m,
                           std::uint32_t n) {
  const std::uint32_t dim = 1u << n_qubits;
  Vec v(dim);
  const double scale = std::pow(2.0, -0.5 * static_cast<double>(n_qubits));
  for (std::uint32_t j = 0; j < dim; ++j) {
    const std::uint32_t i = j ^ n;
    v(j) = scale * (parity(m & i) ? -1.0 : 1.0) * x[i] * y[j];
  }
  return v;
}

/// X^{n_j} then Z^{m_j} on every receiver qubit j.
inline Mat correction(std::size_t n_qubits, std::uint32_t m, std::uint32_t n) {
  Mat out = Mat::Identity(1 << n_qubits, 1 << n_qubits);
  for (std::size_t j = 1; j <= n_qubits; ++j) {
    const std::uint32_t bit = 1u << (n_qubits - j);
    if (n & bit) out = on(n_qubits, j, X()) * out;
    if (m & bit) out = on(n_qubits, j, Z()) * out;
  }
  return out;
}

/// Ancilla, U_N and correction on an already-projected receiver branch.
inline void finish(std::size_t N, const Vec& bob, const std::vector<double>& y,
                   std::uint32_t m, std::uint32_t n, std::vector<Branch>& out) {
  const Vec with_anc = un(y) * kron(bob, to_vec({1.0, 0.0}));
  for (int a = 0; a < 2; ++a) {
    Vec part(bob.size());
    for (Eigen::Index j = 0; j < bob.size(); ++j) part(j) = with_anc(2 * j + a);
    Branch b{m, n, a, part.squaredNorm(), {}};
    if (b.probability > 0) b.state = correction(N, m, n) * part / std::sqrt(b.probability);
    out.push_back(std::move(b));
  }
}

/// Every (m, n, ancilla) branch from the closed-form receiver state.
inline std::vector<Branch> closed_form(std::size_t N, const std::vector<C>& x,
                                       const std::vector<double>& y) {
  std::vector<Branch> out;
  const std::uint32_t dim = 1u << N;
  for (std::uint32_t m = 0; m < dim; ++m) {
    for (std::uint32_t n = 0; n < dim; ++n) {
      finish(N, receiver_branch(N, x, y, m, n), y, m, n, out);
    }
  }
  return out;
}

/// Every branch from a literal 3N+1 qubit simulation: dense CNOT and H
/// matrices for the sender, then slicing out each measured pattern.
/// Practical for N <= 3.
inline std::vector<Branch> full_register(std::size_t N, const std::vector<C>& x,
                                         const std::vector<double>& y) {
  const std::size_t q = 2 * N + N;
  Vec psi = kron(to_vec(x), channel_state(y));
  for (std::size_t j = 1; j <= N; ++j) psi = cnot(q, j, N + j) * psi;
  for (std::size_t j = 1; j <= N; ++j) psi = on(q, j, H()) * psi;

  std::vector<Branch> out;
  const std::uint32_t dim = 1u << N;
  for (std::uint32_t m = 0; m < dim; ++m) {
    for (std::uint32_t n = 0; n < dim; ++n) {
      Vec bob(dim);
      const std::size_t base = ((static_cast<std::size_t>(m) << N) | n) << N;
      for (std::uint32_t j = 0; j < dim; ++j) bob(j) = psi(static_cast<Eigen::Index>(base + j));
      finish(N, bob, y, m, n, out);
    }
  }
  return out;
}

}  // namespace oracle
