// Copyright 2026 The stabsim authors
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

// Test-only dense reference: explicit complex matrices built directly from
// the bit representation, kept independent of the library's own algebra so
// the two sides can check each other.

#ifndef STABSIM_TESTS_DENSE_REF_HPP
#define STABSIM_TESTS_DENSE_REF_HPP

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "stabsim/pauli.hpp"

namespace dense_ref {

using Mat = Eigen::MatrixXcd;
using std::complex;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Mat eye(std::size_t dim) {
  return Mat::Identity(static_cast<Eigen::Index>(dim),
                       static_cast<Eigen::Index>(dim));
}

// 2x2 factor for one qubit of the X-before-Z form: X^x * Z^z.
inline Mat xz_factor(bool x, bool z) {
  Mat m(2, 2);
  if (!x && !z) {
    m << 1, 0, 0, 1;
  } else if (x && !z) {
    m << 0, 1, 1, 0;
  } else if (!x && z) {
    m << 1, 0, 0, -1;
  } else {
    m << 0, -1, 1, 0;  // X * Z
  }
  return m;
}

// Full matrix of a stored operator: i^s * kron of per-qubit X^x Z^z factors,
// qubit 1 as the most significant (leftmost) tensor factor.
inline Mat to_matrix(const stabsim::PauliOperator& p) {
  Mat m = Mat::Ones(1, 1);
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    m = kron(m, xz_factor(p.x_bit(q), p.z_bit(q)));
  }
  static const complex<double> kPhases[4] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPhases[p.phase_exp()] * m;
}

inline Mat gate_r() {
  Mat m(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

inline Mat gate_p() {
  Mat m(2, 2);
  m << 1, 0, 0, complex<double>(0, 1);
  return m;
}

// Single-qubit gate embedded at qubit q of n (qubit 0 most significant).
inline Mat embed1(std::size_t n, std::size_t q, const Mat& g) {
  return kron(kron(eye(std::size_t{1} << q), g),
              eye(std::size_t{1} << (n - 1 - q)));
}

// Controlled-NOT with control c and target t, as a basis permutation.
inline Mat embed_cnot(std::size_t n, std::size_t c, std::size_t t) {
  std::size_t dim = std::size_t{1} << n;
  Mat m = Mat::Zero(static_cast<Eigen::Index>(dim),
                    static_cast<Eigen::Index>(dim));
  std::size_t cmask = std::size_t{1} << (n - 1 - c);
  std::size_t tmask = std::size_t{1} << (n - 1 - t);
  for (std::size_t b = 0; b < dim; ++b) {
    std::size_t out = (b & cmask) ? (b ^ tmask) : b;
    m(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(b)) = 1;
  }
  return m;
}

}  // namespace dense_ref

#endif  // STABSIM_TESTS_DENSE_REF_HPP
