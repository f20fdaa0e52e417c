// Copyright 2026 The qblackwell Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared fixtures and brute-force oracles for the test suites. Oracles here
// use explicit index loops so they do not share code paths with the library.

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "qblackwell/blackwell.hpp"

namespace qbw::testing {

inline double max_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return (a - b).cwiseAbs().maxCoeff();
}

inline CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline CVector ket(std::initializer_list<Complex> amps) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (auto a : amps) v(i++) = a;
  return v;
}

/// Entry (i*p + k, j*q + l) = a(i,j) b(k,l).
inline CMatrix kron_oracle(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Tr_2 or Tr_1 by summing explicit index pairs.
inline CMatrix partial_trace_oracle(const CMatrix& m, int d1, int d2, bool keep_first) {
  if (keep_first) {
    CMatrix out = CMatrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        for (int k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
    return out;
  }
  CMatrix out = CMatrix::Zero(d2, d2);
  for (int k = 0; k < d2; ++k)
    for (int l = 0; l < d2; ++l)
      for (int i = 0; i < d1; ++i) out(k, l) += m(i * d2 + k, i * d2 + l);
  return out;
}

/// Sum over Kraus operators of (K (x) I) rho (K (x) I)^dagger, written out.
inline CMatrix apply_first_oracle(const QuantumChannel& ch, const CMatrix& rho, int d2) {
  const int d = ch.dim();
  CMatrix out = CMatrix::Zero(d * d2, d * d2);
  for (const auto& k : ch.kraus()) {
    for (int a = 0; a < d; ++a)
      for (int x = 0; x < d2; ++x)
        for (int b = 0; b < d; ++b)
          for (int y = 0; y < d2; ++y) {
            Complex s = 0;
            for (int i = 0; i < d; ++i)
              for (int j = 0; j < d; ++j) s += k(a, i) * rho(i * d2 + x, j * d2 + y) * std::conj(k(b, j));
            out(a * d2 + x, b * d2 + y) += s;
          }
  }
  return out;
}

/// Equal-prior qubit trine at 120 degrees on the Bloch circle.
inline Ensemble trine() {
  std::vector<EnsembleMember> members;
  for (int k = 0; k < 3; ++k) {
    const double t = 2.0 * M_PI * k / 3.0;
    members.push_back({1.0 / 3.0, DensityMatrix::pure(ket({std::cos(t / 2), std::sin(t / 2)}), {2, 1})});
  }
  return Ensemble({2, 1}, std::move(members));
}

/// Random Hermitian set of K operators on dimension n, eigenvalues O(1).
inline HermitianSet random_hermitian_set(int k, int n, Rng& rng) {
  std::vector<CMatrix> ops;
  for (int i = 0; i < k; ++i) ops.push_back(random_hermitian(n, rng));
  return HermitianSet(ops);
}

/// {dim P_k rho_k^T}: the operator set whose Choi payoff equals the success
/// probability of the ensemble.
inline HermitianSet operators_for(const Ensemble& ens) {
  std::vector<CMatrix> ops;
  const double n = ens.dim();
  for (const auto& m : ens.members()) ops.push_back(n * m.prob * CMatrix(m.state.matrix().transpose()));
  return HermitianSet(ops);
}

}  // namespace qbw::testing
