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

/**
 * @file channels.hpp
 * Density matrices and quantum channels.
 *
 * Choi convention: the normalized Choi state J(ch) = (ch (x) id)(|I_D><I_D|)
 * with |I_D> = D^{-1/2} sum_i |i>|i>. The channel acts on the FIRST tensor
 * factor; the second factor is the reference. Hence Tr_1 J = I/D for every
 * trace-preserving channel and ch(|i><j|)_{ab} = D * J_{(a,i),(b,j)}.
 */

#pragma once

#include <random>
#include <vector>

#include "qblackwell/numerics.hpp"

namespace qbw {

inline constexpr double kStateTol = 1e-10;

/// Hermitian, PSD, unit-trace operator with a tensor-factor layout.
class DensityMatrix {
 public:
  /// Validates PSD (min eigenvalue >= -1e-10) and Tr = 1 (within 1e-10).
  DensityMatrix(CMatrix matrix, std::vector<int> dims);
  /// Single-system state.
  explicit DensityMatrix(CMatrix matrix);

  /// Pure state |v><v| / <v|v>.
  static DensityMatrix pure(const CVector& v, std::vector<int> dims);

  const CMatrix& matrix() const { return m_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  std::vector<int> dims_;
  CMatrix m_;
};

/// Completely positive trace-preserving map with equal input and output
/// dimension, stored as Kraus operators with its Choi state cached.
class QuantumChannel {
 public:
  /// Validates sum_i K_i^dagger K_i = I within 1e-10.
  explicit QuantumChannel(std::vector<CMatrix> kraus);

  int dim() const { return dim_; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }
  const DensityMatrix& choi() const { return choi_; }

  /// Action on a D x D operator (not required to be a state).
  CMatrix operator()(const CMatrix& rho) const;

 private:
  int dim_;
  std::vector<CMatrix> kraus_;
  DensityMatrix choi_;
};

/// |I_D><I_D| on dims (D, D).
DensityMatrix max_entangled(int d);

DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho);

/// Channel action computed from the Choi state: D * Tr_2[J (I (x) rho^T)].
CMatrix apply_via_choi(const DensityMatrix& choi, const CMatrix& rho);

/// e after b: Kraus operators E_i B_j.
QuantumChannel compose(const QuantumChannel& e, const QuantumChannel& b);

inline const DensityMatrix& choi(const QuantumChannel& ch) { return ch.choi(); }

/// Rebuilds a channel from its Choi state; Kraus rank is the numerical rank
/// of J at threshold 1e-9. Requires Tr_1 J = I/D within 1e-8.
QuantumChannel channel_from_choi(const DensityMatrix& j);

/// (ch (x) id) or (id (x) ch) on a bipartite operator of dims (d1, d2).
CMatrix apply_to_subsystem(const QuantumChannel& ch, const CMatrix& rho, int d1, int d2, Factor which);
DensityMatrix apply_to_subsystem(const QuantumChannel& ch, const DensityMatrix& rho, Factor which = Factor::first);

/// Convex mixture sum_i w_i ch_i, formed on Choi states.
QuantumChannel mix(const std::vector<double>& weights, const std::vector<QuantumChannel>& channels);

// Channel zoo.
QuantumChannel identity_channel(int d);
QuantumChannel unitary_channel(const CMatrix& u);
/// rho -> lambda rho + (1 - lambda) I / D, lambda in [0, 1].
QuantumChannel depolarizing(double lambda, int d);
/// Qubit amplitude damping with decay probability gamma.
QuantumChannel amplitude_damping(double gamma);
/// rho -> (1 - p) rho + p diag(rho); p = 1 is complete dephasing.
QuantumChannel dephasing(double p, int d = 2);
/// Maps every input to sigma.
QuantumChannel replacer(const DensityMatrix& sigma);

// Random fixtures. Seeds are always supplied by the caller's engine.
using Rng = std::mt19937_64;

CMatrix random_ginibre(int rows, int cols, Rng& rng);
CMatrix random_unitary(int n, Rng& rng);
CVector random_pure_vector(int n, Rng& rng);
/// Mixed state from the partial trace of a random pure state on n * rank.
DensityMatrix random_density(int n, Rng& rng, int rank = 0);
/// Hermitian matrix with standard Gaussian entries (GUE-like).
CMatrix random_hermitian(int n, Rng& rng);
/// Kraus operators from the blocks of a Haar random isometry C^D -> C^{D r}.
QuantumChannel random_channel(int d, Rng& rng, int rank = 0);

}  // namespace qbw
