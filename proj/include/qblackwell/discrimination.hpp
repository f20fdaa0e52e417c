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
 * @file discrimination.hpp
 * Minimum-error discrimination of ensembles on system (x) ancilla, directly
 * or after the system half passes through a channel.
 */

#pragma once

#include <optional>
#include <vector>

#include "qblackwell/channels.hpp"
#include "qblackwell/sdp.hpp"

namespace qbw {

struct EnsembleMember {
  double prob = 0.0;
  DensityMatrix state;
};

/// Prior-weighted states on dims (D, d_anc). Priors are nonnegative and sum
/// to 1 within 1e-12; zero-prior members are kept.
class Ensemble {
 public:
  Ensemble(std::vector<int> dims, std::vector<EnsembleMember> members);

  const std::vector<int>& dims() const { return dims_; }
  int system_dim() const { return dims_[0]; }
  int ancilla_dim() const { return dims_[1]; }
  int dim() const { return dims_[0] * dims_[1]; }
  std::size_t size() const { return members_.size(); }
  const std::vector<EnsembleMember>& members() const { return members_; }
  const EnsembleMember& operator[](std::size_t k) const { return members_[k]; }

 private:
  std::vector<int> dims_;
  std::vector<EnsembleMember> members_;
};

/// Positive operators resolving the identity within 1e-9.
class Povm {
 public:
  explicit Povm(std::vector<CMatrix> elements);

  int dim() const { return static_cast<int>(elements_.front().rows()); }
  std::size_t size() const { return elements_.size(); }
  const std::vector<CMatrix>& elements() const { return elements_; }
  const CMatrix& operator[](std::size_t k) const { return elements_[k]; }

 private:
  std::vector<CMatrix> elements_;
};

enum class DiscriminationMethod {
  automatic,  // closed form for K <= 2, SDP otherwise
  sdp,        // always solve the SDP
};

struct Discrimination {
  sdp::Status status = sdp::Status::indeterminate;
  double p_max = 0.0;
  std::optional<Povm> povm;
  /// Y >= P_k rho_k for all k with Tr Y = p_max (SDP route only).
  std::optional<CMatrix> dual;
};

/// sum_k P_k Tr(Pi_k rho_k)
double success_probability(const Ensemble& ens, const Povm& povm);

/// Closed form for two states: (1 + ||P1 rho1 - P2 rho2||_1) / 2, measuring
/// the projector onto the nonnegative eigenspace of P1 rho1 - P2 rho2.
Discrimination helstrom_binary(const Ensemble& ens);

Discrimination min_error_discriminate(const Ensemble& ens,
                                      DiscriminationMethod method = DiscriminationMethod::automatic,
                                      const sdp::Options& options = {});

/// The ensemble after (ch (x) id) acts on each member.
Ensemble through_channel(const Ensemble& ens, const QuantumChannel& ch);

Discrimination discriminate_through_channel(const Ensemble& ens, const QuantumChannel& ch,
                                            DiscriminationMethod method = DiscriminationMethod::automatic,
                                            const sdp::Options& options = {});

// Fixtures.

/// The D^2 generalized Bell states (X^a Z^b (x) I)|I_D>, index a * D + b.
CVector generalized_bell_vector(int d, int index);

/// Equal-prior ensemble of orthogonal maximally entangled states; K <= D^2.
Ensemble bell_ensemble(int d, int k = 2);

/// K random members on (D, d_anc). Pure states when `pure`, otherwise mixed
/// via partial trace of random pure states; Dirichlet-like random priors.
Ensemble random_ensemble(int k, int d, int d_anc, Rng& rng, bool pure = false);

}  // namespace qbw
