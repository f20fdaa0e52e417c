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
 * @file blackwell.hpp
 * The quantum Blackwell order between channels.
 *
 * Channel A is at least as noisy as B when A = E o B for some channel E.
 * That structural statement is decided here by an SDP over the Choi state
 * of E, and cross-checked operationally: A is at least as noisy as B exactly
 * when no ensemble (possibly entangled with an ancilla) is more
 * distinguishable after A than after B. An ensemble that is more
 * distinguishable after A is a witness that no garbling exists.
 *
 * Payoff games use four systems: (gamma, delta) carry Phi, (alpha, beta)
 * carry the environment state rho. A POVM Pi_k acts on (gamma, alpha) and
 * the observable M_k on (delta, beta). Internally operators are kept in the
 * order (gamma, delta, alpha, beta).
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qblackwell/channels.hpp"
#include "qblackwell/discrimination.hpp"
#include "qblackwell/sdp.hpp"

namespace qbw {

/// K >= 1 Hermitian operators of a common dimension.
class HermitianSet {
 public:
  explicit HermitianSet(std::vector<CMatrix> operators);

  int dim() const { return static_cast<int>(ops_.front().rows()); }
  std::size_t size() const { return ops_.size(); }
  const std::vector<CMatrix>& operators() const { return ops_; }
  const CMatrix& operator[](std::size_t k) const { return ops_[k]; }

  /// Smallest eigenvalue over all operators.
  double min_eigenvalue() const;

 private:
  std::vector<CMatrix> ops_;
};

/// Tr[(Phi (x) rho) sum_k (Pi_k (x) M_k)] with Pi_k on (gamma, alpha) and
/// M_k on (delta, beta).
double payoff(const DensityMatrix& phi, const DensityMatrix& rho_env, const HermitianSet& m, const Povm& povm);

struct PayoffMax {
  sdp::Status status = sdp::Status::indeterminate;
  double value = 0.0;
  std::vector<CMatrix> povm;
};

/// The operators N_k = Tr_{delta beta}[(Phi (x) rho)(1 (x) M_k)] on (gamma, alpha).
std::vector<CMatrix> payoff_targets(const DensityMatrix& phi, const DensityMatrix& rho_env, const HermitianSet& m);

/// Payoff maximized over POVMs on (gamma, alpha).
PayoffMax payoff_max(const DensityMatrix& phi, const DensityMatrix& rho_env, const HermitianSet& m,
                     const sdp::Options& options = {});

/// Payoff for Phi = J(ch) and rho = |I_D><I_D|:
/// (1/D^2) max_Pi sum_k Tr[Pi_k (ch (x) id)(M_k^T)], with M_k on D x D.
PayoffMax payoff_max_choi(const QuantumChannel& ch, const HermitianSet& m, const sdp::Options& options = {});

struct HermitianTransform {
  Ensemble ensemble;
  double lambda_min = 0.0;  // smallest eigenvalue over all M_k
  double epsilon = 0.0;
};

/// Affinely maps Hermitian operators on (D, d_anc) to an ensemble:
///   rho_k = (M_k^T + (eps - Lambda) I) / (Tr M_k + n (eps - Lambda)),
///   P_k   = (Tr M_k + n (eps - Lambda)) / (Tr sum M_k + n K (eps - Lambda)),
/// with n = D d_anc and Lambda the smallest eigenvalue. `epsilon` must exceed
/// max(0, max_k Tr(M_k) / D); when absent, max(1, max_k Tr(M_k) / D + 1).
HermitianTransform hermitians_to_ensemble(const HermitianSet& m, std::vector<int> dims,
                                          std::optional<double> epsilon = std::nullopt);

/// The ensemble-side image of the transform: n (R + eps - Lambda) /
/// (Tr sum M_k + n K (eps - Lambda)), for a payoff value R from
/// payoff_max_choi.
double transformed_success(double payoff_value, const HermitianSet& m, const HermitianTransform& t);

enum class GarbleStatus { feasible, infeasible, indeterminate };

std::string_view to_string(GarbleStatus status);

struct GarbleResult {
  GarbleStatus status = GarbleStatus::indeterminate;
  std::optional<QuantumChannel> garbling;
  /// ||(E (x) id)(phi) - psi||_F for the recovered E (or the solver's
  /// constraint violation when none was recovered).
  double residual = 0.0;
  /// Separating Hermitian functional on the Choi space of E.
  std::optional<CMatrix> certificate;
  /// Output-space part of the Farkas multipliers, as a Hermitian operator.
  std::optional<CMatrix> output_multiplier;
  double certificate_margin = 0.0;
  int iterations = 0;
};

/// Is there a channel E with psi = (E (x) id)(phi)? Both states live on
/// (D, d2); E acts on the first factor.
GarbleResult garble_check_states(const DensityMatrix& psi, const DensityMatrix& phi, double tol = 1e-7);

/// Is there a channel E with a = E o b?
GarbleResult garble_check(const QuantumChannel& a, const QuantumChannel& b, double tol = 1e-7);

struct WitnessOptions {
  int k = 2;
  int d_anc = 0;  // 0 means D
  int restarts = 4;
  int iterations = 150;  // hill-climbing steps per restart
  std::uint64_t seed = 1;
  double tol = 1e-7;
  /// Infeasibility certificate from garble_check(a, b), used as a seed.
  std::optional<CMatrix> certificate;
  std::optional<CMatrix> output_multiplier;
};

struct Witness {
  Ensemble ensemble;
  double p_a = 0.0;
  double p_b = 0.0;
  double gap = 0.0;  // p_a - p_b, re-verified by SDP solves
};

/// Searches for an ensemble that is strictly more distinguishable after a
/// than after b (gap >= 10 tol). Such an ensemble proves a != E o b for all
/// E. Returning nothing is not a proof that a garbling exists.
std::optional<Witness> find_witness(const QuantumChannel& a, const QuantumChannel& b,
                                    const WitnessOptions& options = {});

enum class Verdict { a_noisier, b_noisier, equivalent, incomparable, indeterminate };

std::string_view to_string(Verdict verdict);

struct CompareOptions {
  double tol = 1e-7;
  int restarts = 4;
  std::uint64_t seed = 1;
  bool search_witnesses = true;
};

struct ComparisonReport {
  GarbleResult a_to_b;  // a = E o b ?
  GarbleResult b_to_a;  // b = E o a ?
  Verdict verdict = Verdict::indeterminate;
  /// Ensemble more distinguishable after a than after b (refutes a_to_b).
  std::optional<Witness> a_over_b;
  /// Ensemble more distinguishable after b than after a (refutes b_to_a).
  std::optional<Witness> b_over_a;
};

Verdict verdict_from(GarbleStatus a_to_b, GarbleStatus b_to_a);

ComparisonReport compare(const QuantumChannel& a, const QuantumChannel& b, const CompareOptions& options = {});

}  // namespace qbw
