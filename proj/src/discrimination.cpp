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

#include "qblackwell/discrimination.hpp"

#include <cmath>
#include <numbers>

namespace qbw {

Ensemble::Ensemble(std::vector<int> dims, std::vector<EnsembleMember> members)
    : dims_(std::move(dims)), members_(std::move(members)) {
  if (dims_.size() != 2 || dims_[0] < 1 || dims_[1] < 1) {
    throw InvariantError("ensemble dims must be (D, d_anc) with positive entries");
  }
  if (members_.empty()) throw InvariantError("ensemble needs at least one member");
  double total = 0.0;
  for (const auto& m : members_) {
    if (!(m.prob >= 0.0) || !std::isfinite(m.prob)) throw InvariantError("ensemble priors must be nonnegative", m.prob);
    if (m.state.dims() != dims_) {
      // Accept flat states of the right total dimension by relabeling.
      if (m.state.dim() != dims_[0] * dims_[1]) throw InvariantError("ensemble state dims do not match ensemble dims");
    }
    total += m.prob;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvariantError("ensemble priors must sum to 1", total - 1.0);
  for (auto& m : members_) {
    if (m.state.dims() != dims_) m.state = DensityMatrix(m.state.matrix(), dims_);
  }
}

Povm::Povm(std::vector<CMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw InvariantError("POVM needs at least one element");
  const auto d = elements_.front().rows();
  CMatrix total = CMatrix::Zero(d, d);
  for (auto& e : elements_) {
    if (e.rows() != d || e.cols() != d) throw InvariantError("POVM elements must share one dimension");
    e = require_hermitian(e, "POVM element");
    const double lmin = min_eigenvalue(e);
    if (lmin < -1e-9) throw InvariantError("POVM elements must be positive semidefinite", lmin);
    total += e;
  }
  const double err = (total - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (err > 1e-9) throw InvariantError("POVM elements must sum to the identity", err);
}

double success_probability(const Ensemble& ens, const Povm& povm) {
  if (povm.size() != ens.size()) throw InvariantError("POVM element count must equal ensemble size");
  if (povm.dim() != ens.dim()) throw InvariantError("POVM dimension must equal ensemble dimension");
  double p = 0.0;
  for (std::size_t k = 0; k < ens.size(); ++k) p += ens[k].prob * real_trace_product(povm[k], ens[k].state.matrix());
  if (p < -1e-9 || p > 1.0 + 1e-9) throw InvariantError("success probability outside [0, 1]", p);
  return p;
}

Discrimination helstrom_binary(const Ensemble& ens) {
  if (ens.size() != 2) throw InvariantError("Helstrom formula needs exactly two states");
  const CMatrix delta = ens[0].prob * ens[0].state.matrix() - ens[1].prob * ens[1].state.matrix();
  const auto eig = hermitian_eig(delta);
  const auto n = delta.rows();
  CMatrix pi0 = CMatrix::Zero(n, n);
  double norm1 = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = eig.values(i);
    norm1 += std::abs(lam);
    // Zero eigenvalues go to outcome 1 by convention.
    if (lam >= 0.0) pi0 += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
  }
  Discrimination out;
  out.status = sdp::Status::optimal;
  out.p_max = 0.5 * (ens[0].prob + ens[1].prob + norm1);
  out.povm = Povm({pi0, CMatrix(CMatrix::Identity(n, n) - pi0)});
  return out;
}

Discrimination min_error_discriminate(const Ensemble& ens, DiscriminationMethod method,
                                      const sdp::Options& options) {
  const int n = ens.dim();
  if (ens.size() == 1) {
    Discrimination out;
    out.status = sdp::Status::optimal;
    out.p_max = 1.0;
    out.povm = Povm({CMatrix::Identity(n, n)});
    out.dual = ens[0].state.matrix();
    return out;
  }
  if (ens.size() == 2 && method == DiscriminationMethod::automatic) return helstrom_binary(ens);

  std::vector<CMatrix> targets;
  targets.reserve(ens.size());
  for (const auto& m : ens.members()) targets.push_back(m.prob * m.state.matrix());
  const auto best = sdp::povm_maximize(targets, options);

  Discrimination out;
  out.status = best.status;
  if (best.status != sdp::Status::optimal) return out;
  out.p_max = best.value;
  out.povm = Povm(best.povm);
  out.dual = best.dual;
  return out;
}

Ensemble through_channel(const Ensemble& ens, const QuantumChannel& ch) {
  if (ch.dim() != ens.system_dim()) throw InvariantError("channel dimension must equal the ensemble system dimension");
  std::vector<EnsembleMember> out;
  out.reserve(ens.size());
  for (const auto& m : ens.members()) out.push_back({m.prob, apply_to_subsystem(ch, m.state, Factor::first)});
  return Ensemble(ens.dims(), std::move(out));
}

Discrimination discriminate_through_channel(const Ensemble& ens, const QuantumChannel& ch,
                                            DiscriminationMethod method, const sdp::Options& options) {
  return min_error_discriminate(through_channel(ens, ch), method, options);
}

CVector generalized_bell_vector(int d, int index) {
  if (index < 0 || index >= d * d) throw InvariantError("generalized Bell index out of range");
  const int a = index / d;
  const int b = index % d;
  CVector v = CVector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    // X^a Z^b |i> = omega^{b i} |i + a>
    const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * b * i / d);
    v(((i + a) % d) * d + i) = amp * phase;
  }
  return v;
}

Ensemble bell_ensemble(int d, int k) {
  if (k < 1 || k > d * d) throw InvariantError("Bell ensemble size must lie in [1, D^2]");
  std::vector<EnsembleMember> members;
  // Phase-flip partners first: index 0 (|I_D>) and 1 (Z|I_D>) for the pair.
  for (int i = 0; i < k; ++i) {
    members.push_back({1.0 / k, DensityMatrix::pure(generalized_bell_vector(d, i), {d, d})});
  }
  return Ensemble({d, d}, std::move(members));
}

Ensemble random_ensemble(int k, int d, int d_anc, Rng& rng, bool pure) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  std::vector<EnsembleMember> members;
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    // Last prior absorbs rounding so the sum is exactly one.
    const double p = i + 1 < k ? w[i] / total : 1.0 - acc;
    acc += p;
    DensityMatrix rho = pure ? DensityMatrix::pure(random_pure_vector(d * d_anc, rng), {d, d_anc})
                             : DensityMatrix(random_density(d * d_anc, rng).matrix(), {d, d_anc});
    members.push_back({p, std::move(rho)});
  }
  return Ensemble({d, d_anc}, std::move(members));
}

}  // namespace qbw
