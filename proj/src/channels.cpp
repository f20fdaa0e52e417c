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

#include "qblackwell/channels.hpp"

#include <cmath>
#include <string>

namespace qbw {

namespace {

CMatrix validated_state(const CMatrix& m, const std::vector<int>& dims) {
  if (m.rows() != m.cols()) throw InvariantError("density matrix must be square");
  if (dims.empty() || static_cast<Eigen::Index>(product(dims)) != m.rows()) {
    throw InvariantError("density matrix dimension must equal the product of its subsystem dims");
  }
  for (int d : dims)
    if (d < 1) throw InvariantError("subsystem dimensions must be positive");
  CMatrix h = require_hermitian(m, "density matrix");
  const double tr_err = std::abs(h.trace().real() - 1.0);
  if (tr_err > kStateTol) throw InvariantError("density matrix trace must be 1", tr_err);
  const double lmin = min_eigenvalue(h);
  if (lmin < -kStateTol) throw InvariantError("density matrix must be positive semidefinite", lmin);
  return h;
}

// Row-major flattening: v_{(a,i)} = K_{a,i}.
CVector row_vec(const CMatrix& k) {
  CVector v(k.size());
  for (Eigen::Index a = 0; a < k.rows(); ++a)
    for (Eigen::Index i = 0; i < k.cols(); ++i) v(a * k.cols() + i) = k(a, i);
  return v;
}

int check_kraus(const std::vector<CMatrix>& kraus) {
  if (kraus.empty()) throw InvariantError("channel needs at least one Kraus operator");
  const auto d = kraus.front().rows();
  if (d < 1) throw InvariantError("channel dimension must be positive");
  CMatrix s = CMatrix::Zero(d, d);
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) throw InvariantError("Kraus operators must all be D x D");
    if (!k.allFinite()) throw InvariantError("Kraus operator has non-finite entries");
    s += k.adjoint() * k;
  }
  const double tp = (s - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (tp > kStateTol) throw InvariantError("Kraus operators must satisfy sum K^dagger K = I", tp);
  return static_cast<int>(d);
}

CMatrix choi_matrix(const std::vector<CMatrix>& kraus, int d) {
  CMatrix j = CMatrix::Zero(d * d, d * d);
  for (const auto& k : kraus) {
    const CVector v = row_vec(k);
    j += v * v.adjoint();
  }
  return hermitize(CMatrix(j / static_cast<double>(d)));
}

void check_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvariantError(std::string(name) + " must lie in [0, 1]", x);
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix matrix, std::vector<int> dims)
    : dims_(std::move(dims)), m_(validated_state(matrix, dims_)) {}

DensityMatrix::DensityMatrix(CMatrix matrix) : DensityMatrix(matrix, {static_cast<int>(matrix.rows())}) {}

DensityMatrix DensityMatrix::pure(const CVector& v, std::vector<int> dims) {
  if (v.norm() == 0.0) throw InvariantError("pure state vector must be nonzero");
  return DensityMatrix(projector(v), std::move(dims));
}

QuantumChannel::QuantumChannel(std::vector<CMatrix> kraus)
    : dim_(check_kraus(kraus)),
      kraus_(std::move(kraus)),
      choi_(choi_matrix(kraus_, dim_), {dim_, dim_}) {}

CMatrix QuantumChannel::operator()(const CMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) throw InvariantError("channel input has the wrong dimension");
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

DensityMatrix max_entangled(int d) {
  if (d < 2) throw InvariantError("maximally entangled state needs D >= 2");
  CVector v = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return DensityMatrix(v * v.adjoint(), {d, d});
}

DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim()) throw InvariantError("state dimension does not match channel dimension");
  return DensityMatrix(ch(rho.matrix()), rho.dims());
}

CMatrix apply_via_choi(const DensityMatrix& choi, const CMatrix& rho) {
  if (choi.dims().size() != 2 || choi.dims()[0] != choi.dims()[1]) {
    throw InvariantError("Choi state must live on dims (D, D)");
  }
  const int d = choi.dims()[0];
  if (rho.rows() != d || rho.cols() != d) throw InvariantError("input dimension does not match Choi state");
  const CMatrix lifted = choi.matrix() * kron(CMatrix::Identity(d, d), CMatrix(rho.transpose()));
  return static_cast<double>(d) * partial_trace(lifted, d, d, Factor::first);
}

QuantumChannel compose(const QuantumChannel& e, const QuantumChannel& b) {
  if (e.dim() != b.dim()) throw InvariantError("composed channels must have equal dimension");
  std::vector<CMatrix> kraus;
  kraus.reserve(e.kraus().size() * b.kraus().size());
  for (const auto& ek : e.kraus())
    for (const auto& bk : b.kraus()) kraus.push_back(ek * bk);
  return QuantumChannel(std::move(kraus));
}

QuantumChannel channel_from_choi(const DensityMatrix& j) {
  if (j.dims().size() != 2 || j.dims()[0] != j.dims()[1]) {
    throw InvariantError("Choi state must live on dims (D, D)");
  }
  const int d = j.dims()[0];
  const CMatrix marginal = partial_trace(j.matrix(), d, d, Factor::second);
  const double tp = (marginal - CMatrix::Identity(d, d) / static_cast<double>(d)).cwiseAbs().maxCoeff();
  if (tp > 1e-8) throw InvariantError("Choi state marginal on the input factor must be I/D", tp);

  const auto eig = hermitian_eig(j.matrix());
  const double top = eig.values.maxCoeff();
  std::vector<CMatrix> kraus;
  for (Eigen::Index k = eig.values.size(); k-- > 0;) {
    const double lam = eig.values(k);
    if (lam <= 1e-9 * std::max(1.0, top)) break;
    CMatrix op(d, d);
    const double amp = std::sqrt(d * lam);
    for (int a = 0; a < d; ++a)
      for (int i = 0; i < d; ++i) op(a, i) = amp * eig.vectors(a * d + i, k);
    kraus.push_back(std::move(op));
  }
  // Restore exact trace preservation after truncation: K -> K S^{-1/2}.
  CMatrix s = CMatrix::Zero(d, d);
  for (const auto& k : kraus) s += k.adjoint() * k;
  const CMatrix fix = inverse_sqrt(s);
  for (auto& k : kraus) k = k * fix;
  return QuantumChannel(std::move(kraus));
}

CMatrix apply_to_subsystem(const QuantumChannel& ch, const CMatrix& rho, int d1, int d2, Factor which) {
  if (rho.rows() != d1 * d2 || rho.cols() != d1 * d2) throw InvariantError("operator does not match dims (d1, d2)");
  const int target = which == Factor::first ? d1 : d2;
  if (target != ch.dim()) throw InvariantError("channel dimension does not match the target subsystem");
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : ch.kraus()) {
    const CMatrix lifted = which == Factor::first ? kron(k, CMatrix::Identity(d2, d2))
                                                  : kron(CMatrix::Identity(d1, d1), k);
    out += lifted * rho * lifted.adjoint();
  }
  return out;
}

DensityMatrix apply_to_subsystem(const QuantumChannel& ch, const DensityMatrix& rho, Factor which) {
  const auto& dims = rho.dims();
  if (dims.size() != 2) throw InvariantError("apply_to_subsystem needs a bipartite state");
  return DensityMatrix(apply_to_subsystem(ch, rho.matrix(), dims[0], dims[1], which), dims);
}

QuantumChannel mix(const std::vector<double>& weights, const std::vector<QuantumChannel>& channels) {
  if (weights.size() != channels.size() || channels.empty()) {
    throw InvariantError("mixture needs one weight per channel");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvariantError("mixture weights must be nonnegative", w);
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvariantError("mixture weights must sum to 1", total - 1.0);
  const int d = channels.front().dim();
  CMatrix j = CMatrix::Zero(d * d, d * d);
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (channels[i].dim() != d) throw InvariantError("mixed channels must have equal dimension");
    j += weights[i] * channels[i].choi().matrix();
  }
  return channel_from_choi(DensityMatrix(j, {d, d}));
}

QuantumChannel identity_channel(int d) {
  if (d < 1) throw InvariantError("channel dimension must be positive");
  return QuantumChannel({CMatrix::Identity(d, d)});
}

QuantumChannel unitary_channel(const CMatrix& u) {
  if (u.rows() != u.cols()) throw InvariantError("unitary must be square");
  const double err = (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (err > kStateTol) throw InvariantError("matrix is not unitary", err);
  return QuantumChannel({u});
}

QuantumChannel depolarizing(double lambda, int d) {
  check_unit_interval(lambda, "depolarizing parameter");
  if (d < 1) throw InvariantError("channel dimension must be positive");
  // lambda rho + (1 - lambda) I/D = a rho + (1 - lambda)/D^2 sum_{ij} E_ij rho E_ij^dagger
  // with a = lambda, spread over the D^2 matrix units E_ij.
  std::vector<CMatrix> kraus;
  if (lambda > 0.0) kraus.push_back(std::sqrt(lambda) * CMatrix::Identity(d, d));
  if (lambda < 1.0) {
    const double amp = std::sqrt((1.0 - lambda) / d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        CMatrix e = CMatrix::Zero(d, d);
        e(i, j) = amp;
        kraus.push_back(std::move(e));
      }
    }
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel amplitude_damping(double gamma) {
  check_unit_interval(gamma, "damping probability");
  CMatrix k0 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  CMatrix k1 = CMatrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(gamma);
  return QuantumChannel({k0, k1});
}

QuantumChannel dephasing(double p, int d) {
  check_unit_interval(p, "dephasing probability");
  if (d < 1) throw InvariantError("channel dimension must be positive");
  std::vector<CMatrix> kraus;
  if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * CMatrix::Identity(d, d));
  if (p > 0.0) {
    for (int i = 0; i < d; ++i) {
      CMatrix e = CMatrix::Zero(d, d);
      e(i, i) = std::sqrt(p);
      kraus.push_back(std::move(e));
    }
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel replacer(const DensityMatrix& sigma) {
  const int d = sigma.dim();
  // K_{ij} = sqrt(s_i) |v_i><j|
  const auto eig = hermitian_eig(sigma.matrix());
  std::vector<CMatrix> kraus;
  for (int i = 0; i < d; ++i) {
    const double s = eig.values(i);
    if (s <= 0.0) continue;
    for (int j = 0; j < d; ++j) {
      CMatrix k = std::sqrt(s) * eig.vectors.col(i) * basis_vector(d, j).adjoint();
      kraus.push_back(std::move(k));
    }
  }
  // Drop-and-renormalize keeps TP exact when tiny negative eigenvalues were skipped.
  CMatrix s = CMatrix::Zero(d, d);
  for (const auto& k : kraus) s += k.adjoint() * k;
  const CMatrix fix = inverse_sqrt(s);
  for (auto& k : kraus) k = k * fix;
  return QuantumChannel(std::move(kraus));
}

CMatrix random_ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

CMatrix random_unitary(int n, Rng& rng) {
  const CMatrix z = random_ginibre(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (int i = 0; i < n; ++i) {
    const Complex diag = r(i, i);
    if (std::abs(diag) > 0.0) q.col(i) *= diag / std::abs(diag);
  }
  return q;
}

CVector random_pure_vector(int n, Rng& rng) {
  CVector v = random_ginibre(n, 1, rng);
  return v / v.norm();
}

DensityMatrix random_density(int n, Rng& rng, int rank) {
  if (rank <= 0) rank = n;
  const CVector v = random_pure_vector(n * rank, rng);
  CMatrix rho = partial_trace(CMatrix(v * v.adjoint()), n, rank, Factor::first);
  rho /= rho.trace().real();
  return DensityMatrix(hermitize(rho), {n});
}

CMatrix random_hermitian(int n, Rng& rng) { return hermitize(random_ginibre(n, n, rng)); }

QuantumChannel random_channel(int d, Rng& rng, int rank) {
  if (rank <= 0) rank = d;
  const CMatrix u = random_unitary(d * rank, rng);
  const CMatrix v = u.leftCols(d);
  std::vector<CMatrix> kraus;
  for (int i = 0; i < rank; ++i) kraus.push_back(v.middleRows(i * d, d));
  return QuantumChannel(std::move(kraus));
}

}  // namespace qbw
