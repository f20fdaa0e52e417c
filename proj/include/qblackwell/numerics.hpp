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
 * @file numerics.hpp
 * Dense linear-algebra primitives shared by every other module: Kronecker
 * products, subsystem permutations, partial traces and transposes, trace
 * norms and Hermitian eigendecomposition.
 *
 * All functions are templated on the Eigen expression type, so they accept
 * real or complex matrices and unevaluated expressions alike. Tensor factors
 * are ordered most-significant first: for dims (d1, d2) the basis vector
 * |i> (x) |j> has linear index i * d2 + j.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qblackwell/error.hpp"

namespace qbw {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Which factor of a bipartite space an operation targets.
enum class Factor { first, second };

/// Hermiticity band, relative to the largest entry magnitude.
inline constexpr double kHermitianTol = 1e-12;

template <typename Derived>
double max_abs_entry(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

/// Largest entry of M - M^dagger, relative to max |M_ij|.
template <typename Derived>
double hermiticity_residual(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const double scale = std::max(max_abs_entry(m), 1.0e-300);
  return max_abs_entry(m - m.adjoint()) / scale;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kHermitianTol) {
  return hermiticity_residual(m) <= tol;
}

/// (M + M^dagger) / 2.
template <typename Derived>
Matrix<typename Derived::Scalar> hermitize(const Eigen::MatrixBase<Derived>& m) {
  Matrix<typename Derived::Scalar> out = m;
  return (out + out.adjoint()) / 2.0;
}

/// Checks Hermiticity within the relative band and returns the symmetrized
/// copy. Throws InvariantError outside the band.
template <typename Derived>
Matrix<typename Derived::Scalar> require_hermitian(const Eigen::MatrixBase<Derived>& m,
                                                   const char* what = "operator") {
  if (m.rows() != m.cols()) {
    throw InvariantError(std::string(what) + " must be square");
  }
  if (!m.allFinite()) {
    throw InvariantError(std::string(what) + " has non-finite entries");
  }
  const double res = hermiticity_residual(m);
  if (res > kHermitianTol) {
    throw InvariantError(std::string(what) + " must be Hermitian", res);
  }
  return hermitize(m);
}

template <typename Scalar>
struct HermitianEig {
  RVector values;          // ascending
  Matrix<Scalar> vectors;  // columns are eigenvectors
};

/// Eigendecomposition of a Hermitian matrix (Householder tridiagonalization
/// followed by implicit QL, via Eigen::SelfAdjointEigenSolver).
template <typename Derived>
HermitianEig<typename Derived::Scalar> hermitian_eig(const Eigen::MatrixBase<Derived>& h) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> sym = require_hermitian(h, "eigendecomposition input");
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("Hermitian eigensolver did not converge within " +
                           std::to_string(Eigen::SelfAdjointEigenSolver<Matrix<Scalar>>::m_maxIterations *
                                          sym.rows()) +
                           " QL iterations");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Smallest eigenvalue of a Hermitian matrix; no eigenvectors.
template <typename Derived>
double min_eigenvalue(const Eigen::MatrixBase<Derived>& h) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> sym = hermitize(h);
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("Hermitian eigensolver did not converge");
  return solver.eigenvalues()(0);
}

template <typename Derived>
double max_eigenvalue(const Eigen::MatrixBase<Derived>& h) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> sym = hermitize(h);
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("Hermitian eigensolver did not converge");
  return solver.eigenvalues()(sym.rows() - 1);
}

/// Kronecker product A (x) B.
template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> kron(const Eigen::MatrixBase<DerivedA>& a,
                                       const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline std::size_t product(std::span<const int> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         [](std::size_t acc, int d) { return acc * static_cast<std::size_t>(d); });
}

/// Index map for a tensor-factor permutation: output factor i is input
/// factor perm[i]. Entry r is the input linear index of output index r.
inline std::vector<Eigen::Index> permutation_index_map(std::span<const int> dims,
                                                       std::span<const int> perm) {
  const std::size_t n = dims.size();
  if (perm.size() != n) throw InvariantError("permutation length must match number of subsystems");
  std::vector<int> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[p]++) {
      throw InvariantError("subsystem permutation is not a bijection");
    }
  }
  // Strides of the input layout.
  std::vector<std::size_t> in_stride(n, 1);
  for (std::size_t i = n; i-- > 1;) in_stride[i - 1] = in_stride[i] * dims[i];

  const std::size_t total = product(dims);
  std::vector<Eigen::Index> map(total);
  std::vector<int> digit(n, 0);  // output multi-index
  for (std::size_t r = 0; r < total; ++r) {
    std::size_t in = 0;
    for (std::size_t i = 0; i < n; ++i) in += digit[i] * in_stride[perm[i]];
    map[r] = static_cast<Eigen::Index>(in);
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < dims[perm[i]]) break;
      digit[i] = 0;
    }
  }
  return map;
}

/// Reorders the tensor factors of an operator on (x)_i H_{dims[i]}.
/// Output factor i is input factor perm[i].
template <typename Derived>
Matrix<typename Derived::Scalar> permute_subsystems(const Eigen::MatrixBase<Derived>& m,
                                                    std::span<const int> dims,
                                                    std::span<const int> perm) {
  const auto total = static_cast<Eigen::Index>(product(dims));
  if (m.rows() != total || m.cols() != total) {
    throw InvariantError("operator dimension does not match subsystem dims");
  }
  const auto map = permutation_index_map(dims, perm);
  Matrix<typename Derived::Scalar> out(total, total);
  for (Eigen::Index r = 0; r < total; ++r) {
    for (Eigen::Index c = 0; c < total; ++c) out(r, c) = m(map[r], map[c]);
  }
  return out;
}

/// Traces out every subsystem whose `keep` flag is false. Kept factors stay
/// in their original relative order.
template <typename Derived>
Matrix<typename Derived::Scalar> partial_trace(const Eigen::MatrixBase<Derived>& m,
                                               std::span<const int> dims,
                                               const std::vector<bool>& keep) {
  if (keep.size() != dims.size()) throw InvariantError("keep mask length must match number of subsystems");
  std::vector<int> perm;
  std::size_t dk = 1;
  std::size_t dt = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (keep[i]) {
      perm.push_back(static_cast<int>(i));
      dk *= dims[i];
    }
  }
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!keep[i]) {
      perm.push_back(static_cast<int>(i));
      dt *= dims[i];
    }
  }
  const Matrix<typename Derived::Scalar> p = permute_subsystems(m, dims, perm);
  Matrix<typename Derived::Scalar> out = Matrix<typename Derived::Scalar>::Zero(dk, dk);
  for (std::size_t t = 0; t < dt; ++t) {
    out += p(Eigen::seqN(t, dk, dt), Eigen::seqN(t, dk, dt));
  }
  return out;
}

/// Bipartite partial trace keeping one factor of dims (d1, d2).
template <typename Derived>
Matrix<typename Derived::Scalar> partial_trace(const Eigen::MatrixBase<Derived>& m, int d1, int d2,
                                               Factor keep) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw InvariantError("partial_trace: operator is not (d1*d2) x (d1*d2)");
  }
  using Scalar = typename Derived::Scalar;
  if (keep == Factor::first) {
    Matrix<Scalar> out = Matrix<Scalar>::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j) out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
    return out;
  }
  Matrix<Scalar> out = Matrix<Scalar>::Zero(d2, d2);
  for (int i = 0; i < d1; ++i) out += m.block(i * d2, i * d2, d2, d2);
  return out;
}

/// Transposes one factor of dims (d1, d2) in the computational product basis.
template <typename Derived>
Matrix<typename Derived::Scalar> partial_transpose(const Eigen::MatrixBase<Derived>& m, int d1, int d2,
                                                   Factor which) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw InvariantError("partial_transpose: operator is not (d1*d2) x (d1*d2)");
  }
  Matrix<typename Derived::Scalar> out(m.rows(), m.cols());
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d1; ++j) {
      const auto blk = m.block(i * d2, j * d2, d2, d2);
      if (which == Factor::second) {
        out.block(i * d2, j * d2, d2, d2) = blk.transpose();
      } else {
        out.block(j * d2, i * d2, d2, d2) = blk;
      }
    }
  }
  return out;
}

/// Sum of singular values.
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  Matrix<typename Derived::Scalar> dense = m;
  Eigen::JacobiSVD<Matrix<typename Derived::Scalar>> svd(dense);
  return svd.singularValues().sum();
}

/// Largest singular value.
template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  Matrix<typename Derived::Scalar> dense = m;
  Eigen::JacobiSVD<Matrix<typename Derived::Scalar>> svd(dense);
  return svd.singularValues()(0);
}

/// Re Tr(A B), the real Hilbert-Schmidt pairing used for Hermitian operators.
template <typename DerivedA, typename DerivedB>
double real_trace_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return std::real(a.cwiseProduct(b.transpose()).sum());
}

/// Unique PSD square root of a PSD matrix; tiny negative eigenvalues are
/// clipped to zero.
template <typename Derived>
Matrix<typename Derived::Scalar> psd_sqrt(const Eigen::MatrixBase<Derived>& m) {
  const auto eig = hermitian_eig(hermitize(m));
  RVector s = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * s.asDiagonal() * eig.vectors.adjoint();
}

/// M^{-1/2} for a positive definite matrix.
template <typename Derived>
Matrix<typename Derived::Scalar> inverse_sqrt(const Eigen::MatrixBase<Derived>& m) {
  const auto eig = hermitian_eig(hermitize(m));
  if (eig.values(0) <= 0.0) throw InvariantError("inverse_sqrt: matrix is not positive definite", eig.values(0));
  RVector s = eig.values.cwiseSqrt().cwiseInverse();
  return eig.vectors * s.asDiagonal() * eig.vectors.adjoint();
}

/// Projector onto the span of a vector.
inline CMatrix projector(const CVector& v) { return v * v.adjoint() / v.squaredNorm(); }

/// Computational basis vector e_i of C^n.
inline CVector basis_vector(int n, int i) {
  CVector v = CVector::Zero(n);
  v(i) = 1.0;
  return v;
}

}  // namespace qbw
