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

#include "qblackwell/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <utility>

namespace qbw::sdp {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::optimal:
      return "optimal";
    case Status::infeasible:
      return "infeasible";
    case Status::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

std::size_t Problem::add_block(std::string label, int dim) {
  if (dim <= 0) throw IllPosedError("block '" + label + "' has non-positive dimension");
  blocks_.push_back({std::move(label), dim});
  objective_.emplace_back();
  return blocks_.size() - 1;
}

void Problem::check_term(std::size_t block, const CMatrix& coeff) const {
  if (block >= blocks_.size()) throw IllPosedError("coefficient refers to an unknown block");
  const int d = blocks_[block].dim;
  if (coeff.rows() != d || coeff.cols() != d) {
    throw IllPosedError("coefficient dimension does not match block '" + blocks_[block].label + "'");
  }
  if (!coeff.allFinite()) throw IllPosedError("coefficient has non-finite entries");
  if (!is_hermitian(coeff, 1e-10)) throw IllPosedError("coefficient matrix is not Hermitian");
}

void Problem::set_objective(std::size_t block, const CMatrix& coeff) {
  check_term(block, coeff);
  objective_[block] = hermitize(coeff);
}

void Problem::add_constraint(std::vector<Term> terms, double rhs) {
  if (!std::isfinite(rhs)) throw IllPosedError("constraint right-hand side is not finite");
  for (auto& t : terms) {
    check_term(t.block, t.coeff);
    t.coeff = hermitize(t.coeff);
  }
  constraints_.push_back({std::move(terms), rhs});
}

namespace {

using BlockVec = std::vector<CMatrix>;

// Spectral norm of a Hermitian matrix.
double hermitian_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Problem in the solver's internal, scaled representation.
struct Core {
  std::vector<int> dims;
  BlockVec c;                     // dense objective per block
  std::vector<std::vector<Term>> rows;
  RVector b;
  // For each block, (row, term index) pairs touching it.
  std::vector<std::vector<std::pair<int, int>>> touching;

  void index() {
    touching.assign(dims.size(), {});
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
      for (int t = 0; t < static_cast<int>(rows[i].size()); ++t) touching[rows[i][t].block].push_back({i, t});
  }

  int total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }

  RVector apply(const BlockVec& x) const {  // A(X)
    RVector out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double s = 0.0;
      for (const auto& t : rows[i]) s += real_trace_product(t.coeff, x[t.block]);
      out(i) = s;
    }
    return out;
  }

  BlockVec adjoint(const RVector& y) const {  // A^*(y)
    BlockVec out(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) out[k] = CMatrix::Zero(dims[k], dims[k]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& t : rows[i]) out[t.block] += y(i) * t.coeff;
    return out;
  }
};

double inner(const BlockVec& a, const BlockVec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += real_trace_product(a[k], b[k]);
  return s;
}

double frob(const BlockVec& a) {
  double s = 0.0;
  for (const auto& m : a) s += m.squaredNorm();
  return std::sqrt(s);
}

// Largest alpha with X + alpha dX >= 0 (infinity if unbounded).
double max_step(const BlockVec& x, const BlockVec& dx) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < x.size(); ++k) {
    double lmin;
    if (x[k].rows() == 1) {
      lmin = dx[k](0, 0).real() / x[k](0, 0).real();
    } else {
      Eigen::LLT<CMatrix> llt(x[k]);
      if (llt.info() != Eigen::Success) return 0.0;
      CMatrix linv_dx = llt.matrixL().solve(dx[k]);
      CMatrix s = llt.matrixL().solve(linv_dx.adjoint().eval());
      lmin = min_eigenvalue(s);
    }
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

struct IpmResult {
  BlockVec x;
  RVector y;
  BlockVec z;
  Residuals res;
  double pobj = 0.0;
  double dobj = 0.0;
  int iterations = 0;
  bool converged = false;
};

class InteriorPoint {
 public:
  InteriorPoint(const Core& core, const Options& opt) : core_(core), opt_(opt) {}

  IpmResult run() {
    const std::size_t nb = core_.dims.size();
    const std::size_t m = core_.rows.size();
    const double n = core_.total_dim();

    double bmax = core_.b.size() ? core_.b.cwiseAbs().maxCoeff() : 0.0;
    const double xi = std::max({10.0, std::sqrt(n), n * (1.0 + bmax)});
    double cn = frob(core_.c);
    const double eta = std::max({10.0, std::sqrt(n), cn});

    IpmResult r;
    r.x.resize(nb);
    r.z.resize(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      r.x[k] = xi * CMatrix::Identity(core_.dims[k], core_.dims[k]);
      r.z[k] = eta * CMatrix::Identity(core_.dims[k], core_.dims[k]);
    }
    r.y = RVector::Zero(m);

    int stall = 0;
    for (int it = 0; it < opt_.max_iter; ++it) {
      r.iterations = it;
      const RVector ax = core_.apply(r.x);
      const RVector rp = core_.b - ax;
      BlockVec rd = core_.adjoint(r.y);
      for (std::size_t k = 0; k < nb; ++k) rd[k] -= core_.c[k] + r.z[k];

      r.pobj = inner(core_.c, r.x);
      r.dobj = core_.b.dot(r.y);
      const double comp = inner(r.x, r.z);
      r.res = {rp.norm(), frob(rd), std::abs(r.pobj - r.dobj)};
      if (r.res.primal <= opt_.tol && r.res.dual <= opt_.tol && r.res.gap <= opt_.tol && comp <= opt_.tol) {
        r.converged = true;
        break;
      }
      if (!std::isfinite(comp) || frob(r.x) > 1e12 || r.y.norm() > 1e12) break;

      const double mu = comp / n;

      BlockVec zinv(nb);
      bool ok = true;
      for (std::size_t k = 0; k < nb; ++k) {
        Eigen::LLT<CMatrix> llt(r.z[k]);
        if (llt.info() != Eigen::Success) {
          ok = false;
          break;
        }
        zinv[k] = hermitize(llt.solve(CMatrix::Identity(core_.dims[k], core_.dims[k])));
      }
      if (!ok) break;

      RMatrix schur = schur_matrix(r.x, zinv);
      Eigen::LDLT<RMatrix> ldlt(schur);
      if (ldlt.info() != Eigen::Success) break;

      // X R_d Z^{-1}: shared by predictor and corrector.
      BlockVec xrz(nb);
      for (std::size_t k = 0; k < nb; ++k) xrz[k] = r.x[k] * rd[k] * zinv[k];

      // Predictor (affine scaling).
      BlockVec g(nb);
      for (std::size_t k = 0; k < nb; ++k) g[k] = -r.x[k] - xrz[k];
      BlockVec dx_a, dz_a;
      RVector dy_a;
      direction(g, rp, rd, r.x, zinv, ldlt, dx_a, dy_a, dz_a);
      const double ap_a = std::min(1.0, max_step(r.x, dx_a));
      const double ad_a = std::min(1.0, max_step(r.z, dz_a));
      BlockVec xa = r.x, za = r.z;
      for (std::size_t k = 0; k < nb; ++k) {
        xa[k] += ap_a * dx_a[k];
        za[k] += ad_a * dz_a[k];
      }
      const double mu_a = std::max(inner(xa, za), 0.0) / n;
      const double sigma = std::clamp(std::pow(mu_a / mu, 3.0), 0.0, 1.0);

      // Corrector.
      for (std::size_t k = 0; k < nb; ++k) {
        const auto dk = core_.dims[k];
        g[k] = (sigma * mu * CMatrix::Identity(dk, dk) - dx_a[k] * dz_a[k]) * zinv[k] - r.x[k] - xrz[k];
      }
      BlockVec dx, dz;
      RVector dy;
      direction(g, rp, rd, r.x, zinv, ldlt, dx, dy, dz);

      const double gamma = 0.9 + 0.09 * std::min(ap_a, ad_a);
      const double ap = std::min(1.0, gamma * max_step(r.x, dx));
      const double ad = std::min(1.0, gamma * max_step(r.z, dz));
      for (std::size_t k = 0; k < nb; ++k) {
        r.x[k] = hermitize(r.x[k] + ap * dx[k]);
        r.z[k] = hermitize(r.z[k] + ad * dz[k]);
      }
      r.y += ad * dy;

      stall = (ap < 1e-10 && ad < 1e-10) ? stall + 1 : 0;
      if (stall >= 3) break;
      r.iterations = it + 1;
    }
    // Final residuals at the returned iterate.
    const RVector rp = core_.b - core_.apply(r.x);
    BlockVec rd = core_.adjoint(r.y);
    for (std::size_t k = 0; k < nb; ++k) rd[k] -= core_.c[k] + r.z[k];
    r.pobj = inner(core_.c, r.x);
    r.dobj = core_.b.dot(r.y);
    r.res = {rp.norm(), frob(rd), std::abs(r.pobj - r.dobj)};
    return r;
  }

 private:
  // M_ij = Re Tr(A_i X A_j Z^{-1})
  RMatrix schur_matrix(const BlockVec& x, const BlockVec& zinv) const {
    const std::size_t m = core_.rows.size();
    RMatrix schur = RMatrix::Zero(m, m);
    for (std::size_t k = 0; k < core_.dims.size(); ++k) {
      const auto& touch = core_.touching[k];
      if (touch.empty()) continue;
      if (core_.dims[k] == 1) {
        const double w = (x[k](0, 0) * zinv[k](0, 0)).real();
        for (const auto& [i, ti] : touch)
          for (const auto& [j, tj] : touch)
            schur(i, j) += w * (core_.rows[i][ti].coeff(0, 0) * core_.rows[j][tj].coeff(0, 0)).real();
        continue;
      }
      std::vector<CMatrix> p;
      p.reserve(touch.size());
      for (const auto& [j, tj] : touch) p.push_back(x[k] * core_.rows[j][tj].coeff * zinv[k]);
      for (std::size_t a = 0; a < touch.size(); ++a) {
        const auto& ai = core_.rows[touch[a].first][touch[a].second].coeff;
        for (std::size_t bidx = 0; bidx < touch.size(); ++bidx) {
          schur(touch[a].first, touch[bidx].first) += real_trace_product(ai, p[bidx]);
        }
      }
    }
    return (schur + schur.transpose()) / 2.0;
  }

  // Solves for (dX, dy, dZ) given G = (target - corr) Z^{-1} - X - X R_d Z^{-1}.
  void direction(const BlockVec& g, const RVector& rp, const BlockVec& rd, const BlockVec& x,
                 const BlockVec& zinv, const Eigen::LDLT<RMatrix>& ldlt, BlockVec& dx, RVector& dy,
                 BlockVec& dz) const {
    const std::size_t nb = core_.dims.size();
    RVector rhs = core_.apply(g) - rp;
    dy = ldlt.solve(rhs);
    dz = core_.adjoint(dy);
    for (std::size_t k = 0; k < nb; ++k) dz[k] += rd[k];
    dx.resize(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      // g already holds -X R_d Z^{-1}; add the remaining -X A^*(dy) Z^{-1}.
      dx[k] = hermitize(g[k] - x[k] * (dz[k] - rd[k]) * zinv[k]);
    }
  }

  const Core& core_;
  const Options& opt_;
};

// Vectorizes a Hermitian block in an orthonormal real basis.
void vectorize_into(const CMatrix& h, Eigen::Ref<RVector> out) {
  const int n = static_cast<int>(h.rows());
  int idx = 0;
  for (int p = 0; p < n; ++p) {
    out(idx++) = h(p, p).real();
    for (int q = p + 1; q < n; ++q) {
      out(idx++) = std::sqrt(2.0) * h(p, q).real();
      out(idx++) = std::sqrt(2.0) * h(p, q).imag();
    }
  }
}

struct Scaled {
  Core core;
  RVector row_scale;
  double obj_scale = 1.0;
};

Scaled scale_problem(const Problem& problem) {
  Scaled s;
  Core& core = s.core;
  for (const auto& blk : problem.blocks()) core.dims.push_back(blk.dim);
  const std::size_t nb = core.dims.size();

  double cnorm = 0.0;
  for (const auto& c : problem.objective()) cnorm = std::max(cnorm, hermitian_norm(c));
  s.obj_scale = cnorm > 0.0 ? cnorm : 1.0;
  core.c.resize(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    const auto& c = problem.objective()[k];
    core.c[k] = c.size() ? CMatrix(c / s.obj_scale) : CMatrix::Zero(core.dims[k], core.dims[k]);
  }

  const auto& cons = problem.constraints();
  s.row_scale.resize(cons.size());
  core.b.resize(cons.size());
  for (std::size_t i = 0; i < cons.size(); ++i) {
    double rn = 0.0;
    for (const auto& t : cons[i].terms) rn = std::max(rn, hermitian_norm(t.coeff));
    const double sc = rn > 0.0 ? 1.0 / rn : 1.0;
    s.row_scale(i) = sc;
    std::vector<Term> terms;
    for (const auto& t : cons[i].terms) terms.push_back({t.block, sc * t.coeff});
    core.rows.push_back(std::move(terms));
    core.b(i) = sc * cons[i].rhs;
  }
  return s;
}

// Dense real matrix whose rows are the vectorized constraints.
RMatrix constraint_matrix(const Core& core) {
  std::vector<int> offset(core.dims.size() + 1, 0);
  for (std::size_t k = 0; k < core.dims.size(); ++k) offset[k + 1] = offset[k] + core.dims[k] * core.dims[k];
  RMatrix a = RMatrix::Zero(core.rows.size(), offset.back());
  for (std::size_t i = 0; i < core.rows.size(); ++i) {
    for (const auto& t : core.rows[i]) {
      RVector v(core.dims[t.block] * core.dims[t.block]);
      vectorize_into(t.coeff, v);
      a.row(i).segment(offset[t.block], v.size()) += v.transpose();
    }
  }
  return a;
}

void reject_contradictory_duplicates(const Core& core, const RMatrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.rows(); ++j) {
      if ((a.row(i) - a.row(j)).cwiseAbs().maxCoeff() <= 1e-14 &&
          std::abs(core.b(i) - core.b(j)) > 1e-9 * (1.0 + std::abs(core.b(i)))) {
        throw IllPosedError("inconsistent duplicate constraints " + std::to_string(i) + " and " +
                            std::to_string(j));
      }
    }
  }
}

Solution feasibility(const Problem& problem, const Scaled& s, const Options& opt) {
  // Phase one: A(X) + u - v = b, u, v >= 0, maximize -sum(u + v).
  Core p1;
  p1.dims = s.core.dims;
  p1.c.resize(p1.dims.size());
  for (std::size_t k = 0; k < p1.dims.size(); ++k) p1.c[k] = CMatrix::Zero(p1.dims[k], p1.dims[k]);
  p1.b = s.core.b;
  const std::size_t nb = p1.dims.size();
  const std::size_t m = s.core.rows.size();
  for (std::size_t i = 0; i < m; ++i) {
    auto terms = s.core.rows[i];
    const std::size_t u = p1.dims.size();
    p1.dims.push_back(1);
    p1.dims.push_back(1);
    p1.c.push_back(CMatrix::Constant(1, 1, -1.0));
    p1.c.push_back(CMatrix::Constant(1, 1, -1.0));
    terms.push_back({u, CMatrix::Constant(1, 1, 1.0)});
    terms.push_back({u + 1, CMatrix::Constant(1, 1, -1.0)});
    p1.rows.push_back(std::move(terms));
  }
  p1.index();

  InteriorPoint ipm(p1, opt);
  IpmResult r = ipm.run();

  Solution sol;
  sol.iterations = r.iterations;
  sol.primal.assign(r.x.begin(), r.x.begin() + nb);
  sol.dual_slack.assign(r.z.begin(), r.z.begin() + nb);
  sol.dual = r.y.cwiseProduct(s.row_scale);
  const RVector viol = s.core.b - s.core.apply(sol.primal);
  sol.residuals = {viol.norm(), r.res.dual, r.res.gap};

  if (sol.residuals.primal <= opt.accept_tol) {
    sol.status = Status::optimal;
    return sol;
  }

  // Dual of phase one: A^*(y) >= 0 on the user blocks, |y_i| <= 1, min b^T y.
  Certificate cert;
  cert.functional = s.core.adjoint(r.y);
  cert.multipliers = sol.dual;
  cert.margin = -s.core.b.dot(r.y);
  double worst = 0.0;
  for (const auto& w : cert.functional) worst = std::min(worst, min_eigenvalue(w));
  if (cert.margin >= opt.certificate_margin && worst >= -opt.accept_tol * std::max(1.0, r.y.cwiseAbs().maxCoeff())) {
    sol.status = Status::infeasible;
    sol.certificate = std::move(cert);
  } else {
    sol.status = Status::indeterminate;
  }
  (void)problem;
  return sol;
}

Solution solve_unaudited(const Problem& problem, const Options& options) {
  if (problem.blocks().empty()) throw IllPosedError("problem has no variable blocks");
  Scaled s = scale_problem(problem);
  const RMatrix a = constraint_matrix(s.core);
  reject_contradictory_duplicates(s.core, a);

  if (problem.sense() == Sense::feasibility) {
    Solution sol = feasibility(problem, s, options);
    return sol;
  }

  if (problem.constraints().empty()) throw IllPosedError("maximization without constraints is unbounded or trivial");

  // Drop linearly dependent constraints; an inconsistent dependent system
  // means the primal is infeasible.
  Core work = s.core;
  std::vector<int> kept;
  {
    Eigen::ColPivHouseholderQR<RMatrix> qr(a.transpose());
    qr.setThreshold(1e-11);
    const auto rank = qr.rank();
    if (rank < a.rows()) {
      const auto perm = qr.colsPermutation().indices();
      for (Eigen::Index i = 0; i < rank; ++i) kept.push_back(perm(i));
      std::sort(kept.begin(), kept.end());
      RMatrix basis(a.cols(), kept.size());
      RVector bk(kept.size());
      for (std::size_t i = 0; i < kept.size(); ++i) {
        basis.col(i) = a.row(kept[i]).transpose();
        bk(i) = s.core.b(kept[i]);
      }
      Eigen::ColPivHouseholderQR<RMatrix> bqr(basis);
      bool consistent = true;
      for (Eigen::Index i = 0; i < a.rows() && consistent; ++i) {
        if (std::binary_search(kept.begin(), kept.end(), static_cast<int>(i))) continue;
        RVector coef = bqr.solve(RVector(a.row(i).transpose()));
        if (std::abs(coef.dot(bk) - s.core.b(i)) > 1e-9 * (1.0 + std::abs(s.core.b(i)))) consistent = false;
      }
      if (!consistent) return feasibility(problem, s, options);
      Core reduced;
      reduced.dims = work.dims;
      reduced.c = work.c;
      reduced.b.resize(kept.size());
      for (std::size_t i = 0; i < kept.size(); ++i) {
        reduced.rows.push_back(work.rows[kept[i]]);
        reduced.b(i) = work.b(kept[i]);
      }
      work = std::move(reduced);
    }
  }
  work.index();

  InteriorPoint ipm(work, options);
  IpmResult r = ipm.run();

  Solution sol;
  sol.iterations = r.iterations;
  sol.primal = r.x;
  sol.dual_slack.resize(r.z.size());
  for (std::size_t k = 0; k < r.z.size(); ++k) sol.dual_slack[k] = s.obj_scale * r.z[k];
  sol.objective = s.obj_scale * r.pobj;
  sol.dual_objective = s.obj_scale * r.dobj;
  sol.residuals = r.res;

  // Multipliers in original units, zero for dropped constraints.
  sol.dual = RVector::Zero(problem.constraints().size());
  for (Eigen::Index i = 0; i < r.y.size(); ++i) {
    const int orig = kept.empty() ? static_cast<int>(i) : kept[i];
    sol.dual(orig) = s.obj_scale * s.row_scale(orig) * r.y(i);
  }

  const bool within = r.res.primal <= options.accept_tol && r.res.dual <= options.accept_tol &&
                      r.res.gap <= options.accept_tol;
  if (within) {
    sol.status = Status::optimal;
    return sol;
  }
  // Not converged: distinguish an empty feasible set from numerical trouble.
  Solution p1 = feasibility(problem, s, options);
  if (p1.status == Status::infeasible) return p1;
  sol.status = Status::indeterminate;
  return sol;
}

std::mutex audit_mutex;
Audit audit_totals;

void record(const Solution& sol, const Options& options) {
  bool violation = false;
  if (sol.status == Status::optimal) {
    const auto& r = sol.residuals;
    violation = r.primal > options.accept_tol || r.dual > options.accept_tol || r.gap > options.accept_tol ||
                sol.objective > sol.dual_objective + options.accept_tol;
    for (const auto& x : sol.primal) violation = violation || (x.size() > 0 && min_eigenvalue(x) < -options.accept_tol);
  } else if (sol.status == Status::infeasible) {
    violation = !sol.certificate || sol.certificate->margin < options.certificate_margin;
  }
  std::lock_guard<std::mutex> lock(audit_mutex);
  auto& a = audit_totals;
  ++a.solves;
  switch (sol.status) {
    case Status::optimal:
      ++a.optimal;
      a.worst_primal = std::max(a.worst_primal, sol.residuals.primal);
      a.worst_dual = std::max(a.worst_dual, sol.residuals.dual);
      a.worst_gap = std::max(a.worst_gap, sol.residuals.gap);
      break;
    case Status::infeasible:
      ++a.infeasible;
      break;
    case Status::indeterminate:
      ++a.indeterminate;
      break;
  }
  if (violation) ++a.contract_violations;
}

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  Solution sol = solve_unaudited(problem, options);
  record(sol, options);
  return sol;
}

Audit audit() {
  std::lock_guard<std::mutex> lock(audit_mutex);
  return audit_totals;
}

void reset_audit() {
  std::lock_guard<std::mutex> lock(audit_mutex);
  audit_totals = Audit{};
}

PovmMaximum povm_maximize(const std::vector<CMatrix>& targets, const Options& options) {
  if (targets.empty()) throw InvariantError("povm_maximize needs at least one target");
  const auto d = targets.front().rows();
  std::vector<CMatrix> herm;
  for (const auto& t : targets) {
    if (t.rows() != d || t.cols() != d) throw InvariantError("povm_maximize targets must share one dimension");
    herm.push_back(require_hermitian(t, "povm_maximize target"));
  }

  PovmMaximum out;
  if (herm.size() == 1) {
    out.status = Status::optimal;
    out.value = herm[0].trace().real();
    out.povm = {CMatrix::Identity(d, d)};
    out.dual = herm[0];
    return out;
  }

  Problem p;
  std::vector<std::size_t> blocks;
  for (std::size_t k = 0; k < herm.size(); ++k) {
    blocks.push_back(p.add_block("Pi_" + std::to_string(k), static_cast<int>(d)));
    p.set_objective(blocks.back(), herm[k]);
  }
  // sum_k Pi_k = I, one constraint per element of an orthonormal Hermitian basis.
  std::vector<CMatrix> basis;
  const double r2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = a; b < d; ++b) {
      if (a == b) {
        CMatrix e = CMatrix::Zero(d, d);
        e(a, a) = 1.0;
        basis.push_back(std::move(e));
        continue;
      }
      CMatrix re = CMatrix::Zero(d, d);
      re(a, b) = r2;
      re(b, a) = r2;
      CMatrix im = CMatrix::Zero(d, d);
      im(a, b) = Complex(0.0, r2);
      im(b, a) = Complex(0.0, -r2);
      basis.push_back(std::move(re));
      basis.push_back(std::move(im));
    }
  }
  for (const auto& e : basis) {
    std::vector<Term> terms;
    for (auto blk : blocks) terms.push_back({blk, e});
    p.add_constraint(std::move(terms), e.trace().real());
  }

  const Solution sol = solve(p, options);
  out.status = sol.status;
  out.residuals = sol.residuals;
  if (sol.status != Status::optimal) return out;

  CMatrix total = CMatrix::Zero(d, d);
  for (const auto& x : sol.primal) total += x;
  const CMatrix fix = inverse_sqrt(total);
  out.value = 0.0;
  for (std::size_t k = 0; k < herm.size(); ++k) {
    out.povm.push_back(hermitize(CMatrix(fix * sol.primal[k] * fix)));
    out.value += real_trace_product(out.povm.back(), herm[k]);
  }
  out.dual = CMatrix::Zero(d, d);
  for (std::size_t j = 0; j < basis.size(); ++j) out.dual += sol.dual(j) * basis[j];
  return out;
}

void dump(const Problem& problem, std::ostream& os) {
  os << "sense " << (problem.sense() == Sense::maximize ? "maximize" : "feasibility") << "\n";
  os << "blocks " << problem.blocks().size() << "\n";
  for (const auto& b : problem.blocks()) os << "  " << b.label << " " << b.dim << "\n";
  auto put = [&os](const CMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      os << "   ";
      for (Eigen::Index j = 0; j < m.cols(); ++j) os << " (" << m(i, j).real() << "," << m(i, j).imag() << ")";
      os << "\n";
    }
  };
  for (std::size_t k = 0; k < problem.objective().size(); ++k) {
    if (problem.objective()[k].size() == 0) continue;
    os << "objective " << problem.blocks()[k].label << "\n";
    put(problem.objective()[k]);
  }
  os << "constraints " << problem.constraints().size() << "\n";
  for (const auto& c : problem.constraints()) {
    os << "  rhs " << c.rhs << "\n";
    for (const auto& t : c.terms) {
      os << "  block " << problem.blocks()[t.block].label << "\n";
      put(t.coeff);
    }
  }
}

}  // namespace qbw::sdp
