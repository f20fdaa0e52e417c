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

#include "qblackwell/blackwell.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace qbw {

HermitianSet::HermitianSet(std::vector<CMatrix> operators) : ops_(std::move(operators)) {
  if (ops_.empty()) throw InvariantError("Hermitian set needs at least one operator");
  const auto n = ops_.front().rows();
  for (auto& op : ops_) {
    if (op.rows() != n || op.cols() != n) throw InvariantError("Hermitian set operators must share one dimension");
    op = require_hermitian(op, "Hermitian set operator");
  }
}

double HermitianSet::min_eigenvalue() const {
  double lam = std::numeric_limits<double>::infinity();
  for (const auto& op : ops_) lam = std::min(lam, qbw::min_eigenvalue(op));
  return lam;
}

namespace {

struct GameDims {
  int gamma, delta, alpha, beta;
};

GameDims game_dims(const DensityMatrix& phi, const DensityMatrix& rho_env, const HermitianSet& m) {
  if (phi.dims().size() != 2 || rho_env.dims().size() != 2) {
    throw InvariantError("payoff states must be bipartite");
  }
  GameDims g{phi.dims()[0], phi.dims()[1], rho_env.dims()[0], rho_env.dims()[1]};
  if (m.dim() != g.delta * g.beta) throw InvariantError("payoff operators must act on (delta, beta)");
  return g;
}

// Canonical order (gamma, delta, alpha, beta) <-> game order (gamma, alpha, delta, beta).
constexpr std::array<int, 4> kSwapMiddle{0, 2, 1, 3};

}  // namespace

double payoff(const DensityMatrix& phi, const DensityMatrix& rho_env, const HermitianSet& m, const Povm& povm) {
  const auto g = game_dims(phi, rho_env, m);
  if (povm.size() != m.size()) throw InvariantError("POVM element count must equal the number of operators");
  if (povm.dim() != g.gamma * g.alpha) throw InvariantError("POVM must act on (gamma, alpha)");
  const CMatrix state = kron(phi.matrix(), rho_env.matrix());
  const int n = g.gamma * g.alpha * g.delta * g.beta;
  CMatrix game = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < m.size(); ++k) game += kron(povm[k], m[k]);
  const std::array<int, 4> game_order{g.gamma, g.alpha, g.delta, g.beta};
  const CMatrix canonical = permute_subsystems(game, game_order, kSwapMiddle);
  return real_trace_product(state, canonical);
}

std::vector<CMatrix> payoff_targets(const DensityMatrix& phi, const DensityMatrix& rho_env, const HermitianSet& m) {
  const auto g = game_dims(phi, rho_env, m);
  const std::array<int, 4> canonical_order{g.gamma, g.delta, g.alpha, g.beta};
  const CMatrix state = permute_subsystems(kron(phi.matrix(), rho_env.matrix()), canonical_order, kSwapMiddle);
  const int left = g.gamma * g.alpha;
  const int right = g.delta * g.beta;
  std::vector<CMatrix> targets;
  for (const auto& mk : m.operators()) {
    const CMatrix weighted = state * kron(CMatrix::Identity(left, left), mk);
    targets.push_back(hermitize(partial_trace(weighted, left, right, Factor::first)));
  }
  return targets;
}

PayoffMax payoff_max(const DensityMatrix& phi, const DensityMatrix& rho_env, const HermitianSet& m,
                     const sdp::Options& options) {
  const auto best = sdp::povm_maximize(payoff_targets(phi, rho_env, m), options);
  return {best.status, best.value, best.povm};
}

PayoffMax payoff_max_choi(const QuantumChannel& ch, const HermitianSet& m, const sdp::Options& options) {
  const int d = ch.dim();
  if (m.dim() != d * d) throw InvariantError("payoff_max_choi operators must act on D x D");
  std::vector<CMatrix> targets;
  for (const auto& mk : m.operators()) {
    targets.push_back(apply_to_subsystem(ch, CMatrix(mk.transpose()), d, d, Factor::first));
  }
  const auto best = sdp::povm_maximize(targets, options);
  return {best.status, best.value / (static_cast<double>(d) * d), best.povm};
}

HermitianTransform hermitians_to_ensemble(const HermitianSet& m, std::vector<int> dims,
                                          std::optional<double> epsilon) {
  if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1 || dims[0] * dims[1] != m.dim()) {
    throw InvariantError("transform dims (D, d_anc) must factor the operator dimension");
  }
  const int d = dims[0];
  const int n = m.dim();
  const auto kk = static_cast<double>(m.size());

  double max_trace_ratio = -std::numeric_limits<double>::infinity();
  double trace_sum = 0.0;
  for (const auto& op : m.operators()) {
    const double tr = op.trace().real();
    trace_sum += tr;
    max_trace_ratio = std::max(max_trace_ratio, tr / d);
  }
  const double bound = std::max(0.0, max_trace_ratio);
  const double eps = epsilon.value_or(std::max(1.0, max_trace_ratio + 1.0));
  if (!(eps > bound)) {
    throw InvariantError("epsilon must exceed max(0, max_k Tr(M_k)/D) = " + std::to_string(bound), eps);
  }

  const double lambda = m.min_eigenvalue();
  const double shift = eps - lambda;
  const double denom = trace_sum + n * kk * shift;

  std::vector<EnsembleMember> members;
  double acc = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const double weight = m[k].trace().real() + n * shift;
    CMatrix rho = (CMatrix(m[k].transpose()) + shift * CMatrix::Identity(n, n)) / weight;
    const double p = k + 1 < m.size() ? weight / denom : 1.0 - acc;
    acc += p;
    members.push_back({p, DensityMatrix(hermitize(rho), dims)});
  }
  return {Ensemble(dims, std::move(members)), lambda, eps};
}

double transformed_success(double payoff_value, const HermitianSet& m, const HermitianTransform& t) {
  const int n = m.dim();
  const double shift = t.epsilon - t.lambda_min;
  double trace_sum = 0.0;
  for (const auto& op : m.operators()) trace_sum += op.trace().real();
  // payoff_max_choi carries 1/D^2; for d_anc = D that is 1/n.
  return n * (payoff_value + shift) / (trace_sum + n * static_cast<double>(m.size()) * shift);
}

std::string_view to_string(GarbleStatus status) {
  switch (status) {
    case GarbleStatus::feasible:
      return "feasible";
    case GarbleStatus::infeasible:
      return "infeasible";
    case GarbleStatus::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

namespace {

// Hermitian H with Re Tr(H Out) = Re Out_pq (imag = false) or Im Out_pq.
CMatrix entry_selector(int n, int p, int q, bool imag) {
  CMatrix h = CMatrix::Zero(n, n);
  if (p == q) {
    h(p, p) = 1.0;
  } else if (!imag) {
    h(p, q) = 0.5;
    h(q, p) = 0.5;
  } else {
    h(q, p) = Complex(0.0, -0.5);
    h(p, q) = Complex(0.0, 0.5);
  }
  return h;
}

// Projects a near-Choi matrix onto exact trace preservation: Tr_1 X = I/D.
CMatrix enforce_marginal(const CMatrix& x, int d) {
  const CMatrix marginal = static_cast<double>(d) * partial_trace(x, d, d, Factor::second);
  const CMatrix a = kron(CMatrix::Identity(d, d), inverse_sqrt(marginal));
  return hermitize(CMatrix(a * x * a));
}

}  // namespace

GarbleResult garble_check_states(const DensityMatrix& psi, const DensityMatrix& phi, double tol) {
  if (psi.dims().size() != 2 || phi.dims().size() != 2 || psi.dims() != phi.dims()) {
    throw InvariantError("garbling states must share bipartite dims (D, d2)");
  }
  const int d = phi.dims()[0];
  const int d2 = phi.dims()[1];
  const int nx = d * d;   // Choi space of E: (out, in)
  const int no = d * d2;  // output space: (gamma, delta)
  const CMatrix& f = phi.matrix();
  const CMatrix& target = psi.matrix();

  // Output entry (a,k),(b,l) = D sum_ij X_(a,i),(b,j) phi_(i,k),(j,l).
  struct Row {
    CMatrix coeff;
    double rhs;
    int p = -1, q = -1;  // output entry, or -1 for trace preservation
    bool imag = false;
  };
  std::vector<Row> rows;
  for (int p = 0; p < no; ++p) {
    for (int q = p; q < no; ++q) {
      const int a = p / d2, k = p % d2;
      const int b = q / d2, l = q % d2;
      CMatrix g = CMatrix::Zero(nx, nx);  // Tr(G X) = Out_pq
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(b * d + j, a * d + i) = static_cast<double>(d) * f(i * d2 + k, j * d2 + l);
      rows.push_back({hermitize(g), target(p, q).real(), p, q, false});
      if (p != q) rows.push_back({hermitize(CMatrix(Complex(0.0, -1.0) * g)), target(p, q).imag(), p, q, true});
    }
  }
  // Trace preservation: sum_a X_(a,i),(a,j) = delta_ij / D.
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      CMatrix g = CMatrix::Zero(nx, nx);  // Tr(G X) = sum_a X_(a,i),(a,j)
      for (int a = 0; a < d; ++a) g(a * d + j, a * d + i) = 1.0;
      rows.push_back({hermitize(g), i == j ? 1.0 / d : 0.0});
      if (i != j) rows.push_back({hermitize(CMatrix(Complex(0.0, -1.0) * g)), 0.0});
    }
  }

  GarbleResult out;
  auto output_part = [&](const std::vector<std::pair<std::size_t, double>>& weights) {
    CMatrix y = CMatrix::Zero(no, no);
    for (const auto& [i, w] : weights) {
      if (rows[i].p >= 0) y += w * entry_selector(no, rows[i].p, rows[i].q, rows[i].imag);
    }
    return y;
  };

  // Rows that vanish or repeat another row up to scale decide feasibility on
  // their own when their right-hand sides disagree.
  std::vector<double> norms(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) norms[i] = spectral_norm(rows[i].coeff);
  std::vector<std::size_t> kept;
  double worst = 0.0;
  std::vector<std::pair<std::size_t, double>> worst_weights;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (norms[i] <= 1e-14) {
      if (std::abs(rows[i].rhs) > worst) {
        worst = std::abs(rows[i].rhs);
        worst_weights = {{i, rows[i].rhs > 0 ? -1.0 : 1.0}};
      }
      continue;
    }
    bool duplicate = false;
    for (std::size_t j : kept) {
      if ((rows[i].coeff / norms[i] - rows[j].coeff / norms[j]).cwiseAbs().maxCoeff() > 1e-12) continue;
      duplicate = true;
      const double clash = rows[i].rhs / norms[i] - rows[j].rhs / norms[j];
      if (std::abs(clash) > worst) {
        worst = std::abs(clash);
        const double sign = clash > 0 ? -1.0 : 1.0;
        worst_weights = {{i, sign / norms[i]}, {j, -sign / norms[j]}};
      }
      break;
    }
    if (!duplicate) kept.push_back(i);
  }
  if (worst >= tol) {
    out.status = GarbleStatus::infeasible;
    out.residual = worst;
    out.certificate_margin = worst;
    CMatrix w = CMatrix::Zero(nx, nx);
    for (const auto& [i, c] : worst_weights) w += c * rows[i].coeff;
    out.certificate = w;
    out.output_multiplier = output_part(worst_weights);
    return out;
  }

  sdp::Problem problem(sdp::Sense::feasibility);
  const auto blk = problem.add_block("choi(E)", nx);
  for (std::size_t i : kept) problem.add_constraint({{blk, rows[i].coeff}}, rows[i].rhs);

  sdp::Options opt;
  opt.accept_tol = tol;
  opt.certificate_margin = tol;
  const auto sol = sdp::solve(problem, opt);

  out.iterations = sol.iterations;
  out.residual = sol.residuals.primal;
  if (sol.status == sdp::Status::optimal) {
    try {
      const CMatrix x = enforce_marginal(sol.primal[blk], d);
      const CMatrix xn = x / x.trace().real();
      QuantumChannel e = channel_from_choi(DensityMatrix(xn, {d, d}));
      const CMatrix image = apply_to_subsystem(e, f, d, d2, Factor::first);
      out.residual = (image - target).norm();
      out.status = out.residual <= tol ? GarbleStatus::feasible : GarbleStatus::indeterminate;
      out.garbling = std::move(e);
    } catch (const std::exception&) {
      out.status = GarbleStatus::indeterminate;
    }
    return out;
  }
  if (sol.status == sdp::Status::infeasible && sol.certificate) {
    out.status = GarbleStatus::infeasible;
    out.certificate = sol.certificate->functional[blk];
    out.certificate_margin = sol.certificate->margin;
    std::vector<std::pair<std::size_t, double>> weights;
    for (std::size_t r = 0; r < kept.size(); ++r) weights.emplace_back(kept[r], sol.certificate->multipliers(r));
    out.output_multiplier = output_part(weights);
    return out;
  }
  out.status = GarbleStatus::indeterminate;
  return out;
}

GarbleResult garble_check(const QuantumChannel& a, const QuantumChannel& b, double tol) {
  if (a.dim() != b.dim()) throw InvariantError("compared channels must have equal dimension");
  return garble_check_states(a.choi(), b.choi(), tol);
}

namespace {

// Ensemble parameterized by one factor G_k per member (rho_k = G G^dagger /
// Tr) and unnormalized log-priors.
struct Params {
  std::vector<CMatrix> factors;
  std::vector<double> logits;
};

Ensemble to_ensemble(const Params& p, const std::vector<int>& dims) {
  const std::size_t k = p.factors.size();
  const double top = *std::max_element(p.logits.begin(), p.logits.end());
  std::vector<double> w(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) total += (w[i] = std::exp(p.logits[i] - top));
  std::vector<EnsembleMember> members;
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double prob = i + 1 < k ? w[i] / total : std::max(0.0, 1.0 - acc);
    acc += prob;
    CMatrix rho = p.factors[i] * p.factors[i].adjoint();
    rho /= rho.trace().real();
    members.push_back({prob, DensityMatrix(hermitize(rho), dims)});
  }
  return Ensemble(dims, std::move(members));
}

Params from_ensemble(const Ensemble& ens) {
  Params p;
  for (const auto& m : ens.members()) {
    p.factors.push_back(psd_sqrt(m.state.matrix()));
    p.logits.push_back(std::log(std::max(m.prob, 1e-12)));
  }
  return p;
}

Ensemble equal_prior_pure(const std::vector<CVector>& vecs, const std::vector<int>& dims) {
  std::vector<EnsembleMember> members;
  const auto k = vecs.size();
  for (std::size_t i = 0; i < k; ++i) members.push_back({1.0 / k, DensityMatrix::pure(vecs[i], dims)});
  return Ensemble(dims, std::move(members));
}

class WitnessSearch {
 public:
  WitnessSearch(const QuantumChannel& a, const QuantumChannel& b, const WitnessOptions& opt)
      : a_(a), b_(b), opt_(opt), rng_(opt.seed) {
    d_ = a.dim();
    d_anc_ = opt.d_anc > 0 ? opt.d_anc : d_;
    dims_ = {d_, d_anc_};
    n_ = d_ * d_anc_;
  }

  std::optional<Witness> run() {
    for (const auto& ens : seeds()) consider(ens);
    for (int r = 0; r < opt_.restarts; ++r) {
      Params start = (r == 0 && best_) ? from_ensemble(best_->first) : random_params();
      climb(std::move(start));
    }
    if (!best_ || best_->second < 10.0 * opt_.tol) return std::nullopt;

    // Independent SDP re-verification of both sides.
    const auto& ens = best_->first;
    const auto pa = discriminate_through_channel(ens, a_, DiscriminationMethod::sdp);
    const auto pb = discriminate_through_channel(ens, b_, DiscriminationMethod::sdp);
    if (pa.status != sdp::Status::optimal || pb.status != sdp::Status::optimal) return std::nullopt;
    const double gap = pa.p_max - pb.p_max;
    if (gap < 10.0 * opt_.tol) return std::nullopt;
    return Witness{ens, pa.p_max, pb.p_max, gap};
  }

 private:
  double gap(const Ensemble& ens) const {
    const auto pa = discriminate_through_channel(ens, a_);
    const auto pb = discriminate_through_channel(ens, b_);
    if (pa.status != sdp::Status::optimal || pb.status != sdp::Status::optimal) {
      return -std::numeric_limits<double>::infinity();
    }
    return pa.p_max - pb.p_max;
  }

  void consider(const Ensemble& ens) {
    const double g = gap(ens);
    if (!best_ || g > best_->second) best_.emplace(ens, g);
  }

  std::vector<Ensemble> seeds() const {
    std::vector<Ensemble> out;
    const int k = opt_.k;
    // Orthogonal maximally entangled subsets.
    if (d_anc_ == d_ && k <= n_) {
      std::vector<int> idx(k);
      std::iota(idx.begin(), idx.end(), 0);
      for (int count = 0; count < 24; ++count) {
        std::vector<CVector> vecs;
        for (int i : idx) vecs.push_back(generalized_bell_vector(d_, i));
        out.push_back(equal_prior_pure(vecs, dims_));
        if (!next_combination(idx, n_)) break;
      }
    }
    // Product states: computational and Fourier bases on the system.
    if (k <= n_) {
      for (int basis = 0; basis < 2; ++basis) {
        std::vector<CVector> vecs;
        for (int i = 0; i < k; ++i) {
          const int sys = i % d_;
          const int anc = (i / d_) % d_anc_;
          CVector s = CVector::Zero(d_);
          if (basis == 0) {
            s(sys) = 1.0;
          } else {
            for (int j = 0; j < d_; ++j) s(j) = std::polar(1.0 / std::sqrt(double(d_)), 2.0 * std::numbers::pi * sys * j / d_);
          }
          vecs.push_back(kron(s, basis_vector(d_anc_, anc)));
        }
        out.push_back(equal_prior_pure(vecs, dims_));
      }
    }
    // Choi eigenvectors.
    if (d_anc_ == d_ && k <= n_) {
      for (const CMatrix& j : {a_.choi().matrix(), CMatrix(a_.choi().matrix() - b_.choi().matrix())}) {
        const auto eig = hermitian_eig(j);
        std::vector<CVector> vecs;
        for (int i = 0; i < k; ++i) vecs.push_back(eig.vectors.col(n_ - 1 - i));
        out.push_back(equal_prior_pure(vecs, dims_));
      }
    }
    // Certificate-seeded sets {cW, -cW, 0, ...}.
    if (d_anc_ == d_) {
      for (const auto* w : {&opt_.certificate, &opt_.output_multiplier}) {
        if (!*w || (*w)->rows() != n_) continue;
        const double scale = (*w)->cwiseAbs().maxCoeff();
        if (scale <= 0.0) continue;
        std::vector<CMatrix> ops{**w / scale, -**w / scale};
        while (static_cast<int>(ops.size()) < k) ops.push_back(CMatrix::Zero(n_, n_));
        try {
          out.push_back(hermitians_to_ensemble(HermitianSet(ops), dims_).ensemble);
        } catch (const InvariantError&) {
        }
      }
    }
    return out;
  }

  static bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
      if (idx[i] < n - k + i) {
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

  Params random_params() {
    Params p;
    std::normal_distribution<double> g(0.0, 0.3);
    for (int i = 0; i < opt_.k; ++i) {
      p.factors.push_back(random_ginibre(n_, 1, rng_));
      p.logits.push_back(g(rng_));
    }
    return p;
  }

  void climb(Params p) {
    std::normal_distribution<double> g(0.0, 1.0);
    double current = gap(to_ensemble(p, dims_));
    double step = 0.3;
    for (int it = 0; it < opt_.iterations && step > 1e-6; ++it) {
      Params trial = p;
      for (auto& f : trial.factors) {
        const double scale = step * std::max(f.norm() / std::sqrt(double(f.size())), 1e-3);
        for (Eigen::Index i = 0; i < f.size(); ++i) f(i) += scale * Complex(g(rng_), g(rng_));
      }
      for (auto& l : trial.logits) l += step * g(rng_);
      const Ensemble ens = to_ensemble(trial, dims_);
      const double value = gap(ens);
      if (value > current) {
        current = value;
        p = std::move(trial);
        step *= 1.3;
        if (!best_ || value > best_->second) best_.emplace(ens, value);
      } else {
        step *= 0.85;
      }
    }
  }

  const QuantumChannel& a_;
  const QuantumChannel& b_;
  const WitnessOptions& opt_;
  Rng rng_;
  int d_ = 0, d_anc_ = 0, n_ = 0;
  std::vector<int> dims_;
  std::optional<std::pair<Ensemble, double>> best_;
};

}  // namespace

std::optional<Witness> find_witness(const QuantumChannel& a, const QuantumChannel& b, const WitnessOptions& options) {
  if (a.dim() != b.dim()) throw InvariantError("compared channels must have equal dimension");
  if (options.k < 2) throw InvariantError("witness search needs K >= 2");
  return WitnessSearch(a, b, options).run();
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::a_noisier:
      return "A-at-least-as-noisy";
    case Verdict::b_noisier:
      return "B-at-least-as-noisy";
    case Verdict::equivalent:
      return "equivalent";
    case Verdict::incomparable:
      return "incomparable";
    case Verdict::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

Verdict verdict_from(GarbleStatus a_to_b, GarbleStatus b_to_a) {
  using S = GarbleStatus;
  if (a_to_b == S::indeterminate || b_to_a == S::indeterminate) return Verdict::indeterminate;
  if (a_to_b == S::feasible && b_to_a == S::feasible) return Verdict::equivalent;
  if (a_to_b == S::feasible) return Verdict::a_noisier;
  if (b_to_a == S::feasible) return Verdict::b_noisier;
  return Verdict::incomparable;
}

ComparisonReport compare(const QuantumChannel& a, const QuantumChannel& b, const CompareOptions& options) {
  if (a.dim() != b.dim()) throw InvariantError("compared channels must have equal dimension");
  ComparisonReport report;
  report.a_to_b = garble_check(a, b, options.tol);
  report.b_to_a = garble_check(b, a, options.tol);
  report.verdict = verdict_from(report.a_to_b.status, report.b_to_a.status);

  if (!options.search_witnesses) return report;
  const int d = a.dim();
  auto search = [&](const QuantumChannel& x, const QuantumChannel& y, const GarbleResult& direction) {
    std::optional<Witness> found;
    for (int k : {2, d * d}) {
      WitnessOptions wo;
      wo.k = k;
      wo.restarts = options.restarts;
      wo.seed = options.seed;
      wo.tol = options.tol;
      wo.certificate = direction.certificate;
      wo.output_multiplier = direction.output_multiplier;
      found = find_witness(x, y, wo);
      if (found || k == d * d) break;
    }
    return found;
  };
  if (report.a_to_b.status == GarbleStatus::infeasible) report.a_over_b = search(a, b, report.a_to_b);
  if (report.b_to_a.status == GarbleStatus::infeasible) report.b_over_a = search(b, a, report.b_to_a);
  return report;
}

}  // namespace qbw
