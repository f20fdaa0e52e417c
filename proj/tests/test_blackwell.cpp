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

#include <gtest/gtest.h>

#include "support.hpp"

namespace qbw {
namespace {

using testing::max_diff;
using testing::operators_for;
using testing::pauli_z;
using testing::random_hermitian_set;

// Direct contraction over (gamma, delta, alpha, beta) index tuples.
double payoff_oracle(const DensityMatrix& phi, const DensityMatrix& rho, const HermitianSet& m, const Povm& povm) {
  const int g = phi.dims()[0], dl = phi.dims()[1], al = rho.dims()[0], be = rho.dims()[1];
  Complex total = 0;
  for (std::size_t k = 0; k < m.size(); ++k)
    for (int g1 = 0; g1 < g; ++g1)
      for (int d1 = 0; d1 < dl; ++d1)
        for (int a1 = 0; a1 < al; ++a1)
          for (int b1 = 0; b1 < be; ++b1)
            for (int g2 = 0; g2 < g; ++g2)
              for (int d2 = 0; d2 < dl; ++d2)
                for (int a2 = 0; a2 < al; ++a2)
                  for (int b2 = 0; b2 < be; ++b2) {
                    total += phi.matrix()(g1 * dl + d1, g2 * dl + d2) * rho.matrix()(a1 * be + b1, a2 * be + b2) *
                             povm[k](g2 * al + a2, g1 * al + a1) * m[k](d2 * be + b2, d1 * be + b1);
                  }
  return total.real();
}

// Best two-outcome POVM value by random search and local refinement over
// Pi_1 = U diag(s) U^dagger, U = exp(iH).
double two_outcome_search(const CMatrix& n1, const CMatrix& n2, Rng& rng) {
  const int d = static_cast<int>(n1.rows());
  std::normal_distribution<double> g(0.0, 1.0);
  auto value = [&](const CMatrix& h, const RVector& s) {
    const auto eig = hermitian_eig(h);
    CVector phases(d);
    for (int i = 0; i < d; ++i) phases(i) = std::polar(1.0, eig.values(i));
    const CMatrix u = eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
    const CMatrix pi1 = u * s.cast<Complex>().asDiagonal() * u.adjoint();
    return real_trace_product(pi1, n1) + real_trace_product(CMatrix(CMatrix::Identity(d, d) - pi1), n2);
  };
  double best = -INFINITY;
  for (int start = 0; start < 6; ++start) {
    CMatrix h = random_hermitian(d, rng);
    RVector s = RVector::Constant(d, 0.5);
    double current = value(h, s);
    double step = 0.5;
    for (int it = 0; it < 6000 && step > 1e-7; ++it) {
      CMatrix dh = random_hermitian(d, rng) * step;
      RVector ds(d);
      for (int i = 0; i < d; ++i) ds(i) = step * g(rng);
      const CMatrix h2 = h + dh;
      const RVector s2 = (s + ds).cwiseMax(0.0).cwiseMin(1.0);
      const double v = value(h2, s2);
      if (v > current) {
        current = v;
        h = h2;
        s = s2;
        step *= 1.2;
      } else {
        step *= 0.995;
      }
    }
    best = std::max(best, current);
  }
  return best;
}

TEST(Payoff, TrivialCases) {
  Rng rng(103);
  const auto phi = DensityMatrix(random_density(4, rng).matrix(), {2, 2});
  const auto rho = DensityMatrix(random_density(4, rng).matrix(), {2, 2});
  const HermitianSet unit({CMatrix::Identity(4, 4)});
  EXPECT_NEAR(payoff(phi, rho, unit, Povm({CMatrix::Identity(4, 4)})), 1.0, 1e-12);

  // Product states and K = 1: product of expectation values.
  const CMatrix p1 = random_density(2, rng).matrix(), p2 = random_density(2, rng).matrix();
  const CMatrix r1 = random_density(2, rng).matrix(), r2 = random_density(2, rng).matrix();
  const CMatrix md = random_hermitian(2, rng), mb = random_hermitian(2, rng);
  const double expect = real_trace_product(p2, md) * real_trace_product(r2, mb);
  EXPECT_NEAR(payoff(DensityMatrix(kron(p1, p2), {2, 2}), DensityMatrix(kron(r1, r2), {2, 2}),
                     HermitianSet({kron(md, mb)}), Povm({CMatrix::Identity(4, 4)})),
              expect, 1e-12);
}

TEST(Payoff, MatchesIndexContraction) {
  Rng rng(107);
  for (int rep = 0; rep < 5; ++rep) {
    const auto phi = DensityMatrix(random_density(4, rng).matrix(), {2, 2});
    const auto rho = DensityMatrix(random_density(4, rng).matrix(), {2, 2});
    const auto m = random_hermitian_set(3, 4, rng);
    const auto povm = min_error_discriminate(random_ensemble(3, 2, 2, rng)).povm;
    EXPECT_NEAR(payoff(phi, rho, m, *povm), payoff_oracle(phi, rho, m, *povm), 1e-10);
  }
  // Unequal dimensions exercise the reordering.
  const auto phi = DensityMatrix(random_density(6, rng).matrix(), {2, 3});
  const auto rho = DensityMatrix(random_density(6, rng).matrix(), {3, 2});
  const auto m = random_hermitian_set(2, 6, rng);
  const auto povm = helstrom_binary(random_ensemble(2, 2, 3, rng)).povm;
  EXPECT_NEAR(payoff(phi, rho, m, *povm), payoff_oracle(phi, rho, m, *povm), 1e-10);
  EXPECT_THROW(payoff(phi, rho, HermitianSet({CMatrix::Identity(4, 4)}), *povm), InvariantError);
}

TEST(PayoffMax, TrivialCases) {
  Rng rng(109);
  const auto phi = DensityMatrix(random_density(4, rng).matrix(), {2, 2});
  const auto rho = DensityMatrix(random_density(4, rng).matrix(), {2, 2});
  const CMatrix m1 = random_hermitian(4, rng);
  const double direct = real_trace_product(kron(phi.matrix(), rho.matrix()),
                                           permute_subsystems(kron(CMatrix::Identity(4, 4), m1),
                                                              std::array<int, 4>{2, 2, 2, 2}, std::array<int, 4>{0, 2, 1, 3}));
  const auto one = payoff_max(phi, rho, HermitianSet({m1}));
  EXPECT_NEAR(one.value, direct, 1e-10);
  const auto same = payoff_max(phi, rho, HermitianSet({m1, m1, m1}));
  ASSERT_EQ(same.status, sdp::Status::optimal);
  EXPECT_NEAR(same.value, direct, 1e-7);
}

TEST(PayoffMax, AgreesWithSearchOverTwoOutcomePovms) {
  Rng rng(113);
  for (int rep = 0; rep < 3; ++rep) {
    const auto phi = DensityMatrix(random_density(4, rng).matrix(), {2, 2});
    const auto rho = DensityMatrix(random_density(4, rng).matrix(), {2, 2});
    const auto m = random_hermitian_set(2, 4, rng);
    const auto best = payoff_max(phi, rho, m);
    ASSERT_EQ(best.status, sdp::Status::optimal);
    const auto targets = payoff_targets(phi, rho, m);
    // Closed form: Tr N_2 plus the positive part of N_1 - N_2.
    const RVector ev = hermitian_eig(CMatrix(targets[0] - targets[1])).values;
    EXPECT_NEAR(best.value, targets[1].trace().real() + ev.cwiseMax(0.0).sum(), 1e-7);
    const double searched = two_outcome_search(targets[0], targets[1], rng);
    EXPECT_LE(searched, best.value + 1e-9);
    EXPECT_GE(searched, best.value - 1e-2);
    // The maximizing POVM achieves the value through the full payoff.
    EXPECT_NEAR(payoff(phi, rho, m, Povm(best.povm)), best.value, 1e-7);
  }
}

TEST(PayoffMaxChoi, AgreesWithGenericRoute) {
  Rng rng(127);
  for (int rep = 0; rep < 10; ++rep) {
    const int d = 2 + rep % 2;
    const auto ch = random_channel(d, rng);
    const auto m = random_hermitian_set(2 + rep % 2, d * d, rng);
    const auto fast = payoff_max_choi(ch, m);
    const auto slow = payoff_max(ch.choi(), max_entangled(d), m);
    ASSERT_EQ(fast.status, sdp::Status::optimal);
    ASSERT_EQ(slow.status, sdp::Status::optimal);
    EXPECT_NEAR(fast.value, slow.value, 1e-7);
  }
  EXPECT_NEAR(payoff_max_choi(random_channel(2, rng), HermitianSet({CMatrix::Identity(4, 4)})).value, 1.0, 1e-12);
}

TEST(PayoffMaxChoi, EqualsSuccessProbabilityForEnsembleOperators) {
  Rng rng(131);
  const auto ens = random_ensemble(3, 2, 2, rng);
  EXPECT_NEAR(payoff_max_choi(identity_channel(2), operators_for(ens)).value, min_error_discriminate(ens).p_max, 1e-7);
  for (int rep = 0; rep < 10; ++rep) {
    const auto e = random_ensemble(2 + rep % 3, 2, 2, rng);
    const auto ch = random_channel(2, rng);
    EXPECT_NEAR(payoff_max_choi(ch, operators_for(e)).value, discriminate_through_channel(e, ch).p_max, 1e-7);
  }
}

TEST(PayoffMaxChoi, ShiftAndScaleCovariance) {
  Rng rng(137);
  for (int rep = 0; rep < 10; ++rep) {
    const auto ch = random_channel(2, rng);
    const auto m = random_hermitian_set(3, 4, rng);
    std::uniform_real_distribution<double> unif(0.2, 3.0);
    const double c = unif(rng), t = unif(rng) - 1.5;
    std::vector<CMatrix> moved;
    for (const auto& op : m.operators()) moved.push_back(c * op + t * CMatrix::Identity(4, 4));
    EXPECT_NEAR(payoff_max_choi(ch, HermitianSet(moved)).value, c * payoff_max_choi(ch, m).value + t, 1e-8);
  }
}

TEST(PayoffMaxChoi, ForwardDirectionOfTheOrder) {
  Rng rng(139);
  for (int rep = 0; rep < 10; ++rep) {
    const auto b = random_channel(2, rng), e = random_channel(2, rng);
    const auto a = compose(e, b);
    const auto m = random_hermitian_set(2 + rep % 3, 4, rng);
    EXPECT_GE(payoff_max_choi(b, m).value, payoff_max_choi(a, m).value - 1e-7);
  }
}

TEST(Transform, Examples) {
  const HermitianSet z({kron(pauli_z(), CMatrix::Identity(2, 2))});
  const auto t = hermitians_to_ensemble(z, {2, 2}, 1.0);
  EXPECT_NEAR(t.lambda_min, -1.0, 1e-14);
  EXPECT_EQ(t.epsilon, 1.0);
  EXPECT_EQ(t.ensemble[0].prob, 1.0);
  RVector diag(4);
  diag << 3, 3, 1, 1;
  EXPECT_LE(max_diff(t.ensemble[0].state.matrix(), CMatrix((diag / 8.0).cast<Complex>().asDiagonal())), 1e-15);

  const HermitianSet ids({CMatrix::Identity(4, 4), CMatrix::Identity(4, 4), CMatrix::Identity(4, 4)});
  const auto u = hermitians_to_ensemble(ids, {2, 2});
  for (const auto& m : u.ensemble.members()) {
    EXPECT_NEAR(m.prob, 1.0 / 3.0, 1e-15);
    EXPECT_LE(max_diff(m.state.matrix(), CMatrix::Identity(4, 4) / 4.0), 1e-15);
  }
  // Auto epsilon is max(1, max_k Tr M_k / D + 1) = 3.
  EXPECT_NEAR(u.epsilon, 3.0, 1e-15);
}

TEST(Transform, EpsilonBound) {
  const HermitianSet ids({CMatrix::Identity(4, 4)});
  // Tr M / D = 2: epsilon must exceed 2.
  EXPECT_THROW(hermitians_to_ensemble(ids, {2, 2}, 2.0), InvariantError);
  EXPECT_NO_THROW(hermitians_to_ensemble(ids, {2, 2}, 2.5));
  const HermitianSet neg({-CMatrix::Identity(4, 4)});
  EXPECT_THROW(hermitians_to_ensemble(neg, {2, 2}, 0.0), InvariantError);
  EXPECT_THROW(hermitians_to_ensemble(ids, {2, 3}), InvariantError);
}

// The ensemble's success probability through ch is the affine image of the
// Choi payoff: n (R + eps - Lambda) / (sum_k Tr M_k + n K (eps - Lambda)).
TEST(Transform, CorrespondenceWithChoiPayoff) {
  Rng rng(149);
  const auto a = amplitude_damping(0.3);
  const auto b = depolarizing(0.6, 2);
  for (int rep = 0; rep < 10; ++rep) {
    const auto m = random_hermitian_set(1 + rep % 3, 4, rng);
    std::optional<double> eps;
    if (rep % 2) eps = 5.0 + rep;
    const auto t = hermitians_to_ensemble(m, {2, 2}, eps);
    double trace_sum = 0.0;
    for (const auto& op : m.operators()) trace_sum += op.trace().real();
    const double shift = t.epsilon - t.lambda_min;
    for (const auto* ch : {&a, &b}) {
      const double r = payoff_max_choi(*ch, m).value;
      const double expect = 4.0 * (r + shift) / (trace_sum + 4.0 * m.size() * shift);
      EXPECT_NEAR(discriminate_through_channel(t.ensemble, *ch).p_max, expect, 1e-7);
      EXPECT_NEAR(transformed_success(r, m, t), expect, 1e-12);
    }
  }
}

TEST(Transform, RoundtripOfEnsembleOperators) {
  Rng rng(151);
  const auto ens = random_ensemble(3, 2, 2, rng);
  const auto m = operators_for(ens);
  const auto t = hermitians_to_ensemble(m, {2, 2}, 1e3);
  const auto ch = random_channel(2, rng);
  const double p_orig = discriminate_through_channel(ens, ch).p_max;
  const double p_new = discriminate_through_channel(t.ensemble, ch).p_max;
  const double shift = t.epsilon - t.lambda_min;
  // sum_k Tr M_k = n for ensemble operators.
  EXPECT_NEAR(p_new, 4.0 * (p_orig + shift) / (4.0 + 12.0 * shift), 1e-7);
}

TEST(GarbleCheck, Examples) {
  Rng rng(157);
  const auto ch = random_channel(2, rng);
  const auto same = garble_check(ch, ch);
  ASSERT_EQ(same.status, GarbleStatus::feasible);
  EXPECT_LE(same.residual, 1e-7);

  const auto dep = garble_check(depolarizing(0.25, 2), depolarizing(0.5, 2));
  ASSERT_EQ(dep.status, GarbleStatus::feasible);
  ASSERT_TRUE(dep.garbling.has_value());
  EXPECT_LE(max_diff(compose(*dep.garbling, depolarizing(0.5, 2)).choi().matrix(), depolarizing(0.25, 2).choi().matrix()),
            1e-7);

  const auto id = garble_check(identity_channel(2), depolarizing(0.5, 2));
  ASSERT_EQ(id.status, GarbleStatus::infeasible);
  ASSERT_TRUE(id.certificate.has_value());
  EXPECT_GE(id.certificate_margin, 1e-7);
  EXPECT_GE(min_eigenvalue(*id.certificate), -1e-7);
  EXPECT_THROW(garble_check(identity_channel(2), identity_channel(3)), InvariantError);
}

TEST(GarbleCheck, AmplitudeDampingOrder) {
  const auto down = garble_check(amplitude_damping(0.8), amplitude_damping(0.5));
  ASSERT_EQ(down.status, GarbleStatus::feasible);
  EXPECT_LE(down.residual, 1e-7);
  EXPECT_LE(max_diff(down.garbling->choi().matrix(), amplitude_damping(0.6).choi().matrix()), 1e-6);
  EXPECT_EQ(garble_check(amplitude_damping(0.3), amplitude_damping(0.5)).status, GarbleStatus::infeasible);
}

TEST(GarbleCheck, DepolarizingGrid) {
  const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (double la : grid) {
    for (double lb : grid) {
      const auto r = garble_check(depolarizing(la, 2), depolarizing(lb, 2));
      const bool expect = la <= lb;
      EXPECT_EQ(r.status, expect ? GarbleStatus::feasible : GarbleStatus::infeasible) << la << " from " << lb;
    }
  }
}

TEST(GarbleCheck, RandomDivisiblePairsAreFeasible) {
  Rng rng(163);
  for (int rep = 0; rep < 8; ++rep) {
    const int d = 2 + rep % 2;
    const auto b = random_channel(d, rng), e = random_channel(d, rng);
    const auto a = compose(e, b);
    const auto r = garble_check(a, b);
    ASSERT_EQ(r.status, GarbleStatus::feasible) << "rep " << rep;
    EXPECT_LE(max_diff(compose(*r.garbling, b).choi().matrix(), a.choi().matrix()), 1e-7);
  }
}

TEST(GarbleCheckStates, Examples) {
  Rng rng(167);
  const auto phi = DensityMatrix(random_density(4, rng).matrix(), {2, 2});
  EXPECT_EQ(garble_check_states(phi, phi).status, GarbleStatus::feasible);

  const auto ch = random_channel(2, rng);
  const auto imprint = garble_check_states(ch.choi(), max_entangled(2));
  ASSERT_EQ(imprint.status, GarbleStatus::feasible);
  EXPECT_LE(max_diff(imprint.garbling->choi().matrix(), ch.choi().matrix()), 1e-7);

  const auto product = DensityMatrix(CMatrix::Identity(4, 4) / 4.0, {2, 2});
  const auto r = garble_check_states(max_entangled(2), product);
  EXPECT_EQ(r.status, GarbleStatus::infeasible);
  // Sanity: the target is entangled (negative partial transpose) while
  // every local image of a product state is separable.
  EXPECT_LT(min_eigenvalue(partial_transpose(max_entangled(2).matrix(), 2, 2, Factor::second)), -0.1);

  // garble_check is the Choi-state instance.
  const auto a = random_channel(2, rng), b = random_channel(2, rng);
  EXPECT_EQ(garble_check(a, b).status, garble_check_states(a.choi(), b.choi()).status);
}

TEST(FindWitness, Examples) {
  WitnessOptions o;
  o.d_anc = 2;
  const auto w = find_witness(identity_channel(2), depolarizing(0.5, 2), o);
  ASSERT_TRUE(w.has_value());
  EXPECT_GE(w->gap, 0.2);
  EXPECT_NEAR(w->p_a - w->p_b, w->gap, 1e-12);
  EXPECT_NEAR(discriminate_through_channel(w->ensemble, identity_channel(2), DiscriminationMethod::sdp).p_max, w->p_a,
              1e-7);

  EXPECT_FALSE(find_witness(depolarizing(0.5, 2), depolarizing(0.5, 2)).has_value());
  EXPECT_FALSE(find_witness(depolarizing(0.5, 2), identity_channel(2)).has_value());
  o.k = 1;
  EXPECT_THROW(find_witness(identity_channel(2), depolarizing(0.5, 2), o), InvariantError);
}

TEST(FindWitness, AmplitudeDamping) {
  const auto w = find_witness(amplitude_damping(0.3), amplitude_damping(0.5));
  ASSERT_TRUE(w.has_value());
  EXPECT_GE(w->gap, 1e-3);
}

TEST(FindWitness, DeterministicGivenSeed) {
  WitnessOptions o;
  o.seed = 5;
  const auto w1 = find_witness(amplitude_damping(0.5), dephasing(0.5), o);
  const auto w2 = find_witness(amplitude_damping(0.5), dephasing(0.5), o);
  ASSERT_TRUE(w1 && w2);
  EXPECT_EQ(w1->gap, w2->gap);
}

TEST(Verdict, Table) {
  using S = GarbleStatus;
  EXPECT_EQ(verdict_from(S::feasible, S::feasible), Verdict::equivalent);
  EXPECT_EQ(verdict_from(S::feasible, S::infeasible), Verdict::a_noisier);
  EXPECT_EQ(verdict_from(S::infeasible, S::feasible), Verdict::b_noisier);
  EXPECT_EQ(verdict_from(S::infeasible, S::infeasible), Verdict::incomparable);
  EXPECT_EQ(verdict_from(S::indeterminate, S::feasible), Verdict::indeterminate);
  EXPECT_EQ(verdict_from(S::infeasible, S::indeterminate), Verdict::indeterminate);
}

TEST(Compare, Examples) {
  const auto dep = compare(depolarizing(0.3, 2), depolarizing(0.7, 2));
  EXPECT_EQ(dep.verdict, Verdict::a_noisier);
  EXPECT_FALSE(dep.a_over_b.has_value());
  ASSERT_TRUE(dep.b_over_a.has_value());
  EXPECT_GT(dep.b_over_a->gap, 0.0);

  Rng rng(173);
  const auto u = compare(unitary_channel(random_unitary(2, rng)), unitary_channel(random_unitary(2, rng)));
  EXPECT_EQ(u.verdict, Verdict::equivalent);
}

// Regression fixture from the first verified run: neither channel is a
// garbling of the other, and each direction has an SDP-verified witness.
TEST(Compare, AmplitudeDampingVersusDephasing) {
  const auto r = compare(amplitude_damping(0.5), dephasing(0.5));
  EXPECT_EQ(r.verdict, Verdict::incomparable);
  ASSERT_TRUE(r.a_over_b && r.b_over_a);
  EXPECT_GT(r.a_over_b->gap, 0.1);
  EXPECT_GT(r.b_over_a->gap, 0.1);
}

TEST(Compare, WitnessNeverContradictsFeasibility) {
  Rng rng(179);
  for (int rep = 0; rep < 4; ++rep) {
    const auto a = random_channel(2, rng, 2), b = random_channel(2, rng, 2);
    const auto r = compare(a, b);
    if (r.a_over_b) EXPECT_NE(r.a_to_b.status, GarbleStatus::feasible);
    if (r.b_over_a) EXPECT_NE(r.b_to_a.status, GarbleStatus::feasible);
    if (r.a_to_b.status == GarbleStatus::feasible) {
      EXPECT_LE(max_diff(compose(*r.a_to_b.garbling, b).choi().matrix(), a.choi().matrix()), 1e-7);
    }
  }
}

}  // namespace
}  // namespace qbw
