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

using testing::apply_first_oracle;
using testing::ket;
using testing::max_diff;

TEST(DensityMatrix, Validation) {
  EXPECT_NO_THROW(DensityMatrix(CMatrix::Identity(2, 2) / 2.0));
  EXPECT_THROW(DensityMatrix(CMatrix::Identity(2, 2)), InvariantError);
  CMatrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix{neg}, InvariantError);
  EXPECT_THROW(DensityMatrix(CMatrix::Identity(4, 4) / 4.0, {2, 3}), InvariantError);
  CMatrix nh(2, 2);
  nh << 0.5, 0.1, 0.0, 0.5;
  EXPECT_THROW(DensityMatrix{nh}, InvariantError);
}

TEST(MaxEntangled, Examples) {
  const auto j2 = max_entangled(2);
  CMatrix expect = CMatrix::Zero(4, 4);
  expect(0, 0) = expect(0, 3) = expect(3, 0) = expect(3, 3) = 0.5;
  EXPECT_LE(max_diff(j2.matrix(), expect), 1e-15);
  for (Factor f : {Factor::first, Factor::second}) {
    EXPECT_LE(max_diff(partial_trace(j2.matrix(), 2, 2, f), CMatrix::Identity(2, 2) / 2.0), 1e-15);
  }
  const auto j3 = max_entangled(3);
  EXPECT_NEAR(j3.matrix().trace().real(), 1.0, 1e-14);
  EXPECT_NEAR((j3.matrix() * j3.matrix()).trace().real(), 1.0, 1e-14);
  EXPECT_THROW(max_entangled(1), InvariantError);
}

TEST(Channel, Validation) {
  EXPECT_THROW(QuantumChannel({CMatrix::Identity(2, 2) * 0.5}), InvariantError);
  EXPECT_THROW(QuantumChannel({CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)}), InvariantError);
  EXPECT_THROW(QuantumChannel(std::vector<CMatrix>{}), InvariantError);
  EXPECT_THROW(depolarizing(1.5, 2), InvariantError);
  EXPECT_THROW(amplitude_damping(-0.1), InvariantError);
  CMatrix notu(2, 2);
  notu << 1, 1, 0, 1;
  EXPECT_THROW(unitary_channel(notu), InvariantError);
}

TEST(Channel, ChoiInvariants) {
  Rng rng(43);
  for (int d : {2, 3}) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto ch = random_channel(d, rng);
      const CMatrix& j = ch.choi().matrix();
      EXPECT_GE(min_eigenvalue(j), -1e-10);
      EXPECT_NEAR(j.trace().real(), 1.0, 1e-10);
      // The first factor is the output.
      EXPECT_LE(max_diff(partial_trace(j, d, d, Factor::second), CMatrix::Identity(d, d) / double(d)), 1e-10);
    }
  }
}

TEST(Channel, ApplyExamples) {
  Rng rng(47);
  const auto rho = random_density(2, rng);
  EXPECT_LE(max_diff(apply(identity_channel(2), rho).matrix(), rho.matrix()), 1e-15);
  EXPECT_LE(max_diff(apply(depolarizing(0.0, 2), rho).matrix(), CMatrix::Identity(2, 2) / 2.0), 1e-14);
  EXPECT_LE(max_diff(apply(amplitude_damping(1.0), rho).matrix(), projector(ket({1, 0}))), 1e-14);
  const auto sigma = random_density(3, rng);
  EXPECT_LE(max_diff(apply(replacer(sigma), random_density(3, rng)).matrix(), sigma.matrix()), 1e-12);
  EXPECT_LE(max_diff(depolarizing(1.0, 3).choi().matrix(), identity_channel(3).choi().matrix()), 1e-14);
}

TEST(Channel, KrausAndChoiActionsAgree) {
  Rng rng(53);
  for (int rep = 0; rep < 30; ++rep) {
    const int d = 2 + rep % 2;
    const auto ch = random_channel(d, rng, 1 + rep % 4);
    const auto rho = random_density(d, rng);
    EXPECT_LE(max_diff(ch(rho.matrix()), apply_via_choi(ch.choi(), rho.matrix())), 1e-10);
  }
}

TEST(Compose, Identities) {
  Rng rng(59);
  const CMatrix u = random_unitary(3, rng);
  const auto uu = compose(unitary_channel(u), unitary_channel(u.adjoint()));
  EXPECT_LE(max_diff(uu.choi().matrix(), max_entangled(3).matrix()), 1e-12);

  for (double a : {0.0, 0.3, 0.8}) {
    for (double b : {0.25, 0.5, 1.0}) {
      EXPECT_LE(max_diff(compose(depolarizing(a, 2), depolarizing(b, 2)).choi().matrix(),
                         depolarizing(a * b, 2).choi().matrix()),
                1e-12);
      EXPECT_LE(max_diff(compose(amplitude_damping(a), amplitude_damping(b)).choi().matrix(),
                         amplitude_damping(1.0 - (1.0 - a) * (1.0 - b)).choi().matrix()),
                1e-12);
    }
  }
}

TEST(Compose, AssociativeAndMatchesSequentialAction) {
  Rng rng(61);
  for (int rep = 0; rep < 10; ++rep) {
    const auto a = random_channel(2, rng), b = random_channel(2, rng), c = random_channel(2, rng);
    EXPECT_LE(max_diff(compose(compose(a, b), c).choi().matrix(), compose(a, compose(b, c)).choi().matrix()), 1e-12);
    const auto rho = random_density(2, rng);
    EXPECT_LE(max_diff(compose(a, b)(rho.matrix()), a(b(rho.matrix()))), 1e-12);
  }
}

TEST(Choi, Examples) {
  EXPECT_LE(max_diff(choi(identity_channel(2)).matrix(), max_entangled(2).matrix()), 1e-15);
  EXPECT_LE(max_diff(choi(depolarizing(0.0, 3)).matrix(), CMatrix::Identity(9, 9) / 9.0), 1e-14);
  CMatrix dephased = CMatrix::Zero(4, 4);
  dephased(0, 0) = dephased(3, 3) = 0.5;
  EXPECT_LE(max_diff(choi(dephasing(1.0)).matrix(), dephased), 1e-15);
}

TEST(ChannelFromChoi, ExamplesAndRoundtrip) {
  const auto id = channel_from_choi(max_entangled(2));
  EXPECT_LE(max_diff(id.choi().matrix(), max_entangled(2).matrix()), 1e-12);
  const auto flat = channel_from_choi(DensityMatrix(CMatrix::Identity(4, 4) / 4.0, {2, 2}));
  Rng rng(67);
  EXPECT_LE(max_diff(flat(random_density(2, rng).matrix()), CMatrix::Identity(2, 2) / 2.0), 1e-12);

  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + rep % 2;
    const auto ch = random_channel(d, rng, 1 + rep % 3);
    const auto back = channel_from_choi(ch.choi());
    for (int t = 0; t < 3; ++t) {
      const CMatrix rho = random_density(d, rng).matrix();
      EXPECT_LE(max_diff(back(rho), ch(rho)), 1e-8);
    }
  }

  // A state whose input marginal is not I/D is no Choi state.
  EXPECT_THROW(channel_from_choi(DensityMatrix(projector(ket({1, 0, 0, 0})), {2, 2})), InvariantError);
}

TEST(ApplyToSubsystem, Examples) {
  Rng rng(71);
  const auto bell = max_entangled(2);
  EXPECT_LE(max_diff(apply_to_subsystem(identity_channel(2), bell).matrix(), bell.matrix()), 1e-15);

  const CMatrix a = random_density(2, rng).matrix(), b = random_density(3, rng).matrix();
  const auto ch = random_channel(2, rng);
  EXPECT_LE(max_diff(apply_to_subsystem(ch, kron(a, b), 2, 3, Factor::first), kron(ch(a), b)), 1e-12);
  EXPECT_LE(max_diff(apply_to_subsystem(ch, kron(b, a), 3, 2, Factor::second), kron(b, ch(a))), 1e-12);

  const CMatrix half = 0.5 * bell.matrix() + 0.5 * CMatrix::Identity(4, 4) / 4.0;
  EXPECT_LE(max_diff(apply_to_subsystem(depolarizing(0.5, 2), bell).matrix(), half), 1e-14);

  for (int rep = 0; rep < 10; ++rep) {
    const auto c = random_channel(2, rng);
    const CMatrix rho = random_density(6, rng).matrix();
    EXPECT_LE(max_diff(apply_to_subsystem(c, rho, 2, 3, Factor::first), apply_first_oracle(c, rho, 3)), 1e-12);
  }
}

TEST(Zoo, Dephasing) {
  CMatrix rho(2, 2);
  rho << 0.6, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.4;
  CMatrix expect = rho;
  expect(0, 1) *= 0.75;
  expect(1, 0) *= 0.75;
  EXPECT_LE(max_diff(dephasing(0.25)(rho), expect), 1e-15);
}

TEST(Mix, ConvexCombinationOfChoiStates) {
  const auto m = mix({0.5, 0.5}, {identity_channel(2), depolarizing(0.0, 2)});
  EXPECT_LE(max_diff(m.choi().matrix(), depolarizing(0.5, 2).choi().matrix()), 1e-12);
  EXPECT_THROW(mix({0.7, 0.7}, {identity_channel(2), identity_channel(2)}), InvariantError);
}

}  // namespace
}  // namespace qbw
