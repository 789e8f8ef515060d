// Copyright 2026 The qmarkov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "support/testing.hpp"

namespace qmc {
namespace {

using testing::Rng;

TEST(Lan, MatrixPowerBySquaring) {
  Rng rng(91);
  const Matrix m = rng.ginibre(3, 3) * 0.5;
  Matrix direct = identity(3);
  for (int i = 0; i < 13; ++i) direct = direct * m;
  EXPECT_LT(max_abs(matrix_power(m, 13) - direct), 1e-12);
  EXPECT_EQ(max_abs(matrix_power(m, 0) - identity(3)), 0.0);
}

TEST(Lan, DeformedPowerGivesOutputInnerProducts) {
  Rng rng(92);
  const ParamFamily f = make_family_hamiltonian(rng.kraus(2, 2), rng.hermitian(4));
  const int n = 5;
  const double u = 0.6, v = -1.2, s = 1.0 / std::sqrt(5.0);
  const PureStateVector phi = PureStateVector::normalized(rng.unit_vector(2));
  const KrausFamily a = KrausFamily::validate(f.kraus_at(u * s)), b = KrausFamily::validate(f.kraus_at(v * s));
  const Complex direct = joint_state(a, phi, n).amplitudes().dot(joint_state(b, phi, n).amplitudes());
  const SuperOperator power({2, 2}, {2, 2}, deformed_power(f, u, v, n));
  EXPECT_LT(std::abs(phi.amplitudes().dot(power.apply(identity(2)) * phi.amplitudes()) - direct), 1e-13);
}

TEST(Lan, ScanErrorsShrinkAlongLadder) {
  Rng rng(93);
  const ParamFamily f = make_family_hamiltonian(rng.primitive_kraus(2, 2, 0.3), rng.hermitian(4, 0.5));
  const LanScan scan = lan_scan(f, 1.0, 3, {16, 256, 4096}, PureStateVector::basis(2, 0));
  ASSERT_EQ(scan.rows.size(), 3u);
  ASSERT_EQ(scan.cells.size(), 27u);
  EXPECT_GT(scan.rows[0].sup_unit_error, scan.rows[1].sup_unit_error);
  EXPECT_GT(scan.rows[1].sup_unit_error, scan.rows[2].sup_unit_error);
  EXPECT_GT(scan.rows[0].sup_matrix_error, scan.rows[2].sup_matrix_error);
  for (const LanCell& c : scan.cells) {
    if (c.u == 0.0 && c.v == 0.0) {
      EXPECT_LT(c.unit_error, 1e-10);
    }
  }
}

TEST(Lan, ScanIsIndependentOfThreadCount) {
  Rng rng(94);
  const ParamFamily f = make_family_hamiltonian(rng.kraus(2, 2), rng.hermitian(4));
  const auto phi = PureStateVector::basis(2, 1);
  const LanScan one = lan_scan(f, 2.0, 4, {8, 64}, phi, 1);
  const LanScan four = lan_scan(f, 2.0, 4, {8, 64}, phi, 4);
  ASSERT_EQ(one.cells.size(), four.cells.size());
  for (std::size_t i = 0; i < one.cells.size(); ++i) {
    EXPECT_EQ(one.cells[i].unit_error, four.cells[i].unit_error);
    EXPECT_EQ(one.cells[i].inner, four.cells[i].inner);
  }
}

TEST(Lan, GridValidation) {
  EXPECT_THROW(symmetric_grid(0.0, 5), Error);
  EXPECT_THROW(symmetric_grid(1.0, 1), Error);
  const auto g = symmetric_grid(2.0, 5);
  EXPECT_EQ(g.front(), -2.0);
  EXPECT_EQ(g[2], 0.0);
  EXPECT_EQ(g.back(), 2.0);
}

TEST(Gram, OrthonormalStatesGiveIdentity) {
  std::vector<PureStateVector> states;
  for (int i = 0; i < 3; ++i) states.push_back(PureStateVector::basis(3, i));
  EXPECT_EQ(max_abs(gram_of_model(states).matrix() - identity(3)), 0.0);
}

TEST(Gram, RepeatedStateGivesBlockOfOnes) {
  Rng rng(95);
  const auto a = PureStateVector::normalized(rng.unit_vector(3));
  const auto g = gram_of_model({a, a, PureStateVector::normalized(rng.unit_vector(3))});
  EXPECT_NEAR(std::abs(g.matrix()(0, 1) - 1.0), 0.0, 1e-15);
  const auto e = canonical_embedding(g);
  // Rounding-level eigenvalues of the singular G enter through their square root.
  EXPECT_LT((e[0].amplitudes() - e[1].amplitudes()).norm(), 1e-7);
}

TEST(Gram, RejectsInvalidInput) {
  try {
    gram_of_model({PureStateVector::unnormalized(Vector::Ones(2))});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotNormalized);
  }
  Matrix g(2, 2);
  g << 1, 2, 2, 1;
  try {
    GramMatrix::checked(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPSD);
  }
  EXPECT_THROW(finite_model_distance(GramMatrix::checked(identity(2)), GramMatrix::checked(identity(3))), Error);
}

TEST(Gram, CoherentModelEntries) {
  const GramMatrix g = coherent_model_gram(4.0, {-1.0, 0.0, 1.0});
  EXPECT_NEAR(g.matrix()(0, 1).real(), std::exp(-0.5), 1e-16);
  EXPECT_NEAR(g.matrix()(0, 2).real(), std::exp(-2.0), 1e-16);
}

TEST(Gram, EmbeddingRoundTrip) {
  Rng rng(96);
  std::vector<PureStateVector> states;
  for (int i = 0; i < 4; ++i) states.push_back(PureStateVector::normalized(rng.unit_vector(6)));
  const GramMatrix g = gram_of_model(states);
  const auto e = canonical_embedding(g);
  Matrix back(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) back(i, j) = e[i].amplitudes().dot(e[j].amplitudes());
  EXPECT_LT(max_abs(back - g.matrix()), 1e-10);
}

TEST(Gram, DistanceIsAPseudometric) {
  Rng rng(97);
  auto random_gram = [&] {
    std::vector<PureStateVector> s;
    for (int i = 0; i < 3; ++i) s.push_back(PureStateVector::normalized(rng.unit_vector(3)));
    return gram_of_model(s);
  };
  for (int trial = 0; trial < 10; ++trial) {
    const GramMatrix a = random_gram(), b = random_gram(), c = random_gram();
    EXPECT_EQ(finite_model_distance(a, a), 0.0);
    EXPECT_NEAR(finite_model_distance(a, b), finite_model_distance(b, a), 1e-12);
    EXPECT_LE(finite_model_distance(a, c), finite_model_distance(a, b) + finite_model_distance(b, c) + 1e-9);
  }
}

TEST(Gram, DistanceDoesNotDependOnSquareRootChoice) {
  // Another factor W with W^dag W = G is W = Q sqrt(G) for unitary Q; aligned
  // overlaps (sqrt(G1) Q1^dag Q2 sqrt(G2))_ii change, but applying the same Q to
  // both models must not.
  Rng rng(98);
  std::vector<PureStateVector> s1, s2;
  for (int i = 0; i < 3; ++i) {
    s1.push_back(PureStateVector::normalized(rng.unit_vector(3)));
    s2.push_back(PureStateVector::normalized(rng.unit_vector(3)));
  }
  const GramMatrix g1 = gram_of_model(s1), g2 = gram_of_model(s2);
  const Matrix q = rng.unitary(3);
  const Matrix w1 = q * psd_sqrt(g1.matrix()), w2 = q * psd_sqrt(g2.matrix());
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    worst = std::max(worst, pure_trace_distance(PureStateVector::unnormalized(w1.col(i)),
                                                PureStateVector::unnormalized(w2.col(i))));
  EXPECT_NEAR(worst, finite_model_distance(g1, g2), 1e-12);
}

TEST(Gram, FiniteDistanceBoundsAlignedPairs) {
  const GramMatrix ones = GramMatrix::checked(Matrix::Ones(3, 3));
  const double dist = finite_model_distance(GramMatrix::checked(identity(3)), ones);
  EXPECT_GT(dist, 0.0);
  const auto e1 = canonical_embedding(GramMatrix::checked(identity(3)));
  const auto e2 = canonical_embedding(ones);
  for (int i = 0; i < 3; ++i) EXPECT_LE(pure_trace_distance(e1[i], e2[i]), dist + 1e-12);
}

TEST(Gram, PureTraceDistanceValues) {
  const auto a = PureStateVector::basis(2, 0), b = PureStateVector::basis(2, 1);
  const auto plus = PureStateVector::normalized((a.amplitudes() + b.amplitudes()) / std::sqrt(2.0));
  EXPECT_EQ(pure_trace_distance(a, a), 0.0);
  EXPECT_NEAR(pure_trace_distance(a, b), 2.0, 1e-15);
  EXPECT_NEAR(pure_trace_distance(a, plus), std::sqrt(2.0), 1e-15);
}

TEST(Gram, WeakDiagnosticOnConjugationFamilyApproachesOne) {
  Rng rng(99);
  const ParamFamily f = make_family_conjugation(rng.primitive_kraus(2, 2, 0.3), rng.hermitian(2));
  const auto rows = weak_convergence_diagnostic(f, {-1.0, 0.0, 1.0}, {64, 1024}, PureStateVector::basis(2, 0));
  EXPECT_GT(rows[0].max_error, rows[1].max_error);
  EXPECT_LT(rows[1].max_error, 0.1);
  const auto zero = weak_convergence_diagnostic(f, {0.0}, {16}, PureStateVector::basis(2, 0));
  EXPECT_LT(zero[0].max_error, 1e-12);
}

TEST(Gram, OutputModelGramIsValid) {
  Rng rng(100);
  const ParamFamily f = make_family_hamiltonian(rng.kraus(2, 2), rng.hermitian(4));
  const GramMatrix g = output_model_gram(f, {-1.0, 0.0, 1.0}, 32, PureStateVector::basis(2, 0));
  EXPECT_EQ(g.size(), 3);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(g.matrix()(i, i).real(), 1.0, 1e-12);
}

}  // namespace
}  // namespace qmc
