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

TEST(Kraus, RejectsNonIsometry) {
  Matrix k = identity(2) * 1.001;
  try {
    KrausFamily::validate({k});
    FAIL() << "expected NotIsometry";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotIsometry);
  }
}

TEST(Kraus, RejectsShapeAndNonFinite) {
  EXPECT_THROW(KrausFamily::validate({}), Error);
  Matrix bad = identity(2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    KrausFamily::validate({bad});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFiniteEntry);
  }
  try {
    KrausFamily::validate({identity(2), Matrix::Zero(3, 3)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Kraus, SystemDimensionGuard) {
  Options opt;
  opt.guard.max_system_dim = 3;
  try {
    KrausFamily::validate({identity(4)}, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeGuardExceeded);
  }
}

TEST(Kraus, IsometryRoundTrip) {
  Rng rng(21);
  const KrausFamily v = rng.kraus(3, 2);
  const Matrix iso = v.isometry();
  EXPECT_LT(max_abs(iso.adjoint() * iso - identity(3)), 1e-13);
  const KrausFamily w = KrausFamily::from_isometry(iso, 2);
  for (int i = 0; i < 2; ++i) EXPECT_EQ(max_abs(w[i] - v[i]), 0.0);
  // V|phi> = sum_i K_i|phi> (x) |i>
  const Vector phi = rng.unit_vector(3);
  const Vector out = iso * phi;
  for (int s = 0; s < 3; ++s)
    for (int i = 0; i < 2; ++i) EXPECT_NEAR(std::abs(out(s * 2 + i) - (v[i] * phi)(s)), 0.0, 1e-14);
}

TEST(Kraus, ConditionalExpectationOfEmbeddedSystemOperatorIsTransfer) {
  Rng rng(22);
  const KrausFamily v = rng.kraus(2, 3);
  const Matrix a = rng.ginibre(2, 2);
  EXPECT_LT(max_abs(conditional_expectation(v, embed_system(a, 3)) - apply_heisenberg(v, a)), 1e-14);
}

TEST(Kraus, HeisenbergAndPredualAreDual) {
  Rng rng(23);
  const KrausFamily v = rng.kraus(3, 2);
  const Matrix x = rng.ginibre(3, 3), rho = rng.density(3);
  const Complex lhs = (rho * apply_heisenberg(v, x)).trace();
  const Complex rhs = (apply_predual(v, rho) * x).trace();
  EXPECT_LT(std::abs(lhs - rhs), 1e-14);
  EXPECT_LT(max_abs(heisenberg_map(v).apply(x) - apply_heisenberg(v, x)), 1e-14);
  EXPECT_LT(max_abs(predual_map(v).apply(rho) - apply_predual(v, rho)), 1e-14);
}

TEST(Kraus, DepolarizingActsAsExpected) {
  const KrausFamily v = testing::depolarizing(0.5);
  const Matrix rho = testing::Rng(24).density(2);
  const Matrix expected = 0.5 * rho + 0.5 * rho.trace() * identity(2) / 2.0;
  EXPECT_LT(max_abs(apply_predual(v, rho) - expected), 1e-15);
}

TEST(Kraus, ChoiOfIdentityChannelIsMaximallyEntangledProjector) {
  const KrausFamily v = KrausFamily::validate({identity(2)});
  const Matrix c = heisenberg_map(v).choi();
  const auto eig = hermitian_eigen(c);
  EXPECT_NEAR(eig.values(3), 2.0, 1e-14);
  EXPECT_NEAR(eig.values.head(3).cwiseAbs().maxCoeff(), 0.0, 1e-14);
}

TEST(Kraus, CrossMapNeedsMatchingNoise) {
  Rng rng(25);
  try {
    cross_map(rng.kraus(2, 2), rng.kraus(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoiseDimMismatch);
  }
  const SuperOperator t = cross_map(rng.kraus(2, 2), rng.kraus(3, 2));
  EXPECT_EQ(t.dim_in().rows, 2);
  EXPECT_EQ(t.dim_in().cols, 3);
}

TEST(Kraus, DensityMatrixValidation) {
  EXPECT_THROW(DensityMatrix::from_matrix(identity(2)), Error);
  Matrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  try {
    DensityMatrix::from_matrix(neg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAState);
  }
}

}  // namespace
}  // namespace qmc
