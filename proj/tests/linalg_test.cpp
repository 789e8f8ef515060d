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

TEST(Linalg, VecIsRowMajorAndKronImplementsSandwich) {
  Rng rng(11);
  const Matrix a = rng.ginibre(2, 3), x = rng.ginibre(3, 4), b = rng.ginibre(4, 2);
  const Vector v = vec(x);
  EXPECT_EQ(v(1), x(0, 1));
  EXPECT_EQ(v(4), x(1, 0));
  EXPECT_LT(max_abs(unvec(kron(a, b.transpose()) * vec(x), 2, 2) - a * x * b), 1e-13);
  EXPECT_LT(max_abs(unvec(v, 3, 4) - x), 0.0 + 1e-300);
}

TEST(Linalg, UnitaryExpMatchesTaylorSeries) {
  Rng rng(12);
  const Matrix h = rng.hermitian(3, 0.3);
  Matrix series = identity(3), term = identity(3);
  for (int m = 1; m < 30; ++m) {
    term = term * (kI * h) / static_cast<double>(m);
    series += term;
  }
  EXPECT_LT(max_abs(unitary_exp(h, 1.0) - series), 1e-13);
  const Matrix u = unitary_exp(h, 2.5);
  EXPECT_LT(max_abs(u * u.adjoint() - identity(3)), 1e-13);
}

TEST(Linalg, PsdSqrtSquaresBack) {
  Rng rng(13);
  const Matrix rho = rng.density(4);
  const Matrix r = psd_sqrt(rho);
  EXPECT_LT(max_abs(r * r - rho), 1e-14);
  EXPECT_LT(max_abs(r - r.adjoint()), 1e-14);
}

TEST(Linalg, TraceNormOfPureStateDifference) {
  const Vector a = basis_vector(2, 0);
  const Vector b = (basis_vector(2, 0) + basis_vector(2, 1)) / std::sqrt(2.0);
  EXPECT_NEAR(trace_norm_hermitian(outer(a, a) - outer(b, b)), std::sqrt(2.0), 1e-14);
}

TEST(Linalg, CheckedPowDetectsOverflow) {
  std::size_t out = 0;
  EXPECT_TRUE(checked_pow(4, 6, 4096, out));
  EXPECT_EQ(out, 4096u);
  EXPECT_FALSE(checked_pow(4, 7, 4096, out));
  EXPECT_FALSE(checked_pow(2, 200, std::size_t{1} << 40, out));
}

}  // namespace
}  // namespace qmc
