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

TEST(Covariance, CenterRemovesStationaryMean) {
  Rng rng(61);
  const PrimitiveChain chain = PrimitiveChain::analyze(rng.kraus(2, 2));
  const FluctuationObservable x = center(chain, rng.hermitian(4));
  EXPECT_LT(std::abs(chain.stationary_mean(conditional_expectation(chain.family(), x.matrix()))), 1e-14);
}

TEST(Covariance, RejectsNonCenteredObservable) {
  Rng rng(62);
  const KrausFamily v = rng.kraus(2, 2);
  try {
    markov_covariance(v, identity(4), identity(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCentered);
  }
}

TEST(Covariance, EmpiricalMatchesFullSpaceConstruction) {
  Rng rng(63);
  const KrausFamily v = rng.kraus(2, 2);
  const PrimitiveChain chain = PrimitiveChain::analyze(v);
  const Matrix x = testing::centered_observable(chain, rng);
  const Matrix y = rng.ginibre(4, 4);
  const Matrix yc = center(chain, y).matrix();
  const Vector phi = rng.unit_vector(2);
  for (int n = 1; n <= 5; ++n) {
    const Complex fast = empirical_covariance(v, PureStateVector::normalized(phi), x, yc, n);
    const Complex slow = testing::brute_covariance(v, phi, x, yc, n, rng);
    EXPECT_LT(std::abs(fast - slow), 1e-12) << "n = " << n;
  }
}

TEST(Covariance, IsHermitianForm) {
  Rng rng(64);
  const PrimitiveChain chain = PrimitiveChain::analyze(rng.kraus(2, 3));
  const FluctuationObservable x = center(chain, rng.ginibre(6, 6));
  const FluctuationObservable y = center(chain, rng.ginibre(6, 6));
  EXPECT_LT(std::abs(markov_covariance(chain, x, y) - std::conj(markov_covariance(chain, y, x))), 1e-12);
  const Complex xx = markov_covariance(chain, x, x);
  EXPECT_GE(xx.real(), -1e-12);
  EXPECT_LT(std::abs(xx.imag()), 1e-12);
}

TEST(Covariance, EmpiricalApproachesAnalyticAtRateOneOverN) {
  Rng rng(66);
  const KrausFamily v = rng.primitive_kraus(2, 2, 0.3);
  const PrimitiveChain chain = PrimitiveChain::analyze(v);
  const FluctuationObservable x = center(chain, rng.hermitian(4));
  const FluctuationObservable y = center(chain, rng.hermitian(4));
  const PureStateVector phi = PureStateVector::basis(2, 0);
  const Complex analytic = markov_covariance(chain, x, y);
  std::vector<double> ns, errs;
  for (long n : {64L, 128L, 256L, 512L}) {
    ns.push_back(static_cast<double>(n));
    errs.push_back(std::abs(empirical_covariance(chain, phi, x, y, n) - analytic));
  }
  const PowerLawFit fit = power_law_fit(ns, errs);
  EXPECT_NEAR(fit.exponent, -1.0, 0.1);
  EXPECT_GT(fit.r_squared, 0.99);
}

TEST(Covariance, PowerLawFitRecoversExactLaw) {
  const PowerLawFit fit = power_law_fit({1, 2, 4, 8}, {3.0, 1.5, 0.75, 0.375});
  EXPECT_NEAR(fit.exponent, -1.0, 1e-14);
  EXPECT_NEAR(fit.prefactor, 3.0, 1e-13);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-14);
}

}  // namespace
}  // namespace qmc
