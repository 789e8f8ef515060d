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

/// D = 1 family with k(theta) = (cos theta, sin theta) at theta = 0.
ParamFamily iid_family() {
  const Matrix one = Matrix::Identity(1, 1), zero = Matrix::Zero(1, 1);
  return ParamFamily::make_explicit(KrausFamily::validate({one, zero}), {zero, one}, {-one, zero});
}

TEST(Qfi, IidReductionGivesFour) {
  const ParamFamily f = iid_family();
  EXPECT_NEAR(qfi_formula(f).F, 4.0, 1e-12);
  EXPECT_NEAR(qfi_covariance(f).F, 4.0, 1e-12);
  EXPECT_NEAR(finite_n_qfi(f, PureStateVector::basis(1, 0), 1), 4.0, 1e-14);
  EXPECT_NEAR(finite_n_qfi(f, PureStateVector::basis(1, 0), 7), 28.0, 1e-12);
}

TEST(Qfi, TwoRoutesAgreeOnHamiltonianFamilies) {
  Rng rng(81);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 2, k = 2 + (trial / 2) % 2;
    const ParamFamily f = make_family_hamiltonian(rng.kraus(d, k), rng.hermitian(d * k));
    const QfiReport q = qfi_both(f);
    EXPECT_GE(q.F, 0.0);
    EXPECT_LE(q.agreement, 1e-9 * std::max(1.0, q.F));
    EXPECT_LT(std::abs(q.covariance_imag), 1e-10);
    EXPECT_LT(q.hermitian_certificate, 1e-10);
  }
}

TEST(Qfi, ConjugationFamiliesCarryNoInformation) {
  Rng rng(82);
  for (int trial = 0; trial < 5; ++trial) {
    const ParamFamily f = make_family_conjugation(rng.kraus(3, 2), rng.hermitian(3));
    EXPECT_LT(qfi_formula(f).F, 1e-9);
    EXPECT_LT(qfi_covariance(f).F, 1e-9);
  }
}

TEST(Qfi, ConjugationGeneratorIsACoboundary) {
  Rng rng(83);
  const KrausFamily v = rng.kraus(2, 2);
  const Matrix h = rng.hermitian(2);
  const PrimitiveChain chain = PrimitiveChain::analyze(v);
  const ParamFamily f = detail::gauged(make_family_conjugation(v, h), chain);
  const Matrix eg = conditional_expectation(v, generator_operator(f));
  const Matrix centred_h = h - chain.stationary_mean(h) * identity(2);
  const Matrix eg_centred = eg - chain.stationary_mean(eg) * identity(2);
  // With U_theta = exp(i theta H): E(G*) = (Id - T)(H) up to a multiple of 1.
  EXPECT_LT(max_abs(eg_centred - (centred_h - chain.heisenberg(centred_h))), 1e-12);
  EXPECT_LT(max_abs(chain.resolvent(eg_centred) - centred_h), 1e-11);
}

TEST(Qfi, LambdaIsTheQuadraticForm) {
  Rng rng(84);
  const ParamFamily f = make_family_hamiltonian(rng.kraus(2, 2), rng.hermitian(4));
  const QfiReport q = qfi_formula(f);
  EXPECT_LT(std::abs(lambda_uv(f, 0.8, 0.8)), 1e-12);
  const Complex l = lambda_uv(f, 1.1, -1.1);
  EXPECT_NEAR(l.real(), -q.F * 1.1 * 1.1 / 2.0, 1e-10);
  EXPECT_NEAR(l.imag(), 0.0, 1e-10);
  for (double u : {-1.5, -0.2, 0.9})
    for (double v : {-1.0, 0.3, 2.0}) EXPECT_LT(std::abs(lambda_uv(f, u, v) - lambda_quadratic(q, u, v)), 1e-10);
}

TEST(Qfi, FirstOrderTermVanishesAfterGauge) {
  Rng rng(85);
  const ParamFamily f = make_family_hamiltonian(rng.kraus(2, 3), rng.hermitian(6));
  const PrimitiveChain chain = PrimitiveChain::analyze(f.base());
  const ParamFamily g = gauge_fix(f);
  Matrix t1 = Matrix::Zero(2, 2);
  for (std::size_t i = 0; i < 3; ++i) t1 += 0.7 * g.dkraus()[i].adjoint() * g.base()[i] - 0.4 * g.base()[i].adjoint() * g.dkraus()[i];
  EXPECT_LT(std::abs(chain.stationary_mean(t1)), 1e-12);
}

TEST(Qfi, GaugeDoesNotChangeFiniteNInformation) {
  Rng rng(86);
  const ParamFamily f = make_family_hamiltonian(rng.kraus(2, 2), rng.hermitian(4));
  const PureStateVector phi = PureStateVector::normalized(rng.unit_vector(2));
  EXPECT_NEAR(finite_n_qfi(f, phi, 6), finite_n_qfi(gauge_fix(f), phi, 6), 1e-10);
  EXPECT_NEAR(qfi_formula(f).F, qfi_formula(gauge_fix(f)).F, 1e-10);
}

TEST(Qfi, FiniteNSlopeApproachesAsymptoticValue) {
  Rng rng(87);
  const ParamFamily f = make_family_hamiltonian(rng.primitive_kraus(2, 2, 0.3), rng.hermitian(4));
  const PureStateVector phi = PureStateVector::basis(2, 0);
  const double big_f = qfi_formula(f).F;
  // Single increments still oscillate at n ~ 12; the slope over [8, 16] averages that out.
  const double slope = (finite_n_qfi(f, phi, 16) - finite_n_qfi(f, phi, 8)) / 8.0;
  EXPECT_NEAR(slope, big_f, 0.01 * big_f);
}

TEST(Qfi, FiniteNInformationMatchesFiniteDifferenceOfOverlap) {
  // F_n = -4 d^2/dh^2 log |<Psi_0|Psi_h>| at h = 0, checked by a central difference.
  Rng rng(88);
  const ParamFamily f = make_family_hamiltonian(rng.kraus(2, 2), rng.hermitian(4));
  const Vector phi = rng.unit_vector(2);
  const int n = 4;
  auto overlap = [&](double h) {
    const KrausFamily a = f.base();
    const KrausFamily b = KrausFamily::validate(f.kraus_at(h));
    return std::abs(output_overlap(a, b, Vector(identity(2).col(0)), phi, Vector(identity(2).col(0)), phi, n) +
                    output_overlap(a, b, Vector(identity(2).col(1)), phi, Vector(identity(2).col(1)), phi, n));
  };
  const double h = 1e-3;
  const double second = (std::log(overlap(h)) - 2 * std::log(overlap(0.0)) + std::log(overlap(-h))) / (h * h);
  EXPECT_NEAR(-4.0 * second, finite_n_qfi(f, PureStateVector::normalized(phi), n), 1e-4);
}

TEST(Qfi, ConjugationFiniteNInformationIsBoundedButNotByTheFirstStep) {
  Rng rng(89);
  const ParamFamily f = make_family_conjugation(rng.primitive_kraus(2, 2, 0.3), rng.hermitian(2));
  const Vector phi = Vector(identity(2).col(0));
  const int n = 6;
  auto overlap = [&](double h) {
    const KrausFamily a = f.base();
    const KrausFamily b = KrausFamily::validate(f.kraus_at(h));
    return std::abs(output_overlap(a, b, Vector(identity(2).col(0)), phi, Vector(identity(2).col(0)), phi, n) +
                    output_overlap(a, b, Vector(identity(2).col(1)), phi, Vector(identity(2).col(1)), phi, n));
  };
  const double h = 1e-3;
  const double second = (std::log(overlap(h)) - 2 * std::log(overlap(0.0)) + std::log(overlap(-h))) / (h * h);
  const PureStateVector state = PureStateVector::normalized(phi);
  EXPECT_NEAR(-4.0 * second, finite_n_qfi(f, state, n), 1e-4);
  // Saturates in n; the limit is not F_1 because the two ends of the chain decorrelate.
  EXPECT_NEAR(finite_n_qfi(f, state, 16), finite_n_qfi(f, state, 12), 1e-2);
}

TEST(Qfi, GaussianInner) {
  EXPECT_EQ(gaussian_inner(3.0, 0.4, 0.4), 1.0);
  EXPECT_NEAR(gaussian_inner(4.0, 1.0, -1.0), std::exp(-2.0), 1e-16);
  EXPECT_EQ(gaussian_inner(0.0, -2.0, 5.0), 1.0);
  try {
    gaussian_inner(-1.0, 0.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeFisher);
  }
}

}  // namespace
}  // namespace qmc
