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

#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "qmc/covariance.hpp"
#include "qmc/param_family.hpp"

namespace qmc {

enum class QfiMethod { formula, covariance, both };

constexpr std::string_view to_string(QfiMethod m) {
  switch (m) {
    case QfiMethod::formula: return "formula";
    case QfiMethod::covariance: return "covariance";
    case QfiMethod::both: return "both";
  }
  return "unknown";
}

struct QfiReport {
  /// Asymptotic quantum Fisher information per step.
  double F = 0.0;
  /// Constant of the imaginary quadratic term of lambda(u, v).
  double a = 0.0;
  QfiMethod method = QfiMethod::formula;
  /// |F_formula - F_covariance| when both were evaluated.
  double agreement = 0.0;
  /// Gauge constant applied before evaluation.
  double gauge_b = 0.0;
  /// Imaginary part of (G*, G*)_V; zero up to rounding.
  double covariance_imag = 0.0;
  /// ||V^dag G V - (V^dag G V)^dag||_max for G = -i Vdot V^dag.
  double hermitian_certificate = 0.0;
};

namespace detail {

// Values within this band below zero are rounding noise and are clamped.
inline constexpr double kFisherFloor = -1e-9;

inline double clamp_fisher(double f) {
  require(f >= kFisherFloor, ErrorKind::NegativeFisher, "Fisher information " + std::to_string(f) + " is negative");
  return f < 0.0 ? 0.0 : f;
}

inline ParamFamily gauged(const ParamFamily& f, const PrimitiveChain& chain) {
  const double b = gauge_functional(f, chain.stationary());
  return b == 0.0 ? f : f.with_phase(b);
}

}  // namespace detail

/// G* = i Vdot V^dag on H (x) K.
inline Matrix generator_operator(const ParamFamily& f) { return kI * f.disometry() * f.base().isometry().adjoint(); }

/// F and a from the Kraus-level expressions, after gauge fixing.
inline QfiReport qfi_formula(const ParamFamily& family, const Options& opt = {}) {
  const PrimitiveChain chain = PrimitiveChain::analyze(family.base(), opt);
  const ParamFamily f = detail::gauged(family, chain);
  const Matrix& rho = chain.stationary();
  const Eigen::Index d = chain.dim_system();

  Matrix a_sum = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < f.dkraus().size(); ++i) a_sum += f.dkraus()[i].adjoint() * f.base()[i];
  const Matrix im_a = anti_hermitian_part(a_sum);
  const Matrix s = chain.resolvent(im_a - chain.stationary_mean(im_a) * identity(d));

  double fisher = 0.0, a_quad = 0.0;
  for (std::size_t i = 0; i < f.dkraus().size(); ++i) {
    const Matrix& k = f.base()[i];
    const Matrix& dk = f.dkraus()[i];
    const Matrix cross = k * rho * dk.adjoint();
    fisher += (rho * dk.adjoint() * dk).trace().real();
    fisher += 2.0 * (anti_hermitian_part(cross) * s).trace().real();
    a_quad += (rho * f.ddkraus()[i].adjoint() * k).trace().imag();
    a_quad += 2.0 * (hermitian_part(cross) * s).trace().real();
  }

  QfiReport report;
  report.F = detail::clamp_fisher(4.0 * fisher);
  report.a = -0.5 * a_quad;
  report.method = QfiMethod::formula;
  report.gauge_b = f.gauge_b();
  const Matrix g = -kI * f.disometry() * f.base().isometry().adjoint();
  const Matrix vgv = conditional_expectation(f.base(), g);
  report.hermitian_certificate = max_abs(vgv - vgv.adjoint());
  return report;
}

/// F = 4 (G*, G*)_V after gauge fixing and centring of G*.
inline QfiReport qfi_covariance(const ParamFamily& family, const Options& opt = {}) {
  const PrimitiveChain chain = PrimitiveChain::analyze(family.base(), opt);
  const ParamFamily f = detail::gauged(family, chain);
  const FluctuationObservable g = center(chain, generator_operator(f));
  const Complex value = markov_covariance(chain, g, g);
  QfiReport report;
  report.F = detail::clamp_fisher(4.0 * value.real());
  report.covariance_imag = value.imag();
  report.method = QfiMethod::covariance;
  report.gauge_b = f.gauge_b();
  return report;
}

/// Both routes; F and a from the formula, `agreement` is the absolute difference.
inline QfiReport qfi_both(const ParamFamily& family, const Options& opt = {}) {
  QfiReport report = qfi_formula(family, opt);
  const QfiReport cov = qfi_covariance(family, opt);
  report.agreement = std::abs(report.F - cov.F);
  report.covariance_imag = cov.covariance_imag;
  report.method = QfiMethod::both;
  return report;
}

/// lambda(u, v) = (1, T_2(1)) + (1, T_1 R T_1(1)) for the gauged family.
inline Complex lambda_uv(const ParamFamily& family, double u, double v, const Options& opt = {}) {
  const PrimitiveChain chain = PrimitiveChain::analyze(family.base(), opt);
  const ParamFamily f = detail::gauged(family, chain);
  const Eigen::Index d = chain.dim_system();
  const auto& k = f.base().operators();
  const auto& dk = f.dkraus();
  const auto& ddk = f.ddkraus();

  auto t1 = [&](const Matrix& x) {
    Matrix out = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < k.size(); ++i) out += u * dk[i].adjoint() * x * k[i] + v * k[i].adjoint() * x * dk[i];
    return out;
  };
  Matrix t2 = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < k.size(); ++i)
    t2 += 0.5 * u * u * ddk[i].adjoint() * k[i] + 0.5 * v * v * k[i].adjoint() * ddk[i] + u * v * dk[i].adjoint() * dk[i];

  const Matrix first = t1(identity(d));
  return chain.stationary_mean(t2) + chain.stationary_mean(t1(chain.resolvent(first)));
}

/// -F (u - v)^2 / 8 - i a (u^2 - v^2).
inline Complex lambda_quadratic(const QfiReport& q, double u, double v) {
  return Complex(-q.F * (u - v) * (u - v) / 8.0, -q.a * (u * u - v * v));
}

/// <sqrt(F/2) u | sqrt(F/2) v> for coherent states.
inline double gaussian_inner(double fisher, double u, double v) {
  require(fisher >= 0.0, ErrorKind::NegativeFisher, "gaussian_inner: negative Fisher information");
  return std::exp(-fisher * (u - v) * (u - v) / 8.0);
}

/// 4 (<Psi'|Psi'> - |<Psi|Psi'>|^2) for the joint output |Psi_theta(n)> with the
/// derivative propagated slot by slot; cost O(D k^n).
inline double finite_n_qfi(const ParamFamily& f, const PureStateVector& phi, long n, const Options& opt = {}) {
  require(n >= 1, ErrorKind::InvalidArgument, "finite_n_qfi: n must be positive");
  const KrausFamily& v = f.base();
  require(phi.dim() == v.dim_system(), ErrorKind::DimensionMismatch, "finite_n_qfi: phi must live on the system");
  const std::size_t outputs = detail::guarded_outputs(v.dim_noise(), n, opt.guard.amplitudes / 2, "finite_n_qfi");
  (void)outputs;

  const Eigen::Index k = v.dim_noise();
  Matrix psi = phi.amplitudes();
  Matrix dpsi = Matrix::Zero(psi.rows(), 1);
  for (long m = 0; m < n; ++m) {
    Matrix next(psi.rows(), psi.cols() * k), dnext(psi.rows(), psi.cols() * k);
    for (Eigen::Index i = 0; i < k; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      next.middleCols(i * psi.cols(), psi.cols()) = v[idx] * psi;
      dnext.middleCols(i * psi.cols(), psi.cols()) = f.dkraus()[idx] * psi + v[idx] * dpsi;
    }
    psi = std::move(next);
    dpsi = std::move(dnext);
  }
  const double norm_d = dpsi.squaredNorm();
  const Complex overlap = (psi.adjoint() * dpsi).trace();
  return 4.0 * (norm_d - std::norm(overlap));
}

}  // namespace qmc
