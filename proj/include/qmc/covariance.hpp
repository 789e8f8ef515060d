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
#include <vector>

#include "qmc/output_states.hpp"

namespace qmc {

/// A mean-zero observable on system (x) one noise unit: tr[rho_ss E(X)] = 0.
class FluctuationObservable {
 public:
  static FluctuationObservable checked(const PrimitiveChain& chain, const Matrix& x) {
    const Eigen::Index dk = Eigen::Index{chain.dim_system()} * chain.dim_noise();
    require(x.rows() == dk && x.cols() == dk, ErrorKind::DimensionMismatch, "observable must be (D k) x (D k)");
    const Complex mean = chain.stationary_mean(conditional_expectation(chain.family(), x));
    require(std::abs(mean) <= chain.options().tol.domain, ErrorKind::NotCentered,
            "observable has stationary mean " + std::to_string(std::abs(mean)));
    return FluctuationObservable(x);
  }

  const Matrix& matrix() const { return x_; }
  bool mean_checked() const { return true; }

 private:
  explicit FluctuationObservable(Matrix x) : x_(std::move(x)) {}
  Matrix x_;
};

/// X - tr[rho_ss E(X)] 1.
inline FluctuationObservable center(const PrimitiveChain& chain, const Matrix& x) {
  const Eigen::Index dk = Eigen::Index{chain.dim_system()} * chain.dim_noise();
  require(x.rows() == dk && x.cols() == dk, ErrorKind::DimensionMismatch, "center: X must be (D k) x (D k)");
  const Complex mean = chain.stationary_mean(conditional_expectation(chain.family(), x));
  return FluctuationObservable::checked(chain, x - mean * identity(dk));
}

inline FluctuationObservable center(const KrausFamily& v, const Matrix& x, const Options& opt = {}) {
  return center(PrimitiveChain::analyze(v, opt), x);
}

/// (X, Y)_V = tr{ rho_ss E[ X^dag Y + X^dag (R E(Y) (x) 1) + (R E(X^dag) (x) 1) Y ] }.
inline Complex markov_covariance(const PrimitiveChain& chain, const FluctuationObservable& x,
                                 const FluctuationObservable& y) {
  const KrausFamily& v = chain.family();
  const Eigen::Index k = v.dim_noise();
  const Matrix xd = x.matrix().adjoint();
  const Matrix& ym = y.matrix();
  const Matrix ry = embed_system(chain.resolvent(conditional_expectation(v, ym)), k);
  const Matrix rx = embed_system(chain.resolvent(conditional_expectation(v, xd)), k);
  const Matrix inner = xd * ym + xd * ry + rx * ym;
  return chain.stationary_mean(conditional_expectation(v, inner));
}

inline Complex markov_covariance(const KrausFamily& v, const Matrix& x, const Matrix& y, const Options& opt = {}) {
  const PrimitiveChain chain = PrimitiveChain::analyze(v, opt);
  return markov_covariance(chain, FluctuationObservable::checked(chain, x), FluctuationObservable::checked(chain, y));
}

/// Exact finite-n value (1/n) <phi (x) chi^n| F_n(X^dag) F_n(Y) |phi (x) chi^n>,
/// summed as a diagonal term plus the two ordered off-diagonal sums with
/// powers of T. Cost O(n (D k)^3).
inline Complex empirical_covariance(const PrimitiveChain& chain, const PureStateVector& phi,
                                    const FluctuationObservable& x, const FluctuationObservable& y, long n) {
  require(n >= 1, ErrorKind::InvalidArgument, "empirical_covariance: n must be positive");
  const KrausFamily& v = chain.family();
  require(phi.dim() == v.dim_system(), ErrorKind::DimensionMismatch, "empirical_covariance: phi must live on the system");
  const Eigen::Index d = v.dim_system(), k = v.dim_noise();
  const Matrix iso = v.isometry();
  const Matrix xd = x.matrix().adjoint();
  const Matrix& ym = y.matrix();

  // cumulative[m] = sum_{l < m} T_*^l(|phi><phi|)
  std::vector<Matrix> cumulative(static_cast<std::size_t>(n) + 1, Matrix::Zero(d, d));
  Matrix rho = outer(phi.amplitudes(), phi.amplitudes());
  for (long m = 1; m <= n; ++m) {
    cumulative[static_cast<std::size_t>(m)] = cumulative[static_cast<std::size_t>(m - 1)] + rho;
    rho = apply_predual(v, rho);
  }
  auto pair = [](const Matrix& weight, const Matrix& a) { return (weight * a).trace(); };

  Complex total = pair(cumulative[static_cast<std::size_t>(n)], iso.adjoint() * xd * ym * iso);
  Matrix ty = conditional_expectation(v, ym);   // T^j E(Y)
  Matrix tx = conditional_expectation(v, xd);   // T^j E(X^dag)
  for (long j = 0; j <= n - 2; ++j) {
    const Matrix& weight = cumulative[static_cast<std::size_t>(n - j - 1)];
    total += pair(weight, iso.adjoint() * (xd * embed_system(ty, k)) * iso);
    total += pair(weight, iso.adjoint() * (embed_system(tx, k) * ym) * iso);
    ty = apply_heisenberg(v, ty);
    tx = apply_heisenberg(v, tx);
  }
  return total / static_cast<double>(n);
}

inline Complex empirical_covariance(const KrausFamily& v, const PureStateVector& phi, const Matrix& x,
                                    const Matrix& y, long n, const Options& opt = {}) {
  const PrimitiveChain chain = PrimitiveChain::analyze(v, opt);
  return empirical_covariance(chain, phi, FluctuationObservable::checked(chain, x),
                              FluctuationObservable::checked(chain, y), n);
}

struct PowerLawFit {
  /// y ~ prefactor * x^exponent
  double exponent = 0.0;
  double prefactor = 0.0;
  /// Coefficient of determination of the log-log regression.
  double r_squared = 0.0;
};

/// Least-squares line through (log x, log y). Points with y <= 0 are rejected.
inline PowerLawFit power_law_fit(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorKind::InvalidArgument, "power_law_fit: need two or more points");
  const auto m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0 && y[i] > 0, ErrorKind::InvalidArgument, "power_law_fit: values must be positive");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
    sx += lx.back();
    sy += ly.back();
    sxx += lx.back() * lx.back();
    sxy += lx.back() * ly.back();
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    ss_res += std::pow(ly[i] - intercept - slope * lx[i], 2);
    ss_tot += std::pow(ly[i] - sy / m, 2);
  }
  return {slope, std::exp(intercept), ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0};
}

}  // namespace qmc
