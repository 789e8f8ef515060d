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
#include <optional>
#include <string>
#include <vector>

#include "qmc/output_states.hpp"

namespace qmc {

struct EquivalenceReport {
  bool equivalent = false;
  /// Peripheral eigenvalue of T_12 normalised to the unit circle (iff equivalent).
  std::optional<Complex> c;
  /// Unitary with V_2 = c (U^dag (x) 1) V_1 U (iff equivalent).
  std::optional<Matrix> unitary;
  /// Largest eigenvalue modulus of the cross map T_12.
  double peripheral_modulus = 0.0;
  /// Cross-map eigenvalues of modulus above 1 - 10 eig_tol, decreasing modulus.
  std::vector<Complex> peripheral_spectrum;
  /// max_i ||K_{2,i} - c U^dag K_{1,i} U||_max (iff equivalent).
  double reconstruction_residual = 0.0;
  /// max(||F^dag F / alpha - 1||, ||F F^dag / alpha - 1||) of the peripheral eigenvector.
  double proportionality_residual = 0.0;
  bool dimensions_match = true;
};

/// False when the system dimensions differ (then the families cannot be
/// equivalent); true means undetermined.
inline bool dimension_witness(const KrausFamily& v1, const KrausFamily& v2) {
  return v1.dim_system() == v2.dim_system();
}

/// Number of linearly independent Kraus operators.
inline int independent_kraus_count(const KrausFamily& v, double tol = 1e-10) {
  const Eigen::Index d = v.dim_system();
  Matrix m(v.dim_noise(), d * d);
  for (int i = 0; i < v.dim_noise(); ++i) m.row(i) = vec(v[static_cast<std::size_t>(i)]).transpose();
  return static_cast<int>(numerical_rank(m, tol));
}

/// Makes the first entry of the first column with modulus above `tol` real-positive.
inline Matrix canonical_phase(const Matrix& u, double tol = 1e-8) {
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    if (std::abs(u(i, 0)) > tol) return u * (std::abs(u(i, 0)) / u(i, 0));
  }
  return u;
}

/// Decides whether two primitive families have identical stationary outputs,
/// i.e. whether V_2 = c (U^dag (x) 1) V_1 U, and recovers c and U.
inline EquivalenceReport decide_equivalence(const KrausFamily& v1, const KrausFamily& v2, const Options& opt = {}) {
  require(v1.dim_noise() == v2.dim_noise(), ErrorKind::NoiseDimMismatch, "decide_equivalence: noise dimensions differ");
  require(primitivity_check(v1, opt).is_primitive, ErrorKind::NotPrimitive, "first family is not primitive");
  require(primitivity_check(v2, opt).is_primitive, ErrorKind::NotPrimitive, "second family is not primitive");

  EquivalenceReport report;
  report.dimensions_match = dimension_witness(v1, v2);

  const SuperOperator t12 = cross_map(v1, v2);
  Eigen::ComplexEigenSolver<Matrix> solver(t12.matrix(), true);
  const auto& values = solver.eigenvalues();
  Eigen::Index top = 0;
  for (Eigen::Index i = 1; i < values.size(); ++i)
    if (std::abs(values(i)) > std::abs(values(top))) top = i;
  report.peripheral_modulus = std::abs(values(top));
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (std::abs(values(i)) > 1.0 - 10 * opt.tol.peripheral) report.peripheral_spectrum.push_back(values(i));
  std::sort(report.peripheral_spectrum.begin(), report.peripheral_spectrum.end(),
            [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });

  if (!report.dimensions_match || report.peripheral_modulus < 1.0 - opt.tol.peripheral) return report;

  const Eigen::Index d = v1.dim_system();
  const Matrix f = unvec(solver.eigenvectors().col(top), d, d);
  const double alpha = (f.adjoint() * f).trace().real() / static_cast<double>(d);
  report.proportionality_residual = std::max(max_abs(f.adjoint() * f / alpha - identity(d)),
                                             max_abs(f * f.adjoint() / alpha - identity(d)));
  // Certificate threshold: eigenvector accuracy is limited by the conditioning
  // of T_12, so the test is looser than the reconstruction check below.
  require(report.proportionality_residual <= 1e-6, ErrorKind::AmbiguousPeripheral,
          "eigenvalue of modulus " + std::to_string(report.peripheral_modulus) +
              " but F^dag F is not proportional to the identity (residual " +
              std::to_string(report.proportionality_residual) + ")");

  const Matrix u = canonical_phase(f / std::sqrt(alpha));
  const Complex c = values(top) / std::abs(values(top));
  double residual = 0.0;
  for (int i = 0; i < v1.dim_noise(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    residual = std::max(residual, max_abs(v2[idx] - c * u.adjoint() * v1[idx] * u));
  }
  report.reconstruction_residual = residual;
  require(residual <= 1e-8, ErrorKind::AmbiguousPeripheral,
          "peripheral eigenvector does not reconstruct the second family (residual " + std::to_string(residual) + ")");
  report.equivalent = true;
  report.c = c;
  report.unitary = u;
  return report;
}

struct FiniteWindowReport {
  /// ||rho_1(n) - rho_2(n)||_1
  double trace_norm = 0.0;
  long n = 0;
  /// Window length 2 (D^2 - d + 1) D^2 beyond which a single output determines
  /// all others, for each family.
  long theoretical_n0_first = 0;
  long theoretical_n0_second = 0;
  int independent_kraus_first = 0;
  int independent_kraus_second = 0;
};

inline long theoretical_window(int dim, int independent) {
  const long d2 = static_cast<long>(dim) * dim;
  return 2 * (d2 - independent + 1) * d2;
}

namespace detail {

/// Columns sqrt(Lambda_i) psi_{j i}(n) in the stationary eigenbasis; their outer
/// products sum to rho_V(n).
inline Matrix stationary_output_factor(const PrimitiveChain& chain, long n) {
  const Eigen::Index d = chain.dim_system();
  const Matrix& basis = chain.stationary_basis();
  const RealVector& lambda = chain.stationary_spectrum();
  Matrix cols;
  for (Eigen::Index i = 0; i < d; ++i) {
    const Matrix psi = joint_amplitudes(chain.family(), basis.col(i), n);
    if (cols.size() == 0) cols.resize(psi.cols(), d * d);
    const Matrix projected = basis.adjoint() * psi;  // row j: <e_j|K_idx|e_i>
    for (Eigen::Index j = 0; j < d; ++j)
      cols.col(j * d + i) = std::sqrt(std::max(lambda(i), 0.0)) * projected.row(j).transpose();
  }
  return cols;
}

}  // namespace detail

/// Trace distance of the two stationary outputs at n. The difference
/// W_1 W_1^dag - W_2 W_2^dag of low-rank factors is reduced through a thin QR of
/// [W_1 W_2], so only k^n (D_1^2 + D_2^2) amplitudes are materialised.
inline FiniteWindowReport finite_window_check(const KrausFamily& v1, const KrausFamily& v2, long n,
                                              const Options& opt = {}) {
  require(v1.dim_noise() == v2.dim_noise(), ErrorKind::NoiseDimMismatch, "finite_window_check: noise dimensions differ");
  const std::size_t factor_cols =
      static_cast<std::size_t>(v1.dim_system()) * v1.dim_system() + static_cast<std::size_t>(v2.dim_system()) * v2.dim_system();
  detail::guarded_outputs(v1.dim_noise(), n, opt.guard.amplitudes / factor_cols, "finite_window_check");
  const PrimitiveChain c1 = PrimitiveChain::analyze(v1, opt);
  const PrimitiveChain c2 = PrimitiveChain::analyze(v2, opt);

  const Matrix w1 = detail::stationary_output_factor(c1, n);
  const Matrix w2 = detail::stationary_output_factor(c2, n);
  Matrix w(w1.rows(), w1.cols() + w2.cols());
  w << w1, w2;
  Eigen::HouseholderQR<Matrix> qr(w);
  const Eigen::Index r = std::min(w.rows(), w.cols());
  const Matrix upper = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  RealVector sign(w.cols());
  sign.head(w1.cols()).setOnes();
  sign.tail(w2.cols()).setConstant(-1.0);
  const Matrix core = upper * sign.cast<Complex>().asDiagonal() * upper.adjoint();

  FiniteWindowReport out;
  out.trace_norm = trace_norm_hermitian(core);
  out.n = n;
  out.independent_kraus_first = independent_kraus_count(v1, opt.tol.kraus_rank);
  out.independent_kraus_second = independent_kraus_count(v2, opt.tol.kraus_rank);
  out.theoretical_n0_first = theoretical_window(v1.dim_system(), out.independent_kraus_first);
  out.theoretical_n0_second = theoretical_window(v2.dim_system(), out.independent_kraus_second);
  return out;
}

}  // namespace qmc
