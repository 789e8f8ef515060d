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
#include <memory>
#include <string>
#include <vector>

#include "qmc/kraus.hpp"

namespace qmc {

struct SpectralReport {
  /// Transfer-matrix spectrum, decreasing modulus.
  std::vector<Complex> eigenvalues;
  /// Least-squares fixed point of T_*, Hermitised and trace-normalised. Only a
  /// state when `stationary_valid`.
  Matrix stationary;
  bool stationary_valid = false;
  double stationary_eigen_residual = 0.0;
  double stationary_min_eigenvalue = 0.0;
  int unit_eigenvalue_multiplicity = 0;
  bool is_irreducible = false;
  bool is_primitive = false;
  double spectral_gap = 0.0;
  /// Set when a verdict sits within a factor of ten of its threshold.
  bool borderline = false;
};

namespace detail {

inline Matrix solve_fixed_point(const SuperOperator& predual) {
  const Eigen::Index d = predual.dim_in().rows;
  const Eigen::Index d2 = d * d;
  Matrix a(d2 + 1, d2);
  a.topRows(d2) = predual.matrix() - identity(d2);
  a.row(d2).setZero();
  for (Eigen::Index i = 0; i < d; ++i) a(d2, i * d + i) = 1.0;
  Vector rhs = Vector::Zero(d2 + 1);
  rhs(d2) = 1.0;
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  Matrix rho = hermitian_part(unvec(cod.solve(rhs), d, d));
  return rho / rho.trace();
}

}  // namespace detail

/// Quantum Perron-Frobenius analysis. Primitivity is decided spectrally: simple
/// eigenvalue one, no other eigenvalue within `tol.gap` of the unit circle, and
/// a full-rank fixed point.
inline SpectralReport primitivity_check(const KrausFamily& v, const Options& opt = {}) {
  SpectralReport report;
  const SuperOperator t = heisenberg_map(v);
  report.eigenvalues = t.eigenvalues();

  const double gap_tol = opt.tol.gap;
  int unit = 0;
  double second = 0.0;
  bool second_set = false;
  for (const Complex& ev : report.eigenvalues) {
    if (std::abs(ev - 1.0) <= gap_tol) {
      ++unit;
    } else if (!second_set) {
      second = std::abs(ev);
      second_set = true;
    }
  }
  // With a degenerate unit eigenvalue the second modulus is 1.
  if (unit > 1) second = 1.0;
  report.unit_eigenvalue_multiplicity = unit;
  report.spectral_gap = 1.0 - second;

  const SuperOperator predual = predual_map(v);
  report.stationary = detail::solve_fixed_point(predual);
  report.stationary_eigen_residual = max_abs(predual.apply(report.stationary) - report.stationary);
  report.stationary_min_eigenvalue = hermitian_eigen(report.stationary).values.minCoeff();
  report.stationary_valid = unit == 1 && report.stationary_min_eigenvalue >= -opt.tol.structural * 100;

  const bool simple = unit == 1;
  const bool full_rank = report.stationary_min_eigenvalue >= opt.tol.rank;
  const bool aperiodic = second <= 1.0 - gap_tol;
  report.is_irreducible = simple && full_rank;
  report.is_primitive = simple && full_rank && aperiodic;
  report.borderline =
      (second > 1.0 - 10 * gap_tol && second <= 1.0 - gap_tol) ||
      (report.stationary_min_eigenvalue >= opt.tol.rank && report.stationary_min_eigenvalue < 10 * opt.tol.rank);
  return report;
}

/// The unique stationary state of an irreducible channel.
inline DensityMatrix stationary_state(const KrausFamily& v, const Options& opt = {}) {
  const SuperOperator predual = predual_map(v);
  const auto ev = predual.eigenvalues();
  int unit = 0;
  for (const Complex& e : ev)
    if (std::abs(e - 1.0) <= opt.tol.gap) ++unit;
  require(unit == 1, ErrorKind::DegenerateFixedSpace,
          "eigenvalue 1 of T_* has multiplicity " + std::to_string(unit));
  const Matrix rho = detail::solve_fixed_point(predual);
  const double min_eig = hermitian_eigen(rho).values.minCoeff();
  require(min_eig >= -opt.tol.structural * 100, ErrorKind::NotAState,
          "fixed point has negative eigenvalue " + std::to_string(min_eig));
  return DensityMatrix::from_matrix(rho, opt.tol.structural * 100);
}

/// Precomputed data of a primitive chain: stationary state with its spectral
/// decomposition, the transfer matrix, and a factorisation for the resolvent
/// R = (Id - T)^{-1} on A_0 = {A : tr[rho_ss A] = 0}.
class PrimitiveChain {
 public:
  static PrimitiveChain analyze(const KrausFamily& v, const Options& opt = {}) {
    SpectralReport report = primitivity_check(v, opt);
    require(report.is_primitive, ErrorKind::NotPrimitive,
            "channel is not primitive (unit multiplicity " + std::to_string(report.unit_eigenvalue_multiplicity) +
                ", gap " + std::to_string(report.spectral_gap) + ", min stationary eigenvalue " +
                std::to_string(report.stationary_min_eigenvalue) + ")");
    return PrimitiveChain(v, std::move(report), opt);
  }

  const KrausFamily& family() const { return family_; }
  const SpectralReport& report() const { return report_; }
  const Options& options() const { return opt_; }
  const Matrix& stationary() const { return report_.stationary; }
  /// Eigenvalues Lambda_i of rho_ss (ascending) and the matching eigenbasis columns.
  const RealVector& stationary_spectrum() const { return spectrum_.values; }
  const Matrix& stationary_basis() const { return spectrum_.vectors; }
  const SuperOperator& transfer() const { return transfer_; }
  int dim_system() const { return family_.dim_system(); }
  int dim_noise() const { return family_.dim_noise(); }

  Matrix heisenberg(const Matrix& x) const { return apply_heisenberg(family_, x); }

  /// T^n(X) by repeated application.
  Matrix heisenberg_power(Matrix x, long n) const {
    for (long i = 0; i < n; ++i) x = apply_heisenberg(family_, x);
    return x;
  }

  Complex stationary_mean(const Matrix& x) const { return (stationary() * x).trace(); }

  /// Y in A_0 with (Id - T)(Y) = X, for X in A_0.
  Matrix resolvent(const Matrix& x) const {
    const Eigen::Index d = dim_system();
    require(x.rows() == d && x.cols() == d, ErrorKind::DimensionMismatch, "resolvent: X must be D x D");
    const Complex mean = stationary_mean(x);
    require(std::abs(mean) <= opt_.tol.domain, ErrorKind::NotInDomain,
            "resolvent: |tr[rho_ss X]| = " + std::to_string(std::abs(mean)) + " exceeds domain tolerance");
    Vector rhs(d * d + 1);
    rhs.head(d * d) = vec(x);
    rhs(d * d) = 0.0;
    return unvec(solver_->solve(rhs), d, d);
  }

 private:
  PrimitiveChain(const KrausFamily& v, SpectralReport report, const Options& opt)
      : family_(v), report_(std::move(report)), opt_(opt), transfer_(heisenberg_map(v)) {
    spectrum_ = hermitian_eigen(report_.stationary);
    const Eigen::Index d = v.dim_system(), d2 = d * d;
    // [(Id - T); vec(rho_ss^T)^T] vec(Y) = [vec(X); 0]; the last row enforces tr[rho_ss Y] = 0.
    Matrix a(d2 + 1, d2);
    a.topRows(d2) = identity(d2) - transfer_.matrix();
    a.row(d2) = vec(report_.stationary.transpose()).transpose();
    solver_ = std::make_shared<const Eigen::CompleteOrthogonalDecomposition<Matrix>>(a);
  }

  KrausFamily family_;
  SpectralReport report_;
  Options opt_;
  SuperOperator transfer_;
  HermitianEigen spectrum_;
  std::shared_ptr<const Eigen::CompleteOrthogonalDecomposition<Matrix>> solver_;
};

/// ||T^n(X) - tr[X rho_ss] 1||_max.
inline double mixing_check(const KrausFamily& v, const Matrix& x, long n, const Options& opt = {}) {
  const PrimitiveChain chain = PrimitiveChain::analyze(v, opt);
  const Matrix tn = chain.heisenberg_power(x, n);
  return max_abs(tn - chain.stationary_mean(x) * identity(v.dim_system()));
}

inline Matrix resolvent_R(const KrausFamily& v, const Matrix& x, const Options& opt = {}) {
  return PrimitiveChain::analyze(v, opt).resolvent(x);
}

/// Brute-force cross-check of primitivity: whether the length-m Kraus products
/// K_{i_m}...K_{i_1} span all of M_D for some m <= n_max. Spanning implies that
/// T^m is strictly positive; the orthonormal span basis is carried forward, so
/// the cost is polynomial in D and linear in n_max.
inline bool power_positivity_check(const KrausFamily& v, int n_max, double tol = 1e-10) {
  const Eigen::Index d = v.dim_system(), d2 = d * d;
  auto orthonormal_span = [&](const std::vector<Matrix>& mats) {
    Matrix cols(d2, static_cast<Eigen::Index>(mats.size()));
    for (std::size_t i = 0; i < mats.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = vec(mats[i]);
    Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeThinU);
    std::vector<Matrix> basis;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > tol) basis.push_back(unvec(svd.matrixU().col(i), d, d));
    return basis;
  };
  std::vector<Matrix> span = orthonormal_span(v.operators());
  for (int m = 1; m <= n_max; ++m) {
    if (static_cast<Eigen::Index>(span.size()) == d2) return true;
    if (m == n_max) break;
    std::vector<Matrix> next;
    for (const Matrix& k : v.operators())
      for (const Matrix& a : span) next.push_back(k * a);
    span = orthonormal_span(next);
  }
  return false;
}

}  // namespace qmc
