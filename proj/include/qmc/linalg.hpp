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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmc/error.hpp"

namespace qmc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

inline bool is_square(const Matrix& m) { return m.rows() == m.cols(); }

inline bool is_hermitian(const Matrix& m, double tol) {
  return is_square(m) && max_abs(m - m.adjoint()) <= tol;
}

/// (A + A^dag) / 2
inline Matrix hermitian_part(const Matrix& a) { return (a + a.adjoint()) * 0.5; }

/// (A - A^dag) / 2i, so that A = re_part(A) + i im_part(A) with both parts Hermitian.
inline Matrix anti_hermitian_part(const Matrix& a) { return (a - a.adjoint()) / Complex(0.0, 2.0); }

/// Row-major vectorisation: vec(X)[i * cols + j] = X(i, j), i.e. coordinates in
/// the matrix-unit basis E_ij taken in lexicographic order.
inline Vector vec(const Matrix& x) {
  Vector v(x.size());
  const Eigen::Index cols = x.cols();
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < cols; ++j) v(i * cols + j) = x(i, j);
  return v;
}

inline Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  require(v.size() == rows * cols, ErrorKind::DimensionMismatch, "unvec: size does not match shape");
  Matrix x(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) x(i, j) = v(i * cols + j);
  return x;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

/// |a><b| for vectors a, b.
inline Matrix outer(const Vector& a, const Vector& b) { return a * b.adjoint(); }

inline Vector basis_vector(Eigen::Index dim, Eigen::Index index) {
  Vector e = Vector::Zero(dim);
  e(index) = 1.0;
  return e;
}

inline Matrix matrix_unit(Eigen::Index rows, Eigen::Index cols, Eigen::Index i, Eigen::Index j) {
  Matrix e = Matrix::Zero(rows, cols);
  e(i, j) = 1.0;
  return e;
}

/// Spectral decomposition of a Hermitian matrix (eigenvalues ascending).
struct HermitianEigen {
  RealVector values;
  Matrix vectors;
};

inline HermitianEigen hermitian_eigen(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Principal square root of a positive semidefinite matrix. Eigenvalues below
/// zero (round-off) are clamped.
inline Matrix psd_sqrt(const Matrix& g) {
  const auto eig = hermitian_eigen(g);
  RealVector root = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * root.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

/// exp(i t H) for Hermitian H, through its eigendecomposition.
inline Matrix unitary_exp(const Matrix& h, double t) {
  const auto eig = hermitian_eigen(h);
  Vector phases(eig.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::exp(kI * (t * eig.values(i)));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

inline double trace_norm_hermitian(const Matrix& h) {
  return hermitian_eigen(h).values.cwiseAbs().sum();
}

/// Numerical rank from singular values relative to an absolute threshold.
inline Eigen::Index numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const RealVector& s = svd.singularValues();
  return static_cast<Eigen::Index>(std::count_if(s.data(), s.data() + s.size(), [tol](double x) { return x > tol; }));
}

/// k^n with an overflow-aware comparison against `limit`; returns false when the
/// power exceeds it.
inline bool checked_pow(std::size_t base, int exponent, std::size_t limit, std::size_t& out) {
  std::size_t value = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && value > limit / base) return false;
    value *= base;
  }
  out = value;
  return value <= limit;
}

}  // namespace qmc
