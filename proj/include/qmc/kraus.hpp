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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qmc/error.hpp"
#include "qmc/linalg.hpp"
#include "qmc/options.hpp"

namespace qmc {

/// A validated set of Kraus operators K_1..K_k on C^D with sum K_i^dag K_i = 1.
///
/// The family defines the isometry V: C^D -> C^D (x) C^k, V|phi> = sum_i K_i|phi> (x) |i>,
/// stored as a (D k) x D matrix whose row index is s * k + i (system index s,
/// noise index i).
class KrausFamily {
 public:
  static KrausFamily validate(std::vector<Matrix> kraus, const Options& opt = {}) {
    require(!kraus.empty(), ErrorKind::DimensionMismatch, "Kraus list is empty");
    const Eigen::Index d = kraus.front().rows();
    require(d > 0, ErrorKind::DimensionMismatch, "Kraus operators must be non-empty");
    require(d <= opt.guard.max_system_dim, ErrorKind::SizeGuardExceeded,
            "system dimension " + std::to_string(d) + " exceeds guard " + std::to_string(opt.guard.max_system_dim));
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < kraus.size(); ++i) {
      const Matrix& k = kraus[i];
      require(k.rows() == d && k.cols() == d, ErrorKind::DimensionMismatch,
              "Kraus operator " + std::to_string(i) + " is not " + std::to_string(d) + "x" + std::to_string(d));
      require(all_finite(k), ErrorKind::NonFiniteEntry, "Kraus operator " + std::to_string(i) + " has NaN/Inf entries");
      sum += k.adjoint() * k;
    }
    const double deviation = max_abs(sum - identity(d));
    require(deviation <= opt.tol.structural, ErrorKind::NotIsometry,
            "sum K_i^dag K_i deviates from identity by " + std::to_string(deviation));
    return KrausFamily(std::move(kraus), deviation);
  }

  /// Splits a (D k) x D isometry into its Kraus operators.
  static KrausFamily from_isometry(const Matrix& v, Eigen::Index dim_noise, const Options& opt = {}) {
    require(dim_noise > 0 && v.rows() == v.cols() * dim_noise, ErrorKind::DimensionMismatch,
            "isometry must be (D k) x D");
    const Eigen::Index d = v.cols();
    std::vector<Matrix> kraus(static_cast<std::size_t>(dim_noise), Matrix(d, d));
    for (Eigen::Index s = 0; s < d; ++s)
      for (Eigen::Index i = 0; i < dim_noise; ++i) kraus[static_cast<std::size_t>(i)].row(s) = v.row(s * dim_noise + i);
    return validate(std::move(kraus), opt);
  }

  int dim_system() const { return static_cast<int>(kraus_.front().rows()); }
  int dim_noise() const { return static_cast<int>(kraus_.size()); }
  const std::vector<Matrix>& operators() const { return kraus_; }
  const Matrix& operator[](std::size_t i) const { return kraus_[i]; }
  /// max-norm of sum K_i^dag K_i - 1 at validation time.
  double deviation() const { return deviation_; }

  Matrix isometry() const {
    const Eigen::Index d = dim_system(), k = dim_noise();
    Matrix v(d * k, d);
    for (Eigen::Index s = 0; s < d; ++s)
      for (Eigen::Index i = 0; i < k; ++i) v.row(s * k + i) = kraus_[static_cast<std::size_t>(i)].row(s);
    return v;
  }

 private:
  KrausFamily(std::vector<Matrix> kraus, double deviation) : kraus_(std::move(kraus)), deviation_(deviation) {}

  std::vector<Matrix> kraus_;
  double deviation_;
};

inline KrausFamily validate_kraus(std::vector<Matrix> kraus, const Options& opt = {}) {
  return KrausFamily::validate(std::move(kraus), opt);
}

/// A density matrix: Hermitian, positive semidefinite, unit trace.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const Matrix& m, double tol = 1e-12) {
    require(is_square(m), ErrorKind::DimensionMismatch, "density matrix must be square");
    require(is_hermitian(m, tol), ErrorKind::NotAState, "density matrix is not Hermitian");
    const double min_eig = hermitian_eigen(m).values.minCoeff();
    require(min_eig >= -tol, ErrorKind::NotAState, "density matrix has negative eigenvalue " + std::to_string(min_eig));
    require(std::abs(m.trace() - 1.0) <= tol, ErrorKind::NotAState, "density matrix trace is not one");
    return DensityMatrix(hermitian_part(m));
  }

  /// rho = W W^dag, positive by construction; only the trace is checked. Avoids
  /// the eigendecomposition for large low-rank outputs.
  static DensityMatrix from_factor(const Matrix& w, double tol = 1e-10) {
    require(all_finite(w), ErrorKind::NonFiniteEntry, "density factor has non-finite entries");
    require(std::abs(w.squaredNorm() - 1.0) <= tol, ErrorKind::NotAState, "density matrix trace is not one");
    Matrix rho = w * w.adjoint();
    return DensityMatrix(hermitian_part(rho));
  }

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }

 private:
  explicit DensityMatrix(Matrix m) : rho_(std::move(m)) {}
  Matrix rho_;
};

/// Heisenberg-picture channel T(X) = sum_i K_i^dag X K_i.
inline Matrix apply_heisenberg(const KrausFamily& v, const Matrix& x) {
  const Eigen::Index d = v.dim_system();
  require(x.rows() == d && x.cols() == d, ErrorKind::DimensionMismatch, "apply_heisenberg: X must be D x D");
  Matrix out = Matrix::Zero(d, d);
  for (const Matrix& k : v.operators()) out.noalias() += k.adjoint() * x * k;
  return out;
}

/// Schroedinger-picture channel T_*(rho) = sum_i K_i rho K_i^dag.
inline Matrix apply_predual(const KrausFamily& v, const Matrix& rho) {
  const Eigen::Index d = v.dim_system();
  require(rho.rows() == d && rho.cols() == d, ErrorKind::DimensionMismatch, "apply_predual: rho must be D x D");
  Matrix out = Matrix::Zero(d, d);
  for (const Matrix& k : v.operators()) out.noalias() += k * rho * k.adjoint();
  return out;
}

/// A (x) 1_k on the system (x) noise space.
inline Matrix embed_system(const Matrix& a, Eigen::Index dim_noise) { return kron(a, identity(dim_noise)); }

/// 1_D (x) B on the system (x) noise space.
inline Matrix embed_noise(const Matrix& b, Eigen::Index dim_system) { return kron(identity(dim_system), b); }

/// E(X) = V^dag X V for X acting on system (x) noise.
inline Matrix conditional_expectation(const KrausFamily& v, const Matrix& x) {
  const Eigen::Index dk = Eigen::Index{v.dim_system()} * v.dim_noise();
  require(x.rows() == dk && x.cols() == dk, ErrorKind::DimensionMismatch,
          "conditional_expectation: X must be (D k) x (D k)");
  const Matrix iso = v.isometry();
  return iso.adjoint() * x * iso;
}

// ---------------------------------------------------------------------------
// Superoperators

struct OperatorShape {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  friend bool operator==(const OperatorShape&, const OperatorShape&) = default;
};

/// Linear map between operator spaces, stored as a matrix acting on row-major
/// vectorised operators (see `vec`).
class SuperOperator {
 public:
  SuperOperator(OperatorShape in, OperatorShape out, Matrix matrix)
      : in_(in), out_(out), matrix_(std::move(matrix)) {
    require(matrix_.rows() == out.rows * out.cols && matrix_.cols() == in.rows * in.cols,
            ErrorKind::DimensionMismatch, "superoperator matrix does not match operator shapes");
  }

  /// X |-> sum_i L_i^dag X R_i for operator lists of equal length.
  static SuperOperator sandwich(const std::vector<Matrix>& left, const std::vector<Matrix>& right) {
    require(!left.empty() && left.size() == right.size(), ErrorKind::NoiseDimMismatch,
            "sandwich map needs operator lists of equal noise dimension");
    const Eigen::Index r = left.front().cols(), c = right.front().cols();
    const Eigen::Index ri = left.front().rows(), ci = right.front().rows();
    Matrix m = Matrix::Zero(r * c, ri * ci);
    for (std::size_t i = 0; i < left.size(); ++i) m += kron(left[i].adjoint(), right[i].transpose());
    return SuperOperator({ri, ci}, {r, c}, std::move(m));
  }

  const OperatorShape& dim_in() const { return in_; }
  const OperatorShape& dim_out() const { return out_; }
  const Matrix& matrix() const { return matrix_; }

  Matrix apply(const Matrix& x) const {
    require(x.rows() == in_.rows && x.cols() == in_.cols, ErrorKind::DimensionMismatch,
            "superoperator applied to operator of wrong shape");
    return unvec(matrix_ * vec(x), out_.rows, out_.cols);
  }

  /// Eigenvalues sorted by decreasing modulus (ties broken by argument).
  std::vector<Complex> eigenvalues() const {
    require(in_ == out_, ErrorKind::DimensionMismatch, "eigenvalues need an endomorphism");
    Eigen::ComplexEigenSolver<Matrix> solver(matrix_, false);
    std::vector<Complex> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
      if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
      return std::arg(a) < std::arg(b);
    });
    return ev;
  }

  /// Choi matrix sum_{ab} E_ab (x) Phi(E_ab). PSD iff the map is completely positive.
  Matrix choi() const {
    Matrix c = Matrix::Zero(in_.rows * out_.rows, in_.cols * out_.cols);
    for (Eigen::Index a = 0; a < in_.rows; ++a)
      for (Eigen::Index b = 0; b < in_.cols; ++b)
        c.block(a * out_.rows, b * out_.cols, out_.rows, out_.cols) = apply(matrix_unit(in_.rows, in_.cols, a, b));
    return c;
  }

 private:
  OperatorShape in_;
  OperatorShape out_;
  Matrix matrix_;
};

/// Transfer matrix of T (Heisenberg picture).
inline SuperOperator heisenberg_map(const KrausFamily& v) {
  return SuperOperator::sandwich(v.operators(), v.operators());
}

/// Transfer matrix of T_* (Schroedinger picture): rho |-> sum K rho K^dag.
inline SuperOperator predual_map(const KrausFamily& v) {
  std::vector<Matrix> adj;
  adj.reserve(v.operators().size());
  for (const Matrix& k : v.operators()) adj.push_back(k.adjoint());
  return SuperOperator::sandwich(adj, adj);
}

/// T_12(X) = V_1^dag (X (x) 1) V_2 = sum_i K_{1,i}^dag X K_{2,i} on D1 x D2 operators.
inline SuperOperator cross_map(const KrausFamily& v1, const KrausFamily& v2) {
  require(v1.dim_noise() == v2.dim_noise(), ErrorKind::NoiseDimMismatch,
          "cross_map: noise dimensions " + std::to_string(v1.dim_noise()) + " and " +
              std::to_string(v2.dim_noise()) + " differ");
  return SuperOperator::sandwich(v1.operators(), v2.operators());
}

}  // namespace qmc
