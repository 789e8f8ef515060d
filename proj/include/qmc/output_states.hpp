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
#include <utility>
#include <vector>

#include "qmc/spectral.hpp"

// Tensor-leg convention for n-step outputs: the joint space is
// H (x) K_n (x) ... (x) K_1, so noise unit 1 (the first to interact) is the
// least significant digit. A multi-index (i_1, ..., i_n) sits at position
// sum_m i_m k^(m-1), and the joint amplitude at s * k^n + that position is
// <e_s| K_{i_n} ... K_{i_1} |phi>.

namespace qmc {

class PureStateVector {
 public:
  static PureStateVector normalized(Vector amplitudes, double tol = 1e-10) {
    require(amplitudes.size() > 0, ErrorKind::DimensionMismatch, "state vector is empty");
    require(std::abs(amplitudes.norm() - 1.0) <= tol, ErrorKind::NotNormalized,
            "state vector norm " + std::to_string(amplitudes.norm()) + " is not one");
    return PureStateVector(std::move(amplitudes), true);
  }
  static PureStateVector unnormalized(Vector amplitudes) { return PureStateVector(std::move(amplitudes), false); }
  static PureStateVector basis(Eigen::Index dim, Eigen::Index index) {
    require(index >= 0 && index < dim, ErrorKind::DimensionMismatch, "basis index out of range");
    return PureStateVector(basis_vector(dim, index), true);
  }

  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  bool is_normalized() const { return normalized_; }
  double norm() const { return amplitudes_.norm(); }

 private:
  PureStateVector(Vector a, bool normalized) : amplitudes_(std::move(a)), normalized_(normalized) {}
  Vector amplitudes_;
  bool normalized_;
};

namespace detail {

inline std::size_t guarded_outputs(int k, long n, std::size_t limit, const char* what) {
  require(n >= 1, ErrorKind::InvalidArgument, std::string(what) + ": n must be positive");
  std::size_t count = 0;
  require(checked_pow(static_cast<std::size_t>(k), static_cast<int>(n), limit, count), ErrorKind::SizeGuardExceeded,
          std::string(what) + ": k^n exceeds the size guard " + std::to_string(limit));
  return count;
}

/// D x k^n matrix Psi with Psi(s, idx) = <e_s| K_idx |phi>.
inline Matrix joint_amplitudes(const KrausFamily& v, const Vector& phi, long n) {
  const Eigen::Index d = v.dim_system(), k = v.dim_noise();
  Matrix psi = phi;
  for (long step = 0; step < n; ++step) {
    const Eigen::Index width = psi.cols();
    Matrix next(d, width * k);
    for (Eigen::Index i = 0; i < k; ++i) next.middleCols(i * width, width).noalias() = v[static_cast<std::size_t>(i)] * psi;
    psi = std::move(next);
  }
  return psi;
}

inline Vector flatten_rows(const Matrix& m) { return vec(m); }

struct OverlapTensor {
  Eigen::Index d1 = 0, d2 = 0;
  // values[(j * d1 + i) * d2 * d2 + j2 * d2 + i2] = <psi_{1,j i}(n) | psi_{2,j2 i2}(n)>
  std::vector<Complex> values;
  Complex operator()(Eigen::Index j, Eigen::Index i, Eigen::Index j2, Eigen::Index i2) const {
    return values[static_cast<std::size_t>(((j * d1 + i) * d2 + j2) * d2 + i2)];
  }
};

/// All overlaps <psi_{1,j i}|psi_{2,j' i'}> = <f_i| T_12^n(|f_j><g_j'|) |g_i'> where f, g
/// are the columns of `basis1`, `basis2`.
inline OverlapTensor overlap_tensor(const KrausFamily& v1, const Matrix& basis1, const KrausFamily& v2,
                                    const Matrix& basis2, long n) {
  require(v1.dim_noise() == v2.dim_noise(), ErrorKind::NoiseDimMismatch, "overlap: noise dimensions differ");
  OverlapTensor out;
  out.d1 = basis1.cols();
  out.d2 = basis2.cols();
  out.values.resize(static_cast<std::size_t>(out.d1 * out.d1 * out.d2 * out.d2));
  for (Eigen::Index j = 0; j < out.d1; ++j)
    for (Eigen::Index j2 = 0; j2 < out.d2; ++j2) {
      Matrix x = outer(basis1.col(j), basis2.col(j2));
      for (long step = 0; step < n; ++step) {
        Matrix y = Matrix::Zero(x.rows(), x.cols());
        for (int a = 0; a < v1.dim_noise(); ++a)
          y.noalias() += v1[static_cast<std::size_t>(a)].adjoint() * x * v2[static_cast<std::size_t>(a)];
        x = std::move(y);
      }
      const Matrix projected = basis1.adjoint() * x * basis2;
      for (Eigen::Index i = 0; i < out.d1; ++i)
        for (Eigen::Index i2 = 0; i2 < out.d2; ++i2)
          out.values[static_cast<std::size_t>(((j * out.d1 + i) * out.d2 + j2) * out.d2 + i2)] = projected(i, i2);
    }
  return out;
}

}  // namespace detail

/// (a) |Psi_{V,phi}(n)> = V(n)|phi>, a unit vector of dimension D k^n.
inline PureStateVector joint_state(const KrausFamily& v, const PureStateVector& phi, long n, const Options& opt = {}) {
  require(phi.dim() == v.dim_system(), ErrorKind::DimensionMismatch, "joint_state: phi must live on the system");
  detail::guarded_outputs(v.dim_noise(), n, opt.guard.amplitudes / static_cast<std::size_t>(v.dim_system()),
                          "joint_state");
  Vector psi = detail::flatten_rows(detail::joint_amplitudes(v, phi.amplitudes(), n));
  if (phi.is_normalized()) return PureStateVector::normalized(std::move(psi), 1e-9);
  return PureStateVector::unnormalized(std::move(psi));
}

/// (d) the unnormalised conditional output sum_idx <eta|K_idx|phi> |idx>.
inline PureStateVector conditional_state(const KrausFamily& v, const PureStateVector& eta, const PureStateVector& phi,
                                         long n, const Options& opt = {}) {
  require(eta.dim() == v.dim_system() && phi.dim() == v.dim_system(), ErrorKind::DimensionMismatch,
          "conditional_state: eta and phi must live on the system");
  detail::guarded_outputs(v.dim_noise(), n, opt.guard.amplitudes, "conditional_state");
  const Matrix psi = detail::joint_amplitudes(v, phi.amplitudes(), n);
  return PureStateVector::unnormalized((eta.amplitudes().adjoint() * psi).transpose());
}

/// (b) the output state tr_H |Psi_{V,phi}(n)><Psi_{V,phi}(n)|, k^n x k^n.
inline DensityMatrix system_output_state(const KrausFamily& v, const PureStateVector& phi, long n,
                                         const Options& opt = {}) {
  require(phi.dim() == v.dim_system(), ErrorKind::DimensionMismatch, "output state: phi must live on the system");
  detail::guarded_outputs(v.dim_noise(), n, opt.guard.matrix_dim, "system_output_state");
  const Matrix psi = detail::joint_amplitudes(v, phi.amplitudes(), n);
  return DensityMatrix::from_factor(psi.transpose());
}

/// (c) the stationary output rho_V(n) = tr_H[V(n) rho_ss V(n)^dag], k^n x k^n.
inline DensityMatrix stationary_output(const KrausFamily& v, long n, const Options& opt = {}) {
  const PrimitiveChain chain = PrimitiveChain::analyze(v, opt);
  const std::size_t outputs = detail::guarded_outputs(v.dim_noise(), n, opt.guard.matrix_dim, "stationary_output");
  const Eigen::Index d = v.dim_system();
  const auto width = static_cast<Eigen::Index>(outputs);
  // Columns t of the D k^n x D matrix V(n), one joint state per input basis vector.
  std::vector<Matrix> joint;
  joint.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index t = 0; t < d; ++t) joint.push_back(detail::joint_amplitudes(v, basis_vector(d, t), n));
  // rho = sum_s B_s rho_ss B_s^dag = W W^dag with W = [B_0 sqrt(rho_ss) | B_1 sqrt(rho_ss) | ...].
  const Matrix root = psd_sqrt(chain.stationary());
  Matrix w(width, d * d);
  for (Eigen::Index s = 0; s < d; ++s) {
    // B_s(idx, t) = <e_s|K_idx|e_t>
    Matrix b(width, d);
    for (Eigen::Index t = 0; t < d; ++t) b.col(t) = joint[static_cast<std::size_t>(t)].row(s).transpose();
    w.middleCols(s * d, d) = b * root;
  }
  return DensityMatrix::from_factor(w);
}

/// <psi_{1,eta1,phi1}(n) | psi_{2,eta2,phi2}(n)> = <phi1| T_12^n(|eta1><eta2|) |phi2>,
/// with polynomial cost in n.
inline Complex output_overlap(const KrausFamily& v1, const KrausFamily& v2, const Vector& eta1, const Vector& phi1,
                              const Vector& eta2, const Vector& phi2, long n) {
  require(v1.dim_noise() == v2.dim_noise(), ErrorKind::NoiseDimMismatch, "output_overlap: noise dimensions differ");
  require(eta1.size() == v1.dim_system() && phi1.size() == v1.dim_system() && eta2.size() == v2.dim_system() &&
              phi2.size() == v2.dim_system(),
          ErrorKind::DimensionMismatch, "output_overlap: vectors must match system dimensions");
  Matrix x = outer(eta1, eta2);
  for (long step = 0; step < n; ++step) {
    Matrix y = Matrix::Zero(x.rows(), x.cols());
    for (int a = 0; a < v1.dim_noise(); ++a)
      y.noalias() += v1[static_cast<std::size_t>(a)].adjoint() * x * v2[static_cast<std::size_t>(a)];
    x = std::move(y);
  }
  return phi1.dot(x * phi2);
}

/// Standard-basis version: <psi_{1,j i}(n) | psi_{2,j' i'}(n)>.
inline Complex output_overlap(const KrausFamily& v1, const KrausFamily& v2, Eigen::Index j, Eigen::Index i,
                              Eigen::Index j2, Eigen::Index i2, long n) {
  const Eigen::Index d1 = v1.dim_system(), d2 = v2.dim_system();
  require(j >= 0 && j < d1 && i >= 0 && i < d1 && j2 >= 0 && j2 < d2 && i2 >= 0 && i2 < d2,
          ErrorKind::DimensionMismatch, "output_overlap: basis index out of range");
  return output_overlap(v1, v2, basis_vector(d1, j), basis_vector(d1, i), basis_vector(d2, j2), basis_vector(d2, i2),
                        n);
}

/// tr[rho_1(n) rho_2(n)] for the stationary outputs of two primitive families,
/// sum Lambda_{1,i} Lambda_{2,i'} |<psi_{1,j i}|psi_{2,j' i'}>|^2 in the stationary eigenbases.
inline double output_cross_purity(const PrimitiveChain& c1, const PrimitiveChain& c2, long n) {
  const auto o =
      detail::overlap_tensor(c1.family(), c1.stationary_basis(), c2.family(), c2.stationary_basis(), n);
  const RealVector& l1 = c1.stationary_spectrum();
  const RealVector& l2 = c2.stationary_spectrum();
  double total = 0.0;
  for (Eigen::Index j = 0; j < o.d1; ++j)
    for (Eigen::Index i = 0; i < o.d1; ++i)
      for (Eigen::Index j2 = 0; j2 < o.d2; ++j2)
        for (Eigen::Index i2 = 0; i2 < o.d2; ++i2) total += l1(i) * l2(i2) * std::norm(o(j, i, j2, i2));
  return total;
}

inline double output_cross_purity(const KrausFamily& v1, const KrausFamily& v2, long n, const Options& opt = {}) {
  return output_cross_purity(PrimitiveChain::analyze(v1, opt), PrimitiveChain::analyze(v2, opt), n);
}

/// tr[rho_V(n)^2] through transfer-matrix powers.
inline double output_purity(const KrausFamily& v, long n, const Options& opt = {}) {
  const PrimitiveChain chain = PrimitiveChain::analyze(v, opt);
  return output_cross_purity(chain, chain, n);
}

/// (sum_i Lambda_i^2)^2, the n -> infinity limit of output_purity.
inline double output_purity_limit(const KrausFamily& v, const Options& opt = {}) {
  const PrimitiveChain chain = PrimitiveChain::analyze(v, opt);
  const double s = chain.stationary_spectrum().squaredNorm();
  return s * s;
}

/// Traces out noise unit `unit` (1-based, unit 1 interacted first) of a state on
/// K^(x)n, returning a state on the remaining n-1 units in the same ordering.
inline Matrix trace_out_unit(const Matrix& rho, int k, int n, int unit) {
  require(unit >= 1 && unit <= n, ErrorKind::InvalidArgument, "trace_out_unit: unit out of range");
  std::size_t total = 0;
  require(checked_pow(static_cast<std::size_t>(k), n, std::size_t{1} << 30, total) &&
              rho.rows() == static_cast<Eigen::Index>(total) && is_square(rho),
          ErrorKind::DimensionMismatch, "trace_out_unit: state is not on K^(x)n");
  const Eigen::Index low = static_cast<Eigen::Index>(std::pow(k, unit - 1));
  const Eigen::Index high = static_cast<Eigen::Index>(total) / (low * k);
  const Eigen::Index out_dim = low * high;
  Matrix out = Matrix::Zero(out_dim, out_dim);
  auto full = [&](Eigen::Index hi, Eigen::Index digit, Eigen::Index lo) { return (hi * k + digit) * low + lo; };
  for (Eigen::Index h1 = 0; h1 < high; ++h1)
    for (Eigen::Index l1 = 0; l1 < low; ++l1)
      for (Eigen::Index h2 = 0; h2 < high; ++h2)
        for (Eigen::Index l2 = 0; l2 < low; ++l2) {
          Complex sum = 0.0;
          for (Eigen::Index a = 0; a < k; ++a) sum += rho(full(h1, a, l1), full(h2, a, l2));
          out(h1 * low + l1, h2 * low + l2) = sum;
        }
  return out;
}

}  // namespace qmc
