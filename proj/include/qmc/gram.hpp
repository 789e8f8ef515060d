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
#include <string>
#include <vector>

#include "qmc/lan.hpp"

namespace qmc {

/// Gram matrix of a finite pure-state model: Hermitian, PSD, unit diagonal.
class GramMatrix {
 public:
  static GramMatrix checked(const Matrix& g, double tol = 1e-10) {
    require(is_square(g) && g.rows() > 0, ErrorKind::DimensionMismatch, "Gram matrix must be square and non-empty");
    require(all_finite(g), ErrorKind::NonFiniteEntry, "Gram matrix has non-finite entries");
    require(is_hermitian(g, 1e-12), ErrorKind::NotHermitian, "Gram matrix is not Hermitian");
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      require(std::abs(g(i, i) - 1.0) <= tol, ErrorKind::NotNormalized,
              "Gram diagonal entry " + std::to_string(i) + " differs from one");
    const double min_eig = hermitian_eigen(hermitian_part(g)).values.minCoeff();
    require(min_eig >= -tol, ErrorKind::NotPSD, "Gram matrix has eigenvalue " + std::to_string(min_eig));
    return GramMatrix(hermitian_part(g));
  }

  Eigen::Index size() const { return g_.rows(); }
  const Matrix& matrix() const { return g_; }

 private:
  explicit GramMatrix(Matrix g) : g_(std::move(g)) {}
  Matrix g_;
};

inline GramMatrix gram_of_model(const std::vector<PureStateVector>& states, double tol = 1e-10) {
  require(!states.empty(), ErrorKind::DimensionMismatch, "gram_of_model: empty model");
  const Eigen::Index m = static_cast<Eigen::Index>(states.size());
  Matrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const PureStateVector& si = states[static_cast<std::size_t>(i)];
    require(si.dim() == states.front().dim(), ErrorKind::DimensionMismatch, "gram_of_model: dimensions differ");
    require(std::abs(si.norm() - 1.0) <= tol, ErrorKind::NotNormalized,
            "gram_of_model: state " + std::to_string(i) + " is not normalised");
    for (Eigen::Index j = 0; j < m; ++j) g(i, j) = si.amplitudes().dot(states[static_cast<std::size_t>(j)].amplitudes());
  }
  return GramMatrix::checked(g, tol);
}

/// Columns of the PSD square root of G; their Gram matrix is G.
inline std::vector<PureStateVector> canonical_embedding(const GramMatrix& g) {
  const Matrix root = psd_sqrt(g.matrix());
  std::vector<PureStateVector> out;
  for (Eigen::Index i = 0; i < root.cols(); ++i) out.push_back(PureStateVector::unnormalized(root.col(i)));
  return out;
}

namespace detail {

/// 1 - |<a|b>|^2 / (|a|^2 |b|^2). Small vectors use the Lagrange identity
/// |a|^2 |b|^2 - |<a|b>|^2 = 1/2 sum_ij |a_i b_j - a_j b_i|^2, which is exactly zero
/// for a = b and avoids cancellation for nearly parallel vectors.
inline double sine_squared(const Vector& a, const Vector& b) {
  const double norms = a.squaredNorm() * b.squaredNorm();
  if (a.size() <= 256) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
      for (Eigen::Index j = i + 1; j < a.size(); ++j) s += std::norm(a(i) * b(j) - a(j) * b(i));
    return std::min(1.0, s / norms);
  }
  return std::max(0.0, 1.0 - std::norm(a.dot(b)) / norms);
}

}  // namespace detail

/// || |psi><psi| - |phi><phi| ||_1 = 2 sqrt(1 - |<psi|phi>|^2)
inline double pure_trace_distance(const PureStateVector& psi, const PureStateVector& phi) {
  require(psi.dim() == phi.dim(), ErrorKind::DimensionMismatch, "pure_trace_distance: dimensions differ");
  return 2.0 * std::sqrt(detail::sine_squared(psi.amplitudes(), phi.amplitudes()));
}

/// max_i of the trace distance between the i-th states of the two canonical
/// embeddings. Upper bound on the Le Cam deficiency between the finite models.
inline double finite_model_distance(const GramMatrix& g1, const GramMatrix& g2) {
  require(g1.size() == g2.size(), ErrorKind::SizeMismatch, "finite_model_distance: Gram sizes differ");
  const auto e1 = canonical_embedding(g1);
  const auto e2 = canonical_embedding(g2);
  double worst = 0.0;
  for (std::size_t i = 0; i < e1.size(); ++i) worst = std::max(worst, pure_trace_distance(e1[i], e2[i]));
  return worst;
}

/// exp(-F (u_a - u_b)^2 / 8)
inline GramMatrix coherent_model_gram(double fisher, const std::vector<double>& grid) {
  const Eigen::Index m = static_cast<Eigen::Index>(grid.size());
  Matrix g(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      g(a, b) = gaussian_inner(fisher, grid[static_cast<std::size_t>(a)], grid[static_cast<std::size_t>(b)]);
  return GramMatrix::checked(g);
}

/// <Psi_{u_a}(n)|Psi_{u_b}(n)> e^{i a (u_a^2 - u_b^2)} for the gauged family,
/// divided by the norms of the two outputs.
inline GramMatrix output_model_gram(const ParamFamily& family, const std::vector<double>& grid, long n,
                                    const PureStateVector& phi, const Options& opt = {}) {
  const PrimitiveChain chain = PrimitiveChain::analyze(family.base(), opt);
  require(phi.dim() == chain.dim_system(), ErrorKind::DimensionMismatch, "output_model_gram: phi must live on the system");
  const ParamFamily f = detail::gauged(family, chain);
  const double a = qfi_formula(f, opt).a;
  const Eigen::Index m = static_cast<Eigen::Index>(grid.size()), d = chain.dim_system();
  Matrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double u = grid[static_cast<std::size_t>(i)], v = grid[static_cast<std::size_t>(j)];
      const SuperOperator power({d, d}, {d, d}, deformed_power(f, u, v, n));
      const Complex inner = phi.amplitudes().dot(power.apply(identity(d)) * phi.amplitudes());
      g(i, j) = inner * std::exp(Complex(0.0, a * (u * u - v * v)));
    }
  }
  const RealVector norms = g.diagonal().real().cwiseSqrt();
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) g(i, j) /= norms(i) * norms(j);
  return GramMatrix::checked(hermitian_part(g), 1e-9);
}

struct WeakDiagnosticRow {
  long n = 0;
  /// max over grid pairs of |phase-corrected inner product - gaussian_inner|.
  double max_error = 0.0;
  /// finite_model_distance between the output-model and coherent-model Gram matrices.
  double model_distance = 0.0;
};

inline std::vector<WeakDiagnosticRow> weak_convergence_diagnostic(const ParamFamily& family,
                                                                  const std::vector<double>& grid,
                                                                  const std::vector<long>& ladder,
                                                                  const PureStateVector& phi, int threads = 1,
                                                                  const Options& opt = {}) {
  require(!grid.empty(), ErrorKind::InvalidArgument, "weak_convergence_diagnostic: empty grid");
  const PrimitiveChain chain = PrimitiveChain::analyze(family.base(), opt);
  const ParamFamily f = detail::gauged(family, chain);
  const QfiReport q = qfi_formula(f, opt);
  const GramMatrix coherent = coherent_model_gram(q.F, grid);
  std::vector<WeakDiagnosticRow> rows(ladder.size());
  parallel_for(ladder.size(), threads, [&](std::size_t idx) {
    const long n = ladder[idx];
    require(n >= 1, ErrorKind::InvalidArgument, "weak_convergence_diagnostic: ladder entries must be positive");
    const Eigen::Index d = chain.dim_system();
    WeakDiagnosticRow row;
    row.n = n;
    for (double u : grid) {
      for (double v : grid) {
        const SuperOperator power({d, d}, {d, d}, deformed_power(f, u, v, n));
        const Complex inner = phi.amplitudes().dot(power.apply(identity(d)) * phi.amplitudes());
        const Complex phase = std::exp(Complex(0.0, q.a * (u * u - v * v)));
        row.max_error = std::max(row.max_error, std::abs(phase * inner - gaussian_inner(q.F, u, v)));
      }
    }
    row.model_distance = finite_model_distance(output_model_gram(f, grid, n, phi, opt), coherent);
    rows[idx] = row;
  });
  return rows;
}

}  // namespace qmc
