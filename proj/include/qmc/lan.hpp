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
#include <vector>

#include "qmc/parallel.hpp"
#include "qmc/qfi.hpp"

namespace qmc {

/// M^n by repeated squaring.
inline Matrix matrix_power(const Matrix& m, long n) {
  require(n >= 0, ErrorKind::InvalidArgument, "matrix_power: negative exponent");
  Matrix result = identity(m.rows());
  Matrix base = m;
  for (long e = n; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

/// n-th power of the deformed map T_{u,v;n} as a transfer matrix.
inline Matrix deformed_power(const ParamFamily& f, double u, double v, long n) {
  return matrix_power(deformed_map(f, u, v, n).matrix(), n);
}

struct LanCell {
  long n = 0;
  double u = 0.0;
  double v = 0.0;
  Complex lambda;
  /// ||T^n(1) - e^lambda 1||_max
  double unit_error = 0.0;
  /// max_{ij} ||T^n(|e_j><e_i|) - e^lambda Lambda_i delta_ij 1||_max in the stationary eigenbasis.
  double matrix_error = 0.0;
  /// <phi| T^n(1) |phi> = <Psi_u(n)|Psi_v(n)>
  Complex inner;
  /// |e^{i a (u^2 - v^2)} inner - exp(-F (u - v)^2 / 8)|
  double weak_error = 0.0;
};

struct LanRow {
  long n = 0;
  double sup_unit_error = 0.0;
  double sup_matrix_error = 0.0;
  double sup_weak_error = 0.0;
};

struct LanScan {
  QfiReport qfi;
  double c = 0.0;
  std::vector<double> grid;
  std::vector<LanRow> rows;
  /// Ordered by n, then u, then v.
  std::vector<LanCell> cells;
};

/// Equally spaced points -C, ..., C.
inline std::vector<double> symmetric_grid(double c, int points) {
  require(c > 0.0, ErrorKind::InvalidArgument, "grid half-width must be positive");
  require(points >= 2, ErrorKind::InvalidArgument, "grid needs at least two points");
  std::vector<double> out;
  for (int a = 0; a < points; ++a) out.push_back(-c + 2.0 * c * a / (points - 1));
  return out;
}

/// Compares T^n_{u,v;n} with its limit tr[rho_ss X] e^{lambda(u,v)} 1 over a grid
/// of [-C, C]^2, for every n of the ladder. Only D x D operators are iterated.
inline LanScan lan_scan(const ParamFamily& family, double c, int grid_points, const std::vector<long>& ladder,
                        const PureStateVector& phi, int threads = 1, const Options& opt = {}) {
  for (long n : ladder) require(n >= 1, ErrorKind::InvalidArgument, "lan_scan: ladder entries must be positive");
  const PrimitiveChain chain = PrimitiveChain::analyze(family.base(), opt);
  require(phi.dim() == chain.dim_system(), ErrorKind::DimensionMismatch, "lan_scan: phi must live on the system");
  const ParamFamily f = detail::gauged(family, chain);

  LanScan scan;
  scan.qfi = qfi_formula(f, opt);
  scan.c = c;
  scan.grid = symmetric_grid(c, grid_points);
  const std::size_t g = scan.grid.size();
  const Eigen::Index d = chain.dim_system();
  const Matrix& basis = chain.stationary_basis();
  const RealVector& lambda_ss = chain.stationary_spectrum();

  std::vector<Matrix> units;  // |e_j><e_i|, index j * d + i
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) units.push_back(outer(basis.col(j), basis.col(i)));

  scan.cells.resize(ladder.size() * g * g);
  parallel_for(scan.cells.size(), threads, [&](std::size_t idx) {
    const std::size_t ni = idx / (g * g), ui = (idx / g) % g, vi = idx % g;
    LanCell cell;
    cell.n = ladder[ni];
    cell.u = scan.grid[ui];
    cell.v = scan.grid[vi];
    cell.lambda = lambda_quadratic(scan.qfi, cell.u, cell.v);
    const Complex limit = std::exp(cell.lambda);
    const SuperOperator power({d, d}, {d, d}, deformed_power(f, cell.u, cell.v, cell.n));
    const Matrix one = power.apply(identity(d));
    cell.unit_error = max_abs(one - limit * identity(d));
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index i = 0; i < d; ++i) {
        const Complex target = i == j ? limit * lambda_ss(i) : Complex(0.0);
        const Matrix image = power.apply(units[static_cast<std::size_t>(j * d + i)]);
        cell.matrix_error = std::max(cell.matrix_error, max_abs(image - target * identity(d)));
      }
    }
    cell.inner = phi.amplitudes().dot(one * phi.amplitudes());
    const Complex phase = std::exp(Complex(0.0, scan.qfi.a * (cell.u * cell.u - cell.v * cell.v)));
    cell.weak_error = std::abs(phase * cell.inner - gaussian_inner(scan.qfi.F, cell.u, cell.v));
    scan.cells[idx] = cell;
  });

  for (std::size_t ni = 0; ni < ladder.size(); ++ni) {
    LanRow row;
    row.n = ladder[ni];
    for (std::size_t j = ni * g * g; j < (ni + 1) * g * g; ++j) {
      row.sup_unit_error = std::max(row.sup_unit_error, scan.cells[j].unit_error);
      row.sup_matrix_error = std::max(row.sup_matrix_error, scan.cells[j].matrix_error);
      row.sup_weak_error = std::max(row.sup_weak_error, scan.cells[j].weak_error);
    }
    scan.rows.push_back(row);
  }
  return scan;
}

}  // namespace qmc
