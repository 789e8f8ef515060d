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

namespace qmc {

/// Numerical thresholds. Structural checks (isometry, hermiticity, trace) use
/// `structural`; comparisons of derived quantities use `derived`.
struct Tolerances {
  double structural = 1e-12;
  double derived = 1e-10;
  // Eigenvalues with modulus above 1 - gap count as peripheral.
  double gap = 1e-8;
  // Minimum stationary eigenvalue for a full-rank verdict.
  double rank = 1e-10;
  // Band around modulus one in which a cross-map eigenvalue triggers the
  // unitary-intertwiner certificate.
  double peripheral = 1e-8;
  // Admissible |tr[rho_ss X]| for resolvent inputs and centred observables.
  double domain = 1e-9;
  // Rank threshold for counting linearly independent Kraus operators.
  double kraus_rank = 1e-10;
  // Derivative data must satisfy the differentiated normalisation to this level.
  double family = 1e-9;
};

/// Hard limits on exponentially sized objects. Exceeding one is an error.
struct SizeGuard {
  std::size_t amplitudes = std::size_t{1} << 24;
  std::size_t matrix_dim = std::size_t{1} << 12;
  int max_system_dim = 32;
};

struct Options {
  Tolerances tol;
  SizeGuard guard;
};

}  // namespace qmc
