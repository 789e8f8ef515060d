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
#include <utility>
#include <vector>

#include "qmc/spectral.hpp"

namespace qmc {

enum class FamilySource { explicit_taylor, hamiltonian_generated, conjugation_generated };

constexpr std::string_view to_string(FamilySource s) {
  switch (s) {
    case FamilySource::explicit_taylor: return "explicit";
    case FamilySource::hamiltonian_generated: return "hamiltonian_generated";
    case FamilySource::conjugation_generated: return "conjugation_generated";
  }
  return "unknown";
}

namespace detail {

/// Kraus blocks of a (D k) x D matrix without the isometry check.
inline std::vector<Matrix> split_rows(const Matrix& stacked, Eigen::Index k) {
  const Eigen::Index d = stacked.cols();
  std::vector<Matrix> out(static_cast<std::size_t>(k), Matrix(d, d));
  for (Eigen::Index s = 0; s < d; ++s)
    for (Eigen::Index i = 0; i < k; ++i) out[static_cast<std::size_t>(i)].row(s) = stacked.row(s * k + i);
  return out;
}

inline Matrix stack_rows(const std::vector<Matrix>& ops) {
  const Eigen::Index d = ops.front().rows(), k = static_cast<Eigen::Index>(ops.size());
  Matrix v(d * k, d);
  for (Eigen::Index s = 0; s < d; ++s)
    for (Eigen::Index i = 0; i < k; ++i) v.row(s * k + i) = ops[static_cast<std::size_t>(i)].row(s);
  return v;
}

}  // namespace detail

/// A smooth one-parameter family theta |-> K_{i,theta} around theta_0, given by
/// the Kraus operators at theta_0 and their first and second derivatives.
/// Generated families additionally keep the generator so that K at shifted
/// parameters is exact rather than a second-order Taylor polynomial.
class ParamFamily {
 public:
  const KrausFamily& base() const { return base_; }
  const std::vector<Matrix>& dkraus() const { return dk_; }
  const std::vector<Matrix>& ddkraus() const { return ddk_; }
  FamilySource source() const { return source_; }
  double gauge_b() const { return gauge_b_; }
  /// The Hermitian generator (on H (x) K for hamiltonian, on H for conjugation).
  const Matrix& generator() const { return generator_; }

  /// V-dot as a (D k) x D matrix.
  Matrix disometry() const { return detail::stack_rows(dk_); }

  /// Kraus operators at theta_0 + t.
  std::vector<Matrix> kraus_at(double t) const {
    const Complex phase = std::exp(kI * (gauge_b_ * t));
    std::vector<Matrix> out;
    switch (source_) {
      case FamilySource::explicit_taylor:
        for (std::size_t i = 0; i < dk_.size(); ++i)
          out.push_back(raw_[i] + t * raw_dk_[i] + 0.5 * t * t * raw_ddk_[i]);
        break;
      case FamilySource::hamiltonian_generated:
        out = detail::split_rows(unitary_exp(generator_, t) * base_isometry_, base_.dim_noise());
        break;
      case FamilySource::conjugation_generated: {
        const Matrix u = unitary_exp(generator_, t);
        for (const Matrix& k : base_.operators()) out.push_back(u * k * u.adjoint());
        break;
      }
    }
    for (Matrix& k : out) k *= phase;
    return out;
  }

  /// max-norm residuals of the differentiated normalisation at first and second order.
  std::pair<double, double> isometry_residuals() const {
    const Eigen::Index d = base_.dim_system();
    Matrix first = Matrix::Zero(d, d), second = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < dk_.size(); ++i) {
      const Matrix& k = base_[i];
      first += dk_[i].adjoint() * k + k.adjoint() * dk_[i];
      second += ddk_[i].adjoint() * k + 2.0 * dk_[i].adjoint() * dk_[i] + k.adjoint() * ddk_[i];
    }
    return {max_abs(first), max_abs(second)};
  }

  static ParamFamily make_explicit(const KrausFamily& base, std::vector<Matrix> dk, std::vector<Matrix> ddk,
                                   const Options& opt = {}) {
    ParamFamily f(base, std::move(dk), std::move(ddk), FamilySource::explicit_taylor);
    f.raw_ = base.operators();
    f.raw_dk_ = f.dk_;
    f.raw_ddk_ = f.ddk_;
    f.check(opt);
    return f;
  }

  static ParamFamily make_hamiltonian(const KrausFamily& base, const Matrix& a, const Options& opt = {}) {
    const Eigen::Index dk = Eigen::Index{base.dim_system()} * base.dim_noise();
    require(a.rows() == dk && a.cols() == dk, ErrorKind::DimensionMismatch,
            "hamiltonian generator must be (D k) x (D k)");
    require(is_hermitian(a, opt.tol.structural), ErrorKind::NotHermitian, "hamiltonian generator is not Hermitian");
    const Matrix v0 = base.isometry();
    const Matrix h = hermitian_part(a);
    ParamFamily f(base, detail::split_rows(kI * h * v0, base.dim_noise()),
                  detail::split_rows(-(h * h) * v0, base.dim_noise()), FamilySource::hamiltonian_generated);
    f.generator_ = h;
    f.base_isometry_ = v0;
    f.check(opt);
    return f;
  }

  static ParamFamily make_conjugation(const KrausFamily& base, const Matrix& h_in, const Options& opt = {}) {
    const Eigen::Index d = base.dim_system();
    require(h_in.rows() == d && h_in.cols() == d, ErrorKind::DimensionMismatch, "conjugation generator must be D x D");
    require(is_hermitian(h_in, opt.tol.structural), ErrorKind::NotHermitian, "conjugation generator is not Hermitian");
    const Matrix h = hermitian_part(h_in);
    std::vector<Matrix> dk, ddk;
    for (const Matrix& k : base.operators()) {
      dk.push_back(kI * (h * k - k * h));
      ddk.push_back(-(h * h * k - 2.0 * h * k * h + k * h * h));
    }
    ParamFamily f(base, std::move(dk), std::move(ddk), FamilySource::conjugation_generated);
    f.generator_ = h;
    f.check(opt);
    return f;
  }

  /// The family e^{i b (theta - theta_0)} K_{i,theta}.
  ParamFamily with_phase(double b) const {
    ParamFamily f = *this;
    for (std::size_t i = 0; i < dk_.size(); ++i) {
      f.ddk_[i] = ddk_[i] + 2.0 * kI * b * dk_[i] - b * b * base_[i];
      f.dk_[i] = dk_[i] + kI * b * base_[i];
    }
    f.gauge_b_ = gauge_b_ + b;
    return f;
  }

 private:
  ParamFamily(const KrausFamily& base, std::vector<Matrix> dk, std::vector<Matrix> ddk, FamilySource source)
      : base_(base), dk_(std::move(dk)), ddk_(std::move(ddk)), source_(source) {}

  void check(const Options& opt) const {
    const Eigen::Index d = base_.dim_system();
    require(dk_.size() == base_.operators().size() && ddk_.size() == base_.operators().size(),
            ErrorKind::NoiseDimMismatch, "derivative lists must have one entry per Kraus operator");
    for (std::size_t i = 0; i < dk_.size(); ++i)
      require(dk_[i].rows() == d && dk_[i].cols() == d && ddk_[i].rows() == d && ddk_[i].cols() == d,
              ErrorKind::DimensionMismatch, "derivative matrices must be D x D");
    const auto [first, second] = isometry_residuals();
    require(first <= opt.tol.family, ErrorKind::NotIsometry,
            "first-order isometry condition violated by " + std::to_string(first));
    require(second <= opt.tol.family, ErrorKind::NotIsometry,
            "second-order isometry condition violated by " + std::to_string(second));
  }

  KrausFamily base_;
  std::vector<Matrix> dk_;
  std::vector<Matrix> ddk_;
  FamilySource source_;
  double gauge_b_ = 0.0;
  Matrix generator_;
  Matrix base_isometry_;
  // Taylor data as supplied; the phase from gauge fixing is applied on top.
  std::vector<Matrix> raw_, raw_dk_, raw_ddk_;
};

/// U_theta = exp(i (theta - theta_0) A) acting on V_0 before the contraction with the noise state.
inline ParamFamily make_family_hamiltonian(const KrausFamily& v0, const Matrix& a, const Options& opt = {}) {
  return ParamFamily::make_hamiltonian(v0, a, opt);
}

/// K_{i,theta} = U_theta K_i U_theta^dag with U_theta = exp(i (theta - theta_0) H).
inline ParamFamily make_family_conjugation(const KrausFamily& v0, const Matrix& h, const Options& opt = {}) {
  return ParamFamily::make_conjugation(v0, h, opt);
}

/// Im sum_i tr[rho_ss Kdot_i^dag K_i].
inline double gauge_functional(const ParamFamily& f, const Matrix& rho_ss) {
  Complex total = 0.0;
  for (std::size_t i = 0; i < f.dkraus().size(); ++i) total += (rho_ss * f.dkraus()[i].adjoint() * f.base()[i]).trace();
  return total.imag();
}

/// Multiplies the family by e^{i b theta} with b chosen so that the gauge
/// functional vanishes.
inline ParamFamily gauge_fix(const ParamFamily& f, const Options& opt = {}) {
  const PrimitiveChain chain = PrimitiveChain::analyze(f.base(), opt);
  const double b = gauge_functional(f, chain.stationary());
  if (b == 0.0) return f;
  return f.with_phase(b);
}

/// T_{u,v;n}(X) = V_{theta_0 + u/sqrt n}^dag (X (x) 1) V_{theta_0 + v/sqrt n}.
inline SuperOperator deformed_map(const ParamFamily& f, double u, double v, long n) {
  require(n >= 1, ErrorKind::InvalidArgument, "deformed_map: n must be positive");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  return SuperOperator::sandwich(f.kraus_at(u * scale), f.kraus_at(v * scale));
}

}  // namespace qmc
