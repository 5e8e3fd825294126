// Copyright 2026 The dppens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPPENS_SPECTRUM_HPP
#define DPPENS_SPECTRUM_HPP

#include <Eigen/Core>

#include "dppens/kernel.hpp"

namespace dppens {

/// Default positive-definiteness gate, relative to the largest eigenvalue.
inline constexpr double kDefaultRelativePdTolerance = 1e-12;

/// Eigenpairs of a symmetric positive-definite matrix, eigenvalues sorted
/// in descending order with matching eigenvector columns.
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors);

  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
  const Eigen::MatrixXd& eigenvectors() const noexcept { return vectors_; }
  Eigen::Index size() const noexcept { return values_.size(); }

  double lambda_max() const { return values_(0); }
  double lambda_min() const { return values_(values_.size() - 1); }

  /// Sum_l f(lambda_l) v_l v_l^T for a scalar spectral filter f.
  template <typename F>
  Eigen::MatrixXd apply(F&& filter) const {
    Eigen::VectorXd weights = values_.unaryExpr(filter);
    return vectors_ * weights.asDiagonal() * vectors_.transpose();
  }

  /// Sum_l lambda_l v_l v_l^T.
  Eigen::MatrixXd reconstruct() const;

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
};

/// Symmetric eigendecomposition with a strict positive-definiteness gate:
/// throws PositiveDefinitenessError when lambda_min <= tolerance * lambda_max.
Spectrum eigendecompose(const GramMatrix& k,
                        double relative_pd_tolerance = kDefaultRelativePdTolerance);

/// Marginal kernel P = K (K + alpha I)^{-1}, assembled spectrally.
Eigen::MatrixXd marginal_kernel(const Spectrum& spectrum, double alpha);
Eigen::MatrixXd marginal_kernel(const GramMatrix& k, double alpha);

/// Ridge leverage scores: the diagonal of the marginal kernel.
Eigen::VectorXd ridge_leverage_scores(const Spectrum& spectrum, double alpha);
Eigen::VectorXd ridge_leverage_scores(const GramMatrix& k, double alpha);

/// Expected DPP(K/alpha) sample size, trace of the marginal kernel.
double expected_dpp_size(const Spectrum& spectrum, double alpha);

}  // namespace dppens

#endif  // DPPENS_SPECTRUM_HPP
