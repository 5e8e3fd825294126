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

#ifndef DPPENS_REGRESSORS_HPP
#define DPPENS_REGRESSORS_HPP

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <vector>

#include "dppens/kernel.hpp"
#include "dppens/samplers.hpp"

namespace dppens {

/// Jitter used for ensemble members and Nystrom inner blocks.
inline constexpr double kDefaultEnsembleJitter = 1e-12;

/// Test points are evaluated in blocks of this many rows.
inline constexpr Index kPredictBlockRows = 256;

/// Cholesky factor of A + jitter I. Throws FactorizationError carrying the
/// matrix size and the first non-positive pivot.
Eigen::LLT<Eigen::MatrixXd> factorize_spd(const Eigen::Ref<const Eigen::MatrixXd>& a,
                                          double jitter = 0.0);

/// f(x) = sum_i weights_i k(x, center_i).
class KernelExpansion {
 public:
  KernelExpansion() = default;
  KernelExpansion(Eigen::MatrixXd centers, Eigen::VectorXd weights, KernelSpec kernel);

  double predict_point(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// One prediction per row of `x`.
  Eigen::VectorXd predict(const Eigen::Ref<const Eigen::MatrixXd>& x) const;

  const Eigen::MatrixXd& centers() const noexcept { return centers_; }
  const Eigen::VectorXd& weights() const noexcept { return weights_; }
  const KernelSpec& kernel() const noexcept { return kernel_; }

 private:
  Eigen::MatrixXd centers_;
  Eigen::VectorXd weights_;
  KernelSpec kernel_;
};

/// Minimum-norm interpolant of the labels on a subset of the training
/// points. An empty subset gives the zero predictor.
class RidgelessPredictor {
 public:
  RidgelessPredictor() = default;
  RidgelessPredictor(Subset subset, KernelExpansion expansion)
      : subset_(std::move(subset)), expansion_(std::move(expansion)) {}

  const Subset& subset() const noexcept { return subset_; }
  const Eigen::VectorXd& dual_weights() const noexcept { return expansion_.weights(); }
  const Eigen::MatrixXd& landmarks() const noexcept { return expansion_.centers(); }
  bool is_zero() const noexcept { return subset_.empty(); }

  double predict_point(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd predict(const Eigen::Ref<const Eigen::MatrixXd>& x) const;

 private:
  Subset subset_;
  KernelExpansion expansion_;
};

/// Equal-weight average of ridgeless members.
class EnsemblePredictor {
 public:
  EnsemblePredictor() = default;
  explicit EnsemblePredictor(std::vector<RidgelessPredictor> members);

  const std::vector<RidgelessPredictor>& members() const noexcept { return members_; }
  Index size() const noexcept { return static_cast<Index>(members_.size()); }

  /// Number of distinct training indices used by all members together.
  Index distinct_landmarks() const;

  double predict_point(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd predict(const Eigen::Ref<const Eigen::MatrixXd>& x) const;

 private:
  std::vector<RidgelessPredictor> members_;
};

/// Solves (K_CC + jitter I) beta = y_C. `points` holds the n training rows
/// that produced `k`; k.kernel() must be set.
RidgelessPredictor fit_ridgeless(const GramMatrix& k,
                                 const Eigen::Ref<const Eigen::MatrixXd>& points,
                                 const Eigen::Ref<const Eigen::VectorXd>& y,
                                 const Subset& subset, double jitter = 0.0);

/// Full kernel ridge regression, (K + alpha I) w = y.
KernelExpansion fit_krr(const GramMatrix& k,
                        const Eigen::Ref<const Eigen::MatrixXd>& points,
                        const Eigen::Ref<const Eigen::VectorXd>& y, double alpha);

/// K^ = K_C (K_CC + eps I)^{-1} K_C^T, stored as B^T B with
/// B = L^{-1} K_C^T and L the Cholesky factor of K_CC + eps I.
class NystromApprox {
 public:
  NystromApprox() = default;
  NystromApprox(Subset subset, Eigen::MatrixXd cross_block,
                Eigen::LLT<Eigen::MatrixXd> inner, double epsilon);

  const Subset& subset() const noexcept { return subset_; }
  const Eigen::MatrixXd& cross_block() const noexcept { return cross_; }
  const Eigen::LLT<Eigen::MatrixXd>& inner_factor() const noexcept { return inner_; }
  double epsilon() const noexcept { return epsilon_; }

  /// The n x n approximation.
  Eigen::MatrixXd matrix() const;
  /// Adds the approximation into `acc` (n x n).
  void accumulate_into(Eigen::MatrixXd& acc) const;

 private:
  Subset subset_;
  Eigen::MatrixXd cross_;
  Eigen::LLT<Eigen::MatrixXd> inner_;
  Eigen::MatrixXd factor_;
  double epsilon_ = 0.0;
};

NystromApprox nystrom(const GramMatrix& k, const Subset& subset, double epsilon);

/// (1/m) sum_i nystrom(k, subsets_i, epsilon).matrix().
Eigen::MatrixXd ensemble_nystrom(const GramMatrix& k, const std::vector<Subset>& subsets,
                                 double epsilon);

/// ||a - b||_F / ||a||_F.
double relative_frobenius_error(const Eigen::Ref<const Eigen::MatrixXd>& reference,
                                const Eigen::Ref<const Eigen::MatrixXd>& approx);

}  // namespace dppens

#endif  // DPPENS_REGRESSORS_HPP
