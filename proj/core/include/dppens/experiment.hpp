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

#ifndef DPPENS_EXPERIMENT_HPP
#define DPPENS_EXPERIMENT_HPP

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dppens/dataset.hpp"
#include "dppens/kernel.hpp"
#include "dppens/samplers.hpp"

namespace dppens {

inline constexpr double kTailQuantile = 0.7;
/// Stratification ridge is this factor times n_train.
inline constexpr double kStratAlphaPerTrainPoint = 1e-4;
/// Relative tolerance under which an RLS value counts as tied with the
/// threshold (ties go to the bulk).
inline constexpr double kThresholdTieTolerance = 1e-10;

struct StratifiedSplit {
  std::vector<Index> train_idx;
  std::vector<Index> test_bulk_idx;
  std::vector<Index> test_tail_idx;
  double rls_threshold = 0.0;
  double alpha_strat = 0.0;
  /// Full-data ridge leverage scores used for the stratification.
  Eigen::VectorXd rls;

  Index n_train() const noexcept { return static_cast<Index>(train_idx.size()); }
  Index n_test() const noexcept {
    return static_cast<Index>(test_bulk_idx.size() + test_tail_idx.size());
  }
};

/// floor(train_fraction * n). Throws InvalidArgument unless the fraction
/// lies in (0, 1), DataError if either fold would be empty.
Index train_size(Index n, double train_fraction);

/// Random train/test split with n_train = train_size(n, train_fraction).
/// Standardizes `ds` in place with training-fold statistics, then computes
/// ridge leverage scores on the full standardized data with
/// alpha = 1e-4 * n_train and splits the test set at the 70% quantile of
/// the test-point scores: bulk <= threshold < tail.
StratifiedSplit split_and_stratify(Dataset& ds, const KernelSpec& kernel,
                                   double train_fraction, std::uint64_t seed,
                                   double pd_jitter = 0.0);

/// Mean of |y - yhat| / ((|y| + |yhat|) / 2); a 0/0 term counts as 0.
double smape(const Eigen::Ref<const Eigen::VectorXd>& y,
             const Eigen::Ref<const Eigen::VectorXd>& yhat);

/// Linear-interpolation empirical quantile, p in [0, 1].
double quantile(std::vector<double> values, double p);

struct Quartiles {
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;

  static Quartiles of(const std::vector<double>& values);
};

struct ExperimentConfig {
  std::vector<Scheme> schemes{Scheme::kUniform, Scheme::kRls, Scheme::kKdpp};
  Index k = 50;
  std::vector<Index> m_list{1, 5, 10, 15, 20};
  Index repeats = 10;
  std::uint64_t seed = 0;
  /// Jitter on K_CC for ensemble members and Nystrom blocks.
  double epsilon = 1e-12;
  /// RLS sampling ridge is rls_lambda * (number of candidate points).
  double rls_lambda = 1e-4;
  /// alpha of DPP(K/alpha) for the dpp scheme.
  double dpp_alpha = 1.0;
  /// Opt-in diagonal jitter before the positive-definiteness gate.
  double pd_jitter = 0.0;
  unsigned threads = 1;
  /// Largest n for which an n x n Gram matrix is formed.
  Index max_points = 5000;

  void validate() const;
};

struct RepeatRecord {
  Index repeat = 0;
  std::optional<double> smape_bulk;
  std::optional<double> smape_tail;
  std::optional<double> frobenius_rel_error;
  Index distinct_landmarks = 0;
  Index total_landmarks = 0;
};

struct ExperimentRecord {
  Scheme scheme = Scheme::kUniform;
  Index k = 0;
  Index m = 0;
  std::optional<Quartiles> smape_bulk;
  std::optional<Quartiles> smape_tail;
  std::optional<Quartiles> frobenius_rel_error;
  Quartiles distinct_landmarks;
  std::vector<RepeatRecord> repeats;
};

struct ExperimentReport {
  std::string kind;  // "krr-ensemble" or "nystrom"
  Index n_points = 0;
  Index n_train = 0;
  Index n_test_bulk = 0;
  Index n_test_tail = 0;
  double alpha_strat = 0.0;
  double rls_threshold = 0.0;
  std::vector<ExperimentRecord> records;
  /// Seconds per scheme, in config order. Not deterministic.
  std::vector<double> wall_time_seconds;

  /// Record for (scheme, m); throws InvalidArgument if absent.
  const ExperimentRecord& at(Scheme scheme, Index m) const;
};

/// Ensembles of ridgeless regressors on the training fold, scored by SMAPE
/// on the bulk and tail test strata. For each repeat, max(m_list) members
/// are drawn from independent streams (seed, scheme, repeat, member) and
/// the m-ensemble is the average of the first m. `ds` must already be
/// standardized (see split_and_stratify).
ExperimentReport run_ensemble_krr(const Dataset& ds, const StratifiedSplit& split,
                                  const KernelSpec& kernel, const ExperimentConfig& config);

/// Ensemble Nystrom approximations of the full Gram matrix, scored by
/// relative Frobenius error. Same member/stream layout as run_ensemble_krr.
/// Throws DataError if ds.rows() exceeds config.max_points.
ExperimentReport run_ensemble_nystrom(const Dataset& ds, const KernelSpec& kernel,
                                      const ExperimentConfig& config);

}  // namespace dppens

#endif  // DPPENS_EXPERIMENT_HPP
