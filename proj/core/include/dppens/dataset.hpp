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

#ifndef DPPENS_DATASET_HPP
#define DPPENS_DATASET_HPP

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dppens {

using Index = Eigen::Index;

struct CsvOptions {
  std::optional<std::string> label_column;
  char delimiter = ',';
  /// Categorical columns expanded into one indicator column per level
  /// (levels in sorted order).
  std::vector<std::string> one_hot;
  /// Categorical columns replaced by the rank of their level in sorted
  /// order (0, 1, 2, ...). Keeps one feature per column.
  std::vector<std::string> ordinal;
};

struct Dataset {
  Eigen::MatrixXd features;              // n x d
  std::optional<Eigen::VectorXd> labels;
  std::vector<std::string> feature_names;
  std::string label_name;
  /// Statistics of the fold used by `standardize`; empty before.
  Eigen::VectorXd feature_means;
  Eigen::VectorXd feature_stds;

  Index rows() const noexcept { return features.rows(); }
  Index dims() const noexcept { return features.cols(); }
  bool has_labels() const noexcept { return labels.has_value(); }
  const Eigen::VectorXd& label_vector() const;

  /// Rows `rows` in the given order.
  Dataset select(std::span<const Index> rows) const;
};

/// Reads a delimited file with a header row. Throws DataError on ragged
/// rows, non-numeric cells outside categorical columns, or a missing label
/// column.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options);
Dataset parse_csv(std::istream& in, const CsvOptions& options);

/// Centers and scales every feature with the mean and population standard
/// deviation of `fit_rows` (all rows when empty). Constant features get
/// std 1.
void standardize(Dataset& ds, std::span<const Index> fit_rows = {});

/// Random subset of n rows (row order preserved). No-op when n >= rows.
Dataset subsample(const Dataset& ds, Index n, std::uint64_t seed);

/// Synthetic regression set with uneven density: 10 Gaussian clusters
/// (centers N(0, I), spread 0.3) with geometric weights 0.7^c, so a few
/// clusters hold most points and the rest are sparse. Labels are
/// 3 + sin(2 x0) + cos(2 x1) + 0.3 tanh(x2) plus N(0, 0.05^2) noise.
/// Requires d >= 3.
Dataset make_synthetic_regression(Index n, Index d, std::uint64_t seed);

/// Experiment parameters for the public tabular benchmarks.
struct DatasetPreset {
  std::string_view name;
  Index n;
  Index d;
  double sigma;
  Index k;
  double rls_lambda;
};

std::span<const DatasetPreset> dataset_presets();
/// Throws InvalidArgument for unknown names.
const DatasetPreset& find_preset(std::string_view name);

}  // namespace dppens

#endif  // DPPENS_DATASET_HPP
