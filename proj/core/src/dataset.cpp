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

#include "dppens/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "dppens/errors.hpp"
#include "dppens/random.hpp"
#include "dppens/samplers.hpp"

namespace dppens {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_fields(std::string_view line, char delimiter) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(delimiter, start);
    out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

enum class Role { kNumeric, kLabel, kOneHot, kOrdinal };

}  // namespace

const Eigen::VectorXd& Dataset::label_vector() const {
  if (!labels) throw DataError("dataset has no label column");
  return *labels;
}

Dataset Dataset::select(std::span<const Index> rows) const {
  Dataset out;
  const std::vector<Index> idx(rows.begin(), rows.end());
  out.features = features(idx, Eigen::all);
  if (labels) out.labels = (*labels)(idx).eval();
  out.feature_names = feature_names;
  out.label_name = label_name;
  out.feature_means = feature_means;
  out.feature_stds = feature_stds;
  return out;
}

Dataset parse_csv(std::istream& in, const CsvOptions& options) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) header = split_fields(line, options.delimiter);
  }
  if (header.empty()) throw DataError("CSV input is empty");

  const auto column_of = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError("column '" + name + "' not found in header");
    return static_cast<std::size_t>(it - header.begin());
  };
  std::vector<Role> roles(header.size(), Role::kNumeric);
  if (options.label_column) roles[column_of(*options.label_column)] = Role::kLabel;
  for (const auto& c : options.one_hot) roles[column_of(c)] = Role::kOneHot;
  for (const auto& c : options.ordinal) roles[column_of(c)] = Role::kOrdinal;

  std::vector<std::vector<std::string>> cells;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line, options.delimiter);
    if (fields.size() != header.size()) {
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    cells.push_back(std::move(fields));
  }
  if (cells.empty()) throw DataError("CSV input has a header but no rows");
  const auto n = static_cast<Index>(cells.size());

  // Sorted category levels per categorical column.
  std::vector<std::vector<std::string>> levels(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (roles[c] != Role::kOneHot && roles[c] != Role::kOrdinal) continue;
    for (const auto& row : cells) levels[c].push_back(row[c]);
    std::sort(levels[c].begin(), levels[c].end());
    levels[c].erase(std::unique(levels[c].begin(), levels[c].end()), levels[c].end());
  }

  Dataset ds;
  for (std::size_t c = 0; c < header.size(); ++c) {
    switch (roles[c]) {
      case Role::kLabel:
        ds.label_name = header[c];
        break;
      case Role::kOneHot:
        for (const auto& level : levels[c]) ds.feature_names.push_back(header[c] + "=" + level);
        break;
      default:
        ds.feature_names.push_back(header[c]);
    }
  }
  if (ds.feature_names.empty()) throw DataError("CSV input has no feature columns");

  ds.features.resize(n, static_cast<Index>(ds.feature_names.size()));
  if (options.label_column) ds.labels = Eigen::VectorXd(n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = cells[static_cast<std::size_t>(i)];
    Index col = 0;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string& cell = row[c];
      switch (roles[c]) {
        case Role::kOneHot: {
          for (const auto& level : levels[c]) ds.features(i, col++) = (cell == level) ? 1.0 : 0.0;
          break;
        }
        case Role::kOrdinal: {
          const auto it = std::lower_bound(levels[c].begin(), levels[c].end(), cell);
          ds.features(i, col++) = static_cast<double>(it - levels[c].begin());
          break;
        }
        case Role::kNumeric:
        case Role::kLabel: {
          double v = 0.0;
          if (!parse_number(cell, v) || !std::isfinite(v)) {
            throw DataError("row " + std::to_string(i + 1) + ", column '" + header[c] +
                            "': non-numeric or non-finite value '" + cell + "'");
          }
          if (roles[c] == Role::kLabel) {
            (*ds.labels)(i) = v;
          } else {
            ds.features(i, col++) = v;
          }
          break;
        }
      }
    }
  }
  return ds;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return parse_csv(in, options);
}

void standardize(Dataset& ds, std::span<const Index> fit_rows) {
  const Index n = ds.rows();
  const Index d = ds.dims();
  std::vector<Index> rows(fit_rows.begin(), fit_rows.end());
  if (rows.empty()) {
    rows.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = i;
  }
  const Eigen::MatrixXd fit = ds.features(rows, Eigen::all);
  const Eigen::RowVectorXd mean = fit.colwise().mean();
  Eigen::RowVectorXd std_dev =
      ((fit.rowwise() - mean).array().square().colwise().sum() / static_cast<double>(fit.rows()))
          .sqrt();
  for (Index j = 0; j < d; ++j) {
    if (!(std_dev(j) > 1e-12 * std::max(1.0, std::abs(mean(j))))) std_dev(j) = 1.0;
  }
  ds.features = (ds.features.rowwise() - mean).array().rowwise() / std_dev.array();
  ds.feature_means = mean.transpose();
  ds.feature_stds = std_dev.transpose();
}

Dataset subsample(const Dataset& ds, Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("subsample size must be positive");
  if (n >= ds.rows()) return ds;
  Rng rng = Rng::stream(seed, {0x5ab5a3b1eULL});
  const Subset rows = sample_uniform(ds.rows(), n, rng);
  return ds.select(rows.indices());
}

Dataset make_synthetic_regression(Index n, Index d, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("synthetic dataset needs n >= 1");
  if (d < 3) throw InvalidArgument("synthetic dataset needs d >= 3");
  constexpr int kClusters = 10;
  constexpr double kSpread = 0.3;
  constexpr double kWeightRatio = 0.7;
  Rng rng = Rng::stream(seed, {0x5f7e71cULL});
  Eigen::MatrixXd centers(kClusters, d);
  for (int c = 0; c < kClusters; ++c) {
    for (Index j = 0; j < d; ++j) centers(c, j) = rng.normal();
  }
  std::vector<double> cumulative(kClusters);
  double total = 0.0;
  for (int c = 0; c < kClusters; ++c) {
    total += std::pow(kWeightRatio, c);
    cumulative[static_cast<std::size_t>(c)] = total;
  }

  Dataset ds;
  ds.features.resize(n, d);
  ds.labels = Eigen::VectorXd(n);
  for (Index i = 0; i < n; ++i) {
    const double u = rng.uniform() * total;
    const auto c = std::min<std::ptrdiff_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin(),
        kClusters - 1);
    for (Index j = 0; j < d; ++j) ds.features(i, j) = centers(c, j) + kSpread * rng.normal();
    const auto x = ds.features.row(i);
    (*ds.labels)(i) = 3.0 + std::sin(2.0 * x(0)) + std::cos(2.0 * x(1)) +
                      0.3 * std::tanh(x(2)) + 0.05 * rng.normal();
  }
  for (Index j = 0; j < d; ++j) ds.feature_names.push_back("x" + std::to_string(j));
  ds.label_name = "y";
  return ds;
}

namespace {

constexpr std::array<DatasetPreset, 5> kPresets{{
    {"adult", 48842, 110, 5.0, 250, 1e-3},
    {"abalone", 4177, 8, 3.0, 50, 1e-4},
    {"wine-quality", 6497, 11, 5.0, 100, 1e-4},
    {"bike-sharing", 17389, 16, 3.0, 250, 1e-3},
    {"casp", 45730, 9, 2.0, 250, 1e-3},
}};

}  // namespace

std::span<const DatasetPreset> dataset_presets() { return kPresets; }

const DatasetPreset& find_preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p;
  }
  throw InvalidArgument("unknown dataset preset '" + std::string(name) + "'");
}

}  // namespace dppens
