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

#include "dppens/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numeric>
#include <string>

#include "dppens/errors.hpp"
#include "dppens/parallel.hpp"
#include "dppens/random.hpp"
#include "dppens/regressors.hpp"
#include "dppens/spectrum.hpp"

namespace dppens {
namespace {

constexpr std::uint64_t kSplitStream = 0x5971u;

Index max_m(const ExperimentConfig& config) {
  return *std::max_element(config.m_list.begin(), config.m_list.end());
}

SamplerConfig sampler_for(Scheme scheme, const ExperimentConfig& config, Index candidates) {
  SamplerConfig s;
  s.scheme = scheme;
  s.k = config.k;
  s.seed = config.seed;
  if (scheme == Scheme::kRls) s.alpha = config.rls_lambda * static_cast<double>(candidates);
  if (scheme == Scheme::kDpp) s.alpha = config.dpp_alpha;
  return s;
}

bool needs_spectrum(const ExperimentConfig& config) {
  return std::any_of(config.schemes.begin(), config.schemes.end(),
                     [](Scheme s) { return s != Scheme::kUniform; });
}

Rng member_stream(const ExperimentConfig& config, Scheme scheme, Index repeat, Index member) {
  return Rng::stream(config.seed, {static_cast<std::uint64_t>(scheme) + 1,
                                   static_cast<std::uint64_t>(repeat),
                                   static_cast<std::uint64_t>(member)});
}

Index count_distinct(const std::vector<Subset>& subsets, Index members) {
  std::vector<Index> all;
  for (Index j = 0; j < members; ++j) {
    const Subset& s = subsets[static_cast<std::size_t>(j)];
    all.insert(all.end(), s.begin(), s.end());
  }
  std::sort(all.begin(), all.end());
  return static_cast<Index>(std::unique(all.begin(), all.end()) - all.begin());
}

std::optional<Quartiles> quartiles_of(const std::vector<RepeatRecord>& repeats,
                                      std::optional<double> RepeatRecord::*field) {
  std::vector<double> values;
  for (const auto& r : repeats) {
    if (r.*field) values.push_back(*(r.*field));
  }
  if (values.empty()) return std::nullopt;
  return Quartiles::of(values);
}

ExperimentRecord summarize(Scheme scheme, Index k, Index m, std::vector<RepeatRecord> repeats) {
  ExperimentRecord rec;
  rec.scheme = scheme;
  rec.k = k;
  rec.m = m;
  rec.smape_bulk = quartiles_of(repeats, &RepeatRecord::smape_bulk);
  rec.smape_tail = quartiles_of(repeats, &RepeatRecord::smape_tail);
  rec.frobenius_rel_error = quartiles_of(repeats, &RepeatRecord::frobenius_rel_error);
  std::vector<double> distinct;
  for (const auto& r : repeats) distinct.push_back(static_cast<double>(r.distinct_landmarks));
  rec.distinct_landmarks = Quartiles::of(distinct);
  rec.repeats = std::move(repeats);
  return rec;
}

GramMatrix build_gram(const Eigen::Ref<const Eigen::MatrixXd>& x, const KernelSpec& kernel,
                      double pd_jitter) {
  GramMatrix k = gram(x, kernel);
  return pd_jitter > 0.0 ? k.jittered(pd_jitter) : k;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Index train_size(Index n, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidArgument("train fraction must lie in (0, 1)");
  }
  const auto n_train = static_cast<Index>(std::floor(train_fraction * static_cast<double>(n)));
  if (n_train < 1 || n_train >= n) {
    throw DataError("degenerate split: " + std::to_string(n_train) + " training rows out of " +
                    std::to_string(n));
  }
  return n_train;
}

StratifiedSplit split_and_stratify(Dataset& ds, const KernelSpec& kernel, double train_fraction,
                                   std::uint64_t seed, double pd_jitter) {
  const Index n = ds.rows();
  const Index n_train = train_size(n, train_fraction);

  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  Rng rng = Rng::stream(seed, {kSplitStream});
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  StratifiedSplit split;
  split.train_idx.assign(perm.begin(), perm.begin() + n_train);
  std::vector<Index> test(perm.begin() + n_train, perm.end());
  std::sort(split.train_idx.begin(), split.train_idx.end());
  std::sort(test.begin(), test.end());

  standardize(ds, split.train_idx);
  split.alpha_strat = kStratAlphaPerTrainPoint * static_cast<double>(n_train);
  const Spectrum spectrum = eigendecompose(build_gram(ds.features, kernel, pd_jitter));
  split.rls = ridge_leverage_scores(spectrum, split.alpha_strat);

  std::vector<double> test_rls;
  for (Index i : test) test_rls.push_back(split.rls(i));
  split.rls_threshold = quantile(test_rls, kTailQuantile);
  const double cut = split.rls_threshold * (1.0 + kThresholdTieTolerance);
  for (Index i : test) {
    (split.rls(i) <= cut ? split.test_bulk_idx : split.test_tail_idx).push_back(i);
  }
  return split;
}

double smape(const Eigen::Ref<const Eigen::VectorXd>& y, const Eigen::Ref<const Eigen::VectorXd>& yhat) {
  if (y.size() != yhat.size()) throw InvalidArgument("smape: length mismatch");
  if (y.size() < 1) throw InvalidArgument("smape: empty input");
  double sum = 0.0;
  for (Index i = 0; i < y.size(); ++i) {
    const double denom = 0.5 * (std::abs(y(i)) + std::abs(yhat(i)));
    if (denom > 0.0) sum += std::abs(y(i) - yhat(i)) / denom;
  }
  return sum / static_cast<double>(y.size());
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw InvalidArgument("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Quartiles Quartiles::of(const std::vector<double>& values) {
  return {quantile(values, 0.25), quantile(values, 0.5), quantile(values, 0.75)};
}

void ExperimentConfig::validate() const {
  if (schemes.empty()) throw InvalidArgument("at least one sampling scheme is required");
  if (k < 1) throw InvalidArgument("k must be positive");
  if (m_list.empty()) throw InvalidArgument("m list must not be empty");
  for (Index m : m_list) {
    if (m < 1) throw InvalidArgument("ensemble sizes must be positive");
  }
  if (repeats < 1) throw InvalidArgument("repeats must be positive");
  if (!(epsilon >= 0.0)) throw InvalidArgument("epsilon must be non-negative");
  if (!(rls_lambda > 0.0)) throw InvalidArgument("rls lambda must be positive");
  if (!(dpp_alpha > 0.0)) throw InvalidArgument("dpp alpha must be positive");
  if (!(pd_jitter >= 0.0)) throw InvalidArgument("jitter must be non-negative");
}

const ExperimentRecord& ExperimentReport::at(Scheme scheme, Index m) const {
  for (const auto& r : records) {
    if (r.scheme == scheme && r.m == m) return r;
  }
  throw InvalidArgument("no record for scheme " + std::string(to_string(scheme)) + " and m = " +
                        std::to_string(m));
}

ExperimentReport run_ensemble_krr(const Dataset& ds, const StratifiedSplit& split,
                                  const KernelSpec& kernel, const ExperimentConfig& config) {
  config.validate();
  const Eigen::VectorXd& labels = ds.label_vector();
  const Index n_train = split.n_train();
  if (ds.rows() > config.max_points) {
    throw DataError("dataset has " + std::to_string(ds.rows()) + " rows, above the cap of " +
                    std::to_string(config.max_points) + "; use --subsample");
  }
  if (split.test_bulk_idx.empty()) throw DataError("split has an empty bulk test set");

  const Eigen::MatrixXd x_train = ds.features(split.train_idx, Eigen::all);
  const Eigen::VectorXd y_train = labels(split.train_idx);
  const Eigen::MatrixXd x_bulk = ds.features(split.test_bulk_idx, Eigen::all);
  const Eigen::VectorXd y_bulk = labels(split.test_bulk_idx);
  const Eigen::MatrixXd x_tail = ds.features(split.test_tail_idx, Eigen::all);
  const Eigen::VectorXd y_tail = labels(split.test_tail_idx);
  const bool has_tail = !split.test_tail_idx.empty();

  const GramMatrix k_train = build_gram(x_train, kernel, config.pd_jitter);
  std::shared_ptr<const Spectrum> spectrum;
  if (needs_spectrum(config)) spectrum = std::make_shared<const Spectrum>(eigendecompose(k_train));
  const Index members = max_m(config);

  ExperimentReport report;
  report.kind = "krr-ensemble";
  report.n_points = ds.rows();
  report.n_train = n_train;
  report.n_test_bulk = static_cast<Index>(split.test_bulk_idx.size());
  report.n_test_tail = static_cast<Index>(split.test_tail_idx.size());
  report.alpha_strat = split.alpha_strat;
  report.rls_threshold = split.rls_threshold;

  for (Scheme scheme : config.schemes) {
    const auto start = std::chrono::steady_clock::now();
    const SubsetSampler sampler(spectrum, n_train, sampler_for(scheme, config, n_train));

    // per_repeat[r][i] is the record for m_list[i].
    std::vector<std::vector<RepeatRecord>> per_repeat(static_cast<std::size_t>(config.repeats));
    parallel_for(static_cast<std::size_t>(config.repeats), config.threads, [&](std::size_t r) {
      const auto repeat = static_cast<Index>(r);
      Eigen::MatrixXd pred_bulk(x_bulk.rows(), members);
      Eigen::MatrixXd pred_tail(x_tail.rows(), members);
      std::vector<Subset> subsets;
      for (Index j = 0; j < members; ++j) {
        Rng rng = member_stream(config, scheme, repeat, j);
        subsets.push_back(sampler.draw(rng));
        const RidgelessPredictor f =
            fit_ridgeless(k_train, x_train, y_train, subsets.back(), config.epsilon);
        pred_bulk.col(j) = f.predict(x_bulk);
        if (has_tail) pred_tail.col(j) = f.predict(x_tail);
      }
      std::vector<RepeatRecord> records;
      for (Index m : config.m_list) {
        RepeatRecord rec;
        rec.repeat = repeat;
        rec.smape_bulk = smape(y_bulk, pred_bulk.leftCols(m).rowwise().mean());
        if (has_tail) rec.smape_tail = smape(y_tail, pred_tail.leftCols(m).rowwise().mean());
        rec.distinct_landmarks = count_distinct(subsets, m);
        for (Index j = 0; j < m; ++j) rec.total_landmarks += subsets[static_cast<std::size_t>(j)].size();
        records.push_back(rec);
      }
      per_repeat[r] = std::move(records);
    });

    for (std::size_t i = 0; i < config.m_list.size(); ++i) {
      std::vector<RepeatRecord> repeats;
      for (const auto& r : per_repeat) repeats.push_back(r[i]);
      report.records.push_back(summarize(scheme, config.k, config.m_list[i], std::move(repeats)));
    }
    report.wall_time_seconds.push_back(seconds_since(start));
  }
  return report;
}

ExperimentReport run_ensemble_nystrom(const Dataset& ds, const KernelSpec& kernel,
                                      const ExperimentConfig& config) {
  config.validate();
  const Index n = ds.rows();
  if (n > config.max_points) {
    throw DataError("dataset has " + std::to_string(n) + " rows, above the cap of " +
                    std::to_string(config.max_points) + " for an n x n Gram matrix; use --subsample");
  }
  const GramMatrix k = build_gram(ds.features, kernel, config.pd_jitter);
  std::shared_ptr<const Spectrum> spectrum;
  if (needs_spectrum(config)) spectrum = std::make_shared<const Spectrum>(eigendecompose(k));
  const Index members = max_m(config);

  ExperimentReport report;
  report.kind = "nystrom";
  report.n_points = n;

  for (Scheme scheme : config.schemes) {
    const auto start = std::chrono::steady_clock::now();
    const SubsetSampler sampler(spectrum, n, sampler_for(scheme, config, n));

    std::vector<std::vector<RepeatRecord>> per_repeat(static_cast<std::size_t>(config.repeats));
    parallel_for(static_cast<std::size_t>(config.repeats), config.threads, [&](std::size_t r) {
      const auto repeat = static_cast<Index>(r);
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
      std::vector<Subset> subsets;
      std::vector<double> errors(static_cast<std::size_t>(members));
      for (Index j = 0; j < members; ++j) {
        Rng rng = member_stream(config, scheme, repeat, j);
        subsets.push_back(sampler.draw(rng));
        if (subsets.back().empty()) {
          throw NumericalError("Nystrom member drew an empty subset; lower the dpp alpha");
        }
        nystrom(k, subsets.back(), config.epsilon).accumulate_into(acc);
        errors[static_cast<std::size_t>(j)] =
            relative_frobenius_error(k.matrix(), acc / static_cast<double>(j + 1));
      }
      std::vector<RepeatRecord> records;
      for (Index m : config.m_list) {
        RepeatRecord rec;
        rec.repeat = repeat;
        rec.frobenius_rel_error = errors[static_cast<std::size_t>(m - 1)];
        rec.distinct_landmarks = count_distinct(subsets, m);
        for (Index j = 0; j < m; ++j) rec.total_landmarks += subsets[static_cast<std::size_t>(j)].size();
        records.push_back(rec);
      }
      per_repeat[r] = std::move(records);
    });

    for (std::size_t i = 0; i < config.m_list.size(); ++i) {
      std::vector<RepeatRecord> repeats;
      for (const auto& r : per_repeat) repeats.push_back(r[i]);
      report.records.push_back(summarize(scheme, config.k, config.m_list[i], std::move(repeats)));
    }
    report.wall_time_seconds.push_back(seconds_since(start));
  }
  return report;
}

}  // namespace dppens
