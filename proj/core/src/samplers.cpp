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

#include "dppens/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dppens/errors.hpp"

namespace dppens {
namespace {

constexpr double kOrthonormalityTolerance = 1e-8;
constexpr double kMinProjectionMass = 1e-9;

// Index drawn with probability weights[i] / total; weights are >= 0.
Index draw_weighted(const Eigen::VectorXd& weights, double total, Rng& rng) {
  const double target = rng.uniform() * total;
  double cumulative = 0.0;
  Index last_positive = -1;
  for (Index i = 0; i < weights.size(); ++i) {
    if (weights(i) <= 0.0) continue;
    cumulative += weights(i);
    last_positive = i;
    if (target < cumulative) return i;
  }
  return last_positive;  // rounding at the top end
}

void check_size(Index k, Index n) {
  if (k < 1 || k > n) {
    throw InvalidArgument("subset size k = " + std::to_string(k) + " must satisfy 1 <= k <= n = " +
                          std::to_string(n));
  }
}

}  // namespace

Subset::Subset(std::vector<Index> indices, Index n) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InvalidArgument("Subset: duplicate index");
  }
  if (!indices_.empty() && (indices_.front() < 0 || indices_.back() >= n)) {
    throw InvalidArgument("Subset: index outside [0, n)");
  }
}

Subset Subset::all(Index n) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  return Subset(std::move(idx), n);
}

bool Subset::contains(Index i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kUniform:
      return "uniform";
    case Scheme::kRls:
      return "rls";
    case Scheme::kDpp:
      return "dpp";
    case Scheme::kKdpp:
      return "kdpp";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "uniform") return Scheme::kUniform;
  if (name == "rls") return Scheme::kRls;
  if (name == "dpp") return Scheme::kDpp;
  if (name == "kdpp") return Scheme::kKdpp;
  throw InvalidArgument("unknown sampling scheme '" + std::string(name) +
                        "' (expected uniform, rls, dpp or kdpp)");
}

void SamplerConfig::validate(Index n) const {
  if (scheme != Scheme::kDpp) check_size(k, n);
  if ((scheme == Scheme::kDpp || scheme == Scheme::kRls) && !(std::isfinite(alpha) && alpha > 0.0)) {
    throw InvalidArgument("alpha must be positive for the " + std::string(to_string(scheme)) +
                          " scheme");
  }
}

Subset sample_uniform(Index n, Index k, Rng& rng) {
  check_size(k, n);
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index t = 0; t < k; ++t) {
    const auto j = t + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - t)));
    std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return Subset(std::move(pool), n);
}

Subset sample_rls(const Eigen::VectorXd& scores, Index k, Rng& rng) {
  const Index n = scores.size();
  check_size(k, n);
  if (!scores.allFinite() || (scores.array() <= 0.0).any()) {
    throw InvalidArgument("sample_rls: scores must be finite and strictly positive");
  }
  Eigen::VectorXd remaining = scores;
  std::vector<Index> chosen;
  chosen.reserve(static_cast<std::size_t>(k));
  for (Index t = 0; t < k; ++t) {
    const Index i = draw_weighted(remaining, remaining.sum(), rng);
    chosen.push_back(i);
    remaining(i) = 0.0;
  }
  return Subset(std::move(chosen), n);
}

Subset projection_dpp_phase(const Eigen::Ref<const Eigen::MatrixXd>& v, Rng& rng) {
  const Index n = v.rows();
  const Index r = v.cols();
  if (r == 0) return Subset();
  if (r > n) throw InvalidArgument("projection_dpp_phase: more columns than rows");
  const Eigen::MatrixXd gram = v.transpose() * v;
  if ((gram - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff() > kOrthonormalityTolerance) {
    throw InvalidArgument("projection_dpp_phase: columns are not orthonormal");
  }

  // Squared norms of the rows of V projected onto the complement of the
  // span of the already-chosen coordinate directions. `basis` holds the
  // Gram-Schmidt vectors of the chosen rows of V V^T.
  Eigen::VectorXd mass = v.rowwise().squaredNorm();
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, r);
  std::vector<Index> chosen;
  chosen.reserve(static_cast<std::size_t>(r));
  for (Index t = 0; t < r; ++t) {
    mass = mass.cwiseMax(0.0);
    const double total = mass.sum();
    if (total < kMinProjectionMass) {
      throw DegeneracyError("projection DPP ran out of mass after " + std::to_string(t) + " of " +
                            std::to_string(r) + " items");
    }
    const Index i = draw_weighted(mass, total, rng);
    Eigen::VectorXd column = v * v.row(i).transpose();
    if (t > 0) column.noalias() -= basis.leftCols(t) * basis.row(i).head(t).transpose();
    column /= std::sqrt(mass(i));
    mass -= column.cwiseAbs2();
    mass(i) = 0.0;
    basis.col(t) = column;
    chosen.push_back(i);
  }
  return Subset(std::move(chosen), n);
}

Subset sample_dpp(const Spectrum& spectrum, double alpha, Rng& rng) {
  if (!(std::isfinite(alpha) && alpha > 0.0)) throw InvalidArgument("sample_dpp: alpha must be positive");
  const Eigen::VectorXd& lambda = spectrum.eigenvalues();
  std::vector<Index> kept;
  for (Index l = 0; l < lambda.size(); ++l) {
    if (rng.uniform() < lambda(l) / (lambda(l) + alpha)) kept.push_back(l);
  }
  if (kept.empty()) return Subset();
  return projection_dpp_phase(spectrum.eigenvectors()(Eigen::all, kept), rng);
}

std::vector<Index> select_kdpp_eigenindices(const ElemSymTable& esym, Index k, Rng& rng) {
  const Index n = esym.size();
  check_size(k, n);
  if (esym.max_degree() < k) throw InvalidArgument("e_k table does not reach degree k");
  std::vector<Index> kept;
  kept.reserve(static_cast<std::size_t>(k));
  Index remaining = k;
  for (Index j = n; j >= 1 && remaining > 0; --j) {
    if (remaining == j) {
      for (Index i = j; i >= 1; --i) kept.push_back(i - 1);
      break;
    }
    const ScaledReal& denom = esym.scaled(j, remaining);
    if (denom.is_zero()) throw NumericalError("kDPP: e_k table entry vanished");
    const double p = esym.lambdas()[static_cast<std::size_t>(j - 1)] *
                     ratio(esym.scaled(j - 1, remaining - 1), denom);
    if (rng.uniform() < p) {
      kept.push_back(j - 1);
      --remaining;
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

Subset sample_kdpp(const Spectrum& spectrum, const ElemSymTable& esym, Index k, Rng& rng) {
  if (esym.size() != spectrum.size()) throw InvalidArgument("e_k table and spectrum sizes differ");
  const std::vector<Index> kept = select_kdpp_eigenindices(esym, k, rng);
  return projection_dpp_phase(spectrum.eigenvectors()(Eigen::all, kept), rng);
}

SubsetSampler::SubsetSampler(std::shared_ptr<const Spectrum> spectrum, Index n, SamplerConfig config)
    : spectrum_(std::move(spectrum)), n_(n), config_(config) {
  config_.validate(n_);
  if (config_.scheme == Scheme::kUniform) return;
  if (!spectrum_ || spectrum_->size() != n_) {
    throw InvalidArgument("the " + std::string(to_string(config_.scheme)) +
                          " scheme needs the spectrum of the n x n Gram matrix");
  }
  if (config_.scheme == Scheme::kRls) scores_ = ridge_leverage_scores(*spectrum_, config_.alpha);
  if (config_.scheme == Scheme::kKdpp) esym_ = elem_sym(spectrum_->eigenvalues(), config_.k);
}

Subset SubsetSampler::draw(Rng& rng) const {
  switch (config_.scheme) {
    case Scheme::kUniform:
      return sample_uniform(n_, config_.k, rng);
    case Scheme::kRls:
      return sample_rls(scores_, config_.k, rng);
    case Scheme::kDpp:
      return sample_dpp(*spectrum_, config_.alpha, rng);
    case Scheme::kKdpp:
      return sample_kdpp(*spectrum_, esym_, config_.k, rng);
  }
  throw InvalidArgument("unknown scheme");
}

}  // namespace dppens
