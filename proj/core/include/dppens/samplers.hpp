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

#ifndef DPPENS_SAMPLERS_HPP
#define DPPENS_SAMPLERS_HPP

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "dppens/elem_sym.hpp"
#include "dppens/random.hpp"
#include "dppens/spectrum.hpp"

namespace dppens {

using Index = Eigen::Index;

/// Strictly increasing list of row indices in [0, n).
class Subset {
 public:
  Subset() = default;

  /// Sorts and validates. Throws InvalidArgument on duplicates or indices
  /// outside [0, n).
  Subset(std::vector<Index> indices, Index n);

  /// The full index set [0, n).
  static Subset all(Index n);

  const std::vector<Index>& indices() const noexcept { return indices_; }
  Index size() const noexcept { return static_cast<Index>(indices_.size()); }
  bool empty() const noexcept { return indices_.empty(); }
  Index operator[](Index t) const { return indices_[static_cast<std::size_t>(t)]; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  bool contains(Index i) const;

  friend bool operator==(const Subset&, const Subset&) = default;
  friend auto operator<=>(const Subset&, const Subset&) = default;

 private:
  std::vector<Index> indices_;
};

enum class Scheme { kUniform, kRls, kDpp, kKdpp };

std::string_view to_string(Scheme scheme);
/// Accepts "uniform", "rls", "dpp", "kdpp". Throws InvalidArgument otherwise.
Scheme parse_scheme(std::string_view name);

struct SamplerConfig {
  Scheme scheme = Scheme::kKdpp;
  Index k = 1;          // ignored by kDpp
  double alpha = 1.0;   // L = K / alpha for kDpp; RLS regularization for kRls
  std::uint64_t seed = 0;

  void validate(Index n) const;
};

/// k distinct indices, every k-subset equally likely.
Subset sample_uniform(Index n, Index k, Rng& rng);

/// k distinct indices drawn one at a time without replacement, each with
/// probability proportional to its score among the remaining indices.
Subset sample_rls(const Eigen::VectorXd& scores, Index k, Rng& rng);

/// Exact L-ensemble DPP with L = K / alpha. Phase one keeps eigenindex l
/// with probability lambda_l / (lambda_l + alpha); phase two runs the
/// projection DPP on the kept eigenvectors. May return the empty set.
Subset sample_dpp(const Spectrum& spectrum, double alpha, Rng& rng);

/// Exact kDPP(K). `esym` must be built from spectrum.eigenvalues() up to
/// degree >= k.
Subset sample_kdpp(const Spectrum& spectrum, const ElemSymTable& esym, Index k,
                   Rng& rng);

/// Eigenindices chosen by the backward e_k walk: j runs from n down to 1
/// and is kept with probability lambda_j E[j-1][r-1] / E[j][r].
std::vector<Index> select_kdpp_eigenindices(const ElemSymTable& esym, Index k,
                                            Rng& rng);

/// Projection DPP with kernel V V^T for an n x r matrix V with orthonormal
/// columns. Returns exactly r indices or throws DegeneracyError.
Subset projection_dpp_phase(const Eigen::Ref<const Eigen::MatrixXd>& v, Rng& rng);

/// Precomputes what a scheme needs (scores, e_k table) once, then draws
/// any number of subsets from caller-provided streams.
class SubsetSampler {
 public:
  /// `spectrum` may be null for the uniform scheme.
  SubsetSampler(std::shared_ptr<const Spectrum> spectrum, Index n,
                SamplerConfig config);

  Subset draw(Rng& rng) const;

  const SamplerConfig& config() const noexcept { return config_; }
  Index n() const noexcept { return n_; }

 private:
  std::shared_ptr<const Spectrum> spectrum_;
  Index n_;
  SamplerConfig config_;
  Eigen::VectorXd scores_;
  ElemSymTable esym_;
};

}  // namespace dppens

#endif  // DPPENS_SAMPLERS_HPP
