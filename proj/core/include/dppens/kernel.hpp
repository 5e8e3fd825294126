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

#ifndef DPPENS_KERNEL_HPP
#define DPPENS_KERNEL_HPP

#include <Eigen/Core>

#include <optional>
#include <string_view>

namespace dppens {

enum class KernelFamily {
  kGaussian,  // exp(-|x-y|^2 / (2 sigma^2))
  kLaplace,   // exp(-|x-y| / sigma)
};

std::string_view to_string(KernelFamily family);
KernelFamily parse_kernel_family(std::string_view name);

/// A translation-invariant kernel and its bandwidth.
struct KernelSpec {
  KernelFamily family = KernelFamily::kGaussian;
  double bandwidth = 1.0;

  /// Throws InvalidArgument unless bandwidth is finite and positive.
  void validate() const;

  /// Kernel value from a squared Euclidean distance.
  double from_squared_distance(double squared_distance) const;

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& y) const;
};

/// Symmetric n x n kernel matrix. Built by `gram` (exactly symmetric, unit
/// diagonal) or wrapped from an arbitrary symmetric matrix for oracle work.
class GramMatrix {
 public:
  GramMatrix() = default;

  /// Wraps a symmetric matrix. Throws InvalidArgument if `m` is not square
  /// or not exactly symmetric, DataError if it holds non-finite entries.
  static GramMatrix from_matrix(Eigen::MatrixXd m);

  const Eigen::MatrixXd& matrix() const noexcept { return k_; }
  Eigen::Index size() const noexcept { return k_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return k_(i, j); }

  /// Kernel used to assemble the matrix, if it came from `gram`.
  const std::optional<KernelSpec>& kernel() const noexcept { return kernel_; }

  /// Copy with `jitter` added to the diagonal. Opt-in regularization for
  /// matrices that fail the positive-definiteness gate.
  GramMatrix jittered(double jitter) const;

 private:
  friend GramMatrix gram(const Eigen::Ref<const Eigen::MatrixXd>&,
                         const KernelSpec&);

  Eigen::MatrixXd k_;
  std::optional<KernelSpec> kernel_;
};

/// Gram matrix of the rows of `points` (n x d). Only the upper triangle is
/// evaluated; the lower one is mirrored.
GramMatrix gram(const Eigen::Ref<const Eigen::MatrixXd>& points,
                const KernelSpec& spec);

/// Rectangular kernel block k(a_i, b_j), a: p x d, b: q x d.
Eigen::MatrixXd cross_gram(const Eigen::Ref<const Eigen::MatrixXd>& a,
                           const Eigen::Ref<const Eigen::MatrixXd>& b,
                           const KernelSpec& spec);

}  // namespace dppens

#endif  // DPPENS_KERNEL_HPP
