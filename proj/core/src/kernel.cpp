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

#include "dppens/kernel.hpp"

#include <cmath>
#include <string>

#include "dppens/errors.hpp"

namespace dppens {

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::kGaussian:
      return "gaussian";
    case KernelFamily::kLaplace:
      return "laplace";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "gaussian") return KernelFamily::kGaussian;
  if (name == "laplace") return KernelFamily::kLaplace;
  throw InvalidArgument("unknown kernel family '" + std::string(name) +
                        "' (expected gaussian or laplace)");
}

void KernelSpec::validate() const {
  if (!std::isfinite(bandwidth) || bandwidth <= 0.0) {
    throw InvalidArgument("kernel bandwidth must be positive, got " +
                          std::to_string(bandwidth));
  }
}

double KernelSpec::from_squared_distance(double squared_distance) const {
  switch (family) {
    case KernelFamily::kGaussian:
      return std::exp(-squared_distance / (2.0 * bandwidth * bandwidth));
    case KernelFamily::kLaplace:
      return std::exp(-std::sqrt(squared_distance) / bandwidth);
  }
  return 0.0;
}

double KernelSpec::operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& y) const {
  return from_squared_distance((x - y).squaredNorm());
}

GramMatrix GramMatrix::from_matrix(Eigen::MatrixXd m) {
  if (m.rows() != m.cols()) throw InvalidArgument("Gram matrix must be square");
  if (!m.allFinite()) throw DataError("Gram matrix has non-finite entries");
  if (m != m.transpose()) throw InvalidArgument("Gram matrix must be exactly symmetric");
  GramMatrix g;
  g.k_ = std::move(m);
  return g;
}

GramMatrix GramMatrix::jittered(double jitter) const {
  if (!std::isfinite(jitter) || jitter < 0.0) {
    throw InvalidArgument("jitter must be non-negative");
  }
  GramMatrix g = *this;
  g.k_.diagonal().array() += jitter;
  return g;
}

namespace {

void check_points(const Eigen::Ref<const Eigen::MatrixXd>& points) {
  if (points.rows() < 1 || points.cols() < 1) {
    throw InvalidArgument("point matrix must have n >= 1 rows and d >= 1 columns");
  }
  if (!points.allFinite()) throw DataError("input features contain non-finite values");
}

}  // namespace

GramMatrix gram(const Eigen::Ref<const Eigen::MatrixXd>& points, const KernelSpec& spec) {
  spec.validate();
  check_points(points);
  const Eigen::Index n = points.rows();
  GramMatrix g;
  g.kernel_ = spec;
  g.k_.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    g.k_(j, j) = 1.0;
    for (Eigen::Index i = 0; i < j; ++i) {
      const double v = spec.from_squared_distance((points.row(i) - points.row(j)).squaredNorm());
      g.k_(i, j) = v;
      g.k_(j, i) = v;
    }
  }
  return g;
}

Eigen::MatrixXd cross_gram(const Eigen::Ref<const Eigen::MatrixXd>& a,
                           const Eigen::Ref<const Eigen::MatrixXd>& b,
                           const KernelSpec& spec) {
  spec.validate();
  if (a.cols() != b.cols()) throw InvalidArgument("cross_gram: dimension mismatch");
  if (!a.allFinite() || !b.allFinite()) {
    throw DataError("input features contain non-finite values");
  }
  Eigen::MatrixXd out(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out(i, j) = spec.from_squared_distance((a.row(i) - b.row(j)).squaredNorm());
    }
  }
  return out;
}

}  // namespace dppens
