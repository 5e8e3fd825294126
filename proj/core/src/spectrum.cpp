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

#include "dppens/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "dppens/errors.hpp"

namespace dppens {

Spectrum::Spectrum(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors)
    : values_(std::move(eigenvalues)), vectors_(std::move(eigenvectors)) {
  if (vectors_.rows() != values_.size() || vectors_.cols() != values_.size()) {
    throw InvalidArgument("Spectrum: eigenvector matrix must be n x n");
  }
  for (Eigen::Index i = 1; i < values_.size(); ++i) {
    if (values_(i) > values_(i - 1)) {
      throw InvalidArgument("Spectrum: eigenvalues must be sorted in descending order");
    }
  }
}

Eigen::MatrixXd Spectrum::reconstruct() const {
  return vectors_ * values_.asDiagonal() * vectors_.transpose();
}

Spectrum eigendecompose(const GramMatrix& k, double relative_pd_tolerance) {
  const Eigen::Index n = k.size();
  if (n < 1) throw InvalidArgument("eigendecompose: empty matrix");
  if (!(relative_pd_tolerance >= 0.0)) {
    throw InvalidArgument("eigendecompose: tolerance must be non-negative");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge");
  }
  // Eigen returns ascending order.
  Eigen::VectorXd values = solver.eigenvalues().reverse();
  Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();

  const double threshold = relative_pd_tolerance * values(0);
  if (!(values(n - 1) > threshold)) {
    throw PositiveDefinitenessError(values(n - 1), threshold);
  }
  return Spectrum(std::move(values), std::move(vectors));
}

namespace {

void check_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw InvalidArgument("alpha must be positive and finite");
  }
}

}  // namespace

Eigen::MatrixXd marginal_kernel(const Spectrum& spectrum, double alpha) {
  check_alpha(alpha);
  Eigen::MatrixXd p = spectrum.apply([alpha](double lambda) { return lambda / (lambda + alpha); });
  // Symmetrize rounding noise from the two products.
  return 0.5 * (p + p.transpose());
}

Eigen::MatrixXd marginal_kernel(const GramMatrix& k, double alpha) {
  return marginal_kernel(eigendecompose(k), alpha);
}

Eigen::VectorXd ridge_leverage_scores(const Spectrum& spectrum, double alpha) {
  check_alpha(alpha);
  const Eigen::VectorXd& lambda = spectrum.eigenvalues();
  const Eigen::VectorXd weights =
      lambda.array() / (lambda.array() + alpha);
  return spectrum.eigenvectors().array().square().matrix() * weights;
}

Eigen::VectorXd ridge_leverage_scores(const GramMatrix& k, double alpha) {
  return ridge_leverage_scores(eigendecompose(k), alpha);
}

double expected_dpp_size(const Spectrum& spectrum, double alpha) {
  check_alpha(alpha);
  const Eigen::VectorXd& lambda = spectrum.eigenvalues();
  return (lambda.array() / (lambda.array() + alpha)).sum();
}

}  // namespace dppens
