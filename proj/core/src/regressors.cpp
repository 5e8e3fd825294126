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

#include "dppens/regressors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dppens/errors.hpp"

namespace dppens {
namespace {

// First pivot at which an unblocked Cholesky of `a` breaks down.
Index failing_pivot(const Eigen::MatrixXd& a) {
  const Index n = a.rows();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    const double d = a(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > 0.0)) return j;
    l(j, j) = std::sqrt(d);
    for (Index i = j + 1; i < n; ++i) {
      l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
    }
  }
  return n - 1;
}

Eigen::MatrixXd symmetric_gram_of_columns(const Eigen::MatrixXd& factor) {
  const Index n = factor.cols();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  out.selfadjointView<Eigen::Lower>().rankUpdate(factor.transpose());
  out.triangularView<Eigen::StrictlyUpper>() = out.transpose();
  return out;
}

}  // namespace

Eigen::LLT<Eigen::MatrixXd> factorize_spd(const Eigen::Ref<const Eigen::MatrixXd>& a,
                                          double jitter) {
  if (a.rows() != a.cols()) throw InvalidArgument("factorize_spd: matrix must be square");
  if (!(std::isfinite(jitter) && jitter >= 0.0)) {
    throw InvalidArgument("factorize_spd: jitter must be non-negative");
  }
  Eigen::MatrixXd shifted = a;
  shifted.diagonal().array() += jitter;
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) throw FactorizationError(a.rows(), failing_pivot(shifted));
  return llt;
}

KernelExpansion::KernelExpansion(Eigen::MatrixXd centers, Eigen::VectorXd weights,
                                 KernelSpec kernel)
    : centers_(std::move(centers)), weights_(std::move(weights)), kernel_(kernel) {
  if (centers_.rows() != weights_.size()) {
    throw InvalidArgument("KernelExpansion: one weight per center required");
  }
}

double KernelExpansion::predict_point(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  double f = 0.0;
  for (Index i = 0; i < centers_.rows(); ++i) {
    f += weights_(i) * kernel_.from_squared_distance((centers_.row(i).transpose() - x).squaredNorm());
  }
  return f;
}

Eigen::VectorXd KernelExpansion::predict(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.rows());
  if (centers_.rows() == 0) return out;
  for (Index begin = 0; begin < x.rows(); begin += kPredictBlockRows) {
    const Index rows = std::min(kPredictBlockRows, x.rows() - begin);
    out.segment(begin, rows) = cross_gram(x.middleRows(begin, rows), centers_, kernel_) * weights_;
  }
  return out;
}

double RidgelessPredictor::predict_point(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return is_zero() ? 0.0 : expansion_.predict_point(x);
}

Eigen::VectorXd RidgelessPredictor::predict(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  if (is_zero()) return Eigen::VectorXd::Zero(x.rows());
  return expansion_.predict(x);
}

EnsemblePredictor::EnsemblePredictor(std::vector<RidgelessPredictor> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw InvalidArgument("EnsemblePredictor needs at least one member");
}

Index EnsemblePredictor::distinct_landmarks() const {
  std::vector<Index> all;
  for (const auto& m : members_) all.insert(all.end(), m.subset().begin(), m.subset().end());
  std::sort(all.begin(), all.end());
  return static_cast<Index>(std::unique(all.begin(), all.end()) - all.begin());
}

double EnsemblePredictor::predict_point(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  double sum = 0.0;
  for (const auto& m : members_) sum += m.predict_point(x);
  return sum / static_cast<double>(members_.size());
}

Eigen::VectorXd EnsemblePredictor::predict(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(x.rows());
  for (const auto& m : members_) sum += m.predict(x);
  return sum / static_cast<double>(members_.size());
}

namespace {

const KernelSpec& require_kernel(const GramMatrix& k) {
  if (!k.kernel()) {
    throw InvalidArgument("regression needs a Gram matrix assembled from points by gram()");
  }
  return *k.kernel();
}

void check_training_data(const GramMatrix& k, const Eigen::Ref<const Eigen::MatrixXd>& points,
                         const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (points.rows() != k.size() || y.size() != k.size()) {
    throw InvalidArgument("points, labels and Gram matrix sizes differ");
  }
  if (!y.allFinite()) throw DataError("labels contain non-finite values");
}

}  // namespace

RidgelessPredictor fit_ridgeless(const GramMatrix& k, const Eigen::Ref<const Eigen::MatrixXd>& points,
                                 const Eigen::Ref<const Eigen::VectorXd>& y, const Subset& subset,
                                 double jitter) {
  const KernelSpec& kernel = require_kernel(k);
  check_training_data(k, points, y);
  if (subset.empty()) {
    return RidgelessPredictor(Subset(), KernelExpansion(Eigen::MatrixXd(0, points.cols()),
                                                        Eigen::VectorXd(0), kernel));
  }
  if (subset.indices().back() >= k.size()) throw InvalidArgument("subset index outside the training set");
  const auto& idx = subset.indices();
  const Eigen::LLT<Eigen::MatrixXd> llt = factorize_spd(k.matrix()(idx, idx), jitter);
  Eigen::VectorXd beta = llt.solve(y(idx));
  return RidgelessPredictor(subset, KernelExpansion(points(idx, Eigen::all), std::move(beta), kernel));
}

KernelExpansion fit_krr(const GramMatrix& k, const Eigen::Ref<const Eigen::MatrixXd>& points,
                        const Eigen::Ref<const Eigen::VectorXd>& y, double alpha) {
  const KernelSpec& kernel = require_kernel(k);
  check_training_data(k, points, y);
  if (!(std::isfinite(alpha) && alpha > 0.0)) throw InvalidArgument("fit_krr: alpha must be positive");
  const Eigen::LLT<Eigen::MatrixXd> llt = factorize_spd(k.matrix(), alpha);
  return KernelExpansion(points, llt.solve(y), kernel);
}

NystromApprox::NystromApprox(Subset subset, Eigen::MatrixXd cross_block,
                             Eigen::LLT<Eigen::MatrixXd> inner, double epsilon)
    : subset_(std::move(subset)),
      cross_(std::move(cross_block)),
      inner_(std::move(inner)),
      epsilon_(epsilon) {
  factor_ = inner_.matrixL().solve(cross_.transpose());
}

Eigen::MatrixXd NystromApprox::matrix() const { return symmetric_gram_of_columns(factor_); }

void NystromApprox::accumulate_into(Eigen::MatrixXd& acc) const {
  if (acc.rows() != factor_.cols() || acc.cols() != factor_.cols()) {
    throw InvalidArgument("accumulate_into: size mismatch");
  }
  acc += matrix();
}

NystromApprox nystrom(const GramMatrix& k, const Subset& subset, double epsilon) {
  if (subset.empty()) throw InvalidArgument("nystrom: subset must be non-empty");
  if (!(std::isfinite(epsilon) && epsilon >= 0.0)) throw InvalidArgument("nystrom: epsilon must be >= 0");
  if (subset.indices().back() >= k.size()) throw InvalidArgument("subset index outside the matrix");
  const auto& idx = subset.indices();
  Eigen::MatrixXd cross = k.matrix()(Eigen::all, idx);
  auto inner = factorize_spd(k.matrix()(idx, idx), epsilon);
  return NystromApprox(subset, std::move(cross), std::move(inner), epsilon);
}

Eigen::MatrixXd ensemble_nystrom(const GramMatrix& k, const std::vector<Subset>& subsets,
                                 double epsilon) {
  if (subsets.empty()) throw InvalidArgument("ensemble_nystrom: no members");
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(k.size(), k.size());
  for (const Subset& s : subsets) nystrom(k, s, epsilon).accumulate_into(acc);
  return acc / static_cast<double>(subsets.size());
}

double relative_frobenius_error(const Eigen::Ref<const Eigen::MatrixXd>& reference,
                                const Eigen::Ref<const Eigen::MatrixXd>& approx) {
  if (reference.rows() != approx.rows() || reference.cols() != approx.cols()) {
    throw InvalidArgument("relative_frobenius_error: size mismatch");
  }
  return (reference - approx).norm() / reference.norm();
}

}  // namespace dppens
