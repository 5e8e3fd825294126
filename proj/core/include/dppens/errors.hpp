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

#ifndef DPPENS_ERRORS_HPP
#define DPPENS_ERRORS_HPP

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace dppens {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (sizes, ranges, flags).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input data is malformed: ragged CSV rows, non-numeric cells,
/// non-finite features, missing columns.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not produce a trustworthy answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Raised when the smallest eigenvalue of a Gram matrix does not clear the
/// positive-definiteness threshold. Callers may add jitter and retry.
class PositiveDefinitenessError : public NumericalError {
 public:
  PositiveDefinitenessError(double lambda_min, double threshold);

  double lambda_min() const noexcept { return lambda_min_; }
  double threshold() const noexcept { return threshold_; }

 private:
  double lambda_min_;
  double threshold_;
};

/// Cholesky factorization hit a non-positive pivot.
class FactorizationError : public NumericalError {
 public:
  FactorizationError(Eigen::Index size, Eigen::Index pivot);

  Eigen::Index size() const noexcept { return size_; }
  Eigen::Index pivot() const noexcept { return pivot_; }

 private:
  Eigen::Index size_;
  Eigen::Index pivot_;
};

/// The projection phase of a spectral DPP sampler ran out of probability
/// mass before selecting every item.
class DegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace dppens

#endif  // DPPENS_ERRORS_HPP
