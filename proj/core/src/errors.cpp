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

#include "dppens/errors.hpp"

#include <sstream>

namespace dppens {
namespace {

std::string pd_message(double lambda_min, double threshold) {
  std::ostringstream os;
  os << "matrix is not positive definite: lambda_min = " << lambda_min
     << " <= threshold " << threshold << " (add jitter to the diagonal and retry)";
  return os.str();
}

std::string factorization_message(Eigen::Index size, Eigen::Index pivot) {
  std::ostringstream os;
  os << "Cholesky factorization of a " << size << " x " << size
     << " block failed at pivot " << pivot;
  return os.str();
}

}  // namespace

PositiveDefinitenessError::PositiveDefinitenessError(double lambda_min, double threshold)
    : NumericalError(pd_message(lambda_min, threshold)),
      lambda_min_(lambda_min),
      threshold_(threshold) {}

FactorizationError::FactorizationError(Eigen::Index size, Eigen::Index pivot)
    : NumericalError(factorization_message(size, pivot)), size_(size), pivot_(pivot) {}

}  // namespace dppens
