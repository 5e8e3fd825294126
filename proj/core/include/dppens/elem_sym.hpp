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

#ifndef DPPENS_ELEM_SYM_HPP
#define DPPENS_ELEM_SYM_HPP

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

namespace dppens {

/// Non-negative real stored as mantissa * 2^exponent with the mantissa in
/// [0.5, 1). Products of thousands of eigenvalues stay representable.
class ScaledReal {
 public:
  constexpr ScaledReal() = default;
  explicit ScaledReal(double value);

  static ScaledReal one() { return ScaledReal(1.0); }

  bool is_zero() const noexcept { return mantissa_ == 0.0; }
  double mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }

  /// Plain double; underflows to 0 or overflows to inf outside range.
  double to_double() const;
  /// Natural logarithm; -inf for zero.
  double log() const;

  friend ScaledReal operator+(const ScaledReal& a, const ScaledReal& b);
  /// Difference clamped at zero.
  friend ScaledReal operator-(const ScaledReal& a, const ScaledReal& b);
  friend ScaledReal operator*(const ScaledReal& a, const ScaledReal& b);
  friend ScaledReal operator*(const ScaledReal& a, double b);
  friend ScaledReal operator/(const ScaledReal& a, const ScaledReal& b);

  /// a / b as a plain double (the ratio itself must be representable).
  friend double ratio(const ScaledReal& a, const ScaledReal& b);

 private:
  ScaledReal(double mantissa, std::int64_t exponent);
  void normalize();

  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

/// Triangular table E[j][r] = e_r(lambda_1..lambda_j) for 0 <= r <= j <= n,
/// r <= max_degree. Entries are built with the additive recurrence
/// E[j][r] = E[j-1][r] + lambda_j E[j-1][r-1], every term non-negative.
class ElemSymTable {
 public:
  ElemSymTable() = default;

  Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(lambdas_.size()); }
  Eigen::Index max_degree() const noexcept { return max_degree_; }
  const std::vector<double>& lambdas() const noexcept { return lambdas_; }

  /// E[j][r] for the first j entries. Zero for r > j.
  const ScaledReal& scaled(Eigen::Index j, Eigen::Index r) const;
  double at(Eigen::Index j, Eigen::Index r) const { return scaled(j, r).to_double(); }

  /// e_r of the full vector.
  const ScaledReal& e_scaled(Eigen::Index r) const { return scaled(size(), r); }
  double e(Eigen::Index r) const { return e_scaled(r).to_double(); }

  /// e_0..e_r of the vector with entry `exclude` removed, 0 <= r <= n-1.
  /// Uses the downward recurrence e_s(lam^) = e_s(lam) - lam_l e_{s-1}(lam^)
  /// while each subtracted fraction stays <= 0.99, and otherwise rebuilds
  /// the DP without the excluded entry.
  std::vector<ScaledReal> leave_one_out(Eigen::Index exclude, Eigen::Index r) const;

  /// True when leave_one_out(exclude, r) takes the rebuild path.
  bool loo_needs_rebuild(Eigen::Index exclude, Eigen::Index r) const;

 private:
  friend ElemSymTable elem_sym(std::span<const double>, Eigen::Index);

  std::size_t offset(Eigen::Index j) const;

  std::vector<double> lambdas_;
  Eigen::Index max_degree_ = 0;
  std::vector<ScaledReal> entries_;
  std::vector<std::size_t> row_offsets_;
};

/// Builds the table for non-negative `lambdas` up to degree `max_degree`
/// (negative means n). Throws InvalidArgument on negative or non-finite input.
ElemSymTable elem_sym(std::span<const double> lambdas, Eigen::Index max_degree = -1);
ElemSymTable elem_sym(const Eigen::VectorXd& lambdas, Eigen::Index max_degree = -1);

/// e_r of the vector with entry `exclude` removed.
double elem_sym_loo(const ElemSymTable& table, Eigen::Index exclude, Eigen::Index r);
ScaledReal elem_sym_loo_scaled(const ElemSymTable& table, Eigen::Index exclude,
                               Eigen::Index r);

}  // namespace dppens

#endif  // DPPENS_ELEM_SYM_HPP
