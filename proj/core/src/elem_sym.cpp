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

#include "dppens/elem_sym.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dppens/errors.hpp"

namespace dppens {
namespace {

// Keeps ldexp arguments inside int range; anything beyond underflows to 0
// or overflows to inf anyway.
int clamp_exponent(std::int64_t e) {
  return static_cast<int>(std::clamp<std::int64_t>(e, -100000, 100000));
}

constexpr double kLooCancellationLimit = 0.99;

}  // namespace

ScaledReal::ScaledReal(double value) : mantissa_(value), exponent_(0) {
  if (!std::isfinite(value) || value < 0.0) {
    throw InvalidArgument("ScaledReal holds finite non-negative values only");
  }
  normalize();
}

ScaledReal::ScaledReal(double mantissa, std::int64_t exponent)
    : mantissa_(mantissa), exponent_(exponent) {
  normalize();
}

void ScaledReal::normalize() {
  if (mantissa_ <= 0.0) {
    mantissa_ = 0.0;
    exponent_ = 0;
    return;
  }
  int e = 0;
  mantissa_ = std::frexp(mantissa_, &e);
  exponent_ += e;
}

double ScaledReal::to_double() const {
  return std::ldexp(mantissa_, clamp_exponent(exponent_));
}

double ScaledReal::log() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log(mantissa_) + static_cast<double>(exponent_) * std::numbers::ln2;
}

ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.exponent_ >= b.exponent_) {
    return ScaledReal(a.mantissa_ + std::ldexp(b.mantissa_, clamp_exponent(b.exponent_ - a.exponent_)),
                      a.exponent_);
  }
  return ScaledReal(b.mantissa_ + std::ldexp(a.mantissa_, clamp_exponent(a.exponent_ - b.exponent_)),
                    b.exponent_);
}

ScaledReal operator-(const ScaledReal& a, const ScaledReal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero() || b.exponent_ > a.exponent_) return ScaledReal();
  return ScaledReal(a.mantissa_ - std::ldexp(b.mantissa_, clamp_exponent(b.exponent_ - a.exponent_)),
                    a.exponent_);
}

ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
  if (a.is_zero() || b.is_zero()) return ScaledReal();
  return ScaledReal(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

ScaledReal operator*(const ScaledReal& a, double b) { return a * ScaledReal(b); }

ScaledReal operator/(const ScaledReal& a, const ScaledReal& b) {
  if (b.is_zero()) throw NumericalError("ScaledReal: division by zero");
  if (a.is_zero()) return ScaledReal();
  return ScaledReal(a.mantissa_ / b.mantissa_, a.exponent_ - b.exponent_);
}

double ratio(const ScaledReal& a, const ScaledReal& b) {
  if (b.is_zero()) throw NumericalError("ScaledReal: division by zero");
  if (a.is_zero()) return 0.0;
  return std::ldexp(a.mantissa_ / b.mantissa_, clamp_exponent(a.exponent_ - b.exponent_));
}

std::size_t ElemSymTable::offset(Eigen::Index j) const {
  return row_offsets_[static_cast<std::size_t>(j)];
}

const ScaledReal& ElemSymTable::scaled(Eigen::Index j, Eigen::Index r) const {
  static const ScaledReal kZero;
  if (j < 0 || j > size() || r < 0) throw InvalidArgument("ElemSymTable: index out of range");
  if (r > j) return kZero;
  if (r > max_degree_) {
    throw InvalidArgument("ElemSymTable: degree " + std::to_string(r) +
                          " exceeds tabulated maximum " + std::to_string(max_degree_));
  }
  return entries_[offset(j) + static_cast<std::size_t>(r)];
}

std::vector<ScaledReal> ElemSymTable::leave_one_out(Eigen::Index exclude, Eigen::Index r) const {
  const Eigen::Index n = size();
  if (exclude < 0 || exclude >= n) throw InvalidArgument("leave_one_out: index out of range");
  if (r < 0 || r > n - 1 || r > max_degree_) {
    throw InvalidArgument("leave_one_out: degree " + std::to_string(r) + " out of range");
  }
  const ScaledReal lambda(lambdas_[static_cast<std::size_t>(exclude)]);

  std::vector<ScaledReal> out(static_cast<std::size_t>(r) + 1);
  out[0] = ScaledReal::one();
  bool stable = true;
  for (Eigen::Index s = 1; s <= r && stable; ++s) {
    const ScaledReal& full = e_scaled(s);
    const ScaledReal term = lambda * out[static_cast<std::size_t>(s - 1)];
    if (full.is_zero() || ratio(term, full) > kLooCancellationLimit) {
      stable = false;
      break;
    }
    out[static_cast<std::size_t>(s)] = full - term;
  }
  if (stable) return out;

  // Rebuild the truncated DP without the excluded entry.
  std::fill(out.begin() + 1, out.end(), ScaledReal());
  Eigen::Index seen = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == exclude) continue;
    ++seen;
    const ScaledReal li(lambdas_[static_cast<std::size_t>(i)]);
    for (Eigen::Index s = std::min(seen, r); s >= 1; --s) {
      out[static_cast<std::size_t>(s)] =
          out[static_cast<std::size_t>(s)] + li * out[static_cast<std::size_t>(s - 1)];
    }
  }
  return out;
}

bool ElemSymTable::loo_needs_rebuild(Eigen::Index exclude, Eigen::Index r) const {
  const ScaledReal lambda(lambdas_.at(static_cast<std::size_t>(exclude)));
  ScaledReal prev = ScaledReal::one();
  for (Eigen::Index s = 1; s <= r; ++s) {
    const ScaledReal& full = e_scaled(s);
    const ScaledReal term = lambda * prev;
    if (full.is_zero() || ratio(term, full) > kLooCancellationLimit) return true;
    prev = full - term;
  }
  return false;
}

ElemSymTable elem_sym(std::span<const double> lambdas, Eigen::Index max_degree) {
  for (double v : lambdas) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidArgument("elem_sym: entries must be finite and non-negative");
    }
  }
  const auto n = static_cast<Eigen::Index>(lambdas.size());
  ElemSymTable t;
  t.lambdas_.assign(lambdas.begin(), lambdas.end());
  t.max_degree_ = max_degree < 0 ? n : std::min(max_degree, n);
  const Eigen::Index d = t.max_degree_;

  t.row_offsets_.resize(static_cast<std::size_t>(n) + 2);
  t.row_offsets_[0] = 0;
  for (Eigen::Index j = 0; j <= n; ++j) {
    t.row_offsets_[static_cast<std::size_t>(j) + 1] =
        t.row_offsets_[static_cast<std::size_t>(j)] + static_cast<std::size_t>(std::min(j, d)) + 1;
  }
  t.entries_.resize(t.row_offsets_.back());

  t.entries_[0] = ScaledReal::one();
  for (Eigen::Index j = 1; j <= n; ++j) {
    const ScaledReal lambda(t.lambdas_[static_cast<std::size_t>(j - 1)]);
    const std::size_t prev = t.offset(j - 1);
    const std::size_t cur = t.offset(j);
    const Eigen::Index top = std::min(j, d);
    for (Eigen::Index r = 0; r <= top; ++r) {
      ScaledReal v;
      if (r <= std::min(j - 1, d)) v = t.entries_[prev + static_cast<std::size_t>(r)];
      if (r >= 1) v = v + lambda * t.entries_[prev + static_cast<std::size_t>(r - 1)];
      t.entries_[cur + static_cast<std::size_t>(r)] = v;
    }
  }
  return t;
}

ElemSymTable elem_sym(const Eigen::VectorXd& lambdas, Eigen::Index max_degree) {
  return elem_sym(std::span<const double>(lambdas.data(), static_cast<std::size_t>(lambdas.size())),
                  max_degree);
}

ScaledReal elem_sym_loo_scaled(const ElemSymTable& table, Eigen::Index exclude, Eigen::Index r) {
  return table.leave_one_out(exclude, r).back();
}

double elem_sym_loo(const ElemSymTable& table, Eigen::Index exclude, Eigen::Index r) {
  return elem_sym_loo_scaled(table, exclude, r).to_double();
}

}  // namespace dppens
