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

// Brute-force helpers shared by the unit tests. Nothing here calls into the
// code paths being checked: determinants come from LU, e_r from subset
// enumeration.

#ifndef DPPENS_TESTS_TEST_ORACLES_HPP
#define DPPENS_TESTS_TEST_ORACLES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <bit>
#include <map>
#include <vector>

namespace dppens::testing {

inline std::vector<Eigen::Index> bits(std::uint64_t mask) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) idx.push_back(i);
  }
  return idx;
}

inline double lu_det(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return 1.0;
  return Eigen::FullPivLU<Eigen::MatrixXd>(a).determinant();
}

/// e_r(values) by summing over all r-subsets.
inline double brute_elem_sym(const std::vector<double>& values, int r) {
  const auto n = static_cast<int>(values.size());
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) != r) continue;
    double prod = 1.0;
    for (auto i : bits(mask)) prod *= values[static_cast<std::size_t>(i)];
    sum += prod;
  }
  return sum;
}

/// Sum of r x r principal minors of an arbitrary square matrix.
inline double minor_sum(const Eigen::MatrixXd& a, int r) {
  const auto n = static_cast<int>(a.rows());
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) != r) continue;
    const auto idx = bits(mask);
    sum += lu_det(a(idx, idx));
  }
  return sum;
}

/// Exact kDPP law keyed by bitmask: det(K_CC) / sum of all k-minors.
inline std::map<std::uint64_t, double> kdpp_law(const Eigen::MatrixXd& k, int size) {
  std::map<std::uint64_t, double> law;
  double total = 0.0;
  const auto n = static_cast<int>(k.rows());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) != size) continue;
    const auto idx = bits(mask);
    law[mask] = lu_det(k(idx, idx));
    total += law[mask];
  }
  for (auto& [mask, p] : law) p /= total;
  return law;
}

/// Exact L-ensemble law with L = K / alpha, keyed by bitmask.
inline std::map<std::uint64_t, double> dpp_law(const Eigen::MatrixXd& k, double alpha) {
  std::map<std::uint64_t, double> law;
  const auto n = static_cast<int>(k.rows());
  const Eigen::MatrixXd l = k / alpha;
  const double z = lu_det(Eigen::MatrixXd::Identity(n, n) + l);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto idx = bits(mask);
    law[mask] = lu_det(l(idx, idx)) / z;
  }
  return law;
}

template <typename Subsets>
std::map<std::uint64_t, double> empirical_law(const Subsets& draws) {
  std::map<std::uint64_t, double> freq;
  for (const auto& s : draws) {
    std::uint64_t mask = 0;
    for (auto i : s) mask |= std::uint64_t{1} << i;
    freq[mask] += 1.0;
  }
  for (auto& [mask, f] : freq) f /= static_cast<double>(draws.size());
  return freq;
}

inline double total_variation(const std::map<std::uint64_t, double>& p,
                              const std::map<std::uint64_t, double>& q) {
  double tv = 0.0;
  for (const auto& [mask, pm] : p) {
    const auto it = q.find(mask);
    tv += std::abs(pm - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [mask, qm] : q) {
    if (!p.count(mask)) tv += qm;
  }
  return 0.5 * tv;
}

}  // namespace dppens::testing

#endif  // DPPENS_TESTS_TEST_ORACLES_HPP
