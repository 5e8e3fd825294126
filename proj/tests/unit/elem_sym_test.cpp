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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dppens/errors.hpp"
#include "dppens/random.hpp"
#include "test_oracles.hpp"

namespace dppens {
namespace {

using testing::brute_elem_sym;

std::vector<double> without(std::vector<double> v, std::size_t i) {
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
  return v;
}

std::vector<double> random_spectrum(Rng& rng, std::size_t n, double log_span) {
  std::vector<double> v(n);
  for (auto& x : v) x = std::exp(log_span * (rng.uniform() - 0.5));
  return v;
}

TEST(ScaledRealTest, ArithmeticMatchesDoubles) {
  const ScaledReal a(6.0), b(1.5);
  EXPECT_EQ((a + b).to_double(), 7.5);
  EXPECT_EQ((a - b).to_double(), 4.5);
  EXPECT_EQ((b - a).to_double(), 0.0);
  EXPECT_EQ((a * b).to_double(), 9.0);
  EXPECT_EQ((a / b).to_double(), 4.0);
  EXPECT_EQ(ratio(b, a), 0.25);
  EXPECT_NEAR(a.log(), std::log(6.0), 1e-15);
  EXPECT_TRUE(ScaledReal().is_zero());
  EXPECT_THROW(ScaledReal(-1.0), InvalidArgument);
  EXPECT_THROW(a / ScaledReal(), NumericalError);
}

TEST(ScaledRealTest, RangeBeyondDouble) {
  ScaledReal x = ScaledReal::one();
  for (int i = 0; i < 100; ++i) x = x * ScaledReal(1e-100);
  EXPECT_EQ(x.to_double(), 0.0);
  EXPECT_NEAR(x.log(), -10000.0 * std::log(10.0), 1e-8);
  ScaledReal y = ScaledReal::one();
  for (int i = 0; i < 99; ++i) y = y * ScaledReal(1e-100);
  EXPECT_NEAR(ratio(x, y), 1e-100, 1e-114);
}

TEST(ElemSymTest, SmallExamples) {
  const ElemSymTable t = elem_sym(std::vector<double>{2.0, 1.0});
  EXPECT_EQ(t.e(0), 1.0);
  EXPECT_EQ(t.e(1), 3.0);
  EXPECT_EQ(t.e(2), 2.0);
  EXPECT_EQ(elem_sym(std::vector<double>{1.0, 2.0, 3.0}).e(2), 11.0);
}

TEST(ElemSymTest, PrefixRowsAndZeroAboveDiagonal) {
  const ElemSymTable t = elem_sym(std::vector<double>{1.0, 2.0, 3.0});
  EXPECT_EQ(t.at(0, 0), 1.0);
  EXPECT_EQ(t.at(1, 1), 1.0);
  EXPECT_EQ(t.at(2, 2), 2.0);
  EXPECT_EQ(t.at(2, 3), 0.0);
  EXPECT_EQ(t.at(3, 3), 6.0);
}

TEST(ElemSymTest, MatchesSubsetEnumeration) {
  Rng rng(3);
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto lam = random_spectrum(rng, n, 6.0);
    const ElemSymTable t = elem_sym(lam);
    for (int r = 0; r <= static_cast<int>(n); ++r) {
      const double want = brute_elem_sym(lam, r);
      EXPECT_NEAR(t.e(r), want, 1e-12 * want) << "n=" << n << " r=" << r;
    }
  }
}

TEST(ElemSymTest, TruncatedDegree) {
  const ElemSymTable t = elem_sym(std::vector<double>{1.0, 2.0, 3.0, 4.0}, 2);
  EXPECT_EQ(t.max_degree(), 2);
  EXPECT_EQ(t.e(2), 35.0);
  EXPECT_THROW(t.e(3), InvalidArgument);
}

TEST(ElemSymTest, NewtonIdentities) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto lam = random_spectrum(rng, 1 + rng.below(200), 10.0);
    double p1 = 0.0, p2 = 0.0;
    for (double v : lam) {
      p1 += v;
      p2 += v * v;
    }
    const ElemSymTable t = elem_sym(lam, 2);
    EXPECT_NEAR(t.e(1), p1, 1e-8 * p1);
    if (lam.size() >= 2) {
      const double e2 = (p1 * p1 - p2) / 2.0;
      EXPECT_NEAR(t.e(2), e2, 1e-8 * e2);
    }
  }
}

TEST(ElemSymTest, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(elem_sym(std::vector<double>{1.0, -0.5}), InvalidArgument);
  EXPECT_THROW(elem_sym(std::vector<double>{NAN}), InvalidArgument);
}

TEST(ElemSymTest, LargeKernelLikeSpectrumKeepsRange) {
  // Exponentially decaying spectrum of length 2000: e_n is far below the
  // double range but must still be positive and finite in log space.
  std::vector<double> lam(2000);
  for (std::size_t i = 0; i < lam.size(); ++i) lam[i] = 100.0 * std::exp(-0.01 * i);
  const ElemSymTable t = elem_sym(lam);
  double log_prod = 0.0;
  for (double v : lam) log_prod += std::log(v);
  EXPECT_NEAR(t.e_scaled(2000).log(), log_prod, 1e-9 * std::abs(log_prod));
  for (Eigen::Index r = 0; r <= 2000; ++r) {
    ASSERT_FALSE(t.e_scaled(r).is_zero()) << r;
    ASSERT_TRUE(std::isfinite(t.e_scaled(r).log())) << r;
  }
}

TEST(ElemSymLooTest, Examples) {
  const ElemSymTable t = elem_sym(std::vector<double>{1.0, 2.0, 3.0});
  EXPECT_NEAR(elem_sym_loo(t, 2, 2), 2.0, 1e-14);
  EXPECT_NEAR(elem_sym_loo(t, 0, 1), 5.0, 1e-14);
  for (Eigen::Index l = 0; l < 3; ++l) EXPECT_EQ(elem_sym_loo(t, l, 0), 1.0);
}

TEST(ElemSymLooTest, RangeErrors) {
  const ElemSymTable t = elem_sym(std::vector<double>{1.0, 2.0, 3.0});
  EXPECT_THROW(elem_sym_loo(t, 0, 3), InvalidArgument);
  EXPECT_THROW(elem_sym_loo(t, 0, -1), InvalidArgument);
  EXPECT_THROW(elem_sym_loo(t, 3, 0), InvalidArgument);
}

TEST(ElemSymLooTest, MatchesEnumerationOfReducedVector) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(9);
    const auto lam = random_spectrum(rng, n, 12.0);
    const ElemSymTable t = elem_sym(lam);
    for (std::size_t l = 0; l < n; ++l) {
      const auto reduced = without(lam, l);
      for (int r = 0; r < static_cast<int>(n); ++r) {
        const double want = brute_elem_sym(reduced, r);
        EXPECT_NEAR(elem_sym_loo(t, static_cast<Eigen::Index>(l), r), want, 1e-8 * want);
      }
    }
  }
}

TEST(ElemSymLooTest, RecurrenceConsistency) {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto lam = random_spectrum(rng, 2 + rng.below(60), 20.0);
    const auto n = static_cast<Eigen::Index>(lam.size());
    const ElemSymTable t = elem_sym(lam);
    for (Eigen::Index l = 0; l < n; ++l) {
      const auto loo = t.leave_one_out(l, n - 1);
      for (Eigen::Index r = 1; r < n; ++r) {
        const ScaledReal rebuilt =
            loo[static_cast<std::size_t>(r - 1)] * lam[static_cast<std::size_t>(l)] +
            loo[static_cast<std::size_t>(r)];
        EXPECT_NEAR(ratio(rebuilt, t.e_scaled(r)), 1.0, 1e-8) << "l=" << l << " r=" << r;
      }
    }
  }
}

TEST(ElemSymLooTest, DominantEntryTakesRebuildPath) {
  // Removing a huge entry: e_1(lam) is almost entirely lam_0, so the
  // downward recurrence would cancel catastrophically.
  const std::vector<double> lam{1e12, 1.0, 2.0, 3.0};
  const ElemSymTable t = elem_sym(lam);
  EXPECT_TRUE(t.loo_needs_rebuild(0, 2));
  EXPECT_FALSE(t.loo_needs_rebuild(1, 1));
  EXPECT_NEAR(elem_sym_loo(t, 0, 1), 6.0, 1e-14);
  EXPECT_NEAR(elem_sym_loo(t, 0, 2), 11.0, 1e-14);
  EXPECT_NEAR(elem_sym_loo(t, 0, 3), 6.0, 1e-14);
}

TEST(ElemSymLooTest, ZeroEntries) {
  const std::vector<double> lam{0.0, 2.0, 0.0};
  const ElemSymTable t = elem_sym(lam);
  EXPECT_EQ(t.e(2), 0.0);
  EXPECT_EQ(elem_sym_loo(t, 1, 1), 0.0);
  EXPECT_EQ(elem_sym_loo(t, 0, 1), 2.0);
  EXPECT_EQ(elem_sym_loo(t, 0, 2), 0.0);
}

}  // namespace
}  // namespace dppens
