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

#include "dppens/oracle.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "dppens/errors.hpp"
#include "dppens/regressors.hpp"
#include "test_oracles.hpp"

namespace dppens {
namespace {

using testing::bits;

GramMatrix two_by_two() {
  Eigen::MatrixXd m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  return GramMatrix::from_matrix(m);
}

/// E[C K_CC^{-1} C^T] under the kDPP, by brute force in test code.
Eigen::MatrixXd brute_kdpp_expectation(const Eigen::MatrixXd& k, int size) {
  const auto n = k.rows();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [mask, p] : testing::kdpp_law(k, size)) {
    const auto idx = bits(mask);
    acc(idx, idx) += p * k(idx, idx).inverse();
  }
  return acc;
}

TEST(ExpectDppTest, TwoByTwoByHand) {
  const IdentityReport r = expect_dpp_exhaustive(two_by_two(), 1.0);
  Eigen::MatrixXd want(2, 2);
  want << 3.0, -1.0, -1.0, 3.0;
  want /= 8.0;
  EXPECT_LE((r.lhs - want).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((r.rhs - want).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(r.probability_mass, 1.0, 1e-12);
  EXPECT_EQ(r.method, OracleMethod::kExhaustive);
}

TEST(ExpectDppTest, ScaledIdentity) {
  const double c = 3.0, alpha = 0.5;
  const IdentityReport r =
      expect_dpp_exhaustive(GramMatrix::from_matrix(c * Eigen::MatrixXd::Identity(5, 5)), alpha);
  EXPECT_TRUE(r.lhs.isApprox(Eigen::MatrixXd::Identity(5, 5) / (c + alpha), 1e-12));
}

TEST(ExpectDppTest, RandomGridAllSeeds) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    for (Index n : {1, 3, 5, 8}) {
      const GramMatrix k = random_spd(n, rng);
      for (double alpha : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        const IdentityReport r = expect_dpp_exhaustive(k, alpha);
        EXPECT_LE(r.rel_error, 1e-9) << "seed=" << seed << " n=" << n << " alpha=" << alpha;
        EXPECT_NEAR(r.probability_mass, 1.0, 1e-10);
        const Eigen::MatrixXd direct =
            (k.matrix() + alpha * Eigen::MatrixXd::Identity(n, n)).inverse();
        EXPECT_LE((r.rhs - direct).norm() / direct.norm(), 1e-12);
      }
    }
  }
}

TEST(ExpectDppTest, ThreadCountDoesNotChangeResult) {
  Rng rng(3);
  const GramMatrix k = random_spd(10, rng);
  const IdentityReport a = expect_dpp_exhaustive(k, 0.7, 1);
  const IdentityReport b = expect_dpp_exhaustive(k, 0.7, 4);
  EXPECT_TRUE(a.lhs == b.lhs);
  EXPECT_EQ(a.probability_mass, b.probability_mass);
}

TEST(ExpectDppTest, RejectsLargeN) {
  Rng rng(4);
  EXPECT_THROW(expect_dpp_exhaustive(random_spd(kMaxDppEnumeration + 1, rng), 1.0),
               InvalidArgument);
}

TEST(ExpectKdppTest, FullSizeGivesInverse) {
  Rng rng(5);
  const GramMatrix k = random_spd(6, rng);
  const IdentityReport r = expect_kdpp_exhaustive(k, 6);
  const Eigen::MatrixXd inv = k.matrix().inverse();
  EXPECT_LE((r.lhs - inv).norm() / inv.norm(), 1e-10);
  EXPECT_LE((r.rhs - inv).norm() / inv.norm(), 1e-10);
}

TEST(ExpectKdppTest, SmallAndMediumInstances) {
  Rng rng(6);
  const GramMatrix k3 = random_spd(3, rng);
  EXPECT_LE(expect_kdpp_exhaustive(k3, 2).rel_error, 1e-9);
  const GramMatrix k10 = random_spd(10, rng);
  const IdentityReport r = expect_kdpp_exhaustive(k10, 4);
  EXPECT_LE(r.rel_error, 1e-8);
  EXPECT_NEAR(r.probability_mass, 1.0, 1e-10);
  EXPECT_LE((r.lhs - brute_kdpp_expectation(k10.matrix(), 4)).norm() / r.lhs.norm(), 1e-10);
}

TEST(ExpectKdppTest, GridAllSeedsAndDenominatorBound) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(100 + seed);
    for (Index n : {2, 5, 8}) {
      const GramMatrix k = random_spd(n, rng);
      const Spectrum s = eigendecompose(k);
      for (Index size = 1; size <= n; ++size) {
        const IdentityReport r = expect_kdpp_exhaustive(k, size);
        EXPECT_LE(r.rel_error, 1e-8) << "seed=" << seed << " n=" << n << " k=" << size;
        // Denominators are >= lambda, so the expectation is dominated by K^{-1}.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.reconstruct().inverse() - r.rhs);
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-8);
      }
    }
  }
}

TEST(ExpectKdppTest, SpectralFormulaOnDiagonal) {
  // K = diag(1, 2, 3), k = 1: Pr({i}) = lambda_i / 6, so E = diag(1/6 each).
  Eigen::MatrixXd d = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
  const Eigen::MatrixXd e = kdpp_expected_inverse(eigendecompose(GramMatrix::from_matrix(d)), 1);
  EXPECT_TRUE(e.isApprox(Eigen::MatrixXd::Identity(3, 3) / 6.0, 1e-14));
}

TEST(CharpolyTest, MatchesPrincipalMinorSums) {
  Rng rng(7);
  for (Index n : {1, 2, 4, 7}) {
    Eigen::MatrixXd a(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) a(i, j) = rng.normal();
    }
    const Eigen::VectorXd e = charpoly_elem_sym(a);
    ASSERT_EQ(e.size(), n + 1);
    EXPECT_EQ(e(0), 1.0);
    for (int r = 1; r <= n; ++r) {
      const double want = testing::minor_sum(a, r);
      EXPECT_NEAR(e(r), want, 1e-10 * std::max(1.0, std::abs(want))) << "n=" << n << " r=" << r;
    }
  }
}

TEST(BilinearFormTest, ZeroVectorsGiveZero) {
  Rng rng(8);
  const GramMatrix k = random_spd(5, rng);
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(5);
  const Lemma2Report r = lemma2_check(k, 2, z, z);
  EXPECT_EQ(r.enumeration.lhs(0, 0), 0.0);
  EXPECT_NEAR(r.enumeration.rhs(0, 0), 0.0, 1e-14);
}

TEST(BilinearFormTest, BasisVectorsPickMatrixEntries) {
  Rng rng(9);
  const GramMatrix k = random_spd(6, rng);
  const Eigen::MatrixXd spectral = kdpp_expected_inverse(eigendecompose(k), 3);
  for (Index i = 0; i < 6; ++i) {
    for (Index j = 0; j < 6; ++j) {
      const Lemma2Report r = lemma2_check(k, 3, Eigen::VectorXd::Unit(6, i),
                                          Eigen::VectorXd::Unit(6, j));
      EXPECT_NEAR(r.enumeration.rhs(0, 0), spectral(i, j), 1e-9);
    }
  }
}

TEST(BilinearFormTest, RandomVectors) {
  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const GramMatrix k = random_spd(5, rng);
    Eigen::VectorXd u(5), w(5);
    for (Index i = 0; i < 5; ++i) {
      u(i) = rng.normal();
      w(i) = rng.normal();
    }
    const Lemma2Report r = lemma2_check(k, 2, u, w);
    EXPECT_LE(r.enumeration.rel_error, 1e-8);
    EXPECT_LE(r.spectral.rel_error, 1e-8);
    const double brute = u.dot(brute_kdpp_expectation(k.matrix(), 2) * w);
    EXPECT_NEAR(r.enumeration.lhs(0, 0), brute, 1e-10 * std::max(1.0, std::abs(brute)));
  }
}

TEST(PsdGapTest, FullSizeUsesSmallestEigenvalue) {
  Rng rng(11);
  const GramMatrix k = random_spd(6, rng);
  const PsdGapReport r = prop5_bound_check(k, 6);
  EXPECT_NEAR(r.alpha, eigendecompose(k).lambda_min(), 1e-12);
  EXPECT_TRUE(r.passed);
  EXPECT_GE(r.lambda_min_gap, -1e-8);
}

TEST(PsdGapTest, SweepAllSizes) {
  Rng rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const GramMatrix k = random_spd(8, rng, 0.01, 10.0);
    const Eigen::VectorXd lam = eigendecompose(k).eigenvalues();
    for (Index size = 1; size <= 8; ++size) {
      const PsdGapReport r = prop5_bound_check(k, size);
      EXPECT_TRUE(r.passed) << "k=" << size << " gap=" << r.lambda_min_gap;
      EXPECT_NEAR(r.alpha, lam.tail(8 - size + 1).sum(), 1e-12 * lam.sum());
    }
  }
}

TEST(RatioBoundTest, SortedRandomSigma) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(12);
    std::vector<double> sigma(n);
    for (auto& s : sigma) s = std::exp(4.0 * rng.normal());
    std::sort(sigma.rbegin(), sigma.rend());
    for (Index k = 1; k + 1 <= static_cast<Index>(n); ++k) {
      for (Index l = 1; l <= k; ++l) {
        const ScalarBoundReport r = lemma6_check(sigma, k, l);
        EXPECT_TRUE(r.passed) << "n=" << n << " k=" << k << " l=" << l;
        if (l == k) {
          // Independent evaluation by subset enumeration.
          const double ratio = testing::brute_elem_sym(sigma, static_cast<int>(k + 1)) /
                               testing::brute_elem_sym(sigma, static_cast<int>(k));
          EXPECT_NEAR(r.lhs, ratio, 1e-10 * ratio);
        }
      }
    }
  }
}

TEST(RatioBoundTest, RejectsUnsortedInput) {
  const std::vector<double> sigma{1.0, 2.0, 3.0};
  EXPECT_THROW(lemma6_check(sigma, 1, 1), InvalidArgument);
}

TEST(TraceRatioBoundTest, ConstantSpectrumIsTight) {
  const double c = 2.5;
  const std::vector<double> lam(7, c);
  for (Index k = 1; k < 7; ++k) {
    const ScalarBoundReport r = remark_bound_check(lam, k);
    const double want = c * static_cast<double>(7 - k) / static_cast<double>(k);
    EXPECT_NEAR(r.lhs, want, 1e-12 * want);
    EXPECT_NEAR(r.rhs, want, 1e-12 * want);
    EXPECT_TRUE(r.passed);
  }
}

TEST(TraceRatioBoundTest, SecondLargestSize) {
  const std::vector<double> lam{5.0, 3.0, 2.0, 0.5};
  const ScalarBoundReport r = remark_bound_check(lam, 3);
  // lhs = e_3(5,3,2)/e_2(5,3,2) = 30/31; rhs = (1/3) * 2 * (2/5)^2.
  EXPECT_NEAR(r.lhs, 30.0 / 31.0, 1e-14);
  EXPECT_NEAR(r.rhs, 2.0 / 3.0 * 0.16, 1e-14);
  EXPECT_TRUE(r.passed);
}

TEST(TraceRatioBoundTest, RandomSpectraSweep) {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> lam(10);
    for (auto& v : lam) v = std::exp(3.0 * rng.normal());
    std::sort(lam.rbegin(), lam.rend());
    for (Index k = 1; k <= 10; ++k) EXPECT_TRUE(remark_bound_check(lam, k).passed) << k;
  }
}

class ExpectationMcTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Rng rng(15);
    x_.resize(20, 2);
    y_.resize(20);
    for (Index i = 0; i < 20; ++i) {
      x_(i, 0) = rng.normal();
      x_(i, 1) = rng.normal();
      y_(i) = std::sin(x_(i, 0)) + 0.1 * rng.normal();
    }
    k_ = gram(x_, {KernelFamily::kGaussian, 1.0});
    xt_ = x_.topRows(5) + 0.3 * Eigen::MatrixXd::Ones(5, 2);
  }
  Eigen::MatrixXd x_, xt_;
  Eigen::VectorXd y_;
  GramMatrix k_;
};

TEST_F(ExpectationMcTest, DppMeanMatchesKrrWithinFourStandardErrors) {
  const IdentityReport r = expectation_mc(k_, x_, y_, {Scheme::kDpp, 0, 1.0, 42}, 100000, xt_);
  EXPECT_EQ(r.method, OracleMethod::kMonteCarlo);
  EXPECT_EQ(r.draws, 100000U);
  EXPECT_LE(r.max_standardized_deviation(), 4.0);
  const Eigen::VectorXd krr = fit_krr(k_, x_, y_, 1.0).predict(xt_);
  EXPECT_LE((r.rhs.col(0) - krr).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_F(ExpectationMcTest, KdppMeanMatchesSpectralFormula) {
  const IdentityReport r = expectation_mc(k_, x_, y_, {Scheme::kKdpp, 5, 1.0, 43}, 20000, xt_);
  EXPECT_LE(r.max_standardized_deviation(), 4.0);
}

TEST_F(ExpectationMcTest, IdenticalAcrossThreadCounts) {
  const SamplerConfig cfg{Scheme::kDpp, 0, 0.5, 44};
  const IdentityReport a = expectation_mc(k_, x_, y_, cfg, 3000, xt_, 1);
  const IdentityReport b = expectation_mc(k_, x_, y_, cfg, 3000, xt_, 3);
  EXPECT_TRUE(a.lhs == b.lhs);
  EXPECT_TRUE(a.standard_errors == b.standard_errors);
}

TEST_F(ExpectationMcTest, ErrorShrinksWithDraws) {
  const SamplerConfig cfg{Scheme::kDpp, 0, 1.0, 45};
  const IdentityReport small = expectation_mc(k_, x_, y_, cfg, 1000, xt_);
  const IdentityReport large = expectation_mc(k_, x_, y_, cfg, 100000, xt_);
  EXPECT_LT(large.standard_errors.maxCoeff(), small.standard_errors.maxCoeff() / 5.0);
  EXPECT_LT((large.lhs - large.rhs).norm(), (small.lhs - small.rhs).norm());
}

TEST(ExpectationMcSinglePointTest, TwoValuedPredictions) {
  Eigen::MatrixXd x(1, 1);
  x << 0.5;
  Eigen::VectorXd y(1);
  y << 2.0;
  const GramMatrix k = gram(x, {KernelFamily::kGaussian, 1.0});
  Eigen::MatrixXd xt(1, 1);
  xt << 1.5;
  const double alpha = 0.7;
  const std::size_t draws = 5000;
  const IdentityReport r = expectation_mc(k, x, y, {Scheme::kDpp, 0, alpha, 46}, draws, xt);
  // Each draw predicts either 0 or y k(xt, x); the mean is a multiple of that over draws.
  const double full = y(0) * std::exp(-0.5);
  const double hits = r.lhs(0, 0) / full * static_cast<double>(draws);
  EXPECT_NEAR(hits, std::round(hits), 1e-8);
  EXPECT_NEAR(r.rhs(0, 0), full / (1.0 + alpha), 1e-14);
  EXPECT_LE(r.max_standardized_deviation(), 4.0);
}

TEST(ExpectationMcArgsTest, RejectsUniformScheme) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(4, 1);
  const GramMatrix k = gram(x, {});
  EXPECT_THROW(expectation_mc(k, x, Eigen::VectorXd::Ones(4), {Scheme::kUniform, 2, 1.0, 0}, 10, x),
               InvalidArgument);
}

TEST(IdentityReportTest, RelativeErrorDefinition) {
  Eigen::MatrixXd a(1, 2), b(1, 2);
  a << 1.0, 2.0;
  b << 1.0, 2.5;
  const IdentityReport r = make_report(a, b);
  EXPECT_NEAR(r.abs_error, 0.5, 1e-15);
  EXPECT_NEAR(r.rel_error, 0.5 / b.norm(), 1e-15);
  const IdentityReport z = make_report(Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Zero(1, 1));
  EXPECT_EQ(z.rel_error, 0.0);
}

}  // namespace
}  // namespace dppens
