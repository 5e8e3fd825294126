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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "dppens/errors.hpp"

namespace dppens {
namespace {

TEST(GramTest, SinglePointIsOne) {
  Eigen::MatrixXd x(1, 3);
  x << 0.3, -1.2, 4.0;
  const GramMatrix k = gram(x, {KernelFamily::kGaussian, 0.7});
  ASSERT_EQ(k.size(), 1);
  EXPECT_EQ(k(0, 0), 1.0);
}

TEST(GramTest, IdenticalPointsGiveAllOnes) {
  Eigen::MatrixXd x(2, 2);
  x << 1.5, 2.5, 1.5, 2.5;
  for (auto family : {KernelFamily::kGaussian, KernelFamily::kLaplace}) {
    const GramMatrix k = gram(x, {family, 2.0});
    EXPECT_TRUE(k.matrix().isApprox(Eigen::MatrixXd::Ones(2, 2), 0.0));
  }
}

TEST(GramTest, GaussianHandValue) {
  Eigen::MatrixXd x(2, 1);
  x << 0.0, 2.0;
  const GramMatrix k = gram(x, {KernelFamily::kGaussian, std::sqrt(2.0)});
  // exp(-4 / (2 * 2)) = exp(-1)
  EXPECT_NEAR(k(0, 1), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(k(0, 1), 0.3679, 1e-4);
}

TEST(GramTest, LaplaceHandValue) {
  Eigen::MatrixXd x(2, 2);
  x << 0.0, 0.0, 3.0, 4.0;
  const GramMatrix k = gram(x, {KernelFamily::kLaplace, 2.5});
  EXPECT_NEAR(k(1, 0), std::exp(-2.0), 1e-15);
}

TEST(GramTest, ExactlySymmetricUnitDiagonalEntriesInUnitInterval) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(40, 4);
  const GramMatrix k = gram(x, {KernelFamily::kGaussian, 0.8});
  EXPECT_TRUE(k.matrix() == k.matrix().transpose());
  EXPECT_TRUE((k.matrix().diagonal().array() == 1.0).all());
  EXPECT_GT(k.matrix().minCoeff(), 0.0);
  EXPECT_LE(k.matrix().maxCoeff(), 1.0);
  ASSERT_TRUE(k.kernel().has_value());
  EXPECT_EQ(k.kernel()->bandwidth, 0.8);
}

TEST(GramTest, RejectsNonFiniteFeatures) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(3, 2);
  x(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(gram(x, {}), DataError);
  x(1, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(gram(x, {}), DataError);
}

TEST(GramTest, RejectsBadBandwidthAndEmptyInput) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(3, 2);
  EXPECT_THROW(gram(x, {KernelFamily::kGaussian, 0.0}), InvalidArgument);
  EXPECT_THROW(gram(x, {KernelFamily::kGaussian, -1.0}), InvalidArgument);
  EXPECT_THROW(gram(Eigen::MatrixXd(0, 2), {}), InvalidArgument);
}

TEST(GramTest, CrossGramMatchesGram) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(7, 3);
  const KernelSpec spec{KernelFamily::kLaplace, 1.3};
  EXPECT_TRUE(cross_gram(x, x, spec).isApprox(gram(x, spec).matrix(), 1e-15));
}

TEST(GramMatrixTest, FromMatrixRequiresExactSymmetry) {
  Eigen::MatrixXd m(2, 2);
  m << 2.0, 1.0, 1.0 + 1e-15, 2.0;
  EXPECT_THROW(GramMatrix::from_matrix(m), InvalidArgument);
  EXPECT_THROW(GramMatrix::from_matrix(Eigen::MatrixXd::Ones(2, 3)), InvalidArgument);
  m(1, 0) = 1.0;
  EXPECT_NO_THROW(GramMatrix::from_matrix(m));
}

TEST(GramMatrixTest, JitterAddsToDiagonal) {
  const GramMatrix k = GramMatrix::from_matrix(Eigen::MatrixXd::Ones(3, 3)).jittered(0.5);
  EXPECT_EQ(k(0, 0), 1.5);
  EXPECT_EQ(k(0, 1), 1.0);
}

TEST(KernelFamilyTest, ParsesNames) {
  EXPECT_EQ(parse_kernel_family("laplace"), KernelFamily::kLaplace);
  EXPECT_EQ(to_string(parse_kernel_family("gaussian")), "gaussian");
  EXPECT_THROW(parse_kernel_family("rbf"), InvalidArgument);
}

}  // namespace
}  // namespace dppens
