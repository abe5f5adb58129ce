/* Copyright 2026 The Palate Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/


#include "palate/kernel.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracle/naive.h"
#include "palate/errors.h"
#include "test_util.h"

namespace palate {
namespace {

using testing::FromRows;
using testing::GaussianMatrix;
using testing::ToDense;

constexpr double kExp0125 = 0.8824969025845955;  // exp(-25 / 200)

KernelConfig Config(double sigma, std::size_t block = kDefaultBlockSize,
                    Reduction reduction = Reduction::kPairwise) {
  KernelConfig c;
  c.sigma = sigma;
  c.block_size = block;
  c.reduction = reduction;
  return c;
}

double Rel(double a, double b) {
  return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
}

TEST(RbfTest, ScalarValues) {
  const std::vector<double> origin = {0, 0}, p = {3, 4}, e1 = {1, 0};
  EXPECT_EQ(Rbf(p, p, 0.3), 1.0);
  EXPECT_EQ(Rbf(origin, origin, 10.0), 1.0);
  EXPECT_NEAR(Rbf(origin, p, 10.0), kExp0125, 1e-15);
  EXPECT_NEAR(Rbf(e1, origin, 1.0), 0.6065306597126334, 1e-15);
  EXPECT_LT(Rbf(e1, origin, 1.0), 1.0);
}

TEST(RbfTest, Errors) {
  const std::vector<double> a = {1, 2}, b = {1, 2, 3};
  EXPECT_THROW(Rbf(a, b, 1.0), DataError);
  EXPECT_THROW(Rbf(a, a, 0.0), InvalidArgumentError);
}

TEST(KernelConfigTest, Validation) {
  EXPECT_THROW(Config(0.0).Validate(), InvalidArgumentError);
  EXPECT_THROW(Config(-1.0).Validate(), InvalidArgumentError);
  EXPECT_THROW(Config(std::nan("")).Validate(), InvalidArgumentError);
  EXPECT_THROW(Config(1.0, 0).Validate(), InvalidArgumentError);
  EXPECT_NO_THROW(Config(1.0, 1).Validate());
  EXPECT_EQ(KernelConfig{}.sigma, 10.0);
  EXPECT_EQ(KernelConfig{}.block_size, 1000u);
  EXPECT_EQ(KernelConfig{}.reduction, Reduction::kPairwise);
}

TEST(MeanCrossKernelTest, HandExamples) {
  const EmbeddingMatrix single = FromRows({{2.5, -1.0}});
  EXPECT_EQ(MeanCrossKernel(single, single, Config(1.0)), 1.0);

  const EmbeddingMatrix a = FromRows({{0, 0}});
  const EmbeddingMatrix b = FromRows({{3, 4}});
  EXPECT_NEAR(MeanCrossKernel(a, b, Config(10.0)), kExp0125, 1e-15);
}

TEST(MeanCrossKernelTest, DimensionMismatch) {
  EXPECT_THROW(MeanCrossKernel(GaussianMatrix(3, 2, 1), GaussianMatrix(3, 3, 2),
                               Config(1.0)),
               DataError);
}

TEST(SelfKernelMeanTest, HandExamples) {
  EXPECT_EQ(SelfKernelMean(FromRows({{7.0, 1.0, -2.0}}), Config(0.5)), 1.0);
  EXPECT_EQ(SelfKernelMean(FromRows({{1.0, 1.0}, {1.0, 1.0}}), Config(0.5)), 1.0);
  // (1 + 1 + 2 exp(-0.125)) / 4
  EXPECT_NEAR(SelfKernelMean(FromRows({{0, 0}, {3, 4}}), Config(10.0)),
              0.9412484512922977, 1e-15);
}

TEST(SelfKernelMeanTest, EqualsCrossOfSameMatrix) {
  const EmbeddingMatrix a = GaussianMatrix(301, 9, 5);
  for (std::size_t block : {1, 64, 1000}) {
    EXPECT_EQ(SelfKernelMean(a, Config(2.0, block)),
              MeanCrossKernel(a, a, Config(2.0, block)));
  }
}

TEST(SelfKernelMeanTest, FarApartPointsGiveReciprocalSize) {
  // Off-diagonal terms underflow; only the exact diagonal survives.
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 7; ++i) rows.push_back({1000.0 * i, -500.0 * i});
  EXPECT_DOUBLE_EQ(SelfKernelMean(FromRows(rows), Config(1.0)), 1.0 / 7.0);
}

TEST(MeanCrossKernelTest, MatchesNaiveOracleForAllBlockSizes) {
  const EmbeddingMatrix a = GaussianMatrix(500, 32, 11);
  const EmbeddingMatrix b = GaussianMatrix(700, 32, 12, 0.3, 1.1);
  const double sigma = 6.0;
  const long double expected = oracle::KernelMean(ToDense(a), ToDense(b), sigma);
  for (std::size_t block : {1, 7, 1000}) {
    for (auto red : {Reduction::kPairwise, Reduction::kFixedOrder}) {
      const double got = MeanCrossKernel(a, b, Config(sigma, block, red));
      EXPECT_TRUE(oracle::RelClose(expected, got, 1e-10))
          << "block " << block << " got " << got << " expected "
          << static_cast<double>(expected);
    }
  }
}

// ---------------------------------------------------------------- properties

TEST(KernelProperty, SymmetryBoundsAndBlockInvariance) {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<std::size_t> rows(1, 120), cols(1, 12);
  std::uniform_real_distribution<double> log_sigma(-1, 1.3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = cols(gen);
    const EmbeddingMatrix a = GaussianMatrix(rows(gen), d, gen());
    const EmbeddingMatrix b = GaussianMatrix(rows(gen), d, gen(), 0.5);
    const double sigma = std::pow(10.0, log_sigma(gen));
    const double ab = MeanCrossKernel(a, b, Config(sigma));
    const double ba = MeanCrossKernel(b, a, Config(sigma));
    EXPECT_LE(Rel(ab, ba), 1e-12);
    EXPECT_GT(ab, 0.0);
    EXPECT_LE(ab, 1.0);

    const double self = SelfKernelMean(a, Config(sigma));
    EXPECT_GE(self, 1.0 / static_cast<double>(a.rows()));
    EXPECT_LE(self, 1.0);

    const std::size_t full = std::max(a.rows(), b.rows());
    const double reference = MeanCrossKernel(a, b, Config(sigma, full));
    for (std::size_t block : {std::size_t{1}, std::size_t{3}, std::size_t{17}}) {
      EXPECT_LE(Rel(MeanCrossKernel(a, b, Config(sigma, block)), reference),
                1e-10);
    }
  }
}

TEST(KernelProperty, PermutationInvariance) {
  const EmbeddingMatrix a = GaussianMatrix(400, 16, 3);
  const EmbeddingMatrix b = GaussianMatrix(350, 16, 4);
  std::vector<std::size_t> perm(a.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(5));
  const EmbeddingMatrix shuffled = a.SelectRows(perm);
  for (std::size_t block : {13, 1000}) {
    const double x = MeanCrossKernel(a, b, Config(4.0, block));
    const double y = MeanCrossKernel(shuffled, b, Config(4.0, block));
    EXPECT_LE(Rel(x, y), 1e-9);
    EXPECT_LE(Rel(SelfKernelMean(a, Config(4.0, block)),
                  SelfKernelMean(shuffled, Config(4.0, block))),
              1e-9);
  }
}

TEST(KernelProperty, NondecreasingInBandwidth) {
  const EmbeddingMatrix a = GaussianMatrix(60, 5, 21);
  const EmbeddingMatrix b = GaussianMatrix(80, 5, 22, 1.0);
  double prev = 0.0;
  for (double sigma = 0.05; sigma < 200.0; sigma *= 1.3) {
    const double v = MeanCrossKernel(a, b, Config(sigma));
    EXPECT_GE(v, prev) << "sigma " << sigma;
    prev = v;
  }
}

TEST(KernelProperty, TranslationInvariance) {
  const EmbeddingMatrix a = GaussianMatrix(90, 3, 31);
  const EmbeddingMatrix b = GaussianMatrix(70, 3, 32);
  std::vector<double> shifted_a(a.data().begin(), a.data().end());
  std::vector<double> shifted_b(b.data().begin(), b.data().end());
  for (std::size_t i = 0; i < shifted_a.size(); ++i) shifted_a[i] += 50.0 + i % 3;
  for (std::size_t i = 0; i < shifted_b.size(); ++i) shifted_b[i] += 50.0 + i % 3;
  const double x = MeanCrossKernel(a, b, Config(1.5));
  const double y = MeanCrossKernel(EmbeddingMatrix(90, 3, shifted_a),
                                   EmbeddingMatrix(70, 3, shifted_b), Config(1.5));
  EXPECT_LE(Rel(x, y), 1e-12);
}

TEST(KernelDeterminism, ThreadCountDoesNotChangeBits) {
  const EmbeddingMatrix a = GaussianMatrix(900, 8, 41);
  const EmbeddingMatrix b = GaussianMatrix(1100, 8, 42);
  for (auto red : {Reduction::kPairwise, Reduction::kFixedOrder}) {
    KernelConfig one = Config(3.0, 100, red);
    one.threads = 1;
    KernelConfig many = one;
    many.threads = 4;
    const double x = MeanCrossKernel(a, b, one);
    EXPECT_EQ(x, MeanCrossKernel(a, b, many));
    EXPECT_EQ(x, MeanCrossKernel(a, b, one));
  }
}

}  // namespace
}  // namespace palate
