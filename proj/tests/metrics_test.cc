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


#include "palate/metrics.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracle/naive.h"
#include "palate/errors.h"
#include "test_util.h"

namespace palate {
namespace {

using testing::Copy;
using testing::FromRows;
using testing::GaussianMatrix;
using testing::ToDense;

KernelConfig Sigma(double sigma) {
  KernelConfig c;
  c.sigma = sigma;
  return c;
}

TEST(FormulaTest, Mmd2AndScaleHandExample) {
  const EmbeddingMatrix a = FromRows({{0, 0}});
  const EmbeddingMatrix b = FromRows({{3, 4}});
  EXPECT_NEAR(Mmd2(a, b, Sigma(10)), 0.2350061948308091, 1e-15);
  EXPECT_NEAR(Scale(a, b, Sigma(10)), 0.11750309741540454, 1e-15);
  EXPECT_EQ(Mmd2(a, a, Sigma(10)), 0.0);
  EXPECT_EQ(Scale(a, a, Sigma(10)), 0.0);
}

TEST(FormulaTest, Mmd2FromMeansClampsRoundoff) {
  EXPECT_EQ(Mmd2FromMeans(0.5, 0.5, 0.5 + 1e-17), 0.0);
  EXPECT_EQ(Mmd2FromMeans(0.5, 0.3, 0.6), 0.0);
  EXPECT_DOUBLE_EQ(Mmd2FromMeans(1.0, 0.5, 0.25), 1.0);
}

TEST(FormulaTest, PalateFromMmd2) {
  EXPECT_DOUBLE_EQ(PalateFromMmd2(0.3, 0.3, 0.5).value, 0.5);
  EXPECT_DOUBLE_EQ(PalateFromMmd2(0.3, 0.0, 0.5).value, 1.0);
  EXPECT_DOUBLE_EQ(PalateFromMmd2(0.0, 0.3, 0.5).value, 0.0);
  // a = 0.1 with equal discrepancies reproduces the weighting.
  EXPECT_DOUBLE_EQ(PalateFromMmd2(0.2, 0.2, 0.1).value, 0.1);
  const PalateValue degenerate = PalateFromMmd2(0.0, 0.0, 0.25);
  EXPECT_TRUE(degenerate.degenerate);
  EXPECT_EQ(degenerate.value, 0.25);
  EXPECT_FALSE(PalateFromMmd2(0.1, 0.0, 0.25).degenerate);
}

TEST(FormulaTest, MPalateAlphaZeroIsPalate) {
  EXPECT_EQ(MPalateFromScores(0.123, 0.789, 0.0), 0.789);
  EXPECT_DOUBLE_EQ(MPalateFromScores(0.2, 0.6, 0.5), 0.4);
}

TEST(TestFractionTest, Values) {
  EXPECT_DOUBLE_EQ(TestFraction(9000, 1000), 0.1);
  EXPECT_DOUBLE_EQ(TestFraction(1000, 1000), 0.5);
  EXPECT_THROW(TestFraction(0, 5), InvalidArgumentError);
  EXPECT_THROW(TestFraction(5, 0), InvalidArgumentError);
}

TEST(ValidationTest, RangeChecks) {
  EXPECT_THROW(ValidateTestFraction(0.0), InvalidArgumentError);
  EXPECT_THROW(ValidateTestFraction(1.0), InvalidArgumentError);
  EXPECT_THROW(ValidateTestFraction(std::nan("")), InvalidArgumentError);
  EXPECT_NO_THROW(ValidateTestFraction(0.3));
  EXPECT_NO_THROW(ValidateAlpha(0.0));
  EXPECT_THROW(ValidateAlpha(1.0), InvalidArgumentError);
  EXPECT_THROW(ValidateAlpha(-0.1), InvalidArgumentError);
}

TEST(PredicateTest, RelativeCopyingIsStrict) {
  EXPECT_TRUE(IsDataCopyingRelative(0.51, 0.5));
  EXPECT_FALSE(IsDataCopyingRelative(0.5, 0.5));
  EXPECT_FALSE(IsDataCopyingRelative(0.4999, 0.5));
  EXPECT_TRUE(IsDataCopying(0.51));
  EXPECT_FALSE(IsDataCopying(0.5));
}

class TripleTest : public ::testing::Test {
 protected:
  EvalTriple Make(const EmbeddingMatrix& train, const EmbeddingMatrix& test,
                  const EmbeddingMatrix& gen) {
    return ValidateTriple(train, test, gen);
  }
};

TEST_F(TripleTest, CopycatAndTestCopy) {
  const EmbeddingMatrix train = GaussianMatrix(150, 4, 1);
  const EmbeddingMatrix test = GaussianMatrix(150, 4, 2);

  const MetricReport copycat =
      ComputeReport(Make(train, test, Copy(train)), Sigma(1.0));
  EXPECT_GE(copycat.palate_score, 1.0 - 1e-6);
  EXPECT_TRUE(copycat.data_copying_relative);

  const MetricReport test_copy =
      ComputeReport(Make(train, test, Copy(test)), Sigma(1.0));
  EXPECT_LE(test_copy.palate_score, 1e-6);
  EXPECT_FALSE(test_copy.data_copying_relative);
}

TEST_F(TripleTest, SymmetricRolesGiveOneHalf) {
  // Train and test are mirror images about the generated set's center.
  const EmbeddingMatrix train = FromRows({{1, 0}, {2, 1}});
  const EmbeddingMatrix test = FromRows({{-1, 0}, {-2, -1}});
  const EmbeddingMatrix gen = FromRows({{0, 0}});
  const MetricReport r = ComputeReport(Make(train, test, gen), Sigma(1.0));
  EXPECT_NEAR(r.palate_score, 0.5, 1e-12);
  EXPECT_FALSE(r.degenerate_denominator);
}

TEST_F(TripleTest, DegenerateDenominatorFallsBackToA) {
  const EmbeddingMatrix p = FromRows({{1.0, 2.0}});
  const MetricReport r =
      ComputeReport(Make(Copy(p), FromRows({{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}}),
                         Copy(p)),
                    Sigma(1.0));
  EXPECT_TRUE(r.degenerate_denominator);
  EXPECT_DOUBLE_EQ(r.a, 0.75);
  EXPECT_EQ(r.palate_score, r.a);
  EXPECT_FALSE(r.data_copying_relative);
}

TEST_F(TripleTest, MatchesNaiveOracle) {
  const EmbeddingMatrix train = GaussianMatrix(200, 2, 42);
  const EmbeddingMatrix test = GaussianMatrix(200, 2, 43, 0.2);
  const EmbeddingMatrix gen = GaussianMatrix(200, 2, 44, 0.0, 1.3);
  const MetricReport r = ComputeReport(Make(train, test, gen), Sigma(1.0));
  const oracle::Scores s =
      oracle::Evaluate(ToDense(train), ToDense(test), ToDense(gen), 1.0, 0.5);
  const std::pair<long double, double> fields[] = {
      {s.k_test_test, r.kbar_test_test},   {s.k_train_train, r.kbar_train_train},
      {s.k_gen_gen, r.kbar_gen_gen},       {s.k_test_gen, r.kbar_test_gen},
      {s.k_train_gen, r.kbar_train_gen},   {s.mmd2_test_gen, r.mmd2_test_gen},
      {s.mmd2_train_gen, r.mmd2_train_gen}, {s.scale, r.scale_score},
      {s.palate, r.palate_score},          {s.m_palate, r.m_palate_score},
      {s.a, r.a}};
  for (const auto& [expected, got] : fields) {
    EXPECT_TRUE(oracle::RelClose(expected, got, 1e-10))
        << static_cast<double>(expected) << " vs " << got;
  }
}

TEST_F(TripleTest, AOverrideAndAlphaZero) {
  const EmbeddingMatrix train = GaussianMatrix(90, 3, 5);
  const EmbeddingMatrix test = GaussianMatrix(10, 3, 6);
  const EmbeddingMatrix gen = GaussianMatrix(40, 3, 7, 0.5);
  const EvalTriple t = Make(train, test, gen);
  EXPECT_DOUBLE_EQ(ComputeReport(t, Sigma(2.0)).a, 0.1);

  ReportOptions opts;
  opts.a = 0.5;
  opts.alpha = 0.0;
  const MetricReport r = ComputeReport(t, Sigma(2.0), opts);
  EXPECT_EQ(r.a, 0.5);
  EXPECT_EQ(r.m_palate_score, r.palate_score);
  EXPECT_EQ(Palate(t, Sigma(2.0), 0.5), r.palate_score);
  EXPECT_EQ(MPalate(t, Sigma(2.0), 0.5, 0.0), r.palate_score);

  opts.a = 1.0;
  EXPECT_THROW(ComputeReport(t, Sigma(2.0), opts), InvalidArgumentError);
  EXPECT_THROW(MPalate(t, Sigma(2.0), std::nullopt, 1.0), InvalidArgumentError);
}

TEST_F(TripleTest, ReportInternalIdentitiesAreExact) {
  const EmbeddingMatrix train = GaussianMatrix(120, 6, 8);
  const EmbeddingMatrix test = GaussianMatrix(80, 6, 9);
  const EmbeddingMatrix gen = GaussianMatrix(60, 6, 10, 0.4);
  const EvalTriple t = Make(train, test, gen);
  const MetricReport r = ComputeReport(t, Sigma(3.0));
  EXPECT_EQ(r.mmd2_test_gen,
            Mmd2FromMeans(r.kbar_test_test, r.kbar_gen_gen, r.kbar_test_gen));
  EXPECT_EQ(r.scale_score,
            ScaleFromMeans(r.kbar_test_test, r.kbar_gen_gen, r.kbar_test_gen));
  EXPECT_EQ(r.palate_score, Palate(t, Sigma(3.0)));
  EXPECT_EQ(r.scale_score, Scale(test, gen, Sigma(3.0)));
  EXPECT_EQ(r.m_palate_score, MPalate(t, Sigma(3.0)));
  EXPECT_EQ(r.sample_sizes.m, 120u);
  EXPECT_EQ(r.sample_sizes.n, 80u);
  EXPECT_EQ(r.sample_sizes.k, 60u);
  EXPECT_FALSE(r.data_copying_indicator.has_value());
}

// The pooled kernel mean against the generated set splits into the
// a-weighted test and train means.
TEST(TotalExpectationProperty, PooledMeanIsWeightedSplitMean) {
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<std::size_t> size(1, 60);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = size(gen), n = size(gen), k = size(gen);
    const EmbeddingMatrix train = GaussianMatrix(m, 3, gen());
    const EmbeddingMatrix test = GaussianMatrix(n, 3, gen(), 0.3);
    const EmbeddingMatrix g = GaussianMatrix(k, 3, gen(), -0.2);
    const EmbeddingMatrix pooled = EmbeddingMatrix::VStack(test, train);
    const double a = TestFraction(m, n);
    const double lhs = MeanCrossKernel(pooled, g, Sigma(1.5));
    const double rhs = a * MeanCrossKernel(test, g, Sigma(1.5)) +
                       (1 - a) * MeanCrossKernel(train, g, Sigma(1.5));
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::fabs(lhs));
  }
}

TEST(DataCopyingIndicatorTest, Extremes) {
  const EmbeddingMatrix train = GaussianMatrix(300, 2, 1);
  const EmbeddingMatrix test = GaussianMatrix(300, 2, 2);
  const double copycat =
      DataCopyingIndicator(ValidateTriple(train, test, Copy(train)));
  EXPECT_GE(copycat, 0.95);
  EXPECT_TRUE(IsDataCopying(copycat));

  const double far =
      DataCopyingIndicator(ValidateTriple(train, test, GaussianMatrix(50, 2, 3, 100.0)));
  EXPECT_EQ(far, 0.0);
}

TEST(DataCopyingIndicatorTest, IidIsNearOneHalfAndMatchesOracle) {
  double total = 0.0;
  for (int seed = 0; seed < 10; ++seed) {
    const EmbeddingMatrix train = GaussianMatrix(200, 2, 100 + seed);
    const EmbeddingMatrix test = GaussianMatrix(150, 2, 200 + seed);
    const EmbeddingMatrix g = GaussianMatrix(150, 2, 300 + seed);
    const double v = DataCopyingIndicator(ValidateTriple(train, test, g), 2);
    EXPECT_DOUBLE_EQ(v, oracle::CopyingIndicator(ToDense(train), ToDense(test),
                                                 ToDense(g)));
    total += v;
  }
  EXPECT_NEAR(total / 10, 0.5, 0.05);
}

TEST(ReportJsonTest, KeysAndOptionalIndicator) {
  const EvalTriple t = ValidateTriple(GaussianMatrix(20, 2, 1),
                                      GaussianMatrix(20, 2, 2),
                                      GaussianMatrix(20, 2, 3));
  ReportOptions opts;
  const nlohmann::json plain = ReportToJson(ComputeReport(t, Sigma(10.0), opts));
  for (const char* key :
       {"kbar_test_test", "kbar_train_train", "kbar_gen_gen", "kbar_test_gen",
        "kbar_train_gen", "mmd2_test_gen", "mmd2_train_gen", "scale_score",
        "palate_score", "m_palate_score", "a", "alpha", "sigma",
        "data_copying_relative", "degenerate_denominator", "sample_sizes",
        "block_size", "reduction", "tool_version"}) {
    EXPECT_TRUE(plain.contains(key)) << key;
  }
  EXPECT_EQ(plain["sigma"], 10.0);
  EXPECT_EQ(plain["sample_sizes"], nlohmann::json({20, 20, 20}));
  EXPECT_FALSE(plain.contains("data_copying_indicator"));

  opts.with_data_copying_indicator = true;
  const nlohmann::json with = ReportToJson(ComputeReport(t, Sigma(10.0), opts));
  EXPECT_TRUE(with.contains("data_copying_indicator"));
  EXPECT_TRUE(with["data_copying"].is_boolean());

  const std::string csv = ReportToCsv(ComputeReport(t, Sigma(10.0)));
  EXPECT_EQ(csv.rfind("field,value\n", 0), 0u);
  EXPECT_NE(csv.find("\npalate_score,"), std::string::npos);
}

}  // namespace
}  // namespace palate
