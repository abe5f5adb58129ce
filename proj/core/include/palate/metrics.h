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


#ifndef PALATE_METRICS_H_
#define PALATE_METRICS_H_

#include <cstddef>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "palate/embedding.h"
#include "palate/kernel.h"

namespace palate {

inline constexpr double kDefaultAlpha = 0.5;

// Every score of one evaluation. The five kernel means are the only kernel
// work; all other fields derive from them.
struct MetricReport {
  double kbar_test_test = 0.0;
  double kbar_train_train = 0.0;
  double kbar_gen_gen = 0.0;
  double kbar_test_gen = 0.0;
  double kbar_train_gen = 0.0;
  double mmd2_test_gen = 0.0;
  double mmd2_train_gen = 0.0;
  double scale_score = 0.0;
  double palate_score = 0.0;
  double m_palate_score = 0.0;
  double a = 0.0;
  double alpha = 0.0;
  double sigma = 0.0;
  bool data_copying_relative = false;
  // Both MMD^2 terms were zero; palate_score was set to `a`.
  bool degenerate_denominator = false;
  SampleSizes sample_sizes;
  std::size_t block_size = kDefaultBlockSize;
  Reduction reduction = Reduction::kPairwise;
  // Nearest-train-distance pair fraction; filled only on request since it
  // costs a brute-force scan of the train set.
  std::optional<double> data_copying_indicator;
};

// Formula layer, shared by the single-metric entry points and ComputeReport
// so both produce identical bits.
double Mmd2FromMeans(double kbar_xx, double kbar_yy, double kbar_xy);
double ScaleFromMeans(double kbar_xx, double kbar_yy, double kbar_xy);

struct PalateValue {
  double value = 0.0;
  bool degenerate = false;
};
// a * t / (a * t + (1 - a) * r) for t = MMD^2(test, gen), r = MMD^2(train,
// gen). Returns {a, true} when t and r are both zero.
PalateValue PalateFromMmd2(double mmd2_test_gen, double mmd2_train_gen,
                           double a);
double MPalateFromScores(double scale, double palate, double alpha);

// Squared MMD V-statistic, clamped at zero.
double Mmd2(const EmbeddingMatrix& a, const EmbeddingMatrix& b,
            const KernelConfig& config);

// MMD^2 divided by the sum of the two self-kernel means; lies in [0, 1].
double Scale(const EmbeddingMatrix& a, const EmbeddingMatrix& b,
             const KernelConfig& config);

// n / (m + n): the probability mass of the test part of the data manifold,
// estimated from the sample sizes.
double TestFraction(std::size_t m, std::size_t n);

// Throws InvalidArgumentError unless 0 < a < 1.
void ValidateTestFraction(double a);
// Throws InvalidArgumentError unless 0 <= alpha < 1.
void ValidateAlpha(double alpha);

// `a` defaults to TestFraction(m, n).
double Palate(const EvalTriple& triple, const KernelConfig& config,
              std::optional<double> a = std::nullopt);

double MPalate(const EvalTriple& triple, const KernelConfig& config,
               std::optional<double> a = std::nullopt,
               double alpha = kDefaultAlpha);

// Data-copying relative to the test set: strictly palate > a.
bool IsDataCopyingRelative(double palate_score, double a);

// With d(v) the smallest squared Euclidean distance from v to any train row,
// the fraction of (generated, test) pairs with d(gen) < d(test).
double DataCopyingIndicator(const EvalTriple& triple, int threads = 0);
// The indicator exceeds 1/2.
bool IsDataCopying(double indicator);

struct ReportOptions {
  double alpha = kDefaultAlpha;
  std::optional<double> a;
  bool with_data_copying_indicator = false;
};

MetricReport ComputeReport(const EvalTriple& triple, const KernelConfig& config,
                           const ReportOptions& options = {});

// Flat snake_case object; adds "degenerate_denominator" and "tool_version".
nlohmann::json ReportToJson(const MetricReport& report);
// Two-column "field,value" listing of the same keys.
std::string ReportToCsv(const MetricReport& report);

}  // namespace palate

#endif  // PALATE_METRICS_H_
