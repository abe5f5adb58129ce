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


#ifndef PALATE_EXPERIMENTS_H_
#define PALATE_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "palate/embedding.h"
#include "palate/experiment_table.h"
#include "palate/kernel.h"
#include "palate/metrics.h"
#include "palate/synth.h"

namespace palate {

// `points` values from lo to hi, evenly spaced in log10.
std::vector<double> LogSpace(double lo, double hi, std::size_t points);
// `points` values from lo to hi, evenly spaced.
std::vector<double> LinSpace(double lo, double hi, std::size_t points);

// Numeric MetricReport fields in a fixed order, used as table columns.
std::vector<std::string> ReportMetricNames();
std::vector<double> ReportMetricValues(const MetricReport& report);

// KDE bandwidth sweep on the Gaussian triangle mixture.
struct SweepConfig {
  SynthConfig synth;
  std::vector<double> bandwidth_grid = LogSpace(1e-4, 1e2, 25);
  std::size_t generated_per_run = 1000;
  std::size_t runs = 100;
  KernelConfig kernel{.sigma = kSyntheticSigma};
  double alpha = kDefaultAlpha;

  void Validate() const;
};

// For every run r (seed synth.seed + r) the mixture is regenerated and split,
// then for every grid bandwidth a generated set is drawn from the KDE built
// on the train half and scored against the test half. The same mixture,
// split and KDE noise stream are reused across bandwidths inside one run.
// Rows hold per-bandwidth means over the runs of m_palate, palate, scale and
// frechet_distance (test vs generated).
ExperimentTable SyntheticSweep(const SweepConfig& config);

// For each fraction f, round(f * k) generated rows are replaced by distinct
// train rows, then the triple is rescored. Replaced generated positions and
// substituted train rows are prefixes of two seeded permutations, so the
// replacement sets are nested as f grows. Throws InvalidArgumentError when
// round(f * k) exceeds the train size or the grid is not increasing in
// [0, 1].
ExperimentTable MixingCurve(const EvalTriple& triple,
                            const std::vector<double>& fractions,
                            const KernelConfig& config, double alpha,
                            std::uint64_t seed);

enum class DiversityMode { kClassCount, kUniquePerClass };

struct LabeledData {
  EmbeddingMatrix points;
  std::vector<int> labels;
};

struct DiversityConfig {
  DiversityMode mode = DiversityMode::kClassCount;
  // Total generated rows per evaluation; 0 means all pooled rows.
  std::size_t budget = 0;
  KernelConfig kernel;
  double alpha = kDefaultAlpha;
  std::uint64_t seed = 0;
};

// Labels must split the pool into C classes of equal size P (classes are
// taken in ascending label order). kClassCount evaluates C' = 1..C using the
// full pools of the first C' classes; kUniquePerClass evaluates every divisor
// N of P (with N * C <= budget) using the first N rows of each class after a
// seeded shuffle. Selected rows are replicated up to exactly `budget` rows:
// each row budget / rows times, and the first budget % rows rows once more.
// m_palate is computed against the fixed train/test references.
ExperimentTable DiversityCurve(const LabeledData& pool,
                               const EmbeddingMatrix& train,
                               const EmbeddingMatrix& test,
                               const DiversityConfig& config);

// Wall-clock scaling of ComputeReport on random N(0, 1) triples with
// m = n = k = size. Rows hold median/min/max seconds and the process peak
// resident set size observed after the size finished.
ExperimentTable BenchScaling(const std::vector<std::size_t>& sizes,
                             std::size_t dim, const KernelConfig& config,
                             std::size_t repeats, std::uint64_t seed = 0);

// Random N(0, 1) matrix from substream `stream` of `seed`.
EmbeddingMatrix RandomGaussianMatrix(std::size_t rows, std::size_t cols,
                                     std::uint64_t seed, std::uint64_t stream);

// Peak resident set size of this process, in bytes.
std::size_t PeakRssBytes();
std::string HardwareDescription();

}  // namespace palate

#endif  // PALATE_EXPERIMENTS_H_
