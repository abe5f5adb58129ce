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


#include "palate/experiments.h"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <thread>

#include "palate/errors.h"
#include "palate/frechet.h"
#include "palate/parallel.h"
#include "palate/random.h"

namespace palate {
namespace {

void RequireIncreasing(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) {
    throw InvalidArgumentError(std::string(what) + " grid is empty");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw InvalidArgumentError(std::string(what) +
                                 " grid must be strictly increasing");
    }
  }
}

nlohmann::json KernelJson(const KernelConfig& k) {
  return {{"sigma", k.sigma},
          {"block_size", k.block_size},
          {"reduction", std::string(ReductionName(k.reduction))}};
}

// Outer parallelism over independent cells; kernel work inside each cell
// then runs single-threaded so the two levels do not oversubscribe.
KernelConfig InnerKernel(const KernelConfig& k, int outer_threads) {
  KernelConfig inner = k;
  if (outer_threads > 1) inner.threads = 1;
  return inner;
}

}  // namespace

std::vector<double> LogSpace(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0 && hi > 0.0) || points == 0) {
    throw InvalidArgumentError("log grid needs positive bounds and points >= 1");
  }
  if (points == 1) return {lo};
  std::vector<double> out(points);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) /
                                    static_cast<double>(points - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> LinSpace(double lo, double hi, std::size_t points) {
  if (points == 0) throw InvalidArgumentError("linear grid needs points >= 1");
  if (points == 1) return {lo};
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) /
                      static_cast<double>(points - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<std::string> ReportMetricNames() {
  return {"kbar_test_test", "kbar_train_train", "kbar_gen_gen",
          "kbar_test_gen",  "kbar_train_gen",   "mmd2_test_gen",
          "mmd2_train_gen", "scale",            "palate",
          "m_palate"};
}

std::vector<double> ReportMetricValues(const MetricReport& r) {
  return {r.kbar_test_test, r.kbar_train_train, r.kbar_gen_gen,
          r.kbar_test_gen,  r.kbar_train_gen,   r.mmd2_test_gen,
          r.mmd2_train_gen, r.scale_score,      r.palate_score,
          r.m_palate_score};
}

void SweepConfig::Validate() const {
  synth.Validate();
  kernel.Validate();
  ValidateAlpha(alpha);
  RequireIncreasing(bandwidth_grid, "bandwidth");
  if (bandwidth_grid.front() <= 0.0) {
    throw InvalidArgumentError("KDE bandwidths must be positive");
  }
  if (runs < 1) throw InvalidArgumentError("runs must be at least 1");
  if (generated_per_run < 1) {
    throw InvalidArgumentError("generated_per_run must be at least 1");
  }
}

ExperimentTable SyntheticSweep(const SweepConfig& config) {
  config.Validate();
  const std::size_t grid = config.bandwidth_grid.size();
  const std::vector<std::string> names = {"m_palate", "palate", "scale",
                                          "frechet_distance"};
  // cells[run][grid point][metric]
  std::vector<std::vector<std::vector<double>>> cells(
      config.runs, std::vector<std::vector<double>>(grid));
  std::vector<std::uint64_t> run_seeds(config.runs);
  SampleSizes sizes;

  const int threads = ResolveThreadCount(config.kernel.threads);
  const KernelConfig kernel = InnerKernel(config.kernel, threads);
  ParallelFor(config.runs, threads, [&](std::size_t run) {
    const std::uint64_t run_seed = config.synth.seed + run;
    run_seeds[run] = run_seed;
    SynthConfig synth = config.synth;
    synth.seed = DeriveSeed(run_seed, 0);
    const EmbeddingMatrix data = SampleTriangleMixture(synth);
    auto [train, test] =
        SplitTrainTest(data, synth.split_ratio, DeriveSeed(run_seed, 1));
    for (std::size_t g = 0; g < grid; ++g) {
      EmbeddingMatrix gen =
          KdeSample(train, config.bandwidth_grid[g], config.generated_per_run,
                    DeriveSeed(run_seed, 2));
      const double fd = FrechetDistance(test, gen);
      const EvalTriple triple = ValidateTriple(train, test, std::move(gen));
      if (run == 0 && g == 0) sizes = triple.sizes();
      ReportOptions options;
      options.alpha = config.alpha;
      const MetricReport r = ComputeReport(triple, kernel, options);
      cells[run][g] = {r.m_palate_score, r.palate_score, r.scale_score, fd};
    }
  });

  ExperimentTable table("synthetic_sweep", "kde_bandwidth", names);
  for (std::size_t g = 0; g < grid; ++g) {
    std::vector<double> mean(names.size(), 0.0);
    for (std::size_t run = 0; run < config.runs; ++run) {
      for (std::size_t m = 0; m < names.size(); ++m) mean[m] += cells[run][g][m];
    }
    for (double& v : mean) v /= static_cast<double>(config.runs);
    table.AddRow(config.bandwidth_grid[g], std::move(mean));
  }

  auto& meta = table.metadata();
  meta["kernel"] = KernelJson(config.kernel);
  meta["alpha"] = config.alpha;
  meta["a"] = TestFraction(sizes.m, sizes.n);
  meta["sample_sizes"] = {sizes.m, sizes.n, sizes.k};
  meta["runs"] = config.runs;
  meta["base_seed"] = config.synth.seed;
  meta["run_seeds"] = run_seeds;
  meta["side"] = config.synth.side;
  meta["total_samples"] = config.synth.total_samples;
  meta["split_ratio"] = config.synth.split_ratio;
  meta["generated_per_run"] = config.generated_per_run;
  meta["kde_source"] = "train";
  meta["frechet_reference"] = "test";
  return table;
}

ExperimentTable MixingCurve(const EvalTriple& triple,
                            const std::vector<double>& fractions,
                            const KernelConfig& config, double alpha,
                            std::uint64_t seed) {
  config.Validate();
  ValidateAlpha(alpha);
  RequireIncreasing(fractions, "mixing fraction");
  if (fractions.front() < 0.0 || fractions.back() > 1.0) {
    throw InvalidArgumentError("mixing fractions must lie in [0, 1]");
  }
  const EmbeddingMatrix& train = triple.train();
  const EmbeddingMatrix& gen = triple.generated();
  const std::size_t k = gen.rows();
  const std::size_t dim = gen.cols();

  std::vector<std::size_t> replaced;
  for (double f : fractions) {
    const auto r =
        static_cast<std::size_t>(std::floor(f * static_cast<double>(k) + 0.5));
    if (r > train.rows()) {
      throw InvalidArgumentError(
          "mixing fraction " + std::to_string(f) + " needs " +
          std::to_string(r) + " train rows but only " +
          std::to_string(train.rows()) + " are available");
    }
    replaced.push_back(r);
  }

  const auto gen_order = Rng::Substream(seed, 0).Permutation(k);
  const auto train_order = Rng::Substream(seed, 1).Permutation(train.rows());

  ExperimentTable table("mixing_curve", "train_fraction", ReportMetricNames());
  ReportOptions options;
  options.alpha = alpha;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    std::vector<double> data(gen.data().begin(), gen.data().end());
    for (std::size_t j = 0; j < replaced[i]; ++j) {
      const auto src = train.row(train_order[j]);
      std::copy(src.begin(), src.end(), data.begin() + gen_order[j] * dim);
    }
    const EvalTriple mixed = ValidateTriple(
        train, triple.test(), EmbeddingMatrix(k, dim, std::move(data)));
    table.AddRow(fractions[i],
                 ReportMetricValues(ComputeReport(mixed, config, options)));
  }

  auto& meta = table.metadata();
  const SampleSizes sizes = triple.sizes();
  meta["kernel"] = KernelJson(config);
  meta["alpha"] = alpha;
  meta["a"] = TestFraction(sizes.m, sizes.n);
  meta["sample_sizes"] = {sizes.m, sizes.n, sizes.k};
  meta["seed"] = seed;
  meta["replaced_rows"] = replaced;
  meta["train_sampling"] = "without_replacement";
  return table;
}

ExperimentTable DiversityCurve(const LabeledData& pool,
                               const EmbeddingMatrix& train,
                               const EmbeddingMatrix& test,
                               const DiversityConfig& config) {
  config.kernel.Validate();
  ValidateAlpha(config.alpha);
  if (pool.labels.size() != pool.points.rows()) {
    throw DataError("diversity pool has " + std::to_string(pool.points.rows()) +
                    " rows but " + std::to_string(pool.labels.size()) +
                    " labels");
  }
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < pool.labels.size(); ++i) {
    by_class[pool.labels[i]].push_back(i);
  }
  const std::size_t classes = by_class.size();
  const std::size_t per_class = by_class.begin()->second.size();
  for (const auto& [label, rows] : by_class) {
    if (rows.size() != per_class) {
      throw DataError("diversity classes must have equal pool sizes; class " +
                      std::to_string(label) + " has " +
                      std::to_string(rows.size()) + " rows, expected " +
                      std::to_string(per_class));
    }
  }
  const std::size_t budget =
      config.budget == 0 ? classes * per_class : config.budget;

  std::vector<std::vector<std::size_t>> class_rows;
  std::vector<int> class_labels;
  std::uint64_t stream = 0;
  for (auto& [label, rows] : by_class) {
    std::vector<std::size_t> ordered = rows;
    if (config.mode == DiversityMode::kUniquePerClass) {
      const auto perm = Rng::Substream(config.seed, stream).Permutation(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) ordered[i] = rows[perm[i]];
    }
    ++stream;
    class_rows.push_back(std::move(ordered));
    class_labels.push_back(label);
  }

  // (parameter, selected pool rows) per evaluation point.
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> points;
  if (config.mode == DiversityMode::kClassCount) {
    if (classes * per_class > budget) {
      throw InvalidArgumentError("budget " + std::to_string(budget) +
                                 " is smaller than the pooled rows (" +
                                 std::to_string(classes * per_class) + ")");
    }
    std::vector<std::size_t> selected;
    for (std::size_t c = 0; c < classes; ++c) {
      selected.insert(selected.end(), class_rows[c].begin(), class_rows[c].end());
      points.emplace_back(c + 1, selected);
    }
  } else {
    for (std::size_t n = 1; n <= per_class; ++n) {
      if (per_class % n != 0 || n * classes > budget) continue;
      std::vector<std::size_t> selected;
      for (const auto& rows : class_rows) {
        selected.insert(selected.end(), rows.begin(), rows.begin() + n);
      }
      points.emplace_back(n, std::move(selected));
    }
    if (points.empty()) {
      throw InvalidArgumentError("budget " + std::to_string(budget) +
                                 " is smaller than the number of classes");
    }
  }

  const std::vector<std::string> names = {"m_palate", "palate", "scale",
                                          "unique_rows", "replication"};
  ExperimentTable table("diversity_curve",
                        config.mode == DiversityMode::kClassCount
                            ? "classes"
                            : "unique_per_class",
                        names);
  nlohmann::json exact = nlohmann::json::array();
  ReportOptions options;
  options.alpha = config.alpha;
  for (const auto& [param, selected] : points) {
    const std::size_t reps = budget / selected.size();
    const std::size_t extra = budget % selected.size();
    std::vector<std::size_t> rows;
    rows.reserve(budget);
    for (std::size_t i = 0; i < selected.size(); ++i) {
      rows.insert(rows.end(), reps + (i < extra ? 1 : 0), selected[i]);
    }
    const EvalTriple triple =
        ValidateTriple(train, test, pool.points.SelectRows(rows));
    const MetricReport r = ComputeReport(triple, config.kernel, options);
    table.AddRow(static_cast<double>(param),
                 {r.m_palate_score, r.palate_score, r.scale_score,
                  static_cast<double>(selected.size()),
                  static_cast<double>(budget) /
                      static_cast<double>(selected.size())});
    exact.push_back(extra == 0);
  }

  auto& meta = table.metadata();
  meta["mode"] = config.mode == DiversityMode::kClassCount ? "classes" : "unique";
  meta["kernel"] = KernelJson(config.kernel);
  meta["alpha"] = config.alpha;
  meta["a"] = TestFraction(train.rows(), test.rows());
  meta["sample_sizes"] = {train.rows(), test.rows(), budget};
  meta["budget"] = budget;
  meta["classes"] = classes;
  meta["class_labels"] = class_labels;
  meta["pool_size_per_class"] = per_class;
  meta["seed"] = config.seed;
  meta["integer_replication"] = exact;
  return table;
}

EmbeddingMatrix RandomGaussianMatrix(std::size_t rows, std::size_t cols,
                                     std::uint64_t seed, std::uint64_t stream) {
  Rng rng = Rng::Substream(seed, stream);
  std::vector<double> data(rows * cols);
  for (double& v : data) v = rng.Normal();
  return EmbeddingMatrix(rows, cols, std::move(data));
}

ExperimentTable BenchScaling(const std::vector<std::size_t>& sizes,
                             std::size_t dim, const KernelConfig& config,
                             std::size_t repeats, std::uint64_t seed) {
  config.Validate();
  if (repeats < 1) throw InvalidArgumentError("repeats must be at least 1");
  if (dim < 1) throw InvalidArgumentError("dim must be at least 1");
  if (sizes.empty()) throw InvalidArgumentError("no benchmark sizes given");

  ExperimentTable table("bench_scaling", "size",
                        {"median_seconds", "min_seconds", "max_seconds",
                         "peak_rss_mb"});
  nlohmann::json timings = nlohmann::json::object();
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    const std::size_t n = sizes[s];
    if (s > 0 && n <= sizes[s - 1]) {
      throw InvalidArgumentError("benchmark sizes must be strictly increasing");
    }
    const EvalTriple triple = ValidateTriple(
        RandomGaussianMatrix(n, dim, seed, 3 * s),
        RandomGaussianMatrix(n, dim, seed, 3 * s + 1),
        RandomGaussianMatrix(n, dim, seed, 3 * s + 2));
    std::vector<double> secs;
    for (std::size_t r = 0; r < repeats; ++r) {
      const auto start = std::chrono::steady_clock::now();
      const MetricReport report = ComputeReport(triple, config);
      const auto stop = std::chrono::steady_clock::now();
      if (!std::isfinite(report.m_palate_score)) {
        throw NumericError("non-finite score in benchmark");
      }
      secs.push_back(std::chrono::duration<double>(stop - start).count());
    }
    timings[std::to_string(n)] = secs;
    std::vector<double> sorted = secs;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    const double median = sorted.size() % 2 == 1
                              ? sorted[mid]
                              : 0.5 * (sorted[mid - 1] + sorted[mid]);
    table.AddRow(static_cast<double>(n),
                 {median, sorted.front(), sorted.back(),
                  static_cast<double>(PeakRssBytes()) / (1024.0 * 1024.0)});
  }
  auto& meta = table.metadata();
  meta["kernel"] = KernelJson(config);
  meta["threads"] = ResolveThreadCount(config.threads);
  meta["dim"] = dim;
  meta["repeats"] = repeats;
  meta["seed"] = seed;
  meta["timings_seconds"] = timings;
  meta["hardware"] = HardwareDescription();
  return table;
}

std::size_t PeakRssBytes() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<std::size_t>(usage.ru_maxrss) * 1024;
}

std::string HardwareDescription() {
  std::string model = "unknown cpu";
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("model name", 0) == 0) {
      auto colon = line.find(':');
      if (colon != std::string::npos) {
        model = line.substr(colon + 1);
        model.erase(0, model.find_first_not_of(' '));
      }
      break;
    }
  }
  return model + ", " + std::to_string(std::thread::hardware_concurrency()) +
         " hardware threads";
}

}  // namespace palate
