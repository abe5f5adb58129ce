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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "palate/errors.h"
#include "palate/parallel.h"
#include "palate/version.h"

namespace palate {

double Mmd2FromMeans(double kbar_xx, double kbar_yy, double kbar_xy) {
  return std::max(0.0, kbar_xx + kbar_yy - 2.0 * kbar_xy);
}

double ScaleFromMeans(double kbar_xx, double kbar_yy, double kbar_xy) {
  // kbar_xx >= 1/|X| > 0, so the denominator never vanishes.
  return Mmd2FromMeans(kbar_xx, kbar_yy, kbar_xy) / (kbar_xx + kbar_yy);
}

PalateValue PalateFromMmd2(double mmd2_test_gen, double mmd2_train_gen,
                           double a) {
  const double weighted_test = a * mmd2_test_gen;
  const double denom = weighted_test + (1.0 - a) * mmd2_train_gen;
  if (denom <= 0.0) return {a, true};
  return {weighted_test / denom, false};
}

double MPalateFromScores(double scale, double palate, double alpha) {
  return alpha * scale + (1.0 - alpha) * palate;
}

double Mmd2(const EmbeddingMatrix& a, const EmbeddingMatrix& b,
            const KernelConfig& config) {
  return Mmd2FromMeans(SelfKernelMean(a, config), SelfKernelMean(b, config),
                       MeanCrossKernel(a, b, config));
}

double Scale(const EmbeddingMatrix& a, const EmbeddingMatrix& b,
             const KernelConfig& config) {
  return ScaleFromMeans(SelfKernelMean(a, config), SelfKernelMean(b, config),
                        MeanCrossKernel(a, b, config));
}

double TestFraction(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) {
    throw InvalidArgumentError("test fraction needs m >= 1 and n >= 1");
  }
  return static_cast<double>(n) / (static_cast<double>(m) + static_cast<double>(n));
}

void ValidateTestFraction(double a) {
  if (!(a > 0.0 && a < 1.0)) {
    throw InvalidArgumentError("test fraction a must lie in (0, 1), got " +
                               std::to_string(a));
  }
}

void ValidateAlpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw InvalidArgumentError("weighting constant alpha must lie in [0, 1), got " +
                               std::to_string(alpha));
  }
}

namespace {

double ResolveA(const EvalTriple& triple, std::optional<double> a) {
  const double value = a ? *a : TestFraction(triple.train().rows(),
                                             triple.test().rows());
  ValidateTestFraction(value);
  return value;
}

}  // namespace

double Palate(const EvalTriple& triple, const KernelConfig& config,
              std::optional<double> a) {
  const double frac = ResolveA(triple, a);
  const double kgg = SelfKernelMean(triple.generated(), config);
  const double t = Mmd2FromMeans(SelfKernelMean(triple.test(), config), kgg,
                                 MeanCrossKernel(triple.test(),
                                                 triple.generated(), config));
  const double r = Mmd2FromMeans(SelfKernelMean(triple.train(), config), kgg,
                                 MeanCrossKernel(triple.train(),
                                                 triple.generated(), config));
  return PalateFromMmd2(t, r, frac).value;
}

double MPalate(const EvalTriple& triple, const KernelConfig& config,
               std::optional<double> a, double alpha) {
  ValidateAlpha(alpha);
  ReportOptions options;
  options.alpha = alpha;
  options.a = a;
  return ComputeReport(triple, config, options).m_palate_score;
}

bool IsDataCopyingRelative(double palate_score, double a) {
  return palate_score > a;
}

double DataCopyingIndicator(const EvalTriple& triple, int threads) {
  const EmbeddingMatrix& train = triple.train();
  auto nearest = [&](const EmbeddingMatrix& queries) {
    std::vector<double> d(queries.rows());
    ParallelFor(queries.rows(), ResolveThreadCount(threads),
                [&](std::size_t i) {
      const auto q = queries.row(i);
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t < train.rows(); ++t) {
        const auto x = train.row(t);
        double s = 0.0;
        for (std::size_t c = 0; c < q.size(); ++c) {
          const double diff = q[c] - x[c];
          s += diff * diff;
        }
        best = std::min(best, s);
      }
      d[i] = best;
    });
    return d;
  };

  std::vector<double> d_test = nearest(triple.test());
  const std::vector<double> d_gen = nearest(triple.generated());
  std::sort(d_test.begin(), d_test.end());

  // For each generated row, count test rows strictly farther from train.
  std::uint64_t pairs = 0;
  for (double g : d_gen) {
    pairs += static_cast<std::uint64_t>(
        d_test.end() - std::upper_bound(d_test.begin(), d_test.end(), g));
  }
  return static_cast<double>(pairs) /
         (static_cast<double>(d_gen.size()) * static_cast<double>(d_test.size()));
}

bool IsDataCopying(double indicator) { return indicator > 0.5; }

MetricReport ComputeReport(const EvalTriple& triple, const KernelConfig& config,
                           const ReportOptions& options) {
  config.Validate();
  ValidateAlpha(options.alpha);

  MetricReport r;
  r.sample_sizes = triple.sizes();
  r.a = ResolveA(triple, options.a);
  r.alpha = options.alpha;
  r.sigma = config.sigma;
  r.block_size = config.block_size;
  r.reduction = config.reduction;

  // Each kernel mean parallelizes over its block panels; the five are
  // evaluated in a fixed order.
  r.kbar_test_test = SelfKernelMean(triple.test(), config);
  r.kbar_train_train = SelfKernelMean(triple.train(), config);
  r.kbar_gen_gen = SelfKernelMean(triple.generated(), config);
  r.kbar_test_gen = MeanCrossKernel(triple.test(), triple.generated(), config);
  r.kbar_train_gen =
      MeanCrossKernel(triple.train(), triple.generated(), config);

  r.mmd2_test_gen =
      Mmd2FromMeans(r.kbar_test_test, r.kbar_gen_gen, r.kbar_test_gen);
  r.mmd2_train_gen =
      Mmd2FromMeans(r.kbar_train_train, r.kbar_gen_gen, r.kbar_train_gen);
  r.scale_score =
      ScaleFromMeans(r.kbar_test_test, r.kbar_gen_gen, r.kbar_test_gen);
  const PalateValue p = PalateFromMmd2(r.mmd2_test_gen, r.mmd2_train_gen, r.a);
  r.palate_score = p.value;
  r.degenerate_denominator = p.degenerate;
  r.m_palate_score = MPalateFromScores(r.scale_score, r.palate_score, r.alpha);
  r.data_copying_relative = IsDataCopyingRelative(r.palate_score, r.a);

  if (options.with_data_copying_indicator) {
    r.data_copying_indicator = DataCopyingIndicator(triple, config.threads);
  }
  return r;
}

nlohmann::json ReportToJson(const MetricReport& r) {
  nlohmann::json j = {
      {"kbar_test_test", r.kbar_test_test},
      {"kbar_train_train", r.kbar_train_train},
      {"kbar_gen_gen", r.kbar_gen_gen},
      {"kbar_test_gen", r.kbar_test_gen},
      {"kbar_train_gen", r.kbar_train_gen},
      {"mmd2_test_gen", r.mmd2_test_gen},
      {"mmd2_train_gen", r.mmd2_train_gen},
      {"scale_score", r.scale_score},
      {"palate_score", r.palate_score},
      {"m_palate_score", r.m_palate_score},
      {"a", r.a},
      {"alpha", r.alpha},
      {"sigma", r.sigma},
      {"data_copying_relative", r.data_copying_relative},
      {"degenerate_denominator", r.degenerate_denominator},
      {"sample_sizes",
       {r.sample_sizes.m, r.sample_sizes.n, r.sample_sizes.k}},
      {"block_size", r.block_size},
      {"reduction", std::string(ReductionName(r.reduction))},
      {"tool_version", kToolVersion},
  };
  if (r.data_copying_indicator) {
    j["data_copying_indicator"] = *r.data_copying_indicator;
    j["data_copying"] = IsDataCopying(*r.data_copying_indicator);
  }
  return j;
}

std::string ReportToCsv(const MetricReport& report) {
  const nlohmann::json j = ReportToJson(report);
  std::ostringstream out;
  out << "field,value\n";
  for (const auto& [key, value] : j.items()) {
    out << key << ',';
    if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        out << (i ? ";" : "") << value[i].dump();
      }
    } else if (value.is_string()) {
      out << value.get<std::string>();
    } else if (value.is_number_float()) {
      char buf[32];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf),
                                     value.get<double>(),
                                     std::chars_format::general, 17);
      out << std::string(buf, ptr);
    } else {
      out << value.dump();
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace palate
