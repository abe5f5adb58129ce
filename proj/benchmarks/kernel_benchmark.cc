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


#include <benchmark/benchmark.h>

#include "palate/experiments.h"
#include "palate/kernel.h"
#include "palate/metrics.h"

namespace palate {
namespace {

void BM_MeanCrossKernel(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  KernelConfig config;
  config.block_size = static_cast<std::size_t>(state.range(2));
  config.threads = 1;
  const EmbeddingMatrix a = RandomGaussianMatrix(rows, dim, 1, 0);
  const EmbeddingMatrix b = RandomGaussianMatrix(rows, dim, 1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MeanCrossKernel(a, b, config));
  }
  state.counters["pairs/s"] = benchmark::Counter(
      static_cast<double>(rows * rows), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_MeanCrossKernel)
    ->ArgNames({"rows", "dim", "block"})
    ->Args({2000, 64, 64})
    ->Args({2000, 64, 250})
    ->Args({2000, 64, 1000})
    ->Args({2000, 768, 1000})
    ->Unit(benchmark::kMillisecond);

void BM_ComputeReport(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const EvalTriple triple = ValidateTriple(RandomGaussianMatrix(rows, 64, 2, 0),
                                           RandomGaussianMatrix(rows, 64, 2, 1),
                                           RandomGaussianMatrix(rows, 64, 2, 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeReport(triple, KernelConfig{}).m_palate_score);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ComputeReport)
    ->Arg(500)
    ->Arg(1000)
    ->Arg(2000)
    ->Arg(4000)
    ->Complexity(benchmark::oNSquared)
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace palate

BENCHMARK_MAIN();
