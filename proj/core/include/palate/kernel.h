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


#ifndef PALATE_KERNEL_H_
#define PALATE_KERNEL_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "palate/embedding.h"

namespace palate {

enum class Reduction {
  // Cascade summation inside each block panel and across panel partials.
  kPairwise,
  // Left-to-right accumulation in block order; for bitwise debugging.
  kFixedOrder,
};

std::optional<Reduction> ParseReduction(std::string_view name);
std::string_view ReductionName(Reduction reduction);

inline constexpr double kRealEmbeddingSigma = 10.0;
inline constexpr double kSyntheticSigma = 1.0;
inline constexpr std::size_t kDefaultBlockSize = 1000;

struct KernelConfig {
  // Gaussian RBF bandwidth, applied to the raw embedding values. Callers own
  // any normalization of the features.
  double sigma = kRealEmbeddingSigma;
  // Maximum rows per operand in one kernel panel.
  std::size_t block_size = kDefaultBlockSize;
  Reduction reduction = Reduction::kPairwise;
  // Worker cap; 0 defers to ResolveThreadCount(). Never affects the result.
  int threads = 0;

  // Throws InvalidArgumentError unless sigma > 0 (finite) and block_size >= 1.
  void Validate() const;
};

// exp(-|x - y|^2 / (2 sigma^2)), computed from the explicit difference.
double Rbf(std::span<const double> x, std::span<const double> y, double sigma);

// V-statistic mean (1 / |A||B|) sum_{i,j} k(a_i, b_j), diagonal included when
// A and B are the same matrix.
//
// The rows of each operand are processed in blocks of at most block_size, so
// memory stays at O(block_size^2 + block_size * dim) regardless of |A|, |B|.
// For every block pair the squared distances come from the inner-product
// panel, |a|^2 + |b|^2 - 2<a, b>, clamped at zero. Both operands are first
// shifted by the midpoint of their column means (the kernel is translation
// invariant), which keeps the norms small and limits cancellation. Block
// partial sums land in fixed slots and are reduced after all panels finish,
// so the value depends only on (inputs, sigma, block_size, reduction) and not
// on the thread count.
double MeanCrossKernel(const EmbeddingMatrix& a, const EmbeddingMatrix& b,
                       const KernelConfig& config);

// MeanCrossKernel(a, a, config). At least 1/|A|; the diagonal is exactly 1.
double SelfKernelMean(const EmbeddingMatrix& a, const KernelConfig& config);

}  // namespace palate

#endif  // PALATE_KERNEL_H_
