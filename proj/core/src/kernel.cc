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

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "palate/errors.h"
#include "palate/parallel.h"
#include "palate/summation.h"

namespace palate {
namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstRowMap = Eigen::Map<const RowMatrix>;

struct PanelScratch {
  RowMatrix a_blk;
  RowMatrix b_blk;
  Eigen::VectorXd a_norm;
  Eigen::VectorXd b_norm;
  Eigen::MatrixXd panel;
};

ConstRowMap AsEigen(const EmbeddingMatrix& m) {
  return ConstRowMap(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                     static_cast<Eigen::Index>(m.cols()));
}

}  // namespace

std::optional<Reduction> ParseReduction(std::string_view name) {
  if (name == "pairwise") return Reduction::kPairwise;
  if (name == "fixed_order") return Reduction::kFixedOrder;
  return std::nullopt;
}

std::string_view ReductionName(Reduction reduction) {
  return reduction == Reduction::kPairwise ? "pairwise" : "fixed_order";
}

void KernelConfig::Validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgumentError("kernel bandwidth sigma must be positive, got " +
                               std::to_string(sigma));
  }
  if (block_size < 1) {
    throw InvalidArgumentError("block_size must be at least 1");
  }
}

double Rbf(std::span<const double> x, std::span<const double> y,
           double sigma) {
  if (x.size() != y.size()) {
    throw DataError("rbf: vector lengths differ (" + std::to_string(x.size()) +
                    " vs " + std::to_string(y.size()) + ")");
  }
  if (!(sigma > 0.0)) {
    throw InvalidArgumentError("rbf: sigma must be positive");
  }
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    d2 += d * d;
  }
  return std::exp(-d2 / (2.0 * sigma * sigma));
}

double MeanCrossKernel(const EmbeddingMatrix& a, const EmbeddingMatrix& b,
                       const KernelConfig& config) {
  config.Validate();
  if (a.cols() != b.cols()) {
    throw DataError("kernel mean: column counts differ (" +
                    std::to_string(a.cols()) + " vs " +
                    std::to_string(b.cols()) + ")");
  }
  const bool aliased = a.data().data() == b.data().data() &&
                       a.rows() == b.rows();
  const auto lhs = AsEigen(a);
  const auto rhs = AsEigen(b);
  const Eigen::RowVectorXd offset =
      aliased ? Eigen::RowVectorXd(lhs.colwise().mean())
              : Eigen::RowVectorXd(0.5 * (lhs.colwise().mean() +
                                          rhs.colwise().mean()));

  const std::size_t bs = config.block_size;
  const std::size_t a_blocks = (a.rows() + bs - 1) / bs;
  const std::size_t b_blocks = (b.rows() + bs - 1) / bs;
  const double gamma = 1.0 / (2.0 * config.sigma * config.sigma);
  const bool pairwise = config.reduction == Reduction::kPairwise;

  std::vector<double> partial(a_blocks * b_blocks, 0.0);
  ParallelFor(partial.size(), ResolveThreadCount(config.threads),
              [&](std::size_t task) {
    const std::size_t bi = task / b_blocks;
    const std::size_t bj = task % b_blocks;
    const auto a0 = static_cast<Eigen::Index>(bi * bs);
    const auto b0 = static_cast<Eigen::Index>(bj * bs);
    const auto ra = static_cast<Eigen::Index>(std::min(bs, a.rows() - bi * bs));
    const auto rb = static_cast<Eigen::Index>(std::min(bs, b.rows() - bj * bs));

    // Panels are recomputed for every block pair; keep the buffers per
    // thread so the hot loop does not hit the allocator.
    thread_local PanelScratch scratch;
    auto& [a_blk, b_blk, a_norm, b_norm, panel] = scratch;
    a_blk = lhs.middleRows(a0, ra).rowwise() - offset;
    b_blk = rhs.middleRows(b0, rb).rowwise() - offset;
    a_norm = a_blk.rowwise().squaredNorm();
    b_norm = b_blk.rowwise().squaredNorm();

    panel.resize(ra, rb);
    panel.noalias() = a_blk * b_blk.transpose();
    auto values = panel.array();
    values *= -2.0;
    values.colwise() += a_norm.array();
    values.rowwise() += b_norm.array().transpose();
    values = values.max(0.0);
    if (aliased && bi == bj) panel.diagonal().setZero();
    values = (-gamma * values).exp();

    const std::span<const double> flat(panel.data(),
                                       static_cast<std::size_t>(panel.size()));
    partial[task] = pairwise ? PairwiseSum(flat) : SequentialSum(flat);
  });

  const double total = pairwise ? PairwiseSum(partial) : SequentialSum(partial);
  return total / (static_cast<double>(a.rows()) * static_cast<double>(b.rows()));
}

double SelfKernelMean(const EmbeddingMatrix& a, const KernelConfig& config) {
  return MeanCrossKernel(a, a, config);
}

}  // namespace palate
