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


#include "palate/synth.h"

#include <cmath>
#include <string>

#include "palate/errors.h"
#include "palate/random.h"

namespace palate {

void SynthConfig::Validate() const {
  if (!(side > 0.0)) {
    throw InvalidArgumentError("triangle side must be positive");
  }
  if (total_samples < 2) {
    throw InvalidArgumentError("need at least 2 synthetic samples");
  }
  if (!(split_ratio > 0.0 && split_ratio < 1.0)) {
    throw InvalidArgumentError("split ratio must lie in (0, 1)");
  }
}

std::array<std::array<double, 2>, 3> TriangleVertices(double side) {
  return {{{0.0, 0.0},
           {side, 0.0},
           {side / 2.0, side * std::sqrt(3.0) / 2.0}}};
}

LabeledSample SampleTriangleMixtureLabeled(const SynthConfig& config) {
  config.Validate();
  const auto vertices = TriangleVertices(config.side);
  Rng rng(config.seed);
  std::vector<double> data;
  data.reserve(config.total_samples * 2);
  std::vector<int> labels;
  labels.reserve(config.total_samples);
  for (std::size_t i = 0; i < config.total_samples; ++i) {
    const auto c = rng.UniformIndex(3);
    data.push_back(vertices[c][0] + rng.Normal());
    data.push_back(vertices[c][1] + rng.Normal());
    labels.push_back(static_cast<int>(c));
  }
  return {EmbeddingMatrix(config.total_samples, 2, std::move(data)),
          std::move(labels)};
}

EmbeddingMatrix SampleTriangleMixture(const SynthConfig& config) {
  return SampleTriangleMixtureLabeled(config).points;
}

EmbeddingMatrix SampleTriangleComponent(double side, int component,
                                        std::size_t count, std::uint64_t seed) {
  if (component < 0 || component > 2) {
    throw InvalidArgumentError("triangle component must be 0, 1 or 2");
  }
  const auto v = TriangleVertices(side)[component];
  Rng rng(seed);
  std::vector<double> data;
  data.reserve(count * 2);
  for (std::size_t i = 0; i < count; ++i) {
    data.push_back(v[0] + rng.Normal());
    data.push_back(v[1] + rng.Normal());
  }
  return EmbeddingMatrix(count, 2, std::move(data));
}

std::pair<EmbeddingMatrix, EmbeddingMatrix> SplitTrainTest(
    const EmbeddingMatrix& x, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw InvalidArgumentError("split ratio must lie in (0, 1)");
  }
  const auto n_train = static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(x.rows()) + 0.5));
  if (n_train == 0 || n_train >= x.rows()) {
    throw InvalidArgumentError(
        "split of " + std::to_string(x.rows()) + " rows at ratio " +
        std::to_string(ratio) + " leaves one side empty");
  }
  Rng rng(seed);
  const auto perm = rng.Permutation(x.rows());
  const std::span<const std::size_t> all(perm);
  return {x.SelectRows(all.first(n_train)), x.SelectRows(all.subspan(n_train))};
}

EmbeddingMatrix KdeSample(const EmbeddingMatrix& train, double bandwidth,
                          std::size_t count, std::uint64_t seed) {
  if (!(bandwidth > 0.0)) {
    throw InvalidArgumentError("KDE bandwidth must be positive");
  }
  if (count < 1) {
    throw InvalidArgumentError("KDE sample count must be at least 1");
  }
  Rng rng(seed);
  std::vector<double> data;
  data.reserve(count * train.cols());
  for (std::size_t i = 0; i < count; ++i) {
    const auto center = train.row(rng.UniformIndex(train.rows()));
    for (double c : center) data.push_back(c + bandwidth * rng.Normal());
  }
  return EmbeddingMatrix(count, train.cols(), std::move(data));
}

}  // namespace palate
