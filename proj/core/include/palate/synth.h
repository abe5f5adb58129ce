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


#ifndef PALATE_SYNTH_H_
#define PALATE_SYNTH_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "palate/embedding.h"

namespace palate {

struct SynthConfig {
  double side = 3.0;
  std::size_t total_samples = 2000;
  // Fraction of rows assigned to the train split.
  double split_ratio = 0.5;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Triangle vertices (0, 0), (side, 0), (side / 2, side * sqrt(3) / 2).
std::array<std::array<double, 2>, 3> TriangleVertices(double side);

struct LabeledSample {
  EmbeddingMatrix points;
  // Mixture component (0, 1, 2) of every row.
  std::vector<int> labels;
};

// Each row picks a vertex uniformly, then adds N(0, I_2) noise.
LabeledSample SampleTriangleMixtureLabeled(const SynthConfig& config);
EmbeddingMatrix SampleTriangleMixture(const SynthConfig& config);

// `count` draws from N(vertex, I_2) for the given vertex index.
EmbeddingMatrix SampleTriangleComponent(double side, int component,
                                        std::size_t count, std::uint64_t seed);

// Random row partition. The train side gets floor(ratio * rows + 1/2) rows
// (round half up), the test side the rest; throws InvalidArgumentError if
// either would be empty.
std::pair<EmbeddingMatrix, EmbeddingMatrix> SplitTrainTest(
    const EmbeddingMatrix& x, double ratio, std::uint64_t seed);

// Draws from the equal-weight isotropic Gaussian KDE centred on the train
// rows: a uniformly chosen train row plus bandwidth * N(0, I).
EmbeddingMatrix KdeSample(const EmbeddingMatrix& train, double bandwidth,
                          std::size_t count, std::uint64_t seed);

}  // namespace palate

#endif  // PALATE_SYNTH_H_
