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


#ifndef PALATE_SUMMATION_H_
#define PALATE_SUMMATION_H_

#include <span>

namespace palate {

// Pairwise (cascade) summation: recursive halving down to 128-element leaves
// that are accumulated with eight interleaved partial sums. Rounding error
// grows as O(log n) instead of O(n). The split points depend only on the
// length, so the result is bit-reproducible.
double PairwiseSum(std::span<const double> values);

// Left-to-right accumulation.
double SequentialSum(std::span<const double> values);

}  // namespace palate

#endif  // PALATE_SUMMATION_H_
