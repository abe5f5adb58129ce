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


#include "palate/summation.h"

#include <cstddef>

namespace palate {
namespace {

constexpr std::size_t kLeafSize = 128;

double LeafSum(const double* v, std::size_t n) {
  if (n < 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  double r[8] = {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
  std::size_t i = 8;
  for (; i + 8 <= n; i += 8) {
    for (int j = 0; j < 8; ++j) r[j] += v[i + j];
  }
  double s = ((r[0] + r[1]) + (r[2] + r[3])) + ((r[4] + r[5]) + (r[6] + r[7]));
  for (; i < n; ++i) s += v[i];
  return s;
}

double Cascade(const double* v, std::size_t n) {
  if (n <= kLeafSize) return LeafSum(v, n);
  std::size_t half = n / 2;
  half -= half % 8;
  return Cascade(v, half) + Cascade(v + half, n - half);
}

}  // namespace

double PairwiseSum(std::span<const double> values) {
  return Cascade(values.data(), values.size());
}

double SequentialSum(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

}  // namespace palate
