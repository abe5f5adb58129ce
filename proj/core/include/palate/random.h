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


#ifndef PALATE_RANDOM_H_
#define PALATE_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace palate {

// Reproducible random stream. Bits come from std::mt19937_64, whose output
// sequence is fixed by the C++ standard; every transform on top of it is
// implemented here rather than taken from <random> distributions, whose
// algorithms are implementation-defined. Integer and uniform draws are
// bit-identical across platforms; Normal() additionally relies on the libm
// log/sin/cos being correctly rounded.
//   Uniform()      top 53 bits * 2^-53, in [0, 1)
//   UniformIndex() Lemire's multiply-shift with rejection, unbiased
//   Normal()       Box-Muller on (1 - u1, u2); both outputs are used in turn
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent generator for substream `stream` of `seed`. The two values
  // are mixed with SplitMix64 so nearby seeds/streams do not correlate.
  static Rng Substream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t NextU64() { return engine_(); }
  double Uniform();
  std::size_t UniformIndex(std::size_t n);
  double Normal();

  // Uniformly random permutation of 0..n-1 (Fisher-Yates).
  std::vector<std::size_t> Permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

std::uint64_t SplitMix64(std::uint64_t x);

// Seed for substream `stream` of `seed`; Rng::Substream(s, i) is
// Rng(DeriveSeed(s, i)).
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace palate

#endif  // PALATE_RANDOM_H_
