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


// Brute-force reference implementations used only by the tests. Nothing here
// calls into the library's kernel or metric code: every kernel term is an
// explicit double loop over coordinate differences, accumulated in long
// double.
#ifndef PALATE_TESTS_ORACLE_NAIVE_H_
#define PALATE_TESTS_ORACLE_NAIVE_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace palate::oracle {

// Plain row-major matrix so the oracle does not depend on EmbeddingMatrix
// internals beyond its raw data.
struct Dense {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> v;
  double at(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
};

inline long double SquaredDistance(const Dense& a, std::size_t i,
                                   const Dense& b, std::size_t j) {
  long double s = 0.0L;
  for (std::size_t c = 0; c < a.cols; ++c) {
    const long double d =
        static_cast<long double>(a.at(i, c)) - static_cast<long double>(b.at(j, c));
    s += d * d;
  }
  return s;
}

// (1 / |A||B|) sum_{i,j} exp(-|a_i - b_j|^2 / (2 sigma^2)).
inline long double KernelMean(const Dense& a, const Dense& b, double sigma) {
  const long double two_s2 = 2.0L * sigma * sigma;
  long double total = 0.0L;
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < b.rows; ++j) {
      total += std::exp(-SquaredDistance(a, i, b, j) / two_s2);
    }
  }
  return total / (static_cast<long double>(a.rows) * b.rows);
}

struct Scores {
  long double k_test_test, k_train_train, k_gen_gen, k_test_gen, k_train_gen;
  long double mmd2_test_gen, mmd2_train_gen;
  long double scale, palate, m_palate, a;
};

// Kernel-mean formulas with the test/train weighting a = n / (m + n) (or the
// override); with m = n it is the unweighted ratio of the two MMD^2 terms.
inline Scores Evaluate(const Dense& train, const Dense& test, const Dense& gen,
                       double sigma, double alpha, double a_override = -1.0) {
  Scores s{};
  s.k_test_test = KernelMean(test, test, sigma);
  s.k_train_train = KernelMean(train, train, sigma);
  s.k_gen_gen = KernelMean(gen, gen, sigma);
  s.k_test_gen = KernelMean(test, gen, sigma);
  s.k_train_gen = KernelMean(train, gen, sigma);
  s.a = a_override > 0.0
            ? a_override
            : static_cast<long double>(test.rows) / (train.rows + test.rows);
  s.mmd2_test_gen = s.k_test_test + s.k_gen_gen - 2 * s.k_test_gen;
  s.mmd2_train_gen = s.k_train_train + s.k_gen_gen - 2 * s.k_train_gen;
  s.scale = s.mmd2_test_gen / (s.k_test_test + s.k_gen_gen);
  s.palate = s.a * s.mmd2_test_gen /
             (s.a * s.mmd2_test_gen + (1 - s.a) * s.mmd2_train_gen);
  s.m_palate = alpha * s.scale + (1 - alpha) * s.palate;
  return s;
}

// Pair fraction 1[d(gen_i) < d(test_j)] with d the nearest squared distance
// to train, by full enumeration of all pairs.
inline double CopyingIndicator(const Dense& train, const Dense& test,
                               const Dense& gen) {
  auto nearest = [&](const Dense& q, std::size_t i) {
    long double best = std::numeric_limits<long double>::infinity();
    for (std::size_t t = 0; t < train.rows; ++t) {
      best = std::min(best, SquaredDistance(q, i, train, t));
    }
    return best;
  };
  std::vector<long double> dt(test.rows), dg(gen.rows);
  for (std::size_t j = 0; j < test.rows; ++j) dt[j] = nearest(test, j);
  for (std::size_t i = 0; i < gen.rows; ++i) dg[i] = nearest(gen, i);
  std::size_t count = 0;
  for (auto g : dg) {
    for (auto t : dt) count += g < t ? 1 : 0;
  }
  return static_cast<double>(count) / (static_cast<double>(gen.rows) * test.rows);
}

inline bool RelClose(long double expected, double actual, double rel) {
  const long double diff = std::fabs(expected - static_cast<long double>(actual));
  const long double scale =
      std::max(std::fabs(expected), std::fabs(static_cast<long double>(actual)));
  return diff <= rel * scale || diff == 0.0L;
}

}  // namespace palate::oracle

#endif  // PALATE_TESTS_ORACLE_NAIVE_H_
