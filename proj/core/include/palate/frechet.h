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


#ifndef PALATE_FRECHET_H_
#define PALATE_FRECHET_H_

#include "palate/embedding.h"

namespace palate {

// Frechet (2-Wasserstein) distance between Gaussian fits of two sample sets:
//   |mu_a - mu_b|^2 + tr(S_a + S_b - 2 (S_a S_b)^{1/2})
// with unbiased (N - 1) covariances. The trace of the cross square root is
// taken as the sum of sqrt(eigenvalues) of S_a^{1/2} S_b S_a^{1/2}, negative
// eigenvalues clamped to zero. Result clamped at zero.
//
// Throws DataError for fewer than two rows or mismatched widths, and
// NumericError if an eigendecomposition does not converge.
double FrechetDistance(const EmbeddingMatrix& a, const EmbeddingMatrix& b);

}  // namespace palate

#endif  // PALATE_FRECHET_H_
