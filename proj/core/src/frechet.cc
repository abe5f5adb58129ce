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


#include "palate/frechet.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "palate/errors.h"

namespace palate {
namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct GaussianFit {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

GaussianFit Fit(const EmbeddingMatrix& m) {
  Eigen::Map<const RowMatrix> x(m.data().data(),
                                static_cast<Eigen::Index>(m.rows()),
                                static_cast<Eigen::Index>(m.cols()));
  GaussianFit fit;
  fit.mean = x.colwise().mean().transpose();
  const RowMatrix centered = x.rowwise() - fit.mean.transpose();
  fit.cov = (centered.transpose() * centered) /
            static_cast<double>(m.rows() - 1);
  return fit;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> Decompose(
    const Eigen::MatrixXd& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericError(std::string("eigendecomposition of ") + what +
                       " did not converge");
  }
  return solver;
}

}  // namespace

double FrechetDistance(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
  if (a.rows() < 2 || b.rows() < 2) {
    throw DataError("frechet distance needs at least 2 rows per set, got " +
                    std::to_string(a.rows()) + " and " +
                    std::to_string(b.rows()));
  }
  if (a.cols() != b.cols()) {
    throw DataError("frechet distance: column counts differ (" +
                    std::to_string(a.cols()) + " vs " +
                    std::to_string(b.cols()) + ")");
  }
  const GaussianFit fa = Fit(a);
  const GaussianFit fb = Fit(b);

  const auto sa = Decompose(fa.cov, "the first covariance");
  const Eigen::VectorXd root_vals =
      sa.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd sqrt_a = sa.eigenvectors() * root_vals.asDiagonal() *
                                 sa.eigenvectors().transpose();
  Eigen::MatrixXd inner = sqrt_a * fb.cov * sqrt_a;
  inner = 0.5 * (inner + inner.transpose());
  const auto si = Decompose(inner, "the covariance product");
  const double trace_cross = si.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();

  const double mean_term = (fa.mean - fb.mean).squaredNorm();
  const double value =
      mean_term + fa.cov.trace() + fb.cov.trace() - 2.0 * trace_cross;
  return std::max(value, 0.0);
}

}  // namespace palate
