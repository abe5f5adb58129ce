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


#include "palate/embedding.h"

#include <cmath>
#include <sstream>
#include <utility>

#include "palate/errors.h"

namespace palate {

EmbeddingMatrix::EmbeddingMatrix(std::size_t rows, std::size_t cols,
                                 std::vector<double> data,
                                 std::optional<std::string> origin)
    : rows_(rows), cols_(cols), data_(std::move(data)),
      origin_(std::move(origin)) {
  const std::string where = origin_ ? " in " + *origin_ : std::string();
  if (rows_ == 0 || cols_ == 0) {
    std::ostringstream msg;
    msg << "embedding matrix must be non-empty, got " << rows_ << "x" << cols_
        << where;
    throw DataError(msg.str());
  }
  if (data_.size() != rows_ * cols_) {
    std::ostringstream msg;
    msg << "embedding payload has " << data_.size() << " values, expected "
        << rows_ << "x" << cols_ << "=" << rows_ * cols_ << where;
    throw DataError(msg.str());
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      std::ostringstream msg;
      msg << "non-finite value " << data_[i] << " at row " << i / cols_
          << ", col " << i % cols_ << where;
      throw DataError(msg.str());
    }
  }
}

EmbeddingMatrix EmbeddingMatrix::SelectRows(
    std::span<const std::size_t> indices) const {
  std::vector<double> out;
  out.reserve(indices.size() * cols_);
  for (std::size_t idx : indices) {
    if (idx >= rows_) {
      throw InvalidArgumentError("row index " + std::to_string(idx) +
                                 " out of range for " +
                                 std::to_string(rows_) + " rows");
    }
    auto r = row(idx);
    out.insert(out.end(), r.begin(), r.end());
  }
  return EmbeddingMatrix(indices.size(), cols_, std::move(out));
}

EmbeddingMatrix EmbeddingMatrix::VStack(const EmbeddingMatrix& top,
                                        const EmbeddingMatrix& bottom) {
  if (top.cols() != bottom.cols()) {
    throw DataError("cannot stack matrices with " +
                    std::to_string(top.cols()) + " and " +
                    std::to_string(bottom.cols()) + " columns");
  }
  std::vector<double> out(top.data_);
  out.insert(out.end(), bottom.data_.begin(), bottom.data_.end());
  return EmbeddingMatrix(top.rows() + bottom.rows(), top.cols(),
                         std::move(out));
}

EvalTriple ValidateTriple(EmbeddingMatrix train, EmbeddingMatrix test,
                          EmbeddingMatrix generated) {
  if (train.cols() != test.cols() || train.cols() != generated.cols()) {
    std::ostringstream msg;
    msg << "dimension mismatch: train has " << train.cols()
        << " columns, test has " << test.cols() << ", generated has "
        << generated.cols();
    throw DataError(msg.str());
  }
  return EvalTriple(std::move(train), std::move(test), std::move(generated));
}

}  // namespace palate
