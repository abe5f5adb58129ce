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


#ifndef PALATE_EMBEDDING_H_
#define PALATE_EMBEDDING_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace palate {

// Dense row-major matrix of 64-bit floats: one sample per row, one feature
// per column. Construction validates shape and finiteness, and the object is
// immutable afterwards, so instances can be shared freely across threads.
class EmbeddingMatrix {
 public:
  // Throws DataError if rows or cols is zero, if data.size() != rows * cols,
  // or if any element is NaN or infinite (the message names the row/column).
  EmbeddingMatrix(std::size_t rows, std::size_t cols, std::vector<double> data,
                  std::optional<std::string> origin = std::nullopt);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<const double> data() const { return data_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  const std::optional<std::string>& origin() const { return origin_; }

  // New matrix holding the given rows of this one, in the given order.
  EmbeddingMatrix SelectRows(std::span<const std::size_t> indices) const;

  // Row-wise concatenation; column counts must agree.
  static EmbeddingMatrix VStack(const EmbeddingMatrix& top,
                                const EmbeddingMatrix& bottom);

  friend bool operator==(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::optional<std::string> origin_;
};

// Sizes of an evaluation: m train rows, n test rows, k generated rows.
struct SampleSizes {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t k = 0;
};

// Train, test and generated embeddings sharing one feature dimension.
class EvalTriple {
 public:
  const EmbeddingMatrix& train() const { return train_; }
  const EmbeddingMatrix& test() const { return test_; }
  const EmbeddingMatrix& generated() const { return generated_; }
  SampleSizes sizes() const {
    return {train_.rows(), test_.rows(), generated_.rows()};
  }
  std::size_t dim() const { return train_.cols(); }

 private:
  friend EvalTriple ValidateTriple(EmbeddingMatrix, EmbeddingMatrix,
                                   EmbeddingMatrix);
  EvalTriple(EmbeddingMatrix train, EmbeddingMatrix test,
             EmbeddingMatrix generated)
      : train_(std::move(train)),
        test_(std::move(test)),
        generated_(std::move(generated)) {}

  EmbeddingMatrix train_;
  EmbeddingMatrix test_;
  EmbeddingMatrix generated_;
};

// The only way to build an EvalTriple. Throws DataError naming all three
// column counts when they disagree.
EvalTriple ValidateTriple(EmbeddingMatrix train, EmbeddingMatrix test,
                          EmbeddingMatrix generated);

}  // namespace palate

#endif  // PALATE_EMBEDDING_H_
