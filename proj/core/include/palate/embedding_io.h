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


#ifndef PALATE_EMBEDDING_IO_H_
#define PALATE_EMBEDDING_IO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "palate/embedding.h"

namespace palate {

enum class EmbeddingFormat { kEmb1, kNpy, kCsv };

// Element width stored on disk by the EMB1 writer.
enum class Emb1Dtype : std::uint8_t { kFloat32 = 0, kFloat64 = 1 };

// EMB1 layout, little-endian throughout:
//   "EMB1" | u8 dtype | 3 zero bytes | u64 rows | u64 cols | payload
inline constexpr char kEmb1Magic[4] = {'E', 'M', 'B', '1'};
inline constexpr std::size_t kEmb1HeaderSize = 24;

std::optional<EmbeddingFormat> ParseEmbeddingFormat(std::string_view name);
std::string_view EmbeddingFormatName(EmbeddingFormat format);

// Reads an embedding matrix. Without a hint the format is sniffed from the
// magic bytes, falling back to the extension (.csv/.txt) for text files.
// Values are widened to double. Throws DataError on any malformed input.
EmbeddingMatrix LoadEmbeddings(
    const std::filesystem::path& path,
    std::optional<EmbeddingFormat> format_hint = std::nullopt);

// Writes EMB1 or CSV; NPY is read-only. CSV uses 17 significant digits, one
// line per row. `dtype` only applies to EMB1; narrowing to float32 is lossy
// unless the values came from a float32 source.
void SaveEmbeddings(const EmbeddingMatrix& matrix,
                    const std::filesystem::path& path, EmbeddingFormat format,
                    Emb1Dtype dtype = Emb1Dtype::kFloat64);

}  // namespace palate

#endif  // PALATE_EMBEDDING_IO_H_
