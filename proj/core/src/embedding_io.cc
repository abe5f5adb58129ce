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


#include "palate/embedding_io.h"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "palate/errors.h"

namespace palate {
namespace {

constexpr char kNpyMagic[6] = {'\x93', 'N', 'U', 'M', 'P', 'Y'};

template <typename T>
T FromLittleEndian(const unsigned char* bytes) {
  std::array<unsigned char, sizeof(T)> buf;
  std::memcpy(buf.data(), bytes, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(buf.begin(), buf.end());
  }
  T value;
  std::memcpy(&value, buf.data(), sizeof(T));
  return value;
}

template <typename T>
void AppendLittleEndian(std::string& out, T value) {
  std::array<char, sizeof(T)> buf;
  std::memcpy(buf.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(buf.begin(), buf.end());
  }
  out.append(buf.data(), buf.size());
}

std::string ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open embedding file " + path.string());
  }
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw DataError("read error on " + path.string());
  }
  return bytes;
}

std::vector<double> DecodeFloats(const unsigned char* p, std::size_t count,
                                 bool f32) {
  std::vector<double> out(count);
  if (f32) {
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = static_cast<double>(FromLittleEndian<float>(p + 4 * i));
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = FromLittleEndian<double>(p + 8 * i);
    }
  }
  return out;
}

EmbeddingMatrix ParseEmb1(const std::string& bytes, const std::string& name) {
  if (bytes.size() < kEmb1HeaderSize) {
    throw DataError("EMB1 header truncated in " + name);
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::uint8_t dtype = p[4];
  if (dtype > 1) {
    throw DataError("EMB1 unknown dtype code " + std::to_string(dtype) +
                    " in " + name);
  }
  if (p[5] != 0 || p[6] != 0 || p[7] != 0) {
    throw DataError("EMB1 reserved bytes are not zero in " + name);
  }
  const auto rows = FromLittleEndian<std::uint64_t>(p + 8);
  const auto cols = FromLittleEndian<std::uint64_t>(p + 16);
  const std::size_t width = dtype == 0 ? 4 : 8;
  const std::size_t payload = bytes.size() - kEmb1HeaderSize;
  if (cols != 0 && rows > payload / width / cols + 1) {
    throw DataError("EMB1 header declares " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " but payload is " +
                    std::to_string(payload) + " bytes in " + name);
  }
  if (rows * cols * width != payload) {
    throw DataError("EMB1 header declares " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " (" +
                    std::to_string(rows * cols * width) +
                    " bytes) but payload is " + std::to_string(payload) +
                    " bytes in " + name);
  }
  return EmbeddingMatrix(rows, cols,
                         DecodeFloats(p + kEmb1HeaderSize, rows * cols,
                                      dtype == 0),
                         name);
}

// Extracts the quoted or bare value following `key:` in a NPY header dict.
std::string NpyHeaderValue(const std::string& header, const std::string& key,
                           const std::string& name) {
  const std::string quoted = "'" + key + "'";
  auto pos = header.find(quoted);
  if (pos == std::string::npos) {
    throw DataError("NPY header lacks '" + key + "' in " + name);
  }
  pos = header.find(':', pos + quoted.size());
  if (pos == std::string::npos) {
    throw DataError("malformed NPY header in " + name);
  }
  ++pos;
  while (pos < header.size() && header[pos] == ' ') ++pos;
  if (pos >= header.size()) {
    throw DataError("malformed NPY header in " + name);
  }
  if (header[pos] == '\'') {
    auto end = header.find('\'', pos + 1);
    if (end == std::string::npos) {
      throw DataError("malformed NPY header in " + name);
    }
    return header.substr(pos + 1, end - pos - 1);
  }
  if (header[pos] == '(') {
    auto end = header.find(')', pos);
    if (end == std::string::npos) {
      throw DataError("malformed NPY header in " + name);
    }
    return header.substr(pos + 1, end - pos - 1);
  }
  auto end = header.find_first_of(",}", pos);
  return header.substr(pos, end - pos);
}

std::vector<std::uint64_t> ParseShape(const std::string& text,
                                      const std::string& name) {
  std::vector<std::uint64_t> dims;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',')) ++pos;
    if (pos >= text.size()) break;
    std::uint64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc()) {
      throw DataError("malformed NPY shape '" + text + "' in " + name);
    }
    dims.push_back(value);
    pos = static_cast<std::size_t>(ptr - text.data());
  }
  return dims;
}

EmbeddingMatrix ParseNpy(const std::string& bytes, const std::string& name) {
  if (bytes.size() < 10) {
    throw DataError("NPY header truncated in " + name);
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  if (p[6] != 1 || p[7] != 0) {
    throw DataError("unsupported NPY version " + std::to_string(p[6]) + "." +
                    std::to_string(p[7]) + " in " + name +
                    " (only 1.0 is accepted)");
  }
  const std::size_t header_len = FromLittleEndian<std::uint16_t>(p + 8);
  if (bytes.size() < 10 + header_len) {
    throw DataError("NPY header truncated in " + name);
  }
  const std::string header = bytes.substr(10, header_len);
  const std::string descr = NpyHeaderValue(header, "descr", name);
  const std::string fortran = NpyHeaderValue(header, "fortran_order", name);
  const auto shape =
      ParseShape(NpyHeaderValue(header, "shape", name), name);

  bool f32;
  if (descr == "<f4") {
    f32 = true;
  } else if (descr == "<f8") {
    f32 = false;
  } else {
    throw DataError("unsupported NPY dtype '" + descr + "' in " + name +
                    " (need little-endian '<f4' or '<f8')");
  }
  if (fortran.rfind("False", 0) != 0) {
    throw DataError("Fortran-ordered NPY arrays are not supported: " + name);
  }
  if (shape.size() != 2) {
    throw DataError("NPY array in " + name + " has " +
                    std::to_string(shape.size()) +
                    " dimensions; a 2-D matrix is required");
  }
  const std::size_t width = f32 ? 4 : 8;
  const std::size_t payload = bytes.size() - 10 - header_len;
  if (shape[0] * shape[1] * width != payload) {
    throw DataError("NPY shape (" + std::to_string(shape[0]) + ", " +
                    std::to_string(shape[1]) + ") does not match the " +
                    std::to_string(payload) + "-byte payload in " + name);
  }
  return EmbeddingMatrix(
      shape[0], shape[1],
      DecodeFloats(p + 10 + header_len, shape[0] * shape[1], f32), name);
}

EmbeddingMatrix ParseCsv(const std::string& text, const std::string& name) {
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      std::size_t b = start;
      std::size_t e = end;
      while (b < e && (line[b] == ' ' || line[b] == '\t')) ++b;
      while (e > b && (line[e - 1] == ' ' || line[e - 1] == '\t')) --e;
      if (b < e && line[b] == '+') ++b;
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(line.data() + b, line.data() + e, value);
      if (b == e || ec != std::errc() || ptr != line.data() + e) {
        throw DataError("cannot parse CSV field '" +
                        line.substr(start, end - start) + "' at line " +
                        std::to_string(line_no) + " in " + name);
      }
      values.push_back(value);
      ++count;
      if (end == line.size()) break;
      start = end + 1;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw DataError("CSV line " + std::to_string(line_no) + " has " +
                      std::to_string(count) + " fields, expected " +
                      std::to_string(cols) + " in " + name);
    }
    ++rows;
  }
  if (rows == 0) {
    throw DataError("CSV file has no data rows: " + name);
  }
  return EmbeddingMatrix(rows, cols, std::move(values), name);
}

std::string LowerExtension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

}  // namespace

std::optional<EmbeddingFormat> ParseEmbeddingFormat(std::string_view name) {
  if (name == "emb1") return EmbeddingFormat::kEmb1;
  if (name == "npy") return EmbeddingFormat::kNpy;
  if (name == "csv") return EmbeddingFormat::kCsv;
  return std::nullopt;
}

std::string_view EmbeddingFormatName(EmbeddingFormat format) {
  switch (format) {
    case EmbeddingFormat::kEmb1:
      return "emb1";
    case EmbeddingFormat::kNpy:
      return "npy";
    case EmbeddingFormat::kCsv:
      return "csv";
  }
  return "unknown";
}

EmbeddingMatrix LoadEmbeddings(const std::filesystem::path& path,
                               std::optional<EmbeddingFormat> format_hint) {
  const std::string bytes = ReadAll(path);
  const std::string name = path.string();

  EmbeddingFormat format;
  if (format_hint) {
    format = *format_hint;
  } else if (bytes.size() >= 4 &&
             std::memcmp(bytes.data(), kEmb1Magic, 4) == 0) {
    format = EmbeddingFormat::kEmb1;
  } else if (bytes.size() >= 6 &&
             std::memcmp(bytes.data(), kNpyMagic, 6) == 0) {
    format = EmbeddingFormat::kNpy;
  } else if (const auto ext = LowerExtension(path);
             ext == ".csv" || ext == ".txt") {
    format = EmbeddingFormat::kCsv;
  } else {
    throw DataError("unknown embedding format for " + name +
                    " (no EMB1/NPY magic and not a .csv file)");
  }

  switch (format) {
    case EmbeddingFormat::kEmb1:
      if (bytes.size() < 4 || std::memcmp(bytes.data(), kEmb1Magic, 4) != 0) {
        throw DataError("missing EMB1 magic in " + name);
      }
      return ParseEmb1(bytes, name);
    case EmbeddingFormat::kNpy:
      if (bytes.size() < 6 || std::memcmp(bytes.data(), kNpyMagic, 6) != 0) {
        throw DataError("missing NPY magic in " + name);
      }
      return ParseNpy(bytes, name);
    case EmbeddingFormat::kCsv:
      return ParseCsv(bytes, name);
  }
  throw DataError("unknown embedding format for " + name);
}

void SaveEmbeddings(const EmbeddingMatrix& matrix,
                    const std::filesystem::path& path, EmbeddingFormat format,
                    Emb1Dtype dtype) {
  std::string out;
  switch (format) {
    case EmbeddingFormat::kEmb1: {
      const bool f32 = dtype == Emb1Dtype::kFloat32;
      out.reserve(kEmb1HeaderSize + matrix.data().size() * (f32 ? 4 : 8));
      out.append(kEmb1Magic, 4);
      out.push_back(static_cast<char>(dtype));
      out.append(3, '\0');
      AppendLittleEndian<std::uint64_t>(out, matrix.rows());
      AppendLittleEndian<std::uint64_t>(out, matrix.cols());
      for (double v : matrix.data()) {
        if (f32) {
          AppendLittleEndian<float>(out, static_cast<float>(v));
        } else {
          AppendLittleEndian<double>(out, v);
        }
      }
      break;
    }
    case EmbeddingFormat::kCsv: {
      char buf[32];
      for (std::size_t i = 0; i < matrix.rows(); ++i) {
        auto row = matrix.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
          if (j > 0) out.push_back(',');
          auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), row[j],
                                         std::chars_format::general, 17);
          out.append(buf, ptr);
        }
        out.push_back('\n');
      }
      break;
    }
    case EmbeddingFormat::kNpy:
      throw InvalidArgumentError("NPY output is not supported; use emb1 or csv");
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw DataError("cannot open " + path.string() + " for writing");
  }
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) {
    throw DataError("write failed on " + path.string());
  }
}

}  // namespace palate
