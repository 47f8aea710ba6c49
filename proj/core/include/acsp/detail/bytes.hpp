// Copyright 2026 The ACSP Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ACSP_DETAIL_BYTES_HPP_
#define ACSP_DETAIL_BYTES_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "acsp/error.hpp"

namespace acsp::detail {

// Fixed-width little-endian encoder; byte order is produced explicitly so
// files are identical on any host.
class ByteWriter {
 public:
  void Raw(std::string_view bytes) { buf_.append(bytes); }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void U64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void F32(float v) { U32(std::bit_cast<std::uint32_t>(v)); }
  void F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }

  const std::string& bytes() const { return buf_; }

 private:
  std::string buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string bytes) : buf_(std::move(bytes)) {}

  std::string_view Raw(std::size_t n) {
    Need(n);
    std::string_view out(buf_.data() + pos_, n);
    pos_ += n;
    return out;
  }
  std::uint32_t U32() {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(Byte(i)) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t U64() {
    Need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(Byte(i)) << (8 * i);
    pos_ += 8;
    return v;
  }
  float F32() { return std::bit_cast<float>(U32()); }
  double F64() { return std::bit_cast<double>(U64()); }

  std::size_t remaining() const { return buf_.size() - pos_; }

  /// Throws TruncatedFile unless `count` items of `width` bytes remain.
  void NeedItems(std::uint64_t count, std::size_t width) const {
    if (count > remaining() / width) {
      throw Error(ErrorCode::kTruncatedFile, "file ends before declared payload");
    }
  }

 private:
  void Need(std::size_t n) const {
    if (n > remaining()) throw Error(ErrorCode::kTruncatedFile, "unexpected end of file");
  }
  unsigned char Byte(int i) const { return static_cast<unsigned char>(buf_[pos_ + i]); }

  std::string buf_;
  std::size_t pos_ = 0;
};

std::string ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace acsp::detail

#endif  // ACSP_DETAIL_BYTES_HPP_
