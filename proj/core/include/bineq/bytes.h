// Copyright 2026 The bineq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BINEQ_BYTES_H_
#define BINEQ_BYTES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bineq/error.h"

namespace bineq {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline ByteView AsBytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline std::string_view AsChars(ByteView b) {
  return {reinterpret_cast<const char*>(b.data()), b.size()};
}

// Big-endian cursor over an immutable buffer. Every read that runs past the
// end throws MalformedClass with the offset at which data ran out.
class ByteReader {
 public:
  explicit ByteReader(ByteView data, std::size_t base_offset = 0)
      : data_(data), base_(base_offset) {}

  std::size_t position() const { return pos_; }
  // Offset in the outermost buffer; used for error reporting.
  std::size_t absolute_position() const { return base_ + pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }
  bool at_end() const { return pos_ == data_.size(); }

  std::uint8_t U1() {
    Need(1);
    return data_[pos_++];
  }
  std::uint16_t U2() {
    Need(2);
    std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] << 8 | data_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t U4() {
    Need(4);
    std::uint32_t v = static_cast<std::uint32_t>(data_[pos_]) << 24 |
                      static_cast<std::uint32_t>(data_[pos_ + 1]) << 16 |
                      static_cast<std::uint32_t>(data_[pos_ + 2]) << 8 |
                      static_cast<std::uint32_t>(data_[pos_ + 3]);
    pos_ += 4;
    return v;
  }
  std::uint64_t U8() {
    std::uint64_t hi = U4();
    return hi << 32 | U4();
  }
  std::int8_t S1() { return static_cast<std::int8_t>(U1()); }
  std::int16_t S2() { return static_cast<std::int16_t>(U2()); }
  std::int32_t S4() { return static_cast<std::int32_t>(U4()); }

  ByteView Take(std::size_t n) {
    Need(n);
    ByteView v = data_.subspan(pos_, n);
    pos_ += n;
    return v;
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw MalformedClass(absolute_position(), what);
  }

 private:
  void Need(std::size_t n) const {
    if (data_.size() - pos_ < n) {
      throw MalformedClass(base_ + data_.size(), "unexpected end of data");
    }
  }

  ByteView data_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

class ByteWriter {
 public:
  void U1(std::uint32_t v) { out_.push_back(static_cast<std::uint8_t>(v)); }
  void U2(std::uint32_t v) {
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
    out_.push_back(static_cast<std::uint8_t>(v));
  }
  void U4(std::uint32_t v) {
    U2(v >> 16);
    U2(v & 0xffff);
  }
  void U8(std::uint64_t v) {
    U4(static_cast<std::uint32_t>(v >> 32));
    U4(static_cast<std::uint32_t>(v));
  }
  void Append(ByteView b) { out_.insert(out_.end(), b.begin(), b.end()); }

  // Overwrites a previously written big-endian u4 (attribute lengths).
  void PatchU4(std::size_t at, std::uint32_t v) {
    out_[at] = static_cast<std::uint8_t>(v >> 24);
    out_[at + 1] = static_cast<std::uint8_t>(v >> 16);
    out_[at + 2] = static_cast<std::uint8_t>(v >> 8);
    out_[at + 3] = static_cast<std::uint8_t>(v);
  }

  std::size_t size() const { return out_.size(); }
  const Bytes& bytes() const { return out_; }
  Bytes Release() { return std::move(out_); }

 private:
  Bytes out_;
};

std::string ToHex(ByteView data);
// Accepts upper- or lowercase digits; throws std::invalid_argument otherwise.
Bytes FromHex(std::string_view hex);

Bytes ReadFile(const std::string& path);
void WriteFile(const std::string& path, ByteView data);

}  // namespace bineq

#endif  // BINEQ_BYTES_H_
