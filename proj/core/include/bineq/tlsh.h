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

#ifndef BINEQ_TLSH_H_
#define BINEQ_TLSH_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "bineq/bytes.h"
#include "bineq/error.h"

namespace bineq {

class InputTooShort : public Error {
 public:
  using Error::Error;
};

class InsufficientComplexity : public Error {
 public:
  using Error::Error;
};

class BadDigest : public Error {
 public:
  using Error::Error;
};

// 128 buckets, 1-byte checksum, sliding window of 5.
inline constexpr std::size_t kTlshMinLength = 50;

struct TlshDigest {
  std::uint8_t checksum = 0;
  std::uint8_t lvalue = 0;
  std::uint8_t q1_ratio = 0;            // 4 bits
  std::uint8_t q2_ratio = 0;            // 4 bits
  std::array<std::uint8_t, 32> body{};  // body[i] holds buckets 4i..4i+3

  // 70 lowercase hex characters, without the "T1" version prefix.
  std::string Hex() const;
  // Accepts the 70-character form with or without a leading "T1".
  static TlshDigest FromHex(std::string_view hex);

  bool operator==(const TlshDigest&) const = default;
};

TlshDigest TlshHash(ByteView data);
int TlshDistance(const TlshDigest& a, const TlshDigest& b);

struct TlshVerdict {
  bool equivalent = false;
  int distance = -1;  // -1 when a digest could not be computed
  std::string error;  // exception name and message when hashing failed
};

TlshVerdict TlshEquivalent(ByteView a, ByteView b, int tau);

}  // namespace bineq

#endif  // BINEQ_TLSH_H_
