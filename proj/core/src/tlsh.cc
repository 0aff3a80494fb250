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

#include "bineq/tlsh.h"

#include <algorithm>
#include <cstdlib>

namespace bineq {
namespace {

constexpr std::uint8_t kPearson[256] = {
    1,   87,  49,  12,  176, 178, 102, 166, 121, 193, 6,   84,  249, 230, 44,  163, 14,  197, 213,
    181, 161, 85,  218, 80,  64,  239, 24,  226, 236, 142, 38,  200, 110, 177, 104, 103, 141, 253,
    255, 50,  77,  101, 81,  18,  45,  96,  31,  222, 25,  107, 190, 70,  86,  237, 240, 34,  72,
    242, 20,  214, 244, 227, 149, 235, 97,  234, 57,  22,  60,  250, 82,  175, 208, 5,   127, 199,
    111, 62,  135, 248, 174, 169, 211, 58,  66,  154, 106, 195, 245, 171, 17,  187, 182, 179, 0,
    243, 132, 56,  148, 75,  128, 133, 158, 100, 130, 126, 91,  13,  153, 246, 216, 219, 119, 68,
    223, 78,  83,  88,  201, 99,  122, 11,  92,  32,  136, 114, 52,  10,  138, 30,  48,  183, 156,
    35,  61,  26,  143, 74,  251, 94,  129, 162, 63,  152, 170, 7,   115, 167, 241, 206, 3,   150,
    55,  59,  151, 220, 90,  53,  23,  131, 125, 173, 15,  238, 79,  95,  89,  16,  105, 137, 225,
    224, 217, 160, 37,  123, 118, 73,  2,   157, 46,  116, 9,   145, 134, 228, 207, 212, 202, 215,
    69,  229, 27,  188, 67,  124, 168, 252, 42,  4,   29,  108, 21,  247, 19,  205, 39,  203, 233,
    40,  186, 147, 198, 192, 155, 33,  164, 191, 98,  204, 165, 180, 117, 76,  140, 36,  210, 172,
    41,  54,  159, 8,   185, 232, 113, 196, 231, 47,  146, 120, 51,  65,  28,  144, 254, 221, 93,
    189, 194, 139, 112, 43,  71,  109, 184, 209,
};

// Upper bounds of the log-length buckets.
constexpr std::uint32_t kTopValues[170] = {
    1,          2,          3,          5,          7,          11,         17,         25,
    38,         57,         86,         129,        194,        291,        437,        656,
    854,        1110,       1443,       1876,       2439,       3171,       3475,       3823,
    4205,       4626,       5088,       5597,       6157,       6772,       7450,       8195,
    9014,       9916,       10907,      11998,      13198,      14518,      15970,      17567,
    19323,      21256,      23382,      25720,      28292,      31121,      34233,      37656,
    41422,      45564,      50121,      55133,      60646,      66711,      73382,      80721,
    88793,      97672,      107439,     118183,     130002,     143002,     157302,     173032,
    190335,     209369,     230306,     253337,     278670,     306538,     337191,     370911,
    408002,     448802,     493682,     543050,     597356,     657091,     722800,     795081,
    874589,     962048,     1058252,    1164078,    1280486,    1408534,    1549388,    1704327,
    1874759,    2062236,    2268459,    2495305,    2744836,    3019320,    3321252,    3653374,
    4018711,    4420582,    4862641,    5348905,    5883796,    6472176,    7119394,    7831333,
    8614467,    9475909,    10423501,   11465851,   12612437,   13873681,   15261050,   16787154,
    18465870,   20312458,   22343706,   24578077,   27035886,   29739474,   32713425,   35984770,
    39583245,   43541573,   47895730,   52685306,   57953837,   63749221,   70124148,   77136564,
    84850228,   93335252,   102668779,  112935659,  124229227,  136652151,  150317384,  165349128,
    181884040,  200072456,  220079703,  242087671,  266296456,  292926096,  322218735,  354440623,
    389884688,  428873168,  471760495,  518936559,  570830240,  627913311,  690704607,  759775136,
    835752671,  919327967,  1011260767, 1112386880, 1223623232, 1345985727, 1480584256, 1628642751,
    1791507135, 1970657856, 2167723648, 2384496256, 2622945920, 2885240448, 3173764736, 3491141248,
    3840255616, 4224281216};

constexpr int kBuckets = 128;
constexpr int kLengthMult = 12;
constexpr int kQRatioMult = 12;

std::uint8_t Mix(std::uint8_t salt, std::uint8_t i, std::uint8_t j, std::uint8_t k) {
  return kPearson[kPearson[kPearson[salt ^ i] ^ j] ^ k];
}

std::uint8_t LCapture(std::uint32_t len) {
  int bottom = 0;
  int top = 170;
  int idx = 85;
  while (true) {
    if (idx == 0) return 0;
    if (len <= kTopValues[idx] && len > kTopValues[idx - 1]) return static_cast<std::uint8_t>(idx);
    if (len < kTopValues[idx]) {
      top = idx - 1;
    } else {
      bottom = idx + 1;
    }
    idx = (bottom + top) / 2;
  }
}

int ModDiff(int x, int y, int range) {
  int dl = std::abs(x - y);
  int dr = range - dl;
  return std::min(dl, dr);
}

int PairDiff(std::uint8_t a, std::uint8_t b) {
  int diff = 0;
  for (int k = 0; k < 4; ++k) {
    int d = std::abs(((a >> (2 * k)) & 3) - ((b >> (2 * k)) & 3));
    diff += d == 3 ? 6 : d;
  }
  return diff;
}

std::uint8_t SwapNibbles(std::uint8_t b) { return static_cast<std::uint8_t>((b >> 4) | (b << 4)); }

}  // namespace

TlshDigest TlshHash(ByteView data) {
  if (data.size() < kTlshMinLength) {
    throw InputTooShort("input of " + std::to_string(data.size()) +
                        " bytes is below the 50-byte minimum");
  }
  std::uint32_t buckets[256] = {};
  std::uint8_t checksum = 0;
  for (std::size_t i = 4; i < data.size(); ++i) {
    const std::uint8_t w0 = data[i], w1 = data[i - 1], w2 = data[i - 2], w3 = data[i - 3],
                       w4 = data[i - 4];
    checksum = Mix(1, w0, w1, checksum);
    ++buckets[Mix(49, w0, w1, w2)];
    ++buckets[Mix(12, w0, w1, w3)];
    ++buckets[Mix(178, w0, w2, w3)];
    ++buckets[Mix(166, w0, w2, w4)];
    ++buckets[Mix(84, w0, w1, w4)];
    ++buckets[Mix(230, w0, w3, w4)];
  }

  std::array<std::uint32_t, kBuckets> sorted;
  std::copy(buckets, buckets + kBuckets, sorted.begin());
  std::sort(sorted.begin(), sorted.end());
  const std::uint32_t q1 = sorted[kBuckets / 4 - 1];
  const std::uint32_t q2 = sorted[kBuckets / 2 - 1];
  const std::uint32_t q3 = sorted[kBuckets - kBuckets / 4 - 1];
  int nonzero = static_cast<int>(
      std::count_if(buckets, buckets + kBuckets, [](std::uint32_t b) { return b > 0; }));
  if (q3 == 0 || nonzero <= kBuckets / 2) {
    throw InsufficientComplexity("input has too little variation to hash");
  }

  TlshDigest d;
  for (int i = 0; i < kBuckets / 4; ++i) {
    std::uint8_t h = 0;
    for (int j = 0; j < 4; ++j) {
      std::uint32_t k = buckets[4 * i + j];
      if (q3 < k) {
        h += 3 << (2 * j);
      } else if (q2 < k) {
        h += 2 << (2 * j);
      } else if (q1 < k) {
        h += 1 << (2 * j);
      }
    }
    d.body[i] = h;
  }
  d.checksum = checksum;
  d.lvalue = LCapture(static_cast<std::uint32_t>(data.size()));
  d.q1_ratio = static_cast<std::uint8_t>((static_cast<std::uint64_t>(q1) * 100 / q3) % 16);
  d.q2_ratio = static_cast<std::uint8_t>((static_cast<std::uint64_t>(q2) * 100 / q3) % 16);
  return d;
}

std::string TlshDigest::Hex() const {
  Bytes raw;
  raw.push_back(SwapNibbles(checksum));
  raw.push_back(SwapNibbles(lvalue));
  raw.push_back(SwapNibbles(static_cast<std::uint8_t>(q1_ratio | (q2_ratio << 4))));
  for (int i = 31; i >= 0; --i) raw.push_back(body[i]);
  return ToHex(raw);
}

TlshDigest TlshDigest::FromHex(std::string_view hex) {
  if (hex.size() == 72 && (hex[0] == 'T' || hex[0] == 't') && hex[1] == '1') hex.remove_prefix(2);
  if (hex.size() != 70) throw BadDigest("TLSH digest must have 70 hex characters");
  Bytes raw;
  try {
    raw = ::bineq::FromHex(hex);
  } catch (const Error&) {
    throw BadDigest("TLSH digest contains non-hex characters");
  }
  TlshDigest d;
  d.checksum = SwapNibbles(raw[0]);
  d.lvalue = SwapNibbles(raw[1]);
  std::uint8_t qb = SwapNibbles(raw[2]);
  d.q1_ratio = qb & 0x0f;
  d.q2_ratio = qb >> 4;
  for (int i = 0; i < 32; ++i) d.body[i] = raw[3 + 31 - i];
  return d;
}

int TlshDistance(const TlshDigest& a, const TlshDigest& b) {
  int diff = 0;
  int ldiff = ModDiff(a.lvalue, b.lvalue, 256);
  diff += ldiff <= 1 ? ldiff : ldiff * kLengthMult;
  for (auto [x, y] : {std::pair{a.q1_ratio, b.q1_ratio}, std::pair{a.q2_ratio, b.q2_ratio}}) {
    int q = ModDiff(x, y, 16);
    diff += q <= 1 ? q : (q - 1) * kQRatioMult;
  }
  if (a.checksum != b.checksum) ++diff;
  for (int i = 0; i < 32; ++i) diff += PairDiff(a.body[i], b.body[i]);
  return diff;
}

TlshVerdict TlshEquivalent(ByteView a, ByteView b, int tau) {
  TlshVerdict v;
  try {
    v.distance = TlshDistance(TlshHash(a), TlshHash(b));
    v.equivalent = v.distance <= tau;
  } catch (const InputTooShort& e) {
    v.error = std::string("InputTooShort: ") + e.what();
  } catch (const InsufficientComplexity& e) {
    v.error = std::string("InsufficientComplexity: ") + e.what();
  }
  return v;
}

}  // namespace bineq
