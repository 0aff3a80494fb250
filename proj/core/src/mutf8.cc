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

#include "bineq/mutf8.h"

#include <cstdint>
#include <cstdio>

#include "bineq/error.h"

namespace bineq {
namespace {

bool IsContinuation(unsigned char c) { return (c & 0xc0) == 0x80; }

void AppendUtf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | cp >> 6));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | cp >> 12));
    out.push_back(static_cast<char>(0x80 | (cp >> 6 & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | cp >> 18));
    out.push_back(static_cast<char>(0x80 | (cp >> 12 & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp >> 6 & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

}  // namespace

std::optional<std::size_t> FindModifiedUtf8Error(std::string_view raw) {
  std::size_t i = 0;
  while (i < raw.size()) {
    auto c = static_cast<unsigned char>(raw[i]);
    if (c == 0) return i;
    if (c < 0x80) {
      ++i;
    } else if ((c & 0xe0) == 0xc0) {
      if (i + 1 >= raw.size() || !IsContinuation(raw[i + 1])) return i;
      std::uint32_t v = (c & 0x1fu) << 6 | (raw[i + 1] & 0x3f);
      if (v != 0 && v < 0x80) return i;
      i += 2;
    } else if ((c & 0xf0) == 0xe0) {
      if (i + 2 >= raw.size() || !IsContinuation(raw[i + 1]) || !IsContinuation(raw[i + 2])) {
        return i;
      }
      std::uint32_t v = (c & 0x0fu) << 12 | (raw[i + 1] & 0x3fu) << 6 | (raw[i + 2] & 0x3f);
      if (v < 0x800) return i;
      i += 3;
    } else {
      return i;
    }
  }
  return std::nullopt;
}

std::u16string DecodeModifiedUtf8(std::string_view raw) {
  std::u16string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    auto c = static_cast<unsigned char>(raw[i]);
    if (c < 0x80) {
      out.push_back(c);
      i += 1;
    } else if ((c & 0xe0) == 0xc0) {
      out.push_back(static_cast<char16_t>((c & 0x1f) << 6 | (raw[i + 1] & 0x3f)));
      i += 2;
    } else {
      out.push_back(
          static_cast<char16_t>((c & 0x0f) << 12 | (raw[i + 1] & 0x3f) << 6 | (raw[i + 2] & 0x3f)));
      i += 3;
    }
  }
  return out;
}

std::string EncodeModifiedUtf8(std::u16string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char16_t u : text) {
    if (u != 0 && u < 0x80) {
      out.push_back(static_cast<char>(u));
    } else if (u < 0x800) {
      out.push_back(static_cast<char>(0xc0 | u >> 6));
      out.push_back(static_cast<char>(0x80 | (u & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xe0 | u >> 12));
      out.push_back(static_cast<char>(0x80 | (u >> 6 & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (u & 0x3f)));
    }
  }
  return out;
}

std::string Utf8ToModifiedUtf8(std::string_view utf8) {
  std::u16string units;
  std::size_t i = 0;
  while (i < utf8.size()) {
    auto c = static_cast<unsigned char>(utf8[i]);
    std::uint32_t cp;
    int extra;
    if (c < 0x80) {
      cp = c;
      extra = 0;
    } else if ((c & 0xe0) == 0xc0) {
      cp = c & 0x1f;
      extra = 1;
    } else if ((c & 0xf0) == 0xe0) {
      cp = c & 0x0f;
      extra = 2;
    } else if ((c & 0xf8) == 0xf0) {
      cp = c & 0x07;
      extra = 3;
    } else {
      throw Error("invalid UTF-8 input");
    }
    if (i + extra >= utf8.size()) {
      throw Error("truncated UTF-8 input");
    }
    for (int k = 1; k <= extra; ++k) {
      cp = cp << 6 | (static_cast<unsigned char>(utf8[i + k]) & 0x3f);
    }
    i += 1 + extra;
    if (cp >= 0x10000) {
      cp -= 0x10000;
      units.push_back(static_cast<char16_t>(0xd800 + (cp >> 10)));
      units.push_back(static_cast<char16_t>(0xdc00 + (cp & 0x3ff)));
    } else {
      units.push_back(static_cast<char16_t>(cp));
    }
  }
  return EncodeModifiedUtf8(units);
}

std::string QuoteJavaString(std::u16string_view text) {
  std::string out = "\"";
  for (std::size_t i = 0; i < text.size(); ++i) {
    char16_t u = text[i];
    switch (u) {
      case u'"':
        out += "\\\"";
        continue;
      case u'\\':
        out += "\\\\";
        continue;
      case u'\n':
        out += "\\n";
        continue;
      case u'\r':
        out += "\\r";
        continue;
      case u'\t':
        out += "\\t";
        continue;
      default:
        break;
    }
    bool high = u >= 0xd800 && u < 0xdc00;
    bool low = u >= 0xdc00 && u < 0xe000;
    if (high && i + 1 < text.size() && text[i + 1] >= 0xdc00 && text[i + 1] < 0xe000) {
      std::uint32_t cp = 0x10000 + ((u - 0xd800u) << 10) + (text[i + 1] - 0xdc00u);
      AppendUtf8(out, cp);
      ++i;
    } else if (u < 0x20 || u == 0x7f || high || low || (u >= 0x80 && u < 0xa0) || u == 0x2028 ||
               u == 0x2029 || u == 0xfeff) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(u));
      out += buf;
    } else {
      AppendUtf8(out, u);
    }
  }
  out += '"';
  return out;
}

}  // namespace bineq
