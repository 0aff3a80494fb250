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

#ifndef BINEQ_MUTF8_H_
#define BINEQ_MUTF8_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace bineq {

// Strict decoding of the class-file string encoding ("modified UTF-8"):
// NUL only as C0 80, no 4-byte forms, no overlong forms. Returns the offset of
// the first invalid byte, or nullopt when `raw` is well formed.
std::optional<std::size_t> FindModifiedUtf8Error(std::string_view raw);

// Decodes to UTF-16 code units. `raw` must already be valid.
std::u16string DecodeModifiedUtf8(std::string_view raw);

std::string EncodeModifiedUtf8(std::u16string_view text);

// UTF-8 (as used in source code and test literals) to modified UTF-8.
std::string Utf8ToModifiedUtf8(std::string_view utf8);

// Renders Java text as printable UTF-8: escapes quotes, backslashes, control
// characters and unpaired surrogates as \uXXXX. Paired surrogates become one
// 4-byte UTF-8 sequence.
std::string QuoteJavaString(std::u16string_view text);

}  // namespace bineq

#endif  // BINEQ_MUTF8_H_
