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

#ifndef BINEQ_SOURCE_EQUIV_H_
#define BINEQ_SOURCE_EQUIV_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bineq/bytes.h"
#include "bineq/error.h"

namespace bineq {

class LexError : public Error {
 public:
  LexError(std::size_t offset, const std::string& what)
      : Error("lex error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

enum class TokenKind { kIdentifier, kKeyword, kLiteral, kOperator, kSeparator };
std::string_view TokenKindName(TokenKind k);

struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t offset = 0;  // byte offset in the decoded text

  bool operator==(const Token& o) const { return kind == o.kind && lexeme == o.lexeme; }
};

// UTF-8 with the BOM removed; input that is not valid UTF-8 is read as
// Latin-1 and converted.
std::string DecodeSource(ByteView bytes);

// Drops comments and whitespace. String, char and text-block literals are kept
// verbatim, escapes included.
std::vector<Token> TokenizeJava(std::string_view text);

// Removes @Generated, @javax.annotation.Generated and
// @jakarta.annotation.Generated together with their argument lists.
std::vector<Token> StripGenerated(const std::vector<Token>& tokens);

enum class Language { kJava, kOther };

struct SourceFile {
  std::string path;
  Bytes bytes;

  Language language() const;
};

struct SourceVerdict {
  bool equivalent = false;
  // First differing token with both lexemes, or first differing byte offset.
  std::string provenance;
  // Set when a Java file failed to tokenize and bytes were compared instead.
  bool lex_fallback = false;
  std::string warning;
};

SourceVerdict SourceEquiv(const SourceFile& a, const SourceFile& b);

struct SourceEntryVerdict {
  std::string path;
  SourceVerdict verdict;
};

struct SourceJarReport {
  std::vector<std::string> missing_in_left, missing_in_right;
  std::vector<SourceEntryVerdict> entries;  // path order

  bool equivalent() const;
};

// Compares every file of two source archives by path.
SourceJarReport CompareSourceJars(ByteView left, ByteView right);

}  // namespace bineq

#endif  // BINEQ_SOURCE_EQUIV_H_
