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

#include "bineq/source_equiv.h"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <map>
#include <unordered_set>

#include "bineq/zip.h"

namespace bineq {
namespace {

const std::unordered_set<std::string_view>& Keywords() {
  static const std::unordered_set<std::string_view> k = {
      "abstract", "assert", "boolean",    "break",     "byte",       "case",      "catch",
      "char",     "class",  "const",      "continue",  "default",    "do",        "double",
      "else",     "enum",   "extends",    "final",     "finally",    "float",     "for",
      "goto",     "if",     "implements", "import",    "instanceof", "int",       "interface",
      "long",     "native", "new",        "package",   "private",    "protected", "public",
      "return",   "short",  "static",     "strictfp",  "super",      "switch",    "synchronized",
      "this",     "throw",  "throws",     "transient", "try",        "void",      "volatile",
      "while",    "true",   "false",      "null",      "_"};
  return k;
}

// Longest first, so the first match is the maximal munch.
constexpr std::array<std::string_view, 40> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    ">=",   "+=",  "-=",  "*=",  "/=",  "&=", "|=", "^=", "%=", "<<", ">>", "(",  ")",  "{",
    "}",    "[",   "]",   ";",   ",",   ".",  "@",  "=",  ">",  "<",  "!",  "~"};
constexpr std::string_view kSingleOperators = "?:+-*/&|^%";

bool IsSeparator(std::string_view op) {
  return op == "(" || op == ")" || op == "{" || op == "}" || op == "[" || op == "]" || op == ";" ||
         op == "," || op == "." || op == "..." || op == "@" || op == "::";
}

bool IdentStart(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool IdentPart(unsigned char c) { return IdentStart(c) || (c >= '0' && c <= '9'); }

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

bool ValidUtf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t extra;
    if (c < 0x80) {
      extra = 0;
    } else if (c >= 0xc2 && c <= 0xdf) {
      extra = 1;
    } else if (c >= 0xe0 && c <= 0xef) {
      extra = 2;
    } else if (c >= 0xf0 && c <= 0xf4) {
      extra = 3;
    } else {
      return false;
    }
    if (s.size() - i <= extra) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xc0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : s_(text) {}

  std::vector<Token> Run() {
    while (true) {
      SkipTrivia();
      if (i_ >= s_.size()) break;
      const std::size_t start = i_;
      const unsigned char c = static_cast<unsigned char>(s_[i_]);
      if (c == '"') {
        StringLiteral();
        Emit(TokenKind::kLiteral, start);
      } else if (c == '\'') {
        Quoted('\'');
        Emit(TokenKind::kLiteral, start);
      } else if (IsDigit(static_cast<char>(c)) ||
                 (c == '.' && i_ + 1 < s_.size() && IsDigit(s_[i_ + 1]))) {
        Number();
        Emit(TokenKind::kLiteral, start);
      } else if (IdentStart(c)) {
        while (i_ < s_.size() && IdentPart(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::string_view word = s_.substr(start, i_ - start);
        Emit(Keywords().contains(word) ? TokenKind::kKeyword : TokenKind::kIdentifier, start);
      } else {
        Operator(start);
      }
    }
    return std::move(out_);
  }

 private:
  void Emit(TokenKind kind, std::size_t start) {
    out_.push_back({kind, std::string(s_.substr(start, i_ - start)), start});
  }

  void SkipTrivia() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        ++i_;
      } else if (s_.substr(i_, 2) == "//") {
        while (i_ < s_.size() && s_[i_] != '\n' && s_[i_] != '\r') ++i_;
      } else if (s_.substr(i_, 2) == "/*") {
        std::size_t end = s_.find("*/", i_ + 2);
        if (end == std::string_view::npos) throw LexError(i_, "unterminated block comment");
        i_ = end + 2;
      } else {
        break;
      }
    }
  }

  void StringLiteral() {
    if (s_.substr(i_, 3) == "\"\"\"") {
      const std::size_t start = i_;
      i_ += 3;
      while (i_ < s_.size()) {
        if (s_[i_] == '\\') {
          i_ += 2;
        } else if (s_.substr(i_, 3) == "\"\"\"") {
          i_ += 3;
          return;
        } else {
          ++i_;
        }
      }
      throw LexError(start, "unterminated text block");
    }
    Quoted('"');
  }

  void Quoted(char quote) {
    const std::size_t start = i_++;
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '\\') {
        i_ += 2;
      } else if (c == quote) {
        ++i_;
        return;
      } else if (c == '\n' || c == '\r') {
        break;
      } else {
        ++i_;
      }
    }
    throw LexError(start,
                   quote == '"' ? "unterminated string literal" : "unterminated char literal");
  }

  void Number() {
    const bool hex = s_.substr(i_, 2) == "0x" || s_.substr(i_, 2) == "0X";
    if (hex) i_ += 2;
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (IdentPart(static_cast<unsigned char>(c)) && c != '$') {
        ++i_;
        const bool exponent = hex ? (c == 'p' || c == 'P') : (c == 'e' || c == 'E');
        if (exponent && i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) ++i_;
      } else if (c == '.' && s_.substr(i_, 3) != "...") {
        ++i_;
      } else {
        break;
      }
    }
  }

  void Operator(std::size_t start) {
    for (std::string_view op : kOperators) {
      if (s_.substr(i_, op.size()) == op) {
        i_ += op.size();
        Emit(IsSeparator(op) ? TokenKind::kSeparator : TokenKind::kOperator, start);
        return;
      }
    }
    if (kSingleOperators.find(s_[i_]) != std::string_view::npos) {
      ++i_;
      Emit(TokenKind::kOperator, start);
      return;
    }
    throw LexError(
        i_, fmt::format("unexpected character 0x{:02x}", static_cast<unsigned char>(s_[i_])));
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::vector<Token> out_;
};

// Number of tokens forming a Generated annotation name starting at `at`
// (just after '@'), or 0.
std::size_t GeneratedNameLength(const std::vector<Token>& t, std::size_t at) {
  static const std::vector<std::vector<std::string_view>> kNames = {
      {"javax", ".", "annotation", ".", "Generated"},
      {"jakarta", ".", "annotation", ".", "Generated"},
      {"Generated"}};
  for (const auto& name : kNames) {
    if (at + name.size() > t.size()) continue;
    bool match = true;
    for (std::size_t k = 0; k < name.size() && match; ++k) match = t[at + k].lexeme == name[k];
    if (!match) continue;
    const std::size_t end = at + name.size();
    if (end < t.size() && t[end].lexeme == ".") continue;
    return name.size();
  }
  return 0;
}

std::string Shorten(std::string_view s) {
  if (s.size() <= 80) return std::string(s);
  return std::string(s.substr(0, 77)) + "...";
}

}  // namespace

std::string_view TokenKindName(TokenKind k) {
  switch (k) {
    case TokenKind::kIdentifier:
      return "identifier";
    case TokenKind::kKeyword:
      return "keyword";
    case TokenKind::kLiteral:
      return "literal";
    case TokenKind::kOperator:
      return "operator";
    case TokenKind::kSeparator:
      return "separator";
  }
  return "";
}

std::string DecodeSource(ByteView bytes) {
  std::string_view s = AsChars(bytes);
  if (s.starts_with("\xef\xbb\xbf")) s.remove_prefix(3);
  if (ValidUtf8(s)) return std::string(s);
  std::string out;
  out.reserve(s.size() + s.size() / 8);
  for (unsigned char c : s) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back(static_cast<char>(0xc0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3f)));
    }
  }
  return out;
}

std::vector<Token> TokenizeJava(std::string_view text) { return Lexer(text).Run(); }

std::vector<Token> StripGenerated(const std::vector<Token>& t) {
  std::vector<Token> out;
  out.reserve(t.size());
  std::size_t i = 0;
  while (i < t.size()) {
    if (t[i].kind == TokenKind::kSeparator && t[i].lexeme == "@") {
      if (std::size_t n = GeneratedNameLength(t, i + 1)) {
        std::size_t j = i + 1 + n;
        if (j < t.size() && t[j].lexeme == "(") {
          int depth = 0;
          std::size_t k = j;
          for (; k < t.size(); ++k) {
            if (t[k].lexeme == "(") ++depth;
            if (t[k].lexeme == ")" && --depth == 0) break;
          }
          if (k < t.size()) j = k + 1;
        }
        i = j;
        continue;
      }
    }
    out.push_back(t[i++]);
  }
  return out;
}

Language SourceFile::language() const {
  std::string_view p = path;
  if (p.size() >= 5) {
    std::string ext(p.substr(p.size() - 5));
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".java") return Language::kJava;
  }
  return Language::kOther;
}

SourceVerdict SourceEquiv(const SourceFile& a, const SourceFile& b) {
  SourceVerdict v;
  if (a.language() == Language::kJava && b.language() == Language::kJava) {
    try {
      auto ta = StripGenerated(TokenizeJava(DecodeSource(a.bytes)));
      auto tb = StripGenerated(TokenizeJava(DecodeSource(b.bytes)));
      auto [ia, ib] = std::mismatch(ta.begin(), ta.end(), tb.begin(), tb.end());
      if (ia == ta.end() && ib == tb.end()) {
        v.equivalent = true;
        return v;
      }
      const std::size_t index = static_cast<std::size_t>(ia - ta.begin());
      auto describe = [](const std::vector<Token>& ts, std::vector<Token>::const_iterator it) {
        if (it == ts.end()) return std::string("<end of file>");
        return fmt::format("{} {}", TokenKindName(it->kind), Shorten(it->lexeme));
      };
      v.provenance = fmt::format("token {}: {} vs {}", index, describe(ta, ia), describe(tb, ib));
      return v;
    } catch (const LexError& e) {
      v.lex_fallback = true;
      v.warning = e.what();
    }
  }
  auto [ia, ib] = std::mismatch(a.bytes.begin(), a.bytes.end(), b.bytes.begin(), b.bytes.end());
  if (ia == a.bytes.end() && ib == b.bytes.end()) {
    v.equivalent = true;
  } else {
    v.provenance = fmt::format("byte offset {}", ia - a.bytes.begin());
  }
  return v;
}

bool SourceJarReport::equivalent() const {
  if (!missing_in_left.empty() || !missing_in_right.empty()) return false;
  return std::all_of(entries.begin(), entries.end(),
                     [](const SourceEntryVerdict& e) { return e.verdict.equivalent; });
}

SourceJarReport CompareSourceJars(ByteView left, ByteView right) {
  std::map<std::string, std::pair<const ZipEntry*, const ZipEntry*>> by_path;
  std::vector<ZipEntry> lz = ReadZip(left);
  std::vector<ZipEntry> rz = ReadZip(right);
  for (const auto& e : lz) {
    if (!e.directory() && !by_path[e.name].first) by_path[e.name].first = &e;
  }
  for (const auto& e : rz) {
    if (!e.directory() && !by_path[e.name].second) by_path[e.name].second = &e;
  }
  SourceJarReport report;
  for (const auto& [path, sides] : by_path) {
    if (!sides.first) {
      report.missing_in_left.push_back(path);
    } else if (!sides.second) {
      report.missing_in_right.push_back(path);
    } else {
      report.entries.push_back(
          {path, SourceEquiv({path, sides.first->data}, {path, sides.second->data})});
    }
  }
  return report;
}

}  // namespace bineq
