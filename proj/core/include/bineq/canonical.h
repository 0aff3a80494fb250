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

#ifndef BINEQ_CANONICAL_H_
#define BINEQ_CANONICAL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bineq/class_file.h"
#include "bineq/error.h"

namespace bineq {

class RenderFailure : public Error {
 public:
  using Error::Error;
};

// Deterministic text output of a transformation. Lines carry no trailing
// whitespace; Joined() separates them with LF and ends with a final LF.
struct CanonicalText {
  int level = 2;
  std::vector<std::string> lines;

  std::string Joined() const;
  bool operator==(const CanonicalText&) const = default;
};

// Marker byte standing for a label reference inside LabeledLine::text.
inline constexpr char kLabelMarker = '\x01';

// A line whose label references are kept symbolic so later passes can
// renumber them.
struct LabeledLine {
  std::string text;
  std::vector<int> labels;

  std::string Render(const std::vector<int>* renumber = nullptr) const;
  bool operator==(const LabeledLine&) const = default;
};

struct CanonConstant {
  ConstTag tag = ConstTag::kInteger;
  std::string text;          // e.g. "int 3", "string \"a\""
  std::int64_t integer = 0;  // Integer and Long values
  std::u16string string;     // String values
  bool operator==(const CanonConstant&) const = default;
};

struct CanonMemberRef {
  std::string owner;
  std::string name;
  std::string descriptor;
  bool interface_ref = false;
  bool operator==(const CanonMemberRef&) const = default;
};

struct CanonIndy {
  std::string name;
  std::string descriptor;
  std::uint8_t bootstrap_kind = 0;
  CanonMemberRef bootstrap;
  std::vector<CanonConstant> arguments;
  bool operator==(const CanonIndy&) const = default;
};

// One instruction with pool operands resolved and width encodings collapsed:
// xload_n is iload n, ldc_w is ldc, goto_w is goto, jsr_w is jsr and the wide
// prefix is dropped.
struct CanonInstr {
  std::uint8_t opcode = 0;  // the collapsed opcode
  LabeledLine operands;     // rendered operand text
  std::int32_t value = 0;   // immediate, local slot or dimension count
  std::int32_t value2 = 0;  // iinc increment, invokeinterface count
  std::optional<CanonConstant> constant;
  std::optional<CanonMemberRef> member;
  std::optional<CanonIndy> indy;
  std::string type_name;  // class operand of new, checkcast, ...

  bool operator==(const CanonInstr&) const = default;
};

struct CanonItem {
  int label = -1;  // >= 0: label mark, otherwise an instruction
  CanonInstr insn;
  bool operator==(const CanonItem&) const = default;
};

struct CanonCode {
  int max_stack = 0;
  int max_locals = 0;
  std::vector<CanonItem> items;
  std::vector<LabeledLine> handlers;  // exception table, declared order
  std::vector<LabeledLine> extra;     // code-level attributes that survive
  int label_count = 0;
  bool operator==(const CanonCode&) const = default;
};

struct CanonMember {
  std::string name;
  std::string descriptor;
  std::vector<std::string> lines;  // flags and attributes, excluding code
  std::optional<CanonCode> code;
  bool operator==(const CanonMember&) const = default;
};

// Pool-free model behind the Level 2 text. Fields and methods are sorted by
// (name, descriptor).
struct CanonicalClass {
  std::vector<std::string> header;
  std::vector<CanonMember> fields;
  std::vector<CanonMember> methods;
  bool operator==(const CanonicalClass&) const = default;
};

CanonicalClass BuildCanonical(const ClassFile& c);
CanonicalText RenderCanonical(const CanonicalClass& c);
CanonicalText RenderLevel2(const ClassFile& c);

// Renders a name from the pool: bare when printable ASCII, quoted otherwise.
std::string PrintableName(const std::string& modified_utf8);

// Constant text shared by ldc operands and the Level 3 push forms. NaN
// payloads are kept visible.
std::string FormatFloatBits(std::uint32_t bits);
std::string FormatDoubleBits(std::uint64_t bits);

// Text of one instruction line without indentation.
std::string RenderInstr(const CanonInstr& insn, const std::vector<int>* renumber = nullptr);

}  // namespace bineq

#endif  // BINEQ_CANONICAL_H_
