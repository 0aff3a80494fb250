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

#ifndef BINEQ_NORMALIZE_H_
#define BINEQ_NORMALIZE_H_

#include <string>
#include <vector>

#include "bineq/canonical.h"

namespace bineq {

class NormalizeFailure : public Error {
 public:
  using Error::Error;
};

enum class NormKind {
  kPush,
  kLoad,
  kStore,
  kInvoke,
  kConcat,
  kField,
  kBranch,
  kReturn,
  kNew,
  kArith,
  kOther,
};

struct ConcatPart {
  bool constant = false;
  std::u16string text;     // constant parts
  std::string descriptor;  // argument parts, as the matching append overload
  bool operator==(const ConcatPart&) const = default;
};

struct NormInstr {
  NormKind kind = NormKind::kOther;
  std::string op;  // value type, invoke kind, field op, condition or mnemonic
  LabeledLine operands;
  std::optional<CanonConstant> constant;  // kPush
  std::optional<CanonMemberRef> member;   // kInvoke, kField
  std::optional<CanonIndy> indy;          // invokedynamic left as kOther
  std::string type_name;                  // kNew
  std::vector<ConcatPart> parts;          // kConcat
  int pops = -1;                          // stack effect in values; -1 when not simple
  int pushes = -1;
  bool operator==(const NormInstr&) const = default;
};

struct NormItem {
  int label = -1;
  NormInstr insn;
  bool operator==(const NormItem&) const = default;
};

struct NormCode {
  std::vector<NormItem> items;
  std::vector<LabeledLine> handlers;
  std::vector<LabeledLine> extra;
  bool operator==(const NormCode&) const = default;
};

struct NormMethod {
  std::string name;
  std::string descriptor;
  std::vector<std::string> lines;
  std::optional<NormCode> code;
  bool operator==(const NormMethod&) const = default;
};

struct NormClass {
  std::vector<std::string> header;
  std::vector<CanonMember> fields;
  std::vector<NormMethod> methods;
  bool operator==(const NormClass&) const = default;
};

// Lifts Level 2 code into normalized instructions (constant pushes unified)
// without applying the rewrite rules.
NormCode LiftCode(const CanonCode& code);

// Applies nop removal, Object-method owner canonicalization and string
// concatenation unification, then renumbers labels by first appearance.
// Applying it to its own output changes nothing.
void ApplyRules(NormCode& code);

NormClass NormalizeCanonical(const CanonicalClass& c);
NormClass Normalize(const ClassFile& c);
CanonicalText RenderLevel3(const NormClass& n);

std::string RenderNormInstr(const NormInstr& insn);

}  // namespace bineq

#endif  // BINEQ_NORMALIZE_H_
