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

#include "bineq/canonical.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "bineq/class_file.h"
#include "bineq/diff.h"
#include "bineq/normalize.h"
#include "bineq/opcodes.h"
#include "bineq/testkit.h"
#include "support/class_builder.h"
#include "support/fixtures.h"

namespace bineq {
namespace {

using testing::ClassBuilder;

std::vector<std::string> L2(ByteView b) { return RenderLevel2(ParseClass(b)).lines; }
std::vector<std::string> L3(ByteView b) { return RenderLevel3(Normalize(ParseClass(b))).lines; }

std::vector<Edit> Changes(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  auto edits = DiffLines(a, b);
  std::erase_if(edits, [](const Edit& e) { return e.kind == EditKind::kKeep; });
  return edits;
}

CodeAttribute& CodeOf(ClassFile& c, std::size_t method) {
  for (auto& a : c.methods[method].attributes) {
    if (auto* code = std::get_if<CodeAttribute>(&a.payload)) return *code;
  }
  throw Error("no code");
}

Bytes ConstructorOnly(bool method_ref_first) {
  ClassBuilder b("p/Plain");
  std::uint16_t init = 0;
  if (method_ref_first) init = b.Method("java/lang/Object", "<init>", "()V");
  for (int i = 0; i < 4; ++i) b.Utf8("filler" + std::to_string(i));
  if (!method_ref_first) init = b.Method("java/lang/Object", "<init>", "()V");
  b.AddMethod(0x0001, "<init>", "()V", 1, 1)
      .Op(op::kAload0)
      .Op(op::kInvokespecial, init)
      .Op(op::kReturn);
  return b.Serialize();
}

Bytes ReturnsThree(bool bipush) {
  ClassBuilder b("p/Three");
  auto& code = b.AddMethod(0x0009, "three", "()I", 1, 0);
  if (bipush) {
    code.Op(op::kBipush, 3);
  } else {
    code.Op(static_cast<std::uint8_t>(op::kIconst0 + 3));
  }
  code.Op(op::kIreturn);
  return b.Serialize();
}

TEST(Level2Test, PoolSlotOfMethodRefDoesNotMatter) {
  Bytes a = ConstructorOnly(true), b = ConstructorOnly(false);
  ASSERT_NE(a, b);
  EXPECT_EQ(L2(a), L2(b));
}

TEST(Level2Test, ConstantValueChangeShowsOnItsLine) {
  auto a = L2(testing::ConstantClass(123)), b = L2(testing::ConstantClass(124));
  auto changes = Changes(a, b);
  ASSERT_EQ(changes.size(), 2u);
  EXPECT_NE(a[changes[0].left].find("ConstantValue int 123"), std::string::npos);
  EXPECT_NE(b[changes[1].right].find("ConstantValue int 124"), std::string::npos);
}

TEST(Level2Test, StripAndPermuteAndReorderAreInvisible) {
  auto corpus = testing::LoadCorpus();
  for (std::size_t i = 0; i < corpus.size(); i += 7) {
    ClassFile c = ParseClass(corpus[i].bytes);
    auto base = RenderLevel2(c);
    EXPECT_EQ(RenderLevel2(StripDebugAttrs(c)), base) << corpus[i].path;
    EXPECT_EQ(RenderLevel2(ReorderMembers(c, 5)), base) << corpus[i].path;
  }
  ClassFile c = ParseClass(corpus[42].bytes);
  auto base = RenderLevel2(c);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    ClassFile p = ParseClass(SerializeClass(PermutePool(c, seed)));
    ASSERT_EQ(RenderLevel2(p), base) << "seed " << seed;
  }
}

TEST(Level2Test, InstructionWidthIsInvisible) {
  ClassFile c = ParseClass(testing::ArithmeticClass());
  auto base = RenderLevel2(c);
  for (std::size_t m = 0; m < c.methods.size(); ++m) {
    for (auto& insn : CodeOf(c, m).instructions) {
      if (insn.opcode == op::kLdc) insn.opcode = op::kLdcW;
      if (insn.opcode >= op::kIload0 && insn.opcode <= op::kIload0 + 3) {
        int slot = insn.opcode - op::kIload0;
        insn.opcode = op::kIload;
        insn.operand_count = 0;
        insn.AddOperand(OperandKind::kLocalSlot, slot);
      }
    }
  }
  EXPECT_EQ(RenderLevel2(c), base);
}

TEST(Level2Test, GetClassPairDiffersAtLevel2) {
  auto [a, b] = testing::GetClassPair();
  EXPECT_NE(L2(a), L2(b));
}

TEST(Level3Test, ConstantEncodingsCollapse) {
  Bytes a = ReturnsThree(false), b = ReturnsThree(true);
  EXPECT_NE(L2(a), L2(b));
  EXPECT_EQ(Normalize(ParseClass(a)), Normalize(ParseClass(b)));
}

TEST(Level3Test, GetClassReceiversCollapse) {
  auto [a, b] = testing::GetClassPair();
  EXPECT_EQ(Normalize(ParseClass(a)), Normalize(ParseClass(b)));
  EXPECT_TRUE(Changes(L3(a), L3(b)).empty());
}

TEST(Level3Test, ConcatEncodingsCollapse) {
  auto [a, b] = testing::ConcatPair();
  EXPECT_NE(L2(a), L2(b));
  EXPECT_EQ(L3(a), L3(b));
  auto lines = L3(a);
  EXPECT_TRUE(std::any_of(lines.begin(), lines.end(), [](const std::string& l) {
    return l.find("CONCAT") != std::string::npos;
  }));
}

TEST(Level3Test, EmptyClassIsUnchanged) {
  ClassFile c = ParseClass(testing::MinimalClass());
  EXPECT_EQ(RenderLevel3(Normalize(c)).lines.size(), RenderLevel2(c).lines.size());
}

TEST(Level3Test, OnePushChangeIsOneLine) {
  Bytes a = testing::ArithmeticClass();
  Bytes b = SerializeClass(MutateConstantValue(ParseClass(a), 1));
  auto changes = Changes(L3(a), L3(b));
  ASSERT_EQ(changes.size(), 2u);
  EXPECT_EQ(changes[0].kind, EditKind::kDelete);
  EXPECT_EQ(changes[1].kind, EditKind::kInsert);
}

TEST(Level3Test, RenderIsDeterministicOverCorpus) {
  for (const auto& raw : testing::LoadCorpus()) {
    ClassFile c = ParseClass(raw.bytes);
    ASSERT_EQ(L3(raw.bytes), RenderLevel3(Normalize(ParseClass(SerializeClass(c)))).lines)
        << raw.path;
  }
}

}  // namespace
}  // namespace bineq
