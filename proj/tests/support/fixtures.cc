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

#include "support/fixtures.h"

#include <algorithm>
#include <filesystem>

#include "bineq/opcodes.h"
#include "support/class_builder.h"

namespace bineq::testing {

namespace {

constexpr std::uint16_t kPublicStatic = 0x0009;

void AddConstructor(ClassBuilder& b, const std::string& super = "java/lang/Object") {
  b.AddMethod(0x0001, "<init>", "()V", 1, 1)
      .Op(op::kAload0)
      .Op(op::kInvokespecial, b.Method(super, "<init>", "()V"))
      .Op(op::kReturn);
}

Bytes GetClassVariant(bool interface_call) {
  ClassBuilder b("Holder");
  AddConstructor(b);
  auto& code = b.AddMethod(kPublicStatic, "kind", "(LShape;)Ljava/lang/Class;", 1, 1);
  code.Op(op::kAload0);
  if (interface_call) {
    code.InvokeInterface(b.InterfaceMethod("Shape", "getClass", "()Ljava/lang/Class;"), 1);
  } else {
    code.Op(op::kInvokevirtual, b.Method("java/lang/Object", "getClass", "()Ljava/lang/Class;"));
  }
  code.Op(op::kAreturn);
  b.AddSourceFile("Holder.java");
  return b.Serialize();
}

}  // namespace

Bytes MinimalClass() {
  ClassBuilder b("Empty");
  return b.Serialize();
}

BytePair GetClassPair() { return {GetClassVariant(true), GetClassVariant(false)}; }

BytePair ConcatPair() {
  const std::string sb = "java/lang/StringBuilder";
  const std::string desc = "(Ljava/lang/String;I)Ljava/lang/String;";

  ClassBuilder chain("Greeter");
  AddConstructor(chain);
  chain.AddMethod(kPublicStatic, "show", desc, 2, 2)
      .Op(op::kNew, chain.Class(sb))
      .Op(op::kDup)
      .Op(op::kInvokespecial, chain.Method(sb, "<init>", "()V"))
      .Op(op::kAload0)
      .Op(op::kInvokevirtual,
          chain.Method(sb, "append", "(Ljava/lang/String;)Ljava/lang/StringBuilder;"))
      .Op(op::kLdc, chain.String(":"))
      .Op(op::kInvokevirtual,
          chain.Method(sb, "append", "(Ljava/lang/String;)Ljava/lang/StringBuilder;"))
      .Op(op::kIload1)
      .Op(op::kInvokevirtual, chain.Method(sb, "append", "(I)Ljava/lang/StringBuilder;"))
      .Op(op::kInvokevirtual, chain.Method(sb, "toString", "()Ljava/lang/String;"))
      .Op(op::kAreturn);
  chain.AddSourceFile("Greeter.java");

  ClassBuilder indy("Greeter");
  AddConstructor(indy);
  const std::uint16_t bsm = indy.StaticHandle(indy.Method(
      "java/lang/invoke/StringConcatFactory", "makeConcatWithConstants",
      "(Ljava/lang/invoke/MethodHandles$Lookup;Ljava/lang/String;Ljava/lang/invoke/MethodType;"
      "Ljava/lang/String;[Ljava/lang/Object;)Ljava/lang/invoke/CallSite;"));
  const std::uint16_t site =
      indy.InvokeDynamic(bsm, {indy.String("\x01:\x01")}, "makeConcatWithConstants", desc);
  indy.AddMethod(kPublicStatic, "show", desc, 2, 2)
      .Op(op::kAload0)
      .Op(op::kIload1)
      .Op(op::kInvokedynamic, site)
      .Op(op::kAreturn);
  indy.AddSourceFile("Greeter.java");
  return {chain.Serialize(), indy.Serialize()};
}

Bytes ConstantClass(std::int32_t value) {
  ClassBuilder b("Limits");
  b.AddField(0x0019, "MAX", "I", b.Integer(value));
  AddConstructor(b);
  b.AddSourceFile("Limits.java");
  return b.Serialize();
}

Bytes ArithmeticClass() {
  ClassBuilder b("Ops");
  AddConstructor(b);
  b.AddMethod(kPublicStatic, "mix", "(II)I", 2, 2)
      .Op(op::kIload0)
      .Op(op::kIload1)
      .Op(op::kIadd)
      .Op(op::kIload0)
      .Op(op::kImul)
      .Op(op::kLdc, b.Integer(100000))
      .Op(op::kIdiv)
      .Op(op::kIreturn);
  b.AddMethod(kPublicStatic, "less", "(II)Z", 2, 2)
      .Op(op::kIload0)
      .Op(op::kIload1)
      .Branch(op::kIfIcmpge, 1)
      .Op(op::kIconst1)
      .Op(op::kIreturn)
      .Label(1)
      .Op(op::kIconst0)
      .Op(op::kIreturn);
  b.AddSourceFile("Ops.java");
  return b.Serialize();
}

std::vector<RawClass> LoadCorpus() {
  namespace fs = std::filesystem;
  const fs::path root = fs::path(BINEQ_TEST_DATA) / "corpus";
  std::vector<RawClass> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file() && e.path().extension() == ".class") {
      out.push_back(RawClass::FromFile(e.path().string()));
      out.back().path = fs::relative(e.path(), root).generic_string();
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RawClass& a, const RawClass& b) { return a.path < b.path; });
  return out;
}

}  // namespace bineq::testing
