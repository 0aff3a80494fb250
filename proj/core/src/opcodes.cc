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

#include "bineq/opcodes.h"

#include <array>
#include <string>
#include <unordered_map>

namespace bineq {
namespace {

using F = OperandFormat;

constexpr std::array<OpcodeInfo, 256> kOpcodes = {{
    {"nop", F::kNone},
    {"aconst_null", F::kNone},
    {"iconst_m1", F::kNone},
    {"iconst_0", F::kNone},
    {"iconst_1", F::kNone},
    {"iconst_2", F::kNone},
    {"iconst_3", F::kNone},
    {"iconst_4", F::kNone},
    {"iconst_5", F::kNone},
    {"lconst_0", F::kNone},
    {"lconst_1", F::kNone},
    {"fconst_0", F::kNone},
    {"fconst_1", F::kNone},
    {"fconst_2", F::kNone},
    {"dconst_0", F::kNone},
    {"dconst_1", F::kNone},
    {"bipush", F::kByteImmediate},
    {"sipush", F::kShortImmediate},
    {"ldc", F::kPoolU1},
    {"ldc_w", F::kPoolU2},
    {"ldc2_w", F::kPoolU2},
    {"iload", F::kLocal},
    {"lload", F::kLocal},
    {"fload", F::kLocal},
    {"dload", F::kLocal},
    {"aload", F::kLocal},
    {"iload_0", F::kNone},
    {"iload_1", F::kNone},
    {"iload_2", F::kNone},
    {"iload_3", F::kNone},
    {"lload_0", F::kNone},
    {"lload_1", F::kNone},
    {"lload_2", F::kNone},
    {"lload_3", F::kNone},
    {"fload_0", F::kNone},
    {"fload_1", F::kNone},
    {"fload_2", F::kNone},
    {"fload_3", F::kNone},
    {"dload_0", F::kNone},
    {"dload_1", F::kNone},
    {"dload_2", F::kNone},
    {"dload_3", F::kNone},
    {"aload_0", F::kNone},
    {"aload_1", F::kNone},
    {"aload_2", F::kNone},
    {"aload_3", F::kNone},
    {"iaload", F::kNone},
    {"laload", F::kNone},
    {"faload", F::kNone},
    {"daload", F::kNone},
    {"aaload", F::kNone},
    {"baload", F::kNone},
    {"caload", F::kNone},
    {"saload", F::kNone},
    {"istore", F::kLocal},
    {"lstore", F::kLocal},
    {"fstore", F::kLocal},
    {"dstore", F::kLocal},
    {"astore", F::kLocal},
    {"istore_0", F::kNone},
    {"istore_1", F::kNone},
    {"istore_2", F::kNone},
    {"istore_3", F::kNone},
    {"lstore_0", F::kNone},
    {"lstore_1", F::kNone},
    {"lstore_2", F::kNone},
    {"lstore_3", F::kNone},
    {"fstore_0", F::kNone},
    {"fstore_1", F::kNone},
    {"fstore_2", F::kNone},
    {"fstore_3", F::kNone},
    {"dstore_0", F::kNone},
    {"dstore_1", F::kNone},
    {"dstore_2", F::kNone},
    {"dstore_3", F::kNone},
    {"astore_0", F::kNone},
    {"astore_1", F::kNone},
    {"astore_2", F::kNone},
    {"astore_3", F::kNone},
    {"iastore", F::kNone},
    {"lastore", F::kNone},
    {"fastore", F::kNone},
    {"dastore", F::kNone},
    {"aastore", F::kNone},
    {"bastore", F::kNone},
    {"castore", F::kNone},
    {"sastore", F::kNone},
    {"pop", F::kNone},
    {"pop2", F::kNone},
    {"dup", F::kNone},
    {"dup_x1", F::kNone},
    {"dup_x2", F::kNone},
    {"dup2", F::kNone},
    {"dup2_x1", F::kNone},
    {"dup2_x2", F::kNone},
    {"swap", F::kNone},
    {"iadd", F::kNone},
    {"ladd", F::kNone},
    {"fadd", F::kNone},
    {"dadd", F::kNone},
    {"isub", F::kNone},
    {"lsub", F::kNone},
    {"fsub", F::kNone},
    {"dsub", F::kNone},
    {"imul", F::kNone},
    {"lmul", F::kNone},
    {"fmul", F::kNone},
    {"dmul", F::kNone},
    {"idiv", F::kNone},
    {"ldiv", F::kNone},
    {"fdiv", F::kNone},
    {"ddiv", F::kNone},
    {"irem", F::kNone},
    {"lrem", F::kNone},
    {"frem", F::kNone},
    {"drem", F::kNone},
    {"ineg", F::kNone},
    {"lneg", F::kNone},
    {"fneg", F::kNone},
    {"dneg", F::kNone},
    {"ishl", F::kNone},
    {"lshl", F::kNone},
    {"ishr", F::kNone},
    {"lshr", F::kNone},
    {"iushr", F::kNone},
    {"lushr", F::kNone},
    {"iand", F::kNone},
    {"land", F::kNone},
    {"ior", F::kNone},
    {"lor", F::kNone},
    {"ixor", F::kNone},
    {"lxor", F::kNone},
    {"iinc", F::kIinc},
    {"i2l", F::kNone},
    {"i2f", F::kNone},
    {"i2d", F::kNone},
    {"l2i", F::kNone},
    {"l2f", F::kNone},
    {"l2d", F::kNone},
    {"f2i", F::kNone},
    {"f2l", F::kNone},
    {"f2d", F::kNone},
    {"d2i", F::kNone},
    {"d2l", F::kNone},
    {"d2f", F::kNone},
    {"i2b", F::kNone},
    {"i2c", F::kNone},
    {"i2s", F::kNone},
    {"lcmp", F::kNone},
    {"fcmpl", F::kNone},
    {"fcmpg", F::kNone},
    {"dcmpl", F::kNone},
    {"dcmpg", F::kNone},
    {"ifeq", F::kBranch16},
    {"ifne", F::kBranch16},
    {"iflt", F::kBranch16},
    {"ifge", F::kBranch16},
    {"ifgt", F::kBranch16},
    {"ifle", F::kBranch16},
    {"if_icmpeq", F::kBranch16},
    {"if_icmpne", F::kBranch16},
    {"if_icmplt", F::kBranch16},
    {"if_icmpge", F::kBranch16},
    {"if_icmpgt", F::kBranch16},
    {"if_icmple", F::kBranch16},
    {"if_acmpeq", F::kBranch16},
    {"if_acmpne", F::kBranch16},
    {"goto", F::kBranch16},
    {"jsr", F::kBranch16},
    {"ret", F::kLocal},
    {"tableswitch", F::kTableSwitch},
    {"lookupswitch", F::kLookupSwitch},
    {"ireturn", F::kNone},
    {"lreturn", F::kNone},
    {"freturn", F::kNone},
    {"dreturn", F::kNone},
    {"areturn", F::kNone},
    {"return", F::kNone},
    {"getstatic", F::kPoolU2},
    {"putstatic", F::kPoolU2},
    {"getfield", F::kPoolU2},
    {"putfield", F::kPoolU2},
    {"invokevirtual", F::kPoolU2},
    {"invokespecial", F::kPoolU2},
    {"invokestatic", F::kPoolU2},
    {"invokeinterface", F::kInvokeInterface},
    {"invokedynamic", F::kInvokeDynamic},
    {"new", F::kPoolU2},
    {"newarray", F::kNewArray},
    {"anewarray", F::kPoolU2},
    {"arraylength", F::kNone},
    {"athrow", F::kNone},
    {"checkcast", F::kPoolU2},
    {"instanceof", F::kPoolU2},
    {"monitorenter", F::kNone},
    {"monitorexit", F::kNone},
    {"wide", F::kWide},
    {"multianewarray", F::kMultiANewArray},
    {"ifnull", F::kBranch16},
    {"ifnonnull", F::kBranch16},
    {"goto_w", F::kBranch32},
    {"jsr_w", F::kBranch32},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
    {"<invalid>", F::kInvalid},
}};

}  // namespace

const OpcodeInfo& GetOpcodeInfo(std::uint8_t opcode) { return kOpcodes[opcode]; }

std::optional<std::uint8_t> OpcodeByMnemonic(std::string_view mnemonic) {
  static const auto* const index = [] {
    auto* m = new std::unordered_map<std::string_view, std::uint8_t>();
    for (int i = 0; i < 256; ++i) {
      if (kOpcodes[i].format != F::kInvalid) {
        m->emplace(kOpcodes[i].mnemonic, static_cast<std::uint8_t>(i));
      }
    }
    return m;
  }();
  auto it = index->find(mnemonic);
  if (it == index->end()) return std::nullopt;
  return it->second;
}

std::optional<ShortForm> ExpandShortLocal(std::uint8_t opcode) {
  // iload_0 .. aload_3 and istore_0 .. astore_3 come in blocks of four per
  // type, in the same type order as the long forms.
  if (opcode >= op::kIload0 && opcode <= op::kAload3) {
    int rel = opcode - op::kIload0;
    return ShortForm{static_cast<std::uint8_t>(op::kIload + rel / 4), rel % 4};
  }
  if (opcode >= op::kIstore0 && opcode <= op::kAstore3) {
    int rel = opcode - op::kIstore0;
    return ShortForm{static_cast<std::uint8_t>(op::kIstore + rel / 4), rel % 4};
  }
  return std::nullopt;
}

}  // namespace bineq
