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

#include <limits>
#include <string>

#include "bineq/class_file.h"
#include "bineq/opcodes.h"

namespace bineq {
namespace {

std::uint32_t SwitchPadding(std::uint32_t at) { return 3 - (at % 4); }

bool IsBranchOperand(const Operand& o) { return o.kind == OperandKind::kBranchTarget; }

}  // namespace

std::uint32_t EncodedSize(const Instruction& insn, std::uint32_t at) {
  const OpcodeInfo& info = GetOpcodeInfo(insn.opcode);
  switch (info.format) {
    case OperandFormat::kNone:
      return 1;
    case OperandFormat::kLocal:
      return insn.wide ? 4 : 2;
    case OperandFormat::kIinc:
      return insn.wide ? 6 : 3;
    case OperandFormat::kByteImmediate:
    case OperandFormat::kNewArray:
      return 2;
    case OperandFormat::kPoolU1:
      return insn.operands[0].value > 0xff ? 3 : 2;
    case OperandFormat::kShortImmediate:
    case OperandFormat::kPoolU2:
    case OperandFormat::kBranch16:
      return 3;
    case OperandFormat::kMultiANewArray:
      return 4;
    case OperandFormat::kBranch32:
    case OperandFormat::kInvokeInterface:
    case OperandFormat::kInvokeDynamic:
      return 5;
    case OperandFormat::kTableSwitch:
      return 1 + SwitchPadding(at) + 12 + 4 * static_cast<std::uint32_t>(insn.table->cases.size());
    case OperandFormat::kLookupSwitch:
      return 1 + SwitchPadding(at) + 8 + 8 * static_cast<std::uint32_t>(insn.table->cases.size());
    case OperandFormat::kWide:
    case OperandFormat::kInvalid:
      break;
  }
  throw UnencodableModel("instruction with invalid opcode " + std::to_string(insn.opcode));
}

std::vector<Instruction> DecodeCode(ByteView code, std::size_t base_offset) {
  std::vector<Instruction> out;
  ByteReader r(code, base_offset);
  while (!r.at_end()) {
    Instruction insn;
    insn.offset = static_cast<std::uint32_t>(r.position());
    std::size_t start_abs = r.absolute_position();
    auto fail = [&](const std::string& what) -> void { throw MalformedClass(start_abs, what); };
    insn.opcode = r.U1();
    OperandFormat format = GetOpcodeInfo(insn.opcode).format;
    if (format == OperandFormat::kWide) {
      insn.wide = true;
      insn.opcode = r.U1();
      format = GetOpcodeInfo(insn.opcode).format;
      if (format != OperandFormat::kLocal && format != OperandFormat::kIinc) {
        fail("wide prefix on opcode " + std::to_string(insn.opcode));
      }
    }
    const auto here = static_cast<std::int64_t>(insn.offset);
    auto target = [&](std::int64_t delta) { return static_cast<std::int32_t>(here + delta); };
    switch (format) {
      case OperandFormat::kNone:
        break;
      case OperandFormat::kLocal:
        insn.AddOperand(OperandKind::kLocalSlot, insn.wide ? r.U2() : r.U1());
        break;
      case OperandFormat::kIinc:
        insn.AddOperand(OperandKind::kLocalSlot, insn.wide ? r.U2() : r.U1());
        insn.AddOperand(OperandKind::kImmediate, insn.wide ? r.S2() : r.S1());
        break;
      case OperandFormat::kByteImmediate:
        insn.AddOperand(OperandKind::kImmediate, r.S1());
        break;
      case OperandFormat::kShortImmediate:
        insn.AddOperand(OperandKind::kImmediate, r.S2());
        break;
      case OperandFormat::kPoolU1:
        insn.AddOperand(OperandKind::kPoolIndex, r.U1());
        break;
      case OperandFormat::kPoolU2:
        insn.AddOperand(OperandKind::kPoolIndex, r.U2());
        break;
      case OperandFormat::kBranch16:
        insn.AddOperand(OperandKind::kBranchTarget, target(r.S2()));
        break;
      case OperandFormat::kBranch32:
        insn.AddOperand(OperandKind::kBranchTarget, target(r.S4()));
        break;
      case OperandFormat::kInvokeInterface: {
        insn.AddOperand(OperandKind::kPoolIndex, r.U2());
        insn.AddOperand(OperandKind::kCount, r.U1());
        if (r.U1() != 0) fail("invokeinterface trailing byte must be zero");
        break;
      }
      case OperandFormat::kInvokeDynamic:
        insn.AddOperand(OperandKind::kPoolIndex, r.U2());
        if (r.U2() != 0) fail("invokedynamic trailing bytes must be zero");
        break;
      case OperandFormat::kNewArray:
        insn.AddOperand(OperandKind::kArrayType, r.U1());
        break;
      case OperandFormat::kMultiANewArray:
        insn.AddOperand(OperandKind::kPoolIndex, r.U2());
        insn.AddOperand(OperandKind::kCount, r.U1());
        break;
      case OperandFormat::kTableSwitch:
      case OperandFormat::kLookupSwitch: {
        for (std::uint32_t i = SwitchPadding(insn.offset); i > 0; --i) {
          if (r.U1() != 0) fail("misaligned switch: non-zero padding");
        }
        SwitchTable table;
        table.default_target = target(r.S4());
        if (format == OperandFormat::kTableSwitch) {
          table.low = r.S4();
          table.high = r.S4();
          if (table.low > table.high) fail("tableswitch low exceeds high");
          std::int64_t n = static_cast<std::int64_t>(table.high) - table.low + 1;
          if (n * 4 > static_cast<std::int64_t>(r.remaining())) {
            throw MalformedClass(base_offset + code.size(), "unexpected end of data");
          }
          for (std::int64_t k = 0; k < n; ++k) {
            table.cases.push_back(
                SwitchCase{static_cast<std::int32_t>(table.low + k), target(r.S4())});
          }
        } else {
          std::int32_t npairs = r.S4();
          if (npairs < 0) fail("lookupswitch with negative pair count");
          if (static_cast<std::int64_t>(npairs) * 8 > static_cast<std::int64_t>(r.remaining())) {
            throw MalformedClass(base_offset + code.size(), "unexpected end of data");
          }
          for (std::int32_t k = 0; k < npairs; ++k) {
            std::int32_t match = r.S4();
            table.cases.push_back(SwitchCase{match, target(r.S4())});
          }
        }
        insn.table = std::move(table);
        break;
      }
      case OperandFormat::kWide:
      case OperandFormat::kInvalid:
        fail("unknown opcode " + std::to_string(insn.opcode));
    }
    out.push_back(std::move(insn));
  }

  // Every branch must land on an instruction boundary.
  std::vector<bool> boundary(code.size(), false);
  for (const auto& insn : out) boundary[insn.offset] = true;
  auto check = [&](const Instruction& insn, std::int64_t t) {
    if (t < 0 || t >= static_cast<std::int64_t>(code.size()) || !boundary[t]) {
      throw MalformedClass(base_offset + insn.offset, "branch target " + std::to_string(t) +
                                                          " is not an instruction boundary");
    }
  };
  for (const auto& insn : out) {
    for (const auto& o : insn.Operands()) {
      if (IsBranchOperand(o)) check(insn, o.value);
    }
    if (insn.table) {
      check(insn, insn.table->default_target);
      for (const auto& c : insn.table->cases) check(insn, c.target);
    }
  }
  return out;
}

std::uint32_t OffsetMap::Map(std::uint32_t old_offset) const {
  if (identity) return old_offset;
  if (old_offset >= old_to_new.size() || old_to_new[old_offset] < 0) {
    throw UnencodableModel("code offset " + std::to_string(old_offset) +
                           " is not an instruction boundary");
  }
  return static_cast<std::uint32_t>(old_to_new[old_offset]);
}

std::uint32_t AssignOffsets(std::span<Instruction> instructions) {
  std::uint32_t at = 0;
  for (auto& insn : instructions) {
    insn.offset = at;
    at += EncodedSize(insn, at);
  }
  return at;
}

EncodedCode EncodeCode(std::span<const Instruction> instructions, std::uint32_t old_code_length) {
  EncodedCode result;
  std::vector<std::uint32_t> new_offsets;
  new_offsets.reserve(instructions.size());
  std::uint64_t at = 0;
  bool identity = true;
  for (const auto& insn : instructions) {
    if (insn.offset != at) identity = false;
    new_offsets.push_back(static_cast<std::uint32_t>(at));
    at += EncodedSize(insn, static_cast<std::uint32_t>(at));
    if (at > 0xffff) throw UnencodableModel("code length exceeds 65535 bytes");
  }
  if (at != old_code_length) identity = false;
  OffsetMap& map = result.map;
  map.identity = identity;
  if (!identity) {
    map.old_to_new.assign(static_cast<std::size_t>(old_code_length) + 1, -1);
    for (std::size_t i = 0; i < instructions.size(); ++i) {
      if (instructions[i].offset > old_code_length) {
        throw UnencodableModel("instruction offset beyond code length");
      }
      map.old_to_new[instructions[i].offset] = new_offsets[i];
    }
    map.old_to_new[old_code_length] = static_cast<std::int64_t>(at);
  }

  ByteWriter w;
  for (std::size_t i = 0; i < instructions.size(); ++i) {
    const Instruction& insn = instructions[i];
    const std::int64_t here = new_offsets[i];
    auto delta = [&](std::int32_t old_target) {
      return static_cast<std::int64_t>(map.Map(static_cast<std::uint32_t>(old_target))) - here;
    };
    auto branch16 = [&](std::int32_t old_target) {
      std::int64_t d = delta(old_target);
      if (d < std::numeric_limits<std::int16_t>::min() ||
          d > std::numeric_limits<std::int16_t>::max()) {
        throw UnencodableModel("branch displacement exceeds 16 bits");
      }
      w.U2(static_cast<std::uint16_t>(d));
    };
    auto u1_operand = [&](std::int32_t v, const char* what) {
      if (v < 0 || v > 0xff) throw UnencodableModel(std::string(what) + " exceeds u1");
      w.U1(static_cast<std::uint32_t>(v));
    };
    auto u2_operand = [&](std::int32_t v, const char* what) {
      if (v < 0 || v > 0xffff) throw UnencodableModel(std::string(what) + " exceeds u2");
      w.U2(static_cast<std::uint32_t>(v));
    };

    const OperandFormat format = GetOpcodeInfo(insn.opcode).format;
    if (insn.wide) w.U1(op::kWide);
    if (format == OperandFormat::kPoolU1 && insn.operands[0].value > 0xff) {
      w.U1(op::kLdcW);
    } else {
      w.U1(insn.opcode);
    }
    switch (format) {
      case OperandFormat::kNone:
        break;
      case OperandFormat::kLocal:
        if (insn.wide) {
          u2_operand(insn.operands[0].value, "local slot");
        } else {
          u1_operand(insn.operands[0].value, "local slot");
        }
        break;
      case OperandFormat::kIinc:
        if (insn.wide) {
          u2_operand(insn.operands[0].value, "local slot");
          if (insn.operands[1].value < -32768 || insn.operands[1].value > 32767) {
            throw UnencodableModel("iinc constant exceeds 16 bits");
          }
          w.U2(static_cast<std::uint16_t>(insn.operands[1].value));
        } else {
          u1_operand(insn.operands[0].value, "local slot");
          if (insn.operands[1].value < -128 || insn.operands[1].value > 127) {
            throw UnencodableModel("iinc constant exceeds 8 bits");
          }
          w.U1(static_cast<std::uint8_t>(insn.operands[1].value));
        }
        break;
      case OperandFormat::kByteImmediate:
        if (insn.operands[0].value < -128 || insn.operands[0].value > 127) {
          throw UnencodableModel("bipush operand exceeds 8 bits");
        }
        w.U1(static_cast<std::uint8_t>(insn.operands[0].value));
        break;
      case OperandFormat::kShortImmediate:
        if (insn.operands[0].value < -32768 || insn.operands[0].value > 32767) {
          throw UnencodableModel("sipush operand exceeds 16 bits");
        }
        w.U2(static_cast<std::uint16_t>(insn.operands[0].value));
        break;
      case OperandFormat::kPoolU1:
        if (insn.operands[0].value > 0xff) {
          u2_operand(insn.operands[0].value, "pool index");
        } else {
          u1_operand(insn.operands[0].value, "pool index");
        }
        break;
      case OperandFormat::kPoolU2:
        u2_operand(insn.operands[0].value, "pool index");
        break;
      case OperandFormat::kBranch16:
        branch16(insn.operands[0].value);
        break;
      case OperandFormat::kBranch32:
        w.U4(static_cast<std::uint32_t>(delta(insn.operands[0].value)));
        break;
      case OperandFormat::kInvokeInterface:
        u2_operand(insn.operands[0].value, "pool index");
        u1_operand(insn.operands[1].value, "invokeinterface count");
        w.U1(0);
        break;
      case OperandFormat::kInvokeDynamic:
        u2_operand(insn.operands[0].value, "pool index");
        w.U2(0);
        break;
      case OperandFormat::kNewArray:
        u1_operand(insn.operands[0].value, "array type");
        break;
      case OperandFormat::kMultiANewArray:
        u2_operand(insn.operands[0].value, "pool index");
        u1_operand(insn.operands[1].value, "dimensions");
        break;
      case OperandFormat::kTableSwitch:
      case OperandFormat::kLookupSwitch: {
        for (std::uint32_t p = SwitchPadding(static_cast<std::uint32_t>(here)); p > 0; --p) {
          w.U1(0);
        }
        const SwitchTable& t = *insn.table;
        w.U4(static_cast<std::uint32_t>(delta(t.default_target)));
        if (format == OperandFormat::kTableSwitch) {
          w.U4(static_cast<std::uint32_t>(t.low));
          w.U4(static_cast<std::uint32_t>(t.high));
          for (const auto& c : t.cases) w.U4(static_cast<std::uint32_t>(delta(c.target)));
        } else {
          w.U4(static_cast<std::uint32_t>(t.cases.size()));
          for (const auto& c : t.cases) {
            w.U4(static_cast<std::uint32_t>(c.match));
            w.U4(static_cast<std::uint32_t>(delta(c.target)));
          }
        }
        break;
      }
      case OperandFormat::kWide:
      case OperandFormat::kInvalid:
        throw UnencodableModel("invalid opcode " + std::to_string(insn.opcode));
    }
  }
  result.code = w.Release();
  return result;
}

}  // namespace bineq
