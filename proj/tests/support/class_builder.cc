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

#include "support/class_builder.h"

#include <stdexcept>

#include "bineq/opcodes.h"

namespace bineq::testing {

CodeBuilder& CodeBuilder::Op(std::uint8_t opcode) {
  Pending p;
  p.insn.opcode = opcode;
  insns_.push_back(p);
  return *this;
}

CodeBuilder& CodeBuilder::Op(std::uint8_t opcode, std::int32_t operand) {
  Pending p;
  p.insn.opcode = opcode;
  switch (GetOpcodeInfo(opcode).format) {
    case OperandFormat::kLocal:
      p.insn.AddOperand(OperandKind::kLocalSlot, operand);
      break;
    case OperandFormat::kByteImmediate:
    case OperandFormat::kShortImmediate:
      p.insn.AddOperand(OperandKind::kImmediate, operand);
      break;
    case OperandFormat::kPoolU1:
    case OperandFormat::kPoolU2:
    case OperandFormat::kInvokeDynamic:
      p.insn.AddOperand(OperandKind::kPoolIndex, operand);
      break;
    case OperandFormat::kNewArray:
      p.insn.AddOperand(OperandKind::kArrayType, operand);
      break;
    default:
      throw std::invalid_argument("opcode does not take a single operand");
  }
  insns_.push_back(p);
  return *this;
}

CodeBuilder& CodeBuilder::Iinc(std::uint16_t slot, std::int16_t delta) {
  Pending p;
  p.insn.opcode = op::kIinc;
  p.insn.wide = slot > 255 || delta < -128 || delta > 127;
  p.insn.AddOperand(OperandKind::kLocalSlot, slot);
  p.insn.AddOperand(OperandKind::kImmediate, delta);
  insns_.push_back(p);
  return *this;
}

CodeBuilder& CodeBuilder::InvokeInterface(std::uint16_t method_ref, std::uint8_t count) {
  Pending p;
  p.insn.opcode = op::kInvokeinterface;
  p.insn.AddOperand(OperandKind::kPoolIndex, method_ref);
  p.insn.AddOperand(OperandKind::kCount, count);
  insns_.push_back(p);
  return *this;
}

CodeBuilder& CodeBuilder::Branch(std::uint8_t opcode, int label) {
  Pending p;
  p.insn.opcode = opcode;
  p.insn.AddOperand(OperandKind::kBranchTarget, 0);
  p.label = label;
  insns_.push_back(p);
  return *this;
}

CodeBuilder& CodeBuilder::Label(int label) {
  labels_[label] = insns_.size();
  return *this;
}

ClassBuilder::ClassBuilder(const std::string& name, const std::string& super, std::uint16_t flags,
                           std::uint16_t major) {
  c_.major_version = major;
  c_.access_flags = flags;
  c_.this_class = Class(name);
  c_.super_class = super.empty() ? 0 : Class(super);
}

std::uint16_t ClassBuilder::Intern(const ConstEntry& e) {
  for (std::size_t i = 1; i < c_.pool.entries.size(); ++i) {
    if (c_.pool.entries[i] == e) return static_cast<std::uint16_t>(i);
  }
  return c_.pool.Add(e);
}

std::uint16_t ClassBuilder::Utf8(const std::string& s) { return Intern(cp::Utf8{s}); }
std::uint16_t ClassBuilder::Class(const std::string& name) { return Intern(cp::Class{Utf8(name)}); }
std::uint16_t ClassBuilder::String(const std::string& s) { return Intern(cp::String{Utf8(s)}); }
std::uint16_t ClassBuilder::Integer(std::int32_t v) { return Intern(cp::Integer{v}); }
std::uint16_t ClassBuilder::Long(std::int64_t v) { return Intern(cp::Long{v}); }
std::uint16_t ClassBuilder::NameAndType(const std::string& name, const std::string& descriptor) {
  return Intern(cp::NameAndType{Utf8(name), Utf8(descriptor)});
}
std::uint16_t ClassBuilder::Field(const std::string& owner, const std::string& name,
                                  const std::string& desc) {
  return Intern(cp::Fieldref{Class(owner), NameAndType(name, desc)});
}
std::uint16_t ClassBuilder::Method(const std::string& owner, const std::string& name,
                                   const std::string& desc) {
  return Intern(cp::Methodref{Class(owner), NameAndType(name, desc)});
}
std::uint16_t ClassBuilder::InterfaceMethod(const std::string& owner, const std::string& name,
                                            const std::string& desc) {
  return Intern(cp::InterfaceMethodref{Class(owner), NameAndType(name, desc)});
}
std::uint16_t ClassBuilder::StaticHandle(std::uint16_t method_ref) {
  return Intern(cp::MethodHandle{6, method_ref});
}

std::uint16_t ClassBuilder::InvokeDynamic(std::uint16_t bootstrap_handle,
                                          const std::vector<std::uint16_t>& arguments,
                                          const std::string& name, const std::string& descriptor) {
  BootstrapMethod bm{bootstrap_handle, arguments};
  std::size_t index = bootstrap_.size();
  for (std::size_t i = 0; i < bootstrap_.size(); ++i) {
    if (bootstrap_[i] == bm) index = i;
  }
  if (index == bootstrap_.size()) bootstrap_.push_back(bm);
  Attr("BootstrapMethods");
  return Intern(
      cp::InvokeDynamic{static_cast<std::uint16_t>(index), NameAndType(name, descriptor)});
}

void ClassBuilder::AddInterface(const std::string& name) { c_.interfaces.push_back(Class(name)); }

void ClassBuilder::AddField(std::uint16_t flags, const std::string& name, const std::string& desc,
                            std::optional<std::uint16_t> constant_value) {
  MemberInfo m{flags, Utf8(name), Utf8(desc), {}};
  if (constant_value) {
    m.attributes.push_back(
        {Attr("ConstantValue"), "ConstantValue", ConstantValueAttribute{*constant_value}});
  }
  c_.fields.push_back(std::move(m));
}

CodeBuilder& ClassBuilder::AddMethod(std::uint16_t flags, const std::string& name,
                                     const std::string& desc, std::uint16_t max_stack,
                                     std::uint16_t max_locals) {
  method_heads_.emplace_back(flags, Utf8(name), Utf8(desc));
  Attr("Code");
  codes_.emplace_back();
  codes_.back().max_stack_ = max_stack;
  codes_.back().max_locals_ = max_locals;
  return codes_.back();
}

void ClassBuilder::AddSourceFile(const std::string& name) {
  c_.attributes.push_back({Attr("SourceFile"), "SourceFile", SourceFileAttribute{Utf8(name)}});
}

ClassFile ClassBuilder::Build() const {
  ClassFile c = c_;
  ConstantPool& pool = c.pool;
  auto utf8 = [&](const std::string& s) -> std::uint16_t {
    for (std::size_t i = 1; i < pool.entries.size(); ++i) {
      if (const auto* u = std::get_if<cp::Utf8>(&pool.entries[i]); u && u->bytes == s) {
        return static_cast<std::uint16_t>(i);
      }
    }
    throw std::logic_error("attribute name not interned: " + s);
  };
  for (std::size_t m = 0; m < codes_.size(); ++m) {
    const CodeBuilder& cb = codes_[m];
    CodeAttribute code;
    code.max_stack = cb.max_stack_;
    code.max_locals = cb.max_locals_;
    for (const auto& p : cb.insns_) code.instructions.push_back(p.insn);
    code.code_length = AssignOffsets(code.instructions);
    for (std::size_t i = 0; i < cb.insns_.size(); ++i) {
      if (cb.insns_[i].label < 0) continue;
      std::size_t target = cb.labels_.at(cb.insns_[i].label);
      code.instructions[i].operands[0].value =
          target < code.instructions.size()
              ? static_cast<std::int32_t>(code.instructions[target].offset)
              : static_cast<std::int32_t>(code.code_length);
    }
    auto [flags, name, desc] = method_heads_[m];
    MemberInfo method{flags, name, desc, {}};
    method.attributes.push_back({utf8("Code"), "Code", std::move(code)});
    c.methods.push_back(std::move(method));
  }
  if (!bootstrap_.empty()) {
    c.attributes.push_back(
        {utf8("BootstrapMethods"), "BootstrapMethods", BootstrapMethodsAttribute{bootstrap_}});
  }
  return c;
}

Bytes ClassBuilder::Serialize() const { return SerializeClass(Build()); }

}  // namespace bineq::testing
