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

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "bineq/digest.h"
#include "bineq/mutf8.h"
#include "bineq/opcodes.h"

namespace bineq {

std::string CanonicalText::Joined() const {
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

std::string LabeledLine::Render(const std::vector<int>* renumber) const {
  std::string out;
  std::size_t next = 0;
  for (char ch : text) {
    if (ch != kLabelMarker) {
      out += ch;
      continue;
    }
    int label = labels.at(next++);
    if (renumber != nullptr) label = renumber->at(static_cast<std::size_t>(label));
    out += "L" + std::to_string(label);
  }
  return out;
}

std::string PrintableName(const std::string& raw) {
  bool plain = !raw.empty() && std::all_of(raw.begin(), raw.end(), [](char ch) {
    return ch > 0x20 && ch < 0x7f && ch != '"' && ch != '\\';
  });
  return plain ? raw : QuoteJavaString(DecodeModifiedUtf8(raw));
}

std::string RenderInstr(const CanonInstr& insn, const std::vector<int>* renumber) {
  std::string out(GetOpcodeInfo(insn.opcode).mnemonic);
  std::string ops = insn.operands.Render(renumber);
  if (!ops.empty()) out += " " + ops;
  return out;
}

std::string FormatFloatBits(std::uint32_t bits) {
  float f = std::bit_cast<float>(bits);
  if (std::isnan(f)) return fmt::format("NaN:0x{:08x}", bits);
  return fmt::format("{}", f);
}

std::string FormatDoubleBits(std::uint64_t bits) {
  double d = std::bit_cast<double>(bits);
  if (std::isnan(d)) return fmt::format("NaN:0x{:016x}", bits);
  return fmt::format("{}", d);
}

namespace {

const char* HandleKindName(std::uint8_t kind) {
  static constexpr const char* kNames[] = {"?",
                                           "getfield",
                                           "getstatic",
                                           "putfield",
                                           "putstatic",
                                           "invokevirtual",
                                           "invokestatic",
                                           "invokespecial",
                                           "newinvokespecial",
                                           "invokeinterface"};
  return kind < 10 ? kNames[kind] : "?";
}

const char* ArrayTypeName(int atype) {
  switch (atype) {
    case 4:
      return "boolean";
    case 5:
      return "char";
    case 6:
      return "float";
    case 7:
      return "double";
    case 8:
      return "byte";
    case 9:
      return "short";
    case 10:
      return "int";
    case 11:
      return "long";
    default:
      return nullptr;
  }
}

std::string Hex16(std::uint16_t v) { return fmt::format("0x{:04x}", v); }

class Builder {
 public:
  explicit Builder(const ClassFile& c) : c_(c), pool_(c.pool) {
    if (const auto* b = FindAttribute<BootstrapMethodsAttribute>(c.attributes)) bsm_ = b;
  }

  CanonicalClass Build() {
    CanonicalClass out;
    out.header.push_back("class " + ClassText(c_.this_class));
    out.header.push_back("flags " + Hex16(c_.access_flags));
    out.header.push_back("super " +
                         (c_.super_class == 0 ? std::string("none") : ClassText(c_.super_class)));
    for (auto i : c_.interfaces) out.header.push_back("implements " + ClassText(i));
    AppendAttributes(out.header, c_.attributes, "");
    for (const auto& f : c_.fields) out.fields.push_back(Member(f));
    for (const auto& m : c_.methods) out.methods.push_back(Member(m));
    auto by_key = [](const CanonMember& a, const CanonMember& b) {
      return std::tie(a.name, a.descriptor) < std::tie(b.name, b.descriptor);
    };
    std::stable_sort(out.fields.begin(), out.fields.end(), by_key);
    std::stable_sort(out.methods.begin(), out.methods.end(), by_key);
    return out;
  }

 private:
  std::string Utf8Text(std::uint32_t index) { return PrintableName(pool_.Utf8(index)); }
  std::string ClassText(std::uint32_t index) { return PrintableName(pool_.ClassName(index)); }

  CanonMemberRef MemberRef(std::uint32_t index) {
    const ConstEntry& e = pool_.At(index);
    std::uint16_t class_index, nat_index;
    bool itf = false;
    if (const auto* f = std::get_if<cp::Fieldref>(&e)) {
      class_index = f->class_index;
      nat_index = f->name_and_type_index;
    } else if (const auto* m = std::get_if<cp::Methodref>(&e)) {
      class_index = m->class_index;
      nat_index = m->name_and_type_index;
    } else {
      const auto& im = pool_.Get<cp::InterfaceMethodref>(index);
      class_index = im.class_index;
      nat_index = im.name_and_type_index;
      itf = true;
    }
    const auto& nat = pool_.Get<cp::NameAndType>(nat_index);
    return CanonMemberRef{ClassText(class_index), Utf8Text(nat.name_index),
                          Utf8Text(nat.descriptor_index), itf};
  }

  static std::string MemberRefText(const CanonMemberRef& r) {
    return r.owner + "." + r.name + ":" + r.descriptor + (r.interface_ref ? " itf" : "");
  }

  std::string HandleText(std::uint32_t index) {
    const auto& h = pool_.Get<cp::MethodHandle>(index);
    return std::string("handle ") + HandleKindName(h.reference_kind) + " " +
           MemberRefText(MemberRef(h.reference_index));
  }

  CanonConstant Constant(std::uint32_t index, int depth = 0) {
    if (depth > 16) throw RenderFailure("dynamic constants nested too deeply");
    CanonConstant k;
    const ConstEntry& e = pool_.At(index);
    k.tag = TagOf(e).value_or(ConstTag::kUtf8);
    std::visit(
        [&](const auto& x) {
          using E = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<E, cp::Integer>) {
            k.integer = x.value;
            k.text = "int " + std::to_string(x.value);
          } else if constexpr (std::is_same_v<E, cp::Long>) {
            k.integer = x.value;
            k.text = "long " + std::to_string(x.value);
          } else if constexpr (std::is_same_v<E, cp::Float>) {
            k.text = "float " + FormatFloatBits(x.bits);
          } else if constexpr (std::is_same_v<E, cp::Double>) {
            k.text = "double " + FormatDoubleBits(x.bits);
          } else if constexpr (std::is_same_v<E, cp::String>) {
            k.string = DecodeModifiedUtf8(pool_.Utf8(x.string_index));
            k.text = "string " + QuoteJavaString(k.string);
          } else if constexpr (std::is_same_v<E, cp::Class>) {
            k.text = "class " + PrintableName(pool_.Utf8(x.name_index));
          } else if constexpr (std::is_same_v<E, cp::MethodType>) {
            k.text = "methodtype " + Utf8Text(x.descriptor_index);
          } else if constexpr (std::is_same_v<E, cp::MethodHandle>) {
            k.text = HandleText(index);
          } else if constexpr (std::is_same_v<E, cp::Dynamic>) {
            const auto& nat = pool_.Get<cp::NameAndType>(x.name_and_type_index);
            k.text = "dynamic " + Utf8Text(nat.name_index) + ":" + Utf8Text(nat.descriptor_index) +
                     " " + BootstrapText(x.bootstrap_method_attr_index, depth + 1);
          } else if constexpr (std::is_same_v<E, cp::Utf8>) {
            k.string = DecodeModifiedUtf8(x.bytes);
            k.text = "utf8 " + QuoteJavaString(k.string);
          } else {
            throw RenderFailure("constant #" + std::to_string(index) + " is not loadable");
          }
        },
        e);
    return k;
  }

  const BootstrapMethod& Bootstrap(std::uint32_t index) {
    if (bsm_ == nullptr || index >= bsm_->methods.size()) {
      throw RenderFailure("missing bootstrap method " + std::to_string(index));
    }
    return bsm_->methods[index];
  }

  std::string BootstrapText(std::uint32_t index, int depth) {
    const BootstrapMethod& m = Bootstrap(index);
    std::string out = "bsm " + HandleText(m.method_ref) + " [";
    for (std::size_t i = 0; i < m.arguments.size(); ++i) {
      if (i > 0) out += ", ";
      out += Constant(m.arguments[i], depth).text;
    }
    return out + "]";
  }

  CanonIndy Indy(std::uint32_t index) {
    const auto& d = pool_.Get<cp::InvokeDynamic>(index);
    const auto& nat = pool_.Get<cp::NameAndType>(d.name_and_type_index);
    CanonIndy indy;
    indy.name = Utf8Text(nat.name_index);
    indy.descriptor = Utf8Text(nat.descriptor_index);
    const BootstrapMethod& m = Bootstrap(d.bootstrap_method_attr_index);
    const auto& h = pool_.Get<cp::MethodHandle>(m.method_ref);
    indy.bootstrap_kind = h.reference_kind;
    indy.bootstrap = MemberRef(h.reference_index);
    for (auto arg : m.arguments) indy.arguments.push_back(Constant(arg, 1));
    return indy;
  }

  std::string IndyText(const CanonIndy& indy) {
    std::string out = indy.name + ":" + indy.descriptor + " bsm handle " +
                      HandleKindName(indy.bootstrap_kind) + " " + MemberRefText(indy.bootstrap) +
                      " [";
    for (std::size_t i = 0; i < indy.arguments.size(); ++i) {
      if (i > 0) out += ", ";
      out += indy.arguments[i].text;
    }
    return out + "]";
  }

  // ---- annotations ----

  std::string ElementText(const ElementValue& v) {
    switch (v.tag) {
      case 's':
        return QuoteJavaString(DecodeModifiedUtf8(pool_.Utf8(v.const_value_index)));
      case 'e':
        return "enum " + Utf8Text(v.type_name_index) + "." + Utf8Text(v.const_name_index);
      case 'c':
        return "class " + Utf8Text(v.class_info_index);
      case '@':
        return AnnotationText(v.nested.at(0));
      case '[': {
        std::string out = "{";
        for (std::size_t i = 0; i < v.values.size(); ++i) {
          if (i > 0) out += ", ";
          out += ElementText(v.values[i]);
        }
        return out + "}";
      }
      default:
        return std::string(1, static_cast<char>(v.tag)) + ":" + Constant(v.const_value_index).text;
    }
  }

  std::string AnnotationText(const Annotation& a) {
    std::string out = "@" + Utf8Text(a.type_index) + "(";
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
      if (i > 0) out += ", ";
      out += Utf8Text(a.pairs[i].name_index) + "=" + ElementText(a.pairs[i].value);
    }
    return out + ")";
  }

  // Offsets inside type annotations become labels when `labels` is given.
  LabeledLine TypeAnnotationLine(const TypeAnnotation& t, bool visible,
                                 const std::map<std::uint32_t, int>* labels) {
    LabeledLine line;
    line.text = std::string("type-annotation ") + (visible ? "visible" : "invisible") +
                fmt::format(" target=0x{:02x}", t.target_type);
    auto offset = [&](std::uint32_t pc) {
      if (labels == nullptr) {
        line.text += " @" + std::to_string(pc);
      } else {
        line.text += ' ';
        line.text += kLabelMarker;
        line.labels.push_back(labels->at(pc));
      }
    };
    switch (t.target_type) {
      case 0x40:
      case 0x41:
        for (const auto& e : t.local_vars) {
          offset(e.start_pc);
          offset(static_cast<std::uint32_t>(e.start_pc) + e.length);
          line.text += " slot " + std::to_string(e.slot);
        }
        break;
      case 0x43:
      case 0x44:
      case 0x45:
      case 0x46:
        offset(t.first);
        break;
      case 0x47:
      case 0x48:
      case 0x49:
      case 0x4a:
      case 0x4b:
        offset(t.first);
        line.text += " arg " + std::to_string(t.second);
        break;
      case 0x13:
      case 0x14:
      case 0x15:
        break;
      default:
        line.text += " " + std::to_string(t.first) + " " + std::to_string(t.second);
    }
    line.text += " path=[";
    for (std::size_t i = 0; i < t.path.size(); ++i) {
      if (i > 0) line.text += ",";
      line.text += std::to_string(t.path[i].kind) + ":" + std::to_string(t.path[i].argument_index);
    }
    line.text += "] " + AnnotationText(t.annotation);
    return line;
  }

  // ---- attributes ----

  void AppendAttributes(std::vector<std::string>& out, const std::vector<AttributeInfo>& attrs,
                        const std::string& indent) {
    std::vector<const AttributeInfo*> sorted;
    for (const auto& a : attrs) sorted.push_back(&a);
    std::stable_sort(
        sorted.begin(), sorted.end(),
        [](const AttributeInfo* a, const AttributeInfo* b) { return a->name < b->name; });
    for (const AttributeInfo* a : sorted) AppendAttribute(out, *a, indent);
  }

  void AppendAttribute(std::vector<std::string>& out, const AttributeInfo& a,
                       const std::string& indent) {
    auto emit = [&](const std::string& s) { out.push_back(indent + s); };
    std::visit(
        [&](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, RawAttribute>) {
            emit("attribute " + PrintableName(a.name) + " sha256=" + Sha256Hex(p.bytes));
          } else if constexpr (std::is_same_v<P, ConstantValueAttribute>) {
            emit("ConstantValue " + Constant(p.index).text);
          } else if constexpr (std::is_same_v<P, SignatureAttribute>) {
            emit("signature " + Utf8Text(p.index));
          } else if constexpr (std::is_same_v<P, SyntheticAttribute>) {
            emit("synthetic");
          } else if constexpr (std::is_same_v<P, ExceptionsAttribute>) {
            for (auto c : p.classes) emit("throws " + ClassText(c));
          } else if constexpr (std::is_same_v<P, InnerClassesAttribute>) {
            for (const auto& e : p.classes) {
              emit("inner-class " + ClassText(e.inner_class_index) +
                   " outer=" + (e.outer_class_index ? ClassText(e.outer_class_index) : "none") +
                   " name=" + (e.inner_name_index ? Utf8Text(e.inner_name_index) : "none") +
                   " flags=" + Hex16(e.access_flags));
            }
          } else if constexpr (std::is_same_v<P, EnclosingMethodAttribute>) {
            std::string method = "none";
            if (p.method_index != 0) {
              const auto& nat = pool_.Get<cp::NameAndType>(p.method_index);
              method = Utf8Text(nat.name_index) + ":" + Utf8Text(nat.descriptor_index);
            }
            emit("enclosing-method " + ClassText(p.class_index) + " " + method);
          } else if constexpr (std::is_same_v<P, NestHostAttribute>) {
            emit("nest-host " + ClassText(p.host_class_index));
          } else if constexpr (std::is_same_v<P, NestMembersAttribute>) {
            for (auto c : p.classes) emit("nest-member " + ClassText(c));
          } else if constexpr (std::is_same_v<P, PermittedSubclassesAttribute>) {
            for (auto c : p.classes) emit("permitted-subclass " + ClassText(c));
          } else if constexpr (std::is_same_v<P, AnnotationsAttribute>) {
            for (const auto& an : p.annotations) {
              emit(std::string("annotation ") + (p.visible ? "visible " : "invisible ") +
                   AnnotationText(an));
            }
          } else if constexpr (std::is_same_v<P, ParameterAnnotationsAttribute>) {
            std::string vis = p.visible ? "visible" : "invisible";
            emit("parameter-annotations " + vis + " count=" + std::to_string(p.parameters.size()));
            for (std::size_t i = 0; i < p.parameters.size(); ++i) {
              for (const auto& an : p.parameters[i]) {
                emit("parameter-annotation " + vis + " " + std::to_string(i) + " " +
                     AnnotationText(an));
              }
            }
          } else if constexpr (std::is_same_v<P, AnnotationDefaultAttribute>) {
            emit("annotation-default " + ElementText(p.value));
          } else if constexpr (std::is_same_v<P, TypeAnnotationsAttribute>) {
            for (const auto& t : p.annotations) {
              emit(TypeAnnotationLine(t, p.visible, nullptr).Render());
            }
          } else if constexpr (std::is_same_v<P, MethodParametersAttribute>) {
            for (const auto& m : p.parameters) {
              emit("parameter " + (m.name_index ? Utf8Text(m.name_index) : std::string("none")) +
                   " flags=" + Hex16(m.access_flags));
            }
          } else if constexpr (std::is_same_v<P, RecordAttribute>) {
            for (const auto& comp : p.components) {
              emit("record-component " + Utf8Text(comp.name_index) + " " +
                   Utf8Text(comp.descriptor_index));
              AppendAttributes(out, comp.attributes, indent + "  ");
            }
          }
          // Code is rendered separately. BootstrapMethods appear inline at
          // their call sites; debug attributes and stack maps are dropped.
        },
        a.payload);
  }

  CanonMember Member(const MemberInfo& m) {
    CanonMember out;
    out.name = Utf8Text(m.name_index);
    out.descriptor = Utf8Text(m.descriptor_index);
    out.lines.push_back("flags " + Hex16(m.access_flags));
    AppendAttributes(out.lines, m.attributes, "");
    if (const auto* code = FindAttribute<CodeAttribute>(m.attributes)) out.code = Code(*code);
    return out;
  }

  // ---- code ----

  CanonCode Code(const CodeAttribute& code) {
    CanonCode out;
    out.max_stack = code.max_stack;
    out.max_locals = code.max_locals;

    std::map<std::uint32_t, int> labels;
    auto label = [&](std::int64_t pc) {
      if (pc < 0 || pc > static_cast<std::int64_t>(code.code_length)) {
        throw RenderFailure("code offset " + std::to_string(pc) + " outside code");
      }
      auto [it, inserted] =
          labels.emplace(static_cast<std::uint32_t>(pc), static_cast<int>(labels.size()));
      return it->second;
    };
    for (const auto& insn : code.instructions) {
      for (const auto& o : insn.Operands()) {
        if (o.kind == OperandKind::kBranchTarget) label(o.value);
      }
      if (insn.table) {
        label(insn.table->default_target);
        for (const auto& c : insn.table->cases) label(c.target);
      }
    }
    for (const auto& e : code.exception_table) {
      label(e.start_pc);
      label(e.end_pc);
      label(e.handler_pc);
    }
    std::vector<const TypeAnnotationsAttribute*> code_type_annotations;
    for (const auto& a : code.attributes) {
      if (const auto* t = std::get_if<TypeAnnotationsAttribute>(&a.payload)) {
        code_type_annotations.push_back(t);
      }
    }
    for (const auto* attr : code_type_annotations) {
      for (const auto& t : attr->annotations) {
        switch (t.target_type) {
          case 0x40:
          case 0x41:
            for (const auto& e : t.local_vars) {
              label(e.start_pc);
              label(static_cast<std::int64_t>(e.start_pc) + e.length);
            }
            break;
          case 0x43:
          case 0x44:
          case 0x45:
          case 0x46:
          case 0x47:
          case 0x48:
          case 0x49:
          case 0x4a:
          case 0x4b:
            label(t.first);
            break;
          default:
            break;
        }
      }
    }
    out.label_count = static_cast<int>(labels.size());

    std::size_t placed = 0;
    for (const auto& insn : code.instructions) {
      if (auto it = labels.find(insn.offset); it != labels.end()) {
        out.items.push_back(CanonItem{it->second, {}});
        ++placed;
      }
      out.items.push_back(CanonItem{-1, Instr(insn, labels)});
    }
    if (auto it = labels.find(code.code_length); it != labels.end()) {
      out.items.push_back(CanonItem{it->second, {}});
      ++placed;
    }
    if (placed != labels.size()) {
      throw RenderFailure("code offset referenced that is not an instruction boundary");
    }

    for (const auto& e : code.exception_table) {
      LabeledLine line;
      line.text = std::string("try ") + kLabelMarker + " " + kLabelMarker + " " + kLabelMarker +
                  " " + (e.catch_type ? ClassText(e.catch_type) : std::string("any"));
      line.labels = {labels.at(e.start_pc), labels.at(e.end_pc), labels.at(e.handler_pc)};
      out.handlers.push_back(std::move(line));
    }
    std::vector<const AttributeInfo*> sorted;
    for (const auto& a : code.attributes) sorted.push_back(&a);
    std::stable_sort(
        sorted.begin(), sorted.end(),
        [](const AttributeInfo* a, const AttributeInfo* b) { return a->name < b->name; });
    for (const AttributeInfo* a : sorted) {
      if (const auto* t = std::get_if<TypeAnnotationsAttribute>(&a->payload)) {
        for (const auto& ta : t->annotations) {
          out.extra.push_back(TypeAnnotationLine(ta, t->visible, &labels));
        }
      } else if (const auto* raw = std::get_if<RawAttribute>(&a->payload)) {
        out.extra.push_back(LabeledLine{
            "attribute " + PrintableName(a->name) + " sha256=" + Sha256Hex(raw->bytes), {}});
      }
    }
    return out;
  }

  CanonInstr Instr(const Instruction& insn, const std::map<std::uint32_t, int>& labels) {
    CanonInstr out;
    out.opcode = insn.opcode;
    std::string& text = out.operands.text;
    auto add_label = [&](std::int32_t pc) {
      text += kLabelMarker;
      out.operands.labels.push_back(labels.at(static_cast<std::uint32_t>(pc)));
    };
    if (auto s = ExpandShortLocal(insn.opcode)) {
      out.opcode = s->long_opcode;
      out.value = s->slot;
      text = std::to_string(s->slot);
      return out;
    }
    switch (insn.opcode) {
      case op::kLdcW:
        out.opcode = op::kLdc;
        break;
      case op::kGotoW:
        out.opcode = op::kGoto;
        break;
      case op::kJsrW:
        out.opcode = op::kJsr;
        break;
      default:
        break;
    }
    const std::int32_t v0 = insn.operand_count > 0 ? insn.operands[0].value : 0;
    switch (GetOpcodeInfo(insn.opcode).format) {
      case OperandFormat::kNone:
        break;
      case OperandFormat::kLocal:
      case OperandFormat::kByteImmediate:
      case OperandFormat::kShortImmediate:
        out.value = v0;
        text = std::to_string(v0);
        break;
      case OperandFormat::kIinc:
        out.value = v0;
        out.value2 = insn.operands[1].value;
        text = std::to_string(v0) + " " + std::to_string(out.value2);
        break;
      case OperandFormat::kPoolU1:
      case OperandFormat::kPoolU2:
        switch (insn.opcode) {
          case op::kLdc:
          case op::kLdcW:
          case op::kLdc2W:
            out.constant = Constant(static_cast<std::uint32_t>(v0));
            text = out.constant->text;
            break;
          case op::kNew:
          case op::kAnewarray:
          case op::kCheckcast:
          case op::kInstanceof:
            out.type_name = ClassText(static_cast<std::uint32_t>(v0));
            text = out.type_name;
            break;
          default:
            out.member = MemberRef(static_cast<std::uint32_t>(v0));
            text = MemberRefText(*out.member);
        }
        break;
      case OperandFormat::kInvokeInterface:
        out.member = MemberRef(static_cast<std::uint32_t>(v0));
        out.value2 = insn.operands[1].value;
        text = MemberRefText(*out.member) + " count " + std::to_string(out.value2);
        break;
      case OperandFormat::kInvokeDynamic:
        out.indy = Indy(static_cast<std::uint32_t>(v0));
        text = IndyText(*out.indy);
        break;
      case OperandFormat::kBranch16:
      case OperandFormat::kBranch32:
        add_label(v0);
        break;
      case OperandFormat::kNewArray: {
        out.value = v0;
        const char* name = ArrayTypeName(v0);
        text = name ? name : std::to_string(v0);
        break;
      }
      case OperandFormat::kMultiANewArray:
        out.type_name = ClassText(static_cast<std::uint32_t>(v0));
        out.value = insn.operands[1].value;
        text = out.type_name + " " + std::to_string(out.value);
        break;
      case OperandFormat::kTableSwitch:
        text =
            std::to_string(insn.table->low) + ".." + std::to_string(insn.table->high) + " default ";
        add_label(insn.table->default_target);
        for (const auto& c : insn.table->cases) {
          text += " ";
          add_label(c.target);
        }
        break;
      case OperandFormat::kLookupSwitch:
        text = "default ";
        add_label(insn.table->default_target);
        for (const auto& c : insn.table->cases) {
          text += " " + std::to_string(c.match) + ":";
          add_label(c.target);
        }
        break;
      case OperandFormat::kWide:
      case OperandFormat::kInvalid:
        throw RenderFailure("invalid opcode in decoded code");
    }
    return out;
  }

  const ClassFile& c_;
  const ConstantPool& pool_;
  const BootstrapMethodsAttribute* bsm_ = nullptr;
};

void AppendMember(std::vector<std::string>& out, const char* kind, const CanonMember& m) {
  out.push_back(std::string(kind) + " " + m.name + " " + m.descriptor);
  for (const auto& line : m.lines) out.push_back("  " + line);
  if (!m.code) return;
  const CanonCode& code = *m.code;
  out.push_back("  code stack=" + std::to_string(code.max_stack) +
                " locals=" + std::to_string(code.max_locals));
  for (const auto& item : code.items) {
    if (item.label >= 0) {
      out.push_back("    L" + std::to_string(item.label) + ":");
    } else {
      out.push_back("      " + RenderInstr(item.insn));
    }
  }
  for (const auto& h : code.handlers) out.push_back("    " + h.Render());
  for (const auto& e : code.extra) out.push_back("    " + e.Render());
}

}  // namespace

CanonicalClass BuildCanonical(const ClassFile& c) {
  try {
    return Builder(c).Build();
  } catch (const BadPoolReference& e) {
    throw RenderFailure(e.what());
  } catch (const std::out_of_range& e) {
    throw RenderFailure(std::string("unresolvable reference: ") + e.what());
  }
}

CanonicalText RenderCanonical(const CanonicalClass& c) {
  CanonicalText out;
  out.level = 2;
  out.lines = c.header;
  for (const auto& f : c.fields) AppendMember(out.lines, "field", f);
  for (const auto& m : c.methods) AppendMember(out.lines, "method", m);
  return out;
}

CanonicalText RenderLevel2(const ClassFile& c) { return RenderCanonical(BuildCanonical(c)); }

}  // namespace bineq
