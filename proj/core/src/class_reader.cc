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

// Class-file parser. Every pool index is checked against its use site as it is
// read so that errors carry the offset of the offending reference.

#include <string>
#include <utility>

#include "bineq/class_file.h"
#include "bineq/mutf8.h"
#include "pool_refs.h"

namespace bineq {
namespace {

using internal::ElementConstMask;
using internal::InstructionPoolMask;
using internal::kClassMask;
using internal::kLoadableMask;
using internal::kUtf8Mask;

enum class Location { kClass, kField, kMethod, kCode, kRecordComponent };

class Parser {
 public:
  explicit Parser(ByteView bytes) : top_(bytes) {}

  ClassFile Parse() {
    ByteReader& r = top_;
    if (r.remaining() < 4 || r.U4() != 0xCAFEBABE) {
      throw MalformedClass(0, "bad magic number");
    }
    c_.minor_version = r.U2();
    c_.major_version = r.U2();
    c_.beyond_supported_version = c_.major_version > kMaxSupportedMajorVersion;
    ParsePool(r);
    c_.access_flags = r.U2();
    c_.this_class = Ref(r, kClassMask);
    c_.super_class = Ref(r, kClassMask, true);
    std::uint16_t n = r.U2();
    c_.interfaces.reserve(n);
    for (std::uint16_t i = 0; i < n; ++i) c_.interfaces.push_back(Ref(r, kClassMask));
    c_.fields = ParseMembers(r, Location::kField);
    c_.methods = ParseMembers(r, Location::kMethod);
    c_.attributes = ParseAttributes(r, Location::kClass);
    if (!r.at_end()) r.Fail("trailing bytes after class structure");
    CheckBootstrapIndices();
    return std::move(c_);
  }

 private:
  std::uint16_t Ref(ByteReader& r, TagMask allowed, bool zero_ok = false) {
    std::size_t at = r.absolute_position();
    std::uint16_t index = r.U2();
    if (index == 0 && zero_ok) return index;
    if (!c_.pool.Matches(index, allowed)) {
      throw MalformedClass(at, "invalid constant pool reference #" + std::to_string(index));
    }
    return index;
  }

  void ParsePool(ByteReader& r) {
    std::uint16_t count = r.U2();
    if (count == 0) r.Fail("constant_pool_count must be at least 1");
    auto& entries = c_.pool.entries;
    entries.reserve(count);
    entry_offsets_.assign(count, 0);
    for (std::uint32_t i = 1; i < count; ++i) {
      entry_offsets_[i] = r.absolute_position();
      std::uint8_t tag = r.U1();
      switch (static_cast<ConstTag>(tag)) {
        case ConstTag::kUtf8: {
          std::uint16_t len = r.U2();
          std::size_t start = r.absolute_position();
          std::string s(AsChars(r.Take(len)));
          if (auto bad = FindModifiedUtf8Error(s)) {
            throw MalformedClass(start + *bad, "invalid modified UTF-8");
          }
          entries.emplace_back(cp::Utf8{std::move(s)});
          break;
        }
        case ConstTag::kInteger:
          entries.emplace_back(cp::Integer{r.S4()});
          break;
        case ConstTag::kFloat:
          entries.emplace_back(cp::Float{r.U4()});
          break;
        case ConstTag::kLong:
        case ConstTag::kDouble: {
          if (i + 1 >= count) {
            throw MalformedClass(entry_offsets_[i], "8-byte constant in last pool slot");
          }
          std::uint64_t v = r.U8();
          if (tag == static_cast<std::uint8_t>(ConstTag::kLong)) {
            entries.emplace_back(cp::Long{static_cast<std::int64_t>(v)});
          } else {
            entries.emplace_back(cp::Double{v});
          }
          entries.emplace_back(cp::Unusable{});
          ++i;
          break;
        }
        case ConstTag::kClass:
          entries.emplace_back(cp::Class{r.U2()});
          break;
        case ConstTag::kString:
          entries.emplace_back(cp::String{r.U2()});
          break;
        case ConstTag::kFieldref: {
          std::uint16_t a = r.U2();
          entries.emplace_back(cp::Fieldref{a, r.U2()});
          break;
        }
        case ConstTag::kMethodref: {
          std::uint16_t a = r.U2();
          entries.emplace_back(cp::Methodref{a, r.U2()});
          break;
        }
        case ConstTag::kInterfaceMethodref: {
          std::uint16_t a = r.U2();
          entries.emplace_back(cp::InterfaceMethodref{a, r.U2()});
          break;
        }
        case ConstTag::kNameAndType: {
          std::uint16_t a = r.U2();
          entries.emplace_back(cp::NameAndType{a, r.U2()});
          break;
        }
        case ConstTag::kMethodHandle: {
          std::uint8_t kind = r.U1();
          entries.emplace_back(cp::MethodHandle{kind, r.U2()});
          break;
        }
        case ConstTag::kMethodType:
          entries.emplace_back(cp::MethodType{r.U2()});
          break;
        case ConstTag::kDynamic: {
          std::uint16_t a = r.U2();
          entries.emplace_back(cp::Dynamic{a, r.U2()});
          break;
        }
        case ConstTag::kInvokeDynamic: {
          std::uint16_t a = r.U2();
          entries.emplace_back(cp::InvokeDynamic{a, r.U2()});
          break;
        }
        case ConstTag::kModule:
          entries.emplace_back(cp::Module{r.U2()});
          break;
        case ConstTag::kPackage:
          entries.emplace_back(cp::Package{r.U2()});
          break;
        default:
          throw MalformedClass(entry_offsets_[i],
                               "unknown constant pool tag " + std::to_string(tag));
      }
    }
    // Entries may refer forward, so their references are checked once the
    // whole pool is known.
    for (std::size_t i = 1; i < entries.size(); ++i) {
      internal::PoolRefVisitor<decltype(pool_check_)> v{pool_check_};
      current_entry_ = i;
      std::visit([&](auto& e) { v.Entry(e); }, entries[i]);
    }
  }

  struct PoolEntryCheck {
    Parser* self;
    void operator()(const std::uint16_t& index, const internal::RefSite& site) const {
      if (!self->c_.pool.Matches(index, site.allowed)) {
        throw MalformedClass(self->entry_offsets_[self->current_entry_],
                             std::string("invalid constant pool reference #") +
                                 std::to_string(index) + " in " + site.where);
      }
    }
  };

  void CheckBootstrapIndices() {
    const auto* bsm = FindAttribute<BootstrapMethodsAttribute>(c_.attributes);
    std::size_t n = bsm ? bsm->methods.size() : 0;
    for (std::size_t i = 1; i < c_.pool.entries.size(); ++i) {
      const auto& e = c_.pool.entries[i];
      std::uint32_t index;
      if (const auto* d = std::get_if<cp::Dynamic>(&e)) {
        index = d->bootstrap_method_attr_index;
      } else if (const auto* d = std::get_if<cp::InvokeDynamic>(&e)) {
        index = d->bootstrap_method_attr_index;
      } else {
        continue;
      }
      if (index >= n) {
        throw MalformedClass(entry_offsets_[i],
                             "dynamic constant names a missing bootstrap method");
      }
    }
  }

  std::vector<MemberInfo> ParseMembers(ByteReader& r, Location loc) {
    std::uint16_t n = r.U2();
    std::vector<MemberInfo> out;
    out.reserve(n);
    for (std::uint16_t i = 0; i < n; ++i) {
      MemberInfo m;
      m.access_flags = r.U2();
      m.name_index = Ref(r, kUtf8Mask);
      m.descriptor_index = Ref(r, kUtf8Mask);
      m.attributes = ParseAttributes(r, loc);
      out.push_back(std::move(m));
    }
    return out;
  }

  std::vector<AttributeInfo> ParseAttributes(ByteReader& r, Location loc) {
    std::uint16_t n = r.U2();
    std::vector<AttributeInfo> out;
    out.reserve(n);
    for (std::uint16_t i = 0; i < n; ++i) {
      AttributeInfo a;
      a.name_index = Ref(r, kUtf8Mask);
      a.name = c_.pool.Utf8(a.name_index);
      std::uint32_t length = r.U4();
      std::size_t base = r.absolute_position();
      ByteView body = r.Take(length);
      ByteReader sub(body, base);
      a.payload = ParsePayload(sub, a.name, loc, body);
      if (!sub.at_end()) {
        sub.Fail("attribute " + a.name + " is longer than its contents");
      }
      out.push_back(std::move(a));
    }
    return out;
  }

  AttributePayload ParsePayload(ByteReader& r, const std::string& name, Location loc,
                                ByteView body) {
    const bool in_class = loc == Location::kClass;
    const bool in_field = loc == Location::kField;
    const bool in_method = loc == Location::kMethod;
    const bool in_code = loc == Location::kCode;
    const bool annotatable = !in_code;

    if (in_method && name == "Code") return ParseCode(r);
    if (in_field && name == "ConstantValue") {
      return ConstantValueAttribute{
          Ref(r, Mask(ConstTag::kInteger, ConstTag::kFloat, ConstTag::kLong, ConstTag::kDouble,
                      ConstTag::kString))};
    }
    if (in_code && name == "LineNumberTable") {
      LineNumberTableAttribute a;
      std::uint16_t n = r.U2();
      a.entries.reserve(n);
      for (std::uint16_t i = 0; i < n; ++i) {
        std::uint16_t pc = r.U2();
        a.entries.push_back(LineNumberEntry{pc, r.U2()});
      }
      return a;
    }
    if (in_code && name == "LocalVariableTable") {
      return LocalVariableTableAttribute{ParseLocalVariables(r)};
    }
    if (in_code && name == "LocalVariableTypeTable") {
      return LocalVariableTypeTableAttribute{ParseLocalVariables(r)};
    }
    if (in_code && name == "StackMapTable") return ParseStackMap(r);
    if (in_class && name == "SourceFile") return SourceFileAttribute{Ref(r, kUtf8Mask)};
    if (in_class && name == "SourceDebugExtension") {
      r.Take(body.size());
      return SourceDebugExtensionAttribute{Bytes(body.begin(), body.end())};
    }
    if ((in_class || in_field || in_method) && name == "Deprecated") {
      if (!body.empty()) r.Fail("Deprecated attribute must be empty");
      return DeprecatedAttribute{};
    }
    if ((in_class || in_field || in_method) && name == "Synthetic") {
      if (!body.empty()) r.Fail("Synthetic attribute must be empty");
      return SyntheticAttribute{};
    }
    if (annotatable && name == "Signature") return SignatureAttribute{Ref(r, kUtf8Mask)};
    if (in_method && name == "Exceptions") return ExceptionsAttribute{ClassList(r)};
    if (in_class && name == "InnerClasses") {
      InnerClassesAttribute a;
      std::uint16_t n = r.U2();
      a.classes.reserve(n);
      for (std::uint16_t i = 0; i < n; ++i) {
        InnerClassEntry e;
        e.inner_class_index = Ref(r, kClassMask);
        e.outer_class_index = Ref(r, kClassMask, true);
        e.inner_name_index = Ref(r, kUtf8Mask, true);
        e.access_flags = r.U2();
        a.classes.push_back(e);
      }
      return a;
    }
    if (in_class && name == "EnclosingMethod") {
      EnclosingMethodAttribute a;
      a.class_index = Ref(r, kClassMask);
      a.method_index = Ref(r, Mask(ConstTag::kNameAndType), true);
      return a;
    }
    if (in_class && name == "NestHost") return NestHostAttribute{Ref(r, kClassMask)};
    if (in_class && name == "NestMembers") return NestMembersAttribute{ClassList(r)};
    if (in_class && name == "PermittedSubclasses") {
      return PermittedSubclassesAttribute{ClassList(r)};
    }
    if (in_class && name == "BootstrapMethods") {
      BootstrapMethodsAttribute a;
      std::uint16_t n = r.U2();
      a.methods.reserve(n);
      for (std::uint16_t i = 0; i < n; ++i) {
        BootstrapMethod m;
        m.method_ref = Ref(r, Mask(ConstTag::kMethodHandle));
        std::uint16_t k = r.U2();
        m.arguments.reserve(k);
        for (std::uint16_t j = 0; j < k; ++j) m.arguments.push_back(Ref(r, kLoadableMask));
        a.methods.push_back(std::move(m));
      }
      return a;
    }
    if (annotatable &&
        (name == "RuntimeVisibleAnnotations" || name == "RuntimeInvisibleAnnotations")) {
      AnnotationsAttribute a;
      a.visible = name == "RuntimeVisibleAnnotations";
      a.annotations = ParseAnnotationList(r);
      return a;
    }
    if (in_method && (name == "RuntimeVisibleParameterAnnotations" ||
                      name == "RuntimeInvisibleParameterAnnotations")) {
      ParameterAnnotationsAttribute a;
      a.visible = name == "RuntimeVisibleParameterAnnotations";
      std::uint8_t n = r.U1();
      a.parameters.reserve(n);
      for (std::uint8_t i = 0; i < n; ++i) a.parameters.push_back(ParseAnnotationList(r));
      return a;
    }
    if (in_method && name == "AnnotationDefault") {
      return AnnotationDefaultAttribute{ParseElementValue(r)};
    }
    if (name == "RuntimeVisibleTypeAnnotations" || name == "RuntimeInvisibleTypeAnnotations") {
      TypeAnnotationsAttribute a;
      a.visible = name == "RuntimeVisibleTypeAnnotations";
      std::uint16_t n = r.U2();
      a.annotations.reserve(n);
      for (std::uint16_t i = 0; i < n; ++i) a.annotations.push_back(ParseTypeAnnotation(r));
      return a;
    }
    if (in_method && name == "MethodParameters") {
      MethodParametersAttribute a;
      std::uint8_t n = r.U1();
      a.parameters.reserve(n);
      for (std::uint8_t i = 0; i < n; ++i) {
        std::uint16_t name_index = Ref(r, kUtf8Mask, true);
        a.parameters.push_back(MethodParameter{name_index, r.U2()});
      }
      return a;
    }
    if (in_class && name == "Record") {
      RecordAttribute a;
      std::uint16_t n = r.U2();
      a.components.reserve(n);
      for (std::uint16_t i = 0; i < n; ++i) {
        RecordComponent comp;
        comp.name_index = Ref(r, kUtf8Mask);
        comp.descriptor_index = Ref(r, kUtf8Mask);
        comp.attributes = ParseAttributes(r, Location::kRecordComponent);
        a.components.push_back(std::move(comp));
      }
      return a;
    }
    r.Take(body.size());
    return RawAttribute{Bytes(body.begin(), body.end())};
  }

  std::vector<std::uint16_t> ClassList(ByteReader& r) {
    std::uint16_t n = r.U2();
    std::vector<std::uint16_t> out;
    out.reserve(n);
    for (std::uint16_t i = 0; i < n; ++i) out.push_back(Ref(r, kClassMask));
    return out;
  }

  std::vector<LocalVariableEntry> ParseLocalVariables(ByteReader& r) {
    std::uint16_t n = r.U2();
    std::vector<LocalVariableEntry> out;
    out.reserve(n);
    for (std::uint16_t i = 0; i < n; ++i) {
      LocalVariableEntry e;
      e.start_pc = r.U2();
      e.length = r.U2();
      e.name_index = Ref(r, kUtf8Mask);
      e.type_index = Ref(r, kUtf8Mask);
      e.slot = r.U2();
      out.push_back(e);
    }
    return out;
  }

  CodeAttribute ParseCode(ByteReader& r) {
    CodeAttribute code;
    code.max_stack = r.U2();
    code.max_locals = r.U2();
    std::size_t length_at = r.absolute_position();
    code.code_length = r.U4();
    if (code.code_length > 0xffff) {
      throw MalformedClass(length_at, "code_length exceeds 65535");
    }
    std::size_t base = r.absolute_position();
    code.instructions = DecodeCode(r.Take(code.code_length), base);
    for (const auto& insn : code.instructions) {
      for (const auto& o : insn.Operands()) {
        if (o.kind == OperandKind::kPoolIndex &&
            !c_.pool.Matches(static_cast<std::uint32_t>(o.value),
                             InstructionPoolMask(insn.opcode))) {
          throw MalformedClass(base + insn.offset + 1 + (insn.wide ? 1 : 0),
                               "invalid constant pool reference #" + std::to_string(o.value));
        }
      }
    }
    std::uint16_t n = r.U2();
    code.exception_table.reserve(n);
    for (std::uint16_t i = 0; i < n; ++i) {
      ExceptionTableEntry e;
      e.start_pc = r.U2();
      e.end_pc = r.U2();
      e.handler_pc = r.U2();
      e.catch_type = Ref(r, kClassMask, true);
      code.exception_table.push_back(e);
    }
    code.attributes = ParseAttributes(r, Location::kCode);
    return code;
  }

  StackMapTableAttribute ParseStackMap(ByteReader& r) {
    StackMapTableAttribute a;
    std::uint16_t n = r.U2();
    a.frames.reserve(n);
    for (std::uint16_t i = 0; i < n; ++i) {
      StackMapFrame f;
      f.frame_type = r.U1();
      std::uint8_t t = f.frame_type;
      if (t <= 63) {
        f.offset_delta = t;
      } else if (t <= 127) {
        f.offset_delta = t - 64;
        f.stack.push_back(ParseVerificationType(r));
      } else if (t < 247) {
        r.Fail("reserved stack map frame type " + std::to_string(t));
      } else if (t == 247) {
        f.offset_delta = r.U2();
        f.stack.push_back(ParseVerificationType(r));
      } else if (t <= 251) {
        f.offset_delta = r.U2();
      } else if (t <= 254) {
        f.offset_delta = r.U2();
        for (int k = 0; k < t - 251; ++k) f.locals.push_back(ParseVerificationType(r));
      } else {
        f.offset_delta = r.U2();
        std::uint16_t nl = r.U2();
        for (std::uint16_t k = 0; k < nl; ++k) f.locals.push_back(ParseVerificationType(r));
        std::uint16_t ns = r.U2();
        for (std::uint16_t k = 0; k < ns; ++k) f.stack.push_back(ParseVerificationType(r));
      }
      a.frames.push_back(std::move(f));
    }
    return a;
  }

  VerificationType ParseVerificationType(ByteReader& r) {
    VerificationType v{r.U1()};
    if (v.tag == 7) {
      v.data = Ref(r, kClassMask);
    } else if (v.tag == 8) {
      v.data = r.U2();
    } else if (v.tag > 8) {
      r.Fail("unknown verification type tag " + std::to_string(v.tag));
    }
    return v;
  }

  std::vector<Annotation> ParseAnnotationList(ByteReader& r) {
    std::uint16_t n = r.U2();
    std::vector<Annotation> out;
    out.reserve(n);
    for (std::uint16_t i = 0; i < n; ++i) out.push_back(ParseAnnotation(r));
    return out;
  }

  Annotation ParseAnnotation(ByteReader& r) {
    Annotation a;
    a.type_index = Ref(r, kUtf8Mask);
    std::uint16_t n = r.U2();
    a.pairs.reserve(n);
    for (std::uint16_t i = 0; i < n; ++i) {
      std::uint16_t name = Ref(r, kUtf8Mask);
      a.pairs.push_back(ElementValuePair{name, ParseElementValue(r)});
    }
    return a;
  }

  ElementValue ParseElementValue(ByteReader& r) {
    if (++depth_ > 256) r.Fail("element values nested too deeply");
    ElementValue v;
    v.tag = r.U1();
    switch (v.tag) {
      case 'B':
      case 'C':
      case 'D':
      case 'F':
      case 'I':
      case 'J':
      case 'S':
      case 'Z':
      case 's':
        v.const_value_index = Ref(r, ElementConstMask(v.tag));
        break;
      case 'e':
        v.type_name_index = Ref(r, kUtf8Mask);
        v.const_name_index = Ref(r, kUtf8Mask);
        break;
      case 'c':
        v.class_info_index = Ref(r, kUtf8Mask);
        break;
      case '@':
        v.nested.push_back(ParseAnnotation(r));
        break;
      case '[': {
        std::uint16_t n = r.U2();
        v.values.reserve(n);
        for (std::uint16_t i = 0; i < n; ++i) v.values.push_back(ParseElementValue(r));
        break;
      }
      default:
        r.Fail("unknown element value tag " + std::to_string(v.tag));
    }
    --depth_;
    return v;
  }

  TypeAnnotation ParseTypeAnnotation(ByteReader& r) {
    TypeAnnotation t;
    t.target_type = r.U1();
    switch (t.target_type) {
      case 0x00:
      case 0x01:
      case 0x16:
        t.first = r.U1();
        break;
      case 0x10:
      case 0x17:
      case 0x42:
      case 0x43:
      case 0x44:
      case 0x45:
      case 0x46:
        t.first = r.U2();
        break;
      case 0x11:
      case 0x12:
        t.first = r.U1();
        t.second = r.U1();
        break;
      case 0x13:
      case 0x14:
      case 0x15:
        break;
      case 0x40:
      case 0x41: {
        std::uint16_t n = r.U2();
        for (std::uint16_t i = 0; i < n; ++i) {
          LocalVarTargetEntry e;
          e.start_pc = r.U2();
          e.length = r.U2();
          e.slot = r.U2();
          t.local_vars.push_back(e);
        }
        break;
      }
      case 0x47:
      case 0x48:
      case 0x49:
      case 0x4a:
      case 0x4b:
        t.first = r.U2();
        t.second = r.U1();
        break;
      default:
        r.Fail("unknown type annotation target " + std::to_string(t.target_type));
    }
    std::uint8_t path_length = r.U1();
    for (std::uint8_t i = 0; i < path_length; ++i) {
      std::uint8_t kind = r.U1();
      t.path.push_back(TypePathEntry{kind, r.U1()});
    }
    t.annotation = ParseAnnotation(r);
    return t;
  }

  ByteReader top_;
  ClassFile c_;
  std::vector<std::size_t> entry_offsets_;
  std::size_t current_entry_ = 0;
  PoolEntryCheck pool_check_{this};
  int depth_ = 0;
};

}  // namespace

ClassFile ParseClass(ByteView bytes) { return Parser(bytes).Parse(); }

}  // namespace bineq
