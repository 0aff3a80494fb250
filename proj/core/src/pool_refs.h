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

#ifndef BINEQ_SRC_POOL_REFS_H_
#define BINEQ_SRC_POOL_REFS_H_

// Enumerates every constant-pool index stored in a class model, together with
// the entry kinds its use site accepts. Shared by validation and by the
// pool-permuting mutation, which must rewrite every reference.

#include <type_traits>
#include <variant>

#include "bineq/class_file.h"
#include "bineq/opcodes.h"

namespace bineq::internal {

struct RefSite {
  TagMask allowed;
  bool zero_ok;
  const char* where;
};

inline constexpr TagMask kUtf8Mask = Mask(ConstTag::kUtf8);
inline constexpr TagMask kClassMask = Mask(ConstTag::kClass);
inline constexpr TagMask kLoadableMask =
    Mask(ConstTag::kInteger, ConstTag::kFloat, ConstTag::kLong, ConstTag::kDouble, ConstTag::kClass,
         ConstTag::kString, ConstTag::kMethodHandle, ConstTag::kMethodType, ConstTag::kDynamic);

inline TagMask MethodHandleTargetMask(std::uint8_t kind) {
  switch (kind) {
    case 1:
    case 2:
    case 3:
    case 4:
      return Mask(ConstTag::kFieldref);
    case 5:
    case 8:
      return Mask(ConstTag::kMethodref);
    case 6:
    case 7:
      return Mask(ConstTag::kMethodref, ConstTag::kInterfaceMethodref);
    case 9:
      return Mask(ConstTag::kInterfaceMethodref);
    default:
      return 0;
  }
}

// Kinds accepted by an instruction's pool operand.
inline TagMask InstructionPoolMask(std::uint8_t opcode) {
  switch (opcode) {
    case op::kLdc:
    case op::kLdcW:
      return Mask(ConstTag::kInteger, ConstTag::kFloat, ConstTag::kString, ConstTag::kClass,
                  ConstTag::kMethodType, ConstTag::kMethodHandle, ConstTag::kDynamic);
    case op::kLdc2W:
      return Mask(ConstTag::kLong, ConstTag::kDouble, ConstTag::kDynamic);
    case op::kGetstatic:
    case op::kPutstatic:
    case op::kGetfield:
    case op::kPutfield:
      return Mask(ConstTag::kFieldref);
    case op::kInvokevirtual:
      return Mask(ConstTag::kMethodref);
    case op::kInvokespecial:
    case op::kInvokestatic:
      return Mask(ConstTag::kMethodref, ConstTag::kInterfaceMethodref);
    case op::kInvokeinterface:
      return Mask(ConstTag::kInterfaceMethodref);
    case op::kInvokedynamic:
      return Mask(ConstTag::kInvokeDynamic);
    case op::kNew:
    case op::kAnewarray:
    case op::kCheckcast:
    case op::kInstanceof:
    case op::kMultianewarray:
      return kClassMask;
    default:
      return 0;
  }
}

inline TagMask ElementConstMask(std::uint8_t tag) {
  switch (tag) {
    case 'B':
    case 'C':
    case 'I':
    case 'S':
    case 'Z':
      return Mask(ConstTag::kInteger);
    case 'D':
      return Mask(ConstTag::kDouble);
    case 'F':
      return Mask(ConstTag::kFloat);
    case 'J':
      return Mask(ConstTag::kLong);
    case 's':
      return kUtf8Mask;
    default:
      return 0;
  }
}

template <typename Fn>
struct PoolRefVisitor {
  Fn& fn;

  void Ref(auto& index, TagMask allowed, const char* where, bool zero_ok = false) {
    fn(index, RefSite{allowed, zero_ok, where});
  }

  void Entry(auto& entry) {
    using E = std::remove_cvref_t<decltype(entry)>;
    if constexpr (std::is_same_v<E, cp::Class> || std::is_same_v<E, cp::Module> ||
                  std::is_same_v<E, cp::Package>) {
      Ref(entry.name_index, kUtf8Mask, "constant name");
    } else if constexpr (std::is_same_v<E, cp::String>) {
      Ref(entry.string_index, kUtf8Mask, "string constant");
    } else if constexpr (std::is_same_v<E, cp::Fieldref> || std::is_same_v<E, cp::Methodref> ||
                         std::is_same_v<E, cp::InterfaceMethodref>) {
      Ref(entry.class_index, kClassMask, "member ref class");
      Ref(entry.name_and_type_index, Mask(ConstTag::kNameAndType), "member ref name and type");
    } else if constexpr (std::is_same_v<E, cp::NameAndType>) {
      Ref(entry.name_index, kUtf8Mask, "name and type name");
      Ref(entry.descriptor_index, kUtf8Mask, "name and type descriptor");
    } else if constexpr (std::is_same_v<E, cp::MethodHandle>) {
      Ref(entry.reference_index, MethodHandleTargetMask(entry.reference_kind),
          "method handle reference");
    } else if constexpr (std::is_same_v<E, cp::MethodType>) {
      Ref(entry.descriptor_index, kUtf8Mask, "method type descriptor");
    } else if constexpr (std::is_same_v<E, cp::Dynamic> || std::is_same_v<E, cp::InvokeDynamic>) {
      Ref(entry.name_and_type_index, Mask(ConstTag::kNameAndType), "dynamic name and type");
    }
  }

  void Annot(auto& a) {
    Ref(a.type_index, kUtf8Mask, "annotation type");
    for (auto& p : a.pairs) {
      Ref(p.name_index, kUtf8Mask, "annotation element name");
      Element(p.value);
    }
  }

  void Element(auto& v) {
    switch (v.tag) {
      case 'e':
        Ref(v.type_name_index, kUtf8Mask, "enum type");
        Ref(v.const_name_index, kUtf8Mask, "enum constant");
        break;
      case 'c':
        Ref(v.class_info_index, kUtf8Mask, "class element");
        break;
      case '@':
        for (auto& n : v.nested) Annot(n);
        break;
      case '[':
        for (auto& e : v.values) Element(e);
        break;
      default:
        Ref(v.const_value_index, ElementConstMask(v.tag), "element constant");
    }
  }

  void Attributes(auto& attrs) {
    for (auto& a : attrs) Attribute(a);
  }

  void Attribute(auto& a) {
    Ref(a.name_index, kUtf8Mask, "attribute name");
    std::visit([this](auto& p) { Payload(p); }, a.payload);
  }

  void Payload(auto& p) {
    using P = std::remove_cvref_t<decltype(p)>;
    if constexpr (std::is_same_v<P, CodeAttribute>) {
      for (auto& insn : p.instructions) {
        for (auto& o : insn.Operands()) {
          if (o.kind == OperandKind::kPoolIndex) {
            Ref(o.value, InstructionPoolMask(insn.opcode), "instruction operand");
          }
        }
      }
      for (auto& e : p.exception_table) {
        Ref(e.catch_type, kClassMask, "exception handler type", true);
      }
      Attributes(p.attributes);
    } else if constexpr (std::is_same_v<P, ConstantValueAttribute>) {
      Ref(p.index,
          Mask(ConstTag::kInteger, ConstTag::kFloat, ConstTag::kLong, ConstTag::kDouble,
               ConstTag::kString),
          "constant value");
    } else if constexpr (std::is_same_v<P, LocalVariableTableAttribute> ||
                         std::is_same_v<P, LocalVariableTypeTableAttribute>) {
      for (auto& e : p.entries) {
        Ref(e.name_index, kUtf8Mask, "local variable name");
        Ref(e.type_index, kUtf8Mask, "local variable type");
      }
    } else if constexpr (std::is_same_v<P, SourceFileAttribute> ||
                         std::is_same_v<P, SignatureAttribute>) {
      Ref(p.index, kUtf8Mask, "attribute string");
    } else if constexpr (std::is_same_v<P, ExceptionsAttribute> ||
                         std::is_same_v<P, NestMembersAttribute> ||
                         std::is_same_v<P, PermittedSubclassesAttribute>) {
      for (auto& c : p.classes) Ref(c, kClassMask, "class list entry");
    } else if constexpr (std::is_same_v<P, InnerClassesAttribute>) {
      for (auto& e : p.classes) {
        Ref(e.inner_class_index, kClassMask, "inner class");
        Ref(e.outer_class_index, kClassMask, "outer class", true);
        Ref(e.inner_name_index, kUtf8Mask, "inner class name", true);
      }
    } else if constexpr (std::is_same_v<P, EnclosingMethodAttribute>) {
      Ref(p.class_index, kClassMask, "enclosing class");
      Ref(p.method_index, Mask(ConstTag::kNameAndType), "enclosing method", true);
    } else if constexpr (std::is_same_v<P, NestHostAttribute>) {
      Ref(p.host_class_index, kClassMask, "nest host");
    } else if constexpr (std::is_same_v<P, BootstrapMethodsAttribute>) {
      for (auto& m : p.methods) {
        Ref(m.method_ref, Mask(ConstTag::kMethodHandle), "bootstrap method");
        for (auto& arg : m.arguments) Ref(arg, kLoadableMask, "bootstrap argument");
      }
    } else if constexpr (std::is_same_v<P, AnnotationsAttribute>) {
      for (auto& an : p.annotations) Annot(an);
    } else if constexpr (std::is_same_v<P, ParameterAnnotationsAttribute>) {
      for (auto& param : p.parameters) {
        for (auto& an : param) Annot(an);
      }
    } else if constexpr (std::is_same_v<P, AnnotationDefaultAttribute>) {
      Element(p.value);
    } else if constexpr (std::is_same_v<P, TypeAnnotationsAttribute>) {
      for (auto& t : p.annotations) Annot(t.annotation);
    } else if constexpr (std::is_same_v<P, MethodParametersAttribute>) {
      for (auto& m : p.parameters) Ref(m.name_index, kUtf8Mask, "parameter name", true);
    } else if constexpr (std::is_same_v<P, StackMapTableAttribute>) {
      for (auto& f : p.frames) {
        for (auto& v : f.locals) VerificationRef(v);
        for (auto& v : f.stack) VerificationRef(v);
      }
    } else if constexpr (std::is_same_v<P, RecordAttribute>) {
      for (auto& c : p.components) {
        Ref(c.name_index, kUtf8Mask, "record component name");
        Ref(c.descriptor_index, kUtf8Mask, "record component descriptor");
        Attributes(c.attributes);
      }
    }
  }

  void VerificationRef(auto& v) {
    if (v.tag == 7) Ref(v.data, kClassMask, "stack map object type");
  }

  void Class(auto& c) {
    for (auto& e : c.pool.entries) {
      std::visit([this](auto& x) { Entry(x); }, e);
    }
    Ref(c.this_class, kClassMask, "this_class");
    Ref(c.super_class, kClassMask, "super_class", true);
    for (auto& i : c.interfaces) Ref(i, kClassMask, "interface");
    for (auto* members : {&c.fields, &c.methods}) {
      for (auto& m : *members) {
        Ref(m.name_index, kUtf8Mask, "member name");
        Ref(m.descriptor_index, kUtf8Mask, "member descriptor");
        Attributes(m.attributes);
      }
    }
    Attributes(c.attributes);
  }
};

// Calls fn(index_field, RefSite) for every pool reference in `c`. Works on
// const and mutable models; index_field is a u16 or (for instruction
// operands) an i32 lvalue.
template <typename ClassT, typename Fn>
void VisitPoolRefs(ClassT& c, Fn&& fn) {
  PoolRefVisitor<Fn> v{fn};
  v.Class(c);
}

bool HasOpaqueAttributes(const ClassFile& c);

}  // namespace bineq::internal

#endif  // BINEQ_SRC_POOL_REFS_H_
