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

#include <string>

#include "bineq/class_file.h"

namespace bineq {
namespace {

std::uint16_t CheckedU2(std::size_t n, const char* what) {
  if (n > 0xffff) throw UnencodableModel(std::string(what) + " exceeds 65535 entries");
  return static_cast<std::uint16_t>(n);
}

std::uint8_t CheckedU1(std::size_t n, const char* what) {
  if (n > 0xff) throw UnencodableModel(std::string(what) + " exceeds 255 entries");
  return static_cast<std::uint8_t>(n);
}

std::uint16_t ToU2(std::uint32_t v, const char* what) {
  if (v > 0xffff) throw UnencodableModel(std::string(what) + " exceeds 65535");
  return static_cast<std::uint16_t>(v);
}

class Writer {
 public:
  Bytes Write(const ClassFile& c) {
    ByteWriter& w = w_;
    w.U4(0xCAFEBABE);
    w.U2(c.minor_version);
    w.U2(c.major_version);
    WritePool(w, c.pool);
    w.U2(c.access_flags);
    w.U2(c.this_class);
    w.U2(c.super_class);
    w.U2(CheckedU2(c.interfaces.size(), "interfaces"));
    for (auto i : c.interfaces) w.U2(i);
    WriteMembers(w, c.fields);
    WriteMembers(w, c.methods);
    WriteAttributes(w, c.attributes, nullptr);
    return w.Release();
  }

 private:
  void WritePool(ByteWriter& w, const ConstantPool& pool) {
    w.U2(CheckedU2(pool.entries.size(), "constant pool"));
    for (std::size_t i = 1; i < pool.entries.size(); ++i) {
      const ConstEntry& e = pool.entries[i];
      auto tag = TagOf(e);
      if (!tag) {
        bool after_wide = std::holds_alternative<cp::Long>(pool.entries[i - 1]) ||
                          std::holds_alternative<cp::Double>(pool.entries[i - 1]);
        if (!after_wide) {
          throw UnencodableModel("unusable pool slot #" + std::to_string(i) +
                                 " does not follow a Long or Double");
        }
        continue;
      }
      w.U1(static_cast<std::uint8_t>(*tag));
      std::visit(
          [&](const auto& x) {
            using E = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<E, cp::Utf8>) {
              w.U2(ToU2(static_cast<std::uint32_t>(x.bytes.size()), "Utf8 constant length"));
              w.Append(AsBytes(x.bytes));
            } else if constexpr (std::is_same_v<E, cp::Integer>) {
              w.U4(static_cast<std::uint32_t>(x.value));
            } else if constexpr (std::is_same_v<E, cp::Float>) {
              w.U4(x.bits);
            } else if constexpr (std::is_same_v<E, cp::Long>) {
              w.U8(static_cast<std::uint64_t>(x.value));
            } else if constexpr (std::is_same_v<E, cp::Double>) {
              w.U8(x.bits);
            } else if constexpr (std::is_same_v<E, cp::Class> || std::is_same_v<E, cp::Module> ||
                                 std::is_same_v<E, cp::Package>) {
              w.U2(x.name_index);
            } else if constexpr (std::is_same_v<E, cp::String>) {
              w.U2(x.string_index);
            } else if constexpr (std::is_same_v<E, cp::Fieldref> ||
                                 std::is_same_v<E, cp::Methodref> ||
                                 std::is_same_v<E, cp::InterfaceMethodref>) {
              w.U2(x.class_index);
              w.U2(x.name_and_type_index);
            } else if constexpr (std::is_same_v<E, cp::NameAndType>) {
              w.U2(x.name_index);
              w.U2(x.descriptor_index);
            } else if constexpr (std::is_same_v<E, cp::MethodHandle>) {
              w.U1(x.reference_kind);
              w.U2(x.reference_index);
            } else if constexpr (std::is_same_v<E, cp::MethodType>) {
              w.U2(x.descriptor_index);
            } else if constexpr (std::is_same_v<E, cp::Dynamic> ||
                                 std::is_same_v<E, cp::InvokeDynamic>) {
              w.U2(x.bootstrap_method_attr_index);
              w.U2(x.name_and_type_index);
            }
          },
          e);
    }
  }

  void WriteMembers(ByteWriter& w, const std::vector<MemberInfo>& members) {
    w.U2(CheckedU2(members.size(), "members"));
    for (const auto& m : members) {
      w.U2(m.access_flags);
      w.U2(m.name_index);
      w.U2(m.descriptor_index);
      WriteAttributes(w, m.attributes, nullptr);
    }
  }

  // `map` is non-null for attributes nested in a Code attribute.
  void WriteAttributes(ByteWriter& w, const std::vector<AttributeInfo>& attrs,
                       const OffsetMap* map) {
    w.U2(CheckedU2(attrs.size(), "attributes"));
    for (const auto& a : attrs) {
      w.U2(a.name_index);
      std::size_t length_at = w.size();
      w.U4(0);
      std::size_t start = w.size();
      std::visit([&](const auto& p) { Payload(w, p, map); }, a.payload);
      std::size_t length = w.size() - start;
      if (length > 0xffffffffu) throw UnencodableModel("attribute too long");
      w.PatchU4(length_at, static_cast<std::uint32_t>(length));
    }
  }

  static std::uint16_t Pc(const OffsetMap* map, std::uint32_t pc) {
    return map ? ToU2(map->Map(pc), "code offset") : ToU2(pc, "code offset");
  }

  static std::uint16_t Length(const OffsetMap* map, std::uint32_t start, std::uint32_t length) {
    if (map == nullptr || map->identity) return ToU2(length, "code range");
    return ToU2(map->Map(start + length) - map->Map(start), "code range");
  }

  void Payload(ByteWriter& w, const RawAttribute& p, const OffsetMap*) { w.Append(p.bytes); }

  void Payload(ByteWriter& w, const CodeAttribute& p, const OffsetMap*) {
    w.U2(p.max_stack);
    w.U2(p.max_locals);
    EncodedCode enc = EncodeCode(p.instructions, p.code_length);
    w.U4(static_cast<std::uint32_t>(enc.code.size()));
    w.Append(enc.code);
    w.U2(CheckedU2(p.exception_table.size(), "exception table"));
    for (const auto& e : p.exception_table) {
      w.U2(Pc(&enc.map, e.start_pc));
      w.U2(Pc(&enc.map, e.end_pc));
      w.U2(Pc(&enc.map, e.handler_pc));
      w.U2(e.catch_type);
    }
    WriteAttributes(w, p.attributes, &enc.map);
  }

  void Payload(ByteWriter& w, const ConstantValueAttribute& p, const OffsetMap*) { w.U2(p.index); }

  void Payload(ByteWriter& w, const LineNumberTableAttribute& p, const OffsetMap* map) {
    w.U2(CheckedU2(p.entries.size(), "line number table"));
    for (const auto& e : p.entries) {
      w.U2(Pc(map, e.start_pc));
      w.U2(e.line_number);
    }
  }

  void LocalVariables(ByteWriter& w, const std::vector<LocalVariableEntry>& entries,
                      const OffsetMap* map) {
    w.U2(CheckedU2(entries.size(), "local variable table"));
    for (const auto& e : entries) {
      w.U2(Pc(map, e.start_pc));
      w.U2(Length(map, e.start_pc, e.length));
      w.U2(e.name_index);
      w.U2(e.type_index);
      w.U2(e.slot);
    }
  }

  void Payload(ByteWriter& w, const LocalVariableTableAttribute& p, const OffsetMap* map) {
    LocalVariables(w, p.entries, map);
  }
  void Payload(ByteWriter& w, const LocalVariableTypeTableAttribute& p, const OffsetMap* map) {
    LocalVariables(w, p.entries, map);
  }
  void Payload(ByteWriter& w, const SourceFileAttribute& p, const OffsetMap*) { w.U2(p.index); }
  void Payload(ByteWriter& w, const SourceDebugExtensionAttribute& p, const OffsetMap*) {
    w.Append(p.data);
  }
  void Payload(ByteWriter&, const DeprecatedAttribute&, const OffsetMap*) {}
  void Payload(ByteWriter&, const SyntheticAttribute&, const OffsetMap*) {}
  void Payload(ByteWriter& w, const SignatureAttribute& p, const OffsetMap*) { w.U2(p.index); }

  void ClassList(ByteWriter& w, const std::vector<std::uint16_t>& classes) {
    w.U2(CheckedU2(classes.size(), "class list"));
    for (auto c : classes) w.U2(c);
  }
  void Payload(ByteWriter& w, const ExceptionsAttribute& p, const OffsetMap*) {
    ClassList(w, p.classes);
  }
  void Payload(ByteWriter& w, const NestMembersAttribute& p, const OffsetMap*) {
    ClassList(w, p.classes);
  }
  void Payload(ByteWriter& w, const PermittedSubclassesAttribute& p, const OffsetMap*) {
    ClassList(w, p.classes);
  }

  void Payload(ByteWriter& w, const InnerClassesAttribute& p, const OffsetMap*) {
    w.U2(CheckedU2(p.classes.size(), "inner classes"));
    for (const auto& e : p.classes) {
      w.U2(e.inner_class_index);
      w.U2(e.outer_class_index);
      w.U2(e.inner_name_index);
      w.U2(e.access_flags);
    }
  }

  void Payload(ByteWriter& w, const EnclosingMethodAttribute& p, const OffsetMap*) {
    w.U2(p.class_index);
    w.U2(p.method_index);
  }
  void Payload(ByteWriter& w, const NestHostAttribute& p, const OffsetMap*) {
    w.U2(p.host_class_index);
  }

  void Payload(ByteWriter& w, const BootstrapMethodsAttribute& p, const OffsetMap*) {
    w.U2(CheckedU2(p.methods.size(), "bootstrap methods"));
    for (const auto& m : p.methods) {
      w.U2(m.method_ref);
      w.U2(CheckedU2(m.arguments.size(), "bootstrap arguments"));
      for (auto a : m.arguments) w.U2(a);
    }
  }

  void WriteAnnotation(ByteWriter& w, const Annotation& a) {
    w.U2(a.type_index);
    w.U2(CheckedU2(a.pairs.size(), "annotation elements"));
    for (const auto& p : a.pairs) {
      w.U2(p.name_index);
      WriteElement(w, p.value);
    }
  }

  void WriteElement(ByteWriter& w, const ElementValue& v) {
    w.U1(v.tag);
    switch (v.tag) {
      case 'e':
        w.U2(v.type_name_index);
        w.U2(v.const_name_index);
        break;
      case 'c':
        w.U2(v.class_info_index);
        break;
      case '@':
        if (v.nested.size() != 1)
          throw UnencodableModel("nested annotation value without annotation");
        WriteAnnotation(w, v.nested[0]);
        break;
      case '[':
        w.U2(CheckedU2(v.values.size(), "array element value"));
        for (const auto& e : v.values) WriteElement(w, e);
        break;
      default:
        w.U2(v.const_value_index);
    }
  }

  void AnnotationList(ByteWriter& w, const std::vector<Annotation>& list) {
    w.U2(CheckedU2(list.size(), "annotations"));
    for (const auto& a : list) WriteAnnotation(w, a);
  }

  void Payload(ByteWriter& w, const AnnotationsAttribute& p, const OffsetMap*) {
    AnnotationList(w, p.annotations);
  }
  void Payload(ByteWriter& w, const ParameterAnnotationsAttribute& p, const OffsetMap*) {
    w.U1(CheckedU1(p.parameters.size(), "parameter annotations"));
    for (const auto& list : p.parameters) AnnotationList(w, list);
  }
  void Payload(ByteWriter& w, const AnnotationDefaultAttribute& p, const OffsetMap*) {
    WriteElement(w, p.value);
  }

  void Payload(ByteWriter& w, const TypeAnnotationsAttribute& p, const OffsetMap* map) {
    w.U2(CheckedU2(p.annotations.size(), "type annotations"));
    for (const auto& t : p.annotations) {
      w.U1(t.target_type);
      switch (t.target_type) {
        case 0x00:
        case 0x01:
        case 0x16:
          w.U1(static_cast<std::uint8_t>(t.first));
          break;
        case 0x10:
        case 0x17:
        case 0x42:
          w.U2(t.first);
          break;
        case 0x43:
        case 0x44:
        case 0x45:
        case 0x46:
          w.U2(Pc(map, t.first));
          break;
        case 0x11:
        case 0x12:
          w.U1(static_cast<std::uint8_t>(t.first));
          w.U1(static_cast<std::uint8_t>(t.second));
          break;
        case 0x13:
        case 0x14:
        case 0x15:
          break;
        case 0x40:
        case 0x41:
          w.U2(CheckedU2(t.local_vars.size(), "localvar target"));
          for (const auto& e : t.local_vars) {
            w.U2(Pc(map, e.start_pc));
            w.U2(Length(map, e.start_pc, e.length));
            w.U2(e.slot);
          }
          break;
        case 0x47:
        case 0x48:
        case 0x49:
        case 0x4a:
        case 0x4b:
          w.U2(Pc(map, t.first));
          w.U1(static_cast<std::uint8_t>(t.second));
          break;
        default:
          throw UnencodableModel("unknown type annotation target");
      }
      w.U1(CheckedU1(t.path.size(), "type path"));
      for (const auto& e : t.path) {
        w.U1(e.kind);
        w.U1(e.argument_index);
      }
      WriteAnnotation(w, t.annotation);
    }
  }

  void Payload(ByteWriter& w, const MethodParametersAttribute& p, const OffsetMap*) {
    w.U1(CheckedU1(p.parameters.size(), "method parameters"));
    for (const auto& m : p.parameters) {
      w.U2(m.name_index);
      w.U2(m.access_flags);
    }
  }

  void Verification(ByteWriter& w, const VerificationType& v, const OffsetMap* map) {
    w.U1(v.tag);
    if (v.tag == 7) w.U2(v.data);
    if (v.tag == 8) w.U2(Pc(map, v.data));
  }

  void Payload(ByteWriter& w, const StackMapTableAttribute& p, const OffsetMap* map) {
    w.U2(CheckedU2(p.frames.size(), "stack map frames"));
    const bool remap = map != nullptr && !map->identity;
    std::int64_t old_prev = -1;
    std::int64_t new_prev = -1;
    for (const auto& f : p.frames) {
      std::uint8_t type = f.frame_type;
      std::uint32_t delta = f.offset_delta;
      if (remap) {
        std::int64_t old_at = old_prev + 1 + f.offset_delta;
        std::int64_t new_at = map->Map(static_cast<std::uint32_t>(old_at));
        delta = static_cast<std::uint32_t>(new_at - new_prev - 1);
        old_prev = old_at;
        new_prev = new_at;
        if (type <= 63) {
          type = delta <= 63 ? static_cast<std::uint8_t>(delta) : 251;
        } else if (type <= 127) {
          type = delta <= 63 ? static_cast<std::uint8_t>(64 + delta) : 247;
        }
      }
      w.U1(type);
      if (type <= 63) {
      } else if (type <= 127) {
        Verification(w, f.stack.at(0), map);
      } else if (type == 247) {
        w.U2(ToU2(delta, "frame offset"));
        Verification(w, f.stack.at(0), map);
      } else if (type >= 248 && type <= 251) {
        w.U2(ToU2(delta, "frame offset"));
      } else if (type >= 252 && type <= 254) {
        w.U2(ToU2(delta, "frame offset"));
        if (f.locals.size() != static_cast<std::size_t>(type - 251)) {
          throw UnencodableModel("append frame local count mismatch");
        }
        for (const auto& v : f.locals) Verification(w, v, map);
      } else if (type == 255) {
        w.U2(ToU2(delta, "frame offset"));
        w.U2(CheckedU2(f.locals.size(), "frame locals"));
        for (const auto& v : f.locals) Verification(w, v, map);
        w.U2(CheckedU2(f.stack.size(), "frame stack"));
        for (const auto& v : f.stack) Verification(w, v, map);
      } else {
        throw UnencodableModel("reserved stack map frame type");
      }
    }
  }

  void Payload(ByteWriter& w, const RecordAttribute& p, const OffsetMap*) {
    w.U2(CheckedU2(p.components.size(), "record components"));
    for (const auto& c : p.components) {
      w.U2(c.name_index);
      w.U2(c.descriptor_index);
      WriteAttributes(w, c.attributes, nullptr);
    }
  }

  ByteWriter w_;
};

}  // namespace

Bytes SerializeClass(const ClassFile& c) { return Writer().Write(c); }

}  // namespace bineq
