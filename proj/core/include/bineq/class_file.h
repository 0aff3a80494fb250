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

#ifndef BINEQ_CLASS_FILE_H_
#define BINEQ_CLASS_FILE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bineq/bytes.h"
#include "bineq/error.h"

namespace bineq {

// ---------------------------------------------------------------------------
// Constant pool

enum class ConstTag : std::uint8_t {
  kUtf8 = 1,
  kInteger = 3,
  kFloat = 4,
  kLong = 5,
  kDouble = 6,
  kClass = 7,
  kString = 8,
  kFieldref = 9,
  kMethodref = 10,
  kInterfaceMethodref = 11,
  kNameAndType = 12,
  kMethodHandle = 15,
  kMethodType = 16,
  kDynamic = 17,
  kInvokeDynamic = 18,
  kModule = 19,
  kPackage = 20,
};

namespace cp {

// Index 0 and the slot following a Long or Double.
struct Unusable {
  bool operator==(const Unusable&) const = default;
};
struct Utf8 {
  std::string bytes;  // modified UTF-8, exactly as stored
  bool operator==(const Utf8&) const = default;
};
struct Integer {
  std::int32_t value;
  bool operator==(const Integer&) const = default;
};
struct Float {
  std::uint32_t bits;
  bool operator==(const Float&) const = default;
};
struct Long {
  std::int64_t value;
  bool operator==(const Long&) const = default;
};
struct Double {
  std::uint64_t bits;
  bool operator==(const Double&) const = default;
};
struct Class {
  std::uint16_t name_index;
  bool operator==(const Class&) const = default;
};
struct String {
  std::uint16_t string_index;
  bool operator==(const String&) const = default;
};
struct Fieldref {
  std::uint16_t class_index;
  std::uint16_t name_and_type_index;
  bool operator==(const Fieldref&) const = default;
};
struct Methodref {
  std::uint16_t class_index;
  std::uint16_t name_and_type_index;
  bool operator==(const Methodref&) const = default;
};
struct InterfaceMethodref {
  std::uint16_t class_index;
  std::uint16_t name_and_type_index;
  bool operator==(const InterfaceMethodref&) const = default;
};
struct NameAndType {
  std::uint16_t name_index;
  std::uint16_t descriptor_index;
  bool operator==(const NameAndType&) const = default;
};
struct MethodHandle {
  std::uint8_t reference_kind;
  std::uint16_t reference_index;
  bool operator==(const MethodHandle&) const = default;
};
struct MethodType {
  std::uint16_t descriptor_index;
  bool operator==(const MethodType&) const = default;
};
struct Dynamic {
  std::uint16_t bootstrap_method_attr_index;
  std::uint16_t name_and_type_index;
  bool operator==(const Dynamic&) const = default;
};
struct InvokeDynamic {
  std::uint16_t bootstrap_method_attr_index;
  std::uint16_t name_and_type_index;
  bool operator==(const InvokeDynamic&) const = default;
};
struct Module {
  std::uint16_t name_index;
  bool operator==(const Module&) const = default;
};
struct Package {
  std::uint16_t name_index;
  bool operator==(const Package&) const = default;
};

}  // namespace cp

using ConstEntry =
    std::variant<cp::Unusable, cp::Utf8, cp::Integer, cp::Float, cp::Long, cp::Double, cp::Class,
                 cp::String, cp::Fieldref, cp::Methodref, cp::InterfaceMethodref, cp::NameAndType,
                 cp::MethodHandle, cp::MethodType, cp::Dynamic, cp::InvokeDynamic, cp::Module,
                 cp::Package>;

// Tag of a pool entry; Unusable slots report nullopt.
std::optional<ConstTag> TagOf(const ConstEntry& e);
std::string_view TagName(ConstTag tag);

// Bit set over ConstTag values, used to state which kinds a use site accepts.
using TagMask = std::uint32_t;
constexpr TagMask Mask(ConstTag t) { return TagMask{1} << static_cast<int>(t); }
template <typename... T>
constexpr TagMask Mask(ConstTag t, T... rest) {
  return Mask(t) | Mask(rest...);
}

// Thrown when a pool lookup does not find the entry kind a use site needs.
class BadPoolReference : public Error {
 public:
  using Error::Error;
};

// 1-based constant pool. entries[0] is always Unusable; constant_pool_count in
// the file equals entries.size().
struct ConstantPool {
  std::vector<ConstEntry> entries{cp::Unusable{}};

  std::size_t count() const { return entries.size(); }
  bool InRange(std::uint32_t index) const { return index > 0 && index < entries.size(); }
  bool Matches(std::uint32_t index, TagMask allowed) const;

  const ConstEntry& At(std::uint32_t index) const;

  template <typename T>
  const T& Get(std::uint32_t index) const {
    const T* p = std::get_if<T>(&At(index));
    if (p == nullptr) {
      throw BadPoolReference("constant pool entry #" + std::to_string(index) +
                             " has an unexpected kind");
    }
    return *p;
  }

  // Raw modified UTF-8 of a Utf8 entry.
  const std::string& Utf8(std::uint32_t index) const { return Get<cp::Utf8>(index).bytes; }
  const std::string& ClassName(std::uint32_t index) const {
    return Utf8(Get<cp::Class>(index).name_index);
  }

  // Appends an entry (two slots for Long/Double) and returns its index.
  std::uint16_t Add(ConstEntry entry);

  bool operator==(const ConstantPool&) const = default;
};

// ---------------------------------------------------------------------------
// Bytecode

enum class OperandKind : std::uint8_t {
  kPoolIndex,
  kBranchTarget,  // absolute byte offset of the target instruction
  kImmediate,
  kLocalSlot,
  kArrayType,  // newarray element type code
  kCount,      // invokeinterface count, multianewarray dimensions
};

struct Operand {
  OperandKind kind;
  std::int32_t value;
  bool operator==(const Operand&) const = default;
};

struct SwitchCase {
  std::int32_t match;
  std::int32_t target;  // absolute byte offset
  bool operator==(const SwitchCase&) const = default;
};

// tableswitch stores low/high and one case per value in [low, high];
// lookupswitch stores its sorted match/target pairs.
struct SwitchTable {
  std::int32_t default_target = 0;
  std::int32_t low = 0;
  std::int32_t high = 0;
  std::vector<SwitchCase> cases;
  bool operator==(const SwitchTable&) const = default;
};

struct Instruction {
  std::uint32_t offset = 0;
  std::uint8_t opcode = 0;
  bool wide = false;
  std::uint8_t operand_count = 0;
  Operand operands[2] = {};
  std::optional<SwitchTable> table;

  std::span<const Operand> Operands() const { return {operands, operand_count}; }
  std::span<Operand> Operands() { return {operands, operand_count}; }
  void AddOperand(OperandKind kind, std::int32_t value) {
    operands[operand_count++] = Operand{kind, value};
  }

  bool operator==(const Instruction& o) const {
    if (offset != o.offset || opcode != o.opcode || wide != o.wide ||
        operand_count != o.operand_count || table != o.table) {
      return false;
    }
    for (int i = 0; i < operand_count; ++i) {
      if (!(operands[i] == o.operands[i])) return false;
    }
    return true;
  }
};

// Encoded size of `insn` when placed at byte offset `at` (switch padding
// depends on alignment). ldc with a pool index above 255 is sized as ldc_w.
std::uint32_t EncodedSize(const Instruction& insn, std::uint32_t at);

// Decodes a Code attribute's code array. `base_offset` is the position of
// code[0] inside the class file, used for error offsets.
std::vector<Instruction> DecodeCode(ByteView code, std::size_t base_offset = 0);

// Old-offset to new-offset table for code whose instruction widths changed.
// Index by old byte offset (0..old_code_length); -1 marks offsets that were not
// instruction boundaries.
struct OffsetMap {
  std::vector<std::int64_t> old_to_new;
  bool identity = true;

  std::uint32_t Map(std::uint32_t old_offset) const;
};

struct EncodedCode {
  Bytes code;
  OffsetMap map;
};

// Encodes instructions, widening ldc to ldc_w where the pool index needs it.
// Branch targets, stored as old offsets, are remapped to the new layout.
EncodedCode EncodeCode(std::span<const Instruction> instructions, std::uint32_t old_code_length);

// Assigns consecutive offsets from the instructions' current encodings and
// returns the resulting code length. Branch targets are left untouched.
std::uint32_t AssignOffsets(std::span<Instruction> instructions);

// ---------------------------------------------------------------------------
// Attributes

struct AttributeInfo;

struct RawAttribute {
  Bytes bytes;
  bool operator==(const RawAttribute&) const = default;
};

struct ExceptionTableEntry {
  std::uint16_t start_pc;
  std::uint16_t end_pc;
  std::uint16_t handler_pc;
  std::uint16_t catch_type;  // 0 = any
  bool operator==(const ExceptionTableEntry&) const = default;
};

struct CodeAttribute {
  std::uint16_t max_stack = 0;
  std::uint16_t max_locals = 0;
  std::uint32_t code_length = 0;
  std::vector<Instruction> instructions;
  std::vector<ExceptionTableEntry> exception_table;
  std::vector<AttributeInfo> attributes;
  bool operator==(const CodeAttribute&) const;
};

struct ConstantValueAttribute {
  std::uint16_t index;
  bool operator==(const ConstantValueAttribute&) const = default;
};

struct LineNumberEntry {
  std::uint16_t start_pc;
  std::uint16_t line_number;
  bool operator==(const LineNumberEntry&) const = default;
};
struct LineNumberTableAttribute {
  std::vector<LineNumberEntry> entries;
  bool operator==(const LineNumberTableAttribute&) const = default;
};

// Shared by LocalVariableTable (descriptor) and LocalVariableTypeTable
// (signature).
struct LocalVariableEntry {
  std::uint16_t start_pc;
  std::uint16_t length;
  std::uint16_t name_index;
  std::uint16_t type_index;
  std::uint16_t slot;
  bool operator==(const LocalVariableEntry&) const = default;
};
struct LocalVariableTableAttribute {
  std::vector<LocalVariableEntry> entries;
  bool operator==(const LocalVariableTableAttribute&) const = default;
};
struct LocalVariableTypeTableAttribute {
  std::vector<LocalVariableEntry> entries;
  bool operator==(const LocalVariableTypeTableAttribute&) const = default;
};

struct SourceFileAttribute {
  std::uint16_t index;
  bool operator==(const SourceFileAttribute&) const = default;
};
struct SourceDebugExtensionAttribute {
  Bytes data;
  bool operator==(const SourceDebugExtensionAttribute&) const = default;
};
struct DeprecatedAttribute {
  bool operator==(const DeprecatedAttribute&) const = default;
};
struct SyntheticAttribute {
  bool operator==(const SyntheticAttribute&) const = default;
};
struct SignatureAttribute {
  std::uint16_t index;
  bool operator==(const SignatureAttribute&) const = default;
};
struct ExceptionsAttribute {
  std::vector<std::uint16_t> classes;
  bool operator==(const ExceptionsAttribute&) const = default;
};

struct InnerClassEntry {
  std::uint16_t inner_class_index;
  std::uint16_t outer_class_index;  // 0 = none
  std::uint16_t inner_name_index;   // 0 = anonymous
  std::uint16_t access_flags;
  bool operator==(const InnerClassEntry&) const = default;
};
struct InnerClassesAttribute {
  std::vector<InnerClassEntry> classes;
  bool operator==(const InnerClassesAttribute&) const = default;
};

struct EnclosingMethodAttribute {
  std::uint16_t class_index;
  std::uint16_t method_index;  // NameAndType or 0
  bool operator==(const EnclosingMethodAttribute&) const = default;
};

struct NestHostAttribute {
  std::uint16_t host_class_index;
  bool operator==(const NestHostAttribute&) const = default;
};
struct NestMembersAttribute {
  std::vector<std::uint16_t> classes;
  bool operator==(const NestMembersAttribute&) const = default;
};
struct PermittedSubclassesAttribute {
  std::vector<std::uint16_t> classes;
  bool operator==(const PermittedSubclassesAttribute&) const = default;
};

struct BootstrapMethod {
  std::uint16_t method_ref;
  std::vector<std::uint16_t> arguments;
  bool operator==(const BootstrapMethod&) const = default;
};
struct BootstrapMethodsAttribute {
  std::vector<BootstrapMethod> methods;
  bool operator==(const BootstrapMethodsAttribute&) const = default;
};

struct MethodParameter {
  std::uint16_t name_index;  // 0 = unnamed
  std::uint16_t access_flags;
  bool operator==(const MethodParameter&) const = default;
};
struct MethodParametersAttribute {
  std::vector<MethodParameter> parameters;
  bool operator==(const MethodParametersAttribute&) const = default;
};

struct Annotation;

// element_value. Which fields are meaningful depends on `tag`:
// B C D F I J S Z s -> const_value_index; e -> type_name_index and
// const_name_index; c -> class_info_index; @ -> nested[0]; [ -> values.
struct ElementValue {
  std::uint8_t tag = 0;
  std::uint16_t const_value_index = 0;
  std::uint16_t type_name_index = 0;
  std::uint16_t const_name_index = 0;
  std::uint16_t class_info_index = 0;
  std::vector<Annotation> nested;
  std::vector<ElementValue> values;
  bool operator==(const ElementValue&) const;
};

struct ElementValuePair {
  std::uint16_t name_index;
  ElementValue value;
  bool operator==(const ElementValuePair&) const = default;
};

struct Annotation {
  std::uint16_t type_index;
  std::vector<ElementValuePair> pairs;
  bool operator==(const Annotation&) const = default;
};

// RuntimeVisibleAnnotations / RuntimeInvisibleAnnotations.
struct AnnotationsAttribute {
  bool visible;
  std::vector<Annotation> annotations;
  bool operator==(const AnnotationsAttribute&) const = default;
};

// Runtime(In)VisibleParameterAnnotations.
struct ParameterAnnotationsAttribute {
  bool visible;
  std::vector<std::vector<Annotation>> parameters;
  bool operator==(const ParameterAnnotationsAttribute&) const = default;
};

struct AnnotationDefaultAttribute {
  ElementValue value;
  bool operator==(const AnnotationDefaultAttribute&) const = default;
};

struct LocalVarTargetEntry {
  std::uint16_t start_pc;
  std::uint16_t length;
  std::uint16_t slot;
  bool operator==(const LocalVarTargetEntry&) const = default;
};

struct TypePathEntry {
  std::uint8_t kind;
  std::uint8_t argument_index;
  bool operator==(const TypePathEntry&) const = default;
};

// type_annotation. `first`/`second` hold the target_info scalars in
// declaration order (index, bound index, offset, type argument index, ...);
// localvar targets use `local_vars`.
struct TypeAnnotation {
  std::uint8_t target_type = 0;
  std::uint16_t first = 0;
  std::uint16_t second = 0;
  std::vector<LocalVarTargetEntry> local_vars;
  std::vector<TypePathEntry> path;
  Annotation annotation;
  bool operator==(const TypeAnnotation&) const = default;
};

struct TypeAnnotationsAttribute {
  bool visible;
  std::vector<TypeAnnotation> annotations;
  bool operator==(const TypeAnnotationsAttribute&) const = default;
};

struct VerificationType {
  std::uint8_t tag;
  std::uint16_t data = 0;  // pool index (Object) or code offset (Uninitialized)
  bool operator==(const VerificationType&) const = default;
};

struct StackMapFrame {
  std::uint8_t frame_type;
  std::uint16_t offset_delta;
  std::vector<VerificationType> locals;  // appended locals or full frame
  std::vector<VerificationType> stack;
  bool operator==(const StackMapFrame&) const = default;
};

struct StackMapTableAttribute {
  std::vector<StackMapFrame> frames;
  bool operator==(const StackMapTableAttribute&) const = default;
};

struct RecordComponent {
  std::uint16_t name_index;
  std::uint16_t descriptor_index;
  std::vector<AttributeInfo> attributes;
  bool operator==(const RecordComponent&) const;
};
struct RecordAttribute {
  std::vector<RecordComponent> components;
  bool operator==(const RecordAttribute&) const = default;
};

using AttributePayload = std::variant<
    RawAttribute, CodeAttribute, ConstantValueAttribute, LineNumberTableAttribute,
    LocalVariableTableAttribute, LocalVariableTypeTableAttribute, SourceFileAttribute,
    SourceDebugExtensionAttribute, DeprecatedAttribute, SyntheticAttribute, SignatureAttribute,
    ExceptionsAttribute, InnerClassesAttribute, EnclosingMethodAttribute, NestHostAttribute,
    NestMembersAttribute, PermittedSubclassesAttribute, BootstrapMethodsAttribute,
    AnnotationsAttribute, ParameterAnnotationsAttribute, AnnotationDefaultAttribute,
    TypeAnnotationsAttribute, MethodParametersAttribute, StackMapTableAttribute, RecordAttribute>;

struct AttributeInfo {
  std::uint16_t name_index = 0;
  std::string name;  // resolved from name_index
  AttributePayload payload;

  bool opaque() const { return std::holds_alternative<RawAttribute>(payload); }
  bool operator==(const AttributeInfo&) const = default;
};

// ---------------------------------------------------------------------------
// Class

struct MemberInfo {
  std::uint16_t access_flags = 0;
  std::uint16_t name_index = 0;
  std::uint16_t descriptor_index = 0;
  std::vector<AttributeInfo> attributes;
  bool operator==(const MemberInfo&) const = default;
};

namespace access {
inline constexpr std::uint16_t kPublic = 0x0001;
inline constexpr std::uint16_t kPrivate = 0x0002;
inline constexpr std::uint16_t kProtected = 0x0004;
inline constexpr std::uint16_t kStatic = 0x0008;
inline constexpr std::uint16_t kFinal = 0x0010;
inline constexpr std::uint16_t kSuper = 0x0020;
inline constexpr std::uint16_t kSynthetic = 0x1000;
}  // namespace access

// Highest class-file major version (Java 17) with full support; newer files
// parse best effort and set `beyond_supported_version`.
inline constexpr std::uint16_t kMaxSupportedMajorVersion = 61;

struct ClassFile {
  std::uint16_t minor_version = 0;
  std::uint16_t major_version = 0;
  ConstantPool pool;
  std::uint16_t access_flags = 0;
  std::uint16_t this_class = 0;
  std::uint16_t super_class = 0;
  std::vector<std::uint16_t> interfaces;
  std::vector<MemberInfo> fields;
  std::vector<MemberInfo> methods;
  std::vector<AttributeInfo> attributes;
  bool beyond_supported_version = false;

  std::string ThisClassName() const { return pool.ClassName(this_class); }
  bool operator==(const ClassFile&) const = default;
};

ClassFile ParseClass(ByteView bytes);
Bytes SerializeClass(const ClassFile& c);

// Checks every pool index in the model against the kind its use site needs.
// Throws BadPoolReference naming the first offending location.
void ValidateClass(const ClassFile& c);

// Attribute lookup helpers.
template <typename T>
const T* FindAttribute(const std::vector<AttributeInfo>& attrs) {
  for (const auto& a : attrs) {
    if (const T* p = std::get_if<T>(&a.payload)) return p;
  }
  return nullptr;
}
template <typename T>
T* FindAttribute(std::vector<AttributeInfo>& attrs) {
  for (auto& a : attrs) {
    if (T* p = std::get_if<T>(&a.payload)) return p;
  }
  return nullptr;
}

}  // namespace bineq

#endif  // BINEQ_CLASS_FILE_H_
