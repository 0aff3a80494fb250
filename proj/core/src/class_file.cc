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

#include "bineq/class_file.h"

#include "pool_refs.h"

namespace bineq {

bool CodeAttribute::operator==(const CodeAttribute&) const = default;
bool ElementValue::operator==(const ElementValue&) const = default;
bool RecordComponent::operator==(const RecordComponent&) const = default;

std::optional<ConstTag> TagOf(const ConstEntry& e) {
  static constexpr ConstTag kTags[] = {ConstTag::kUtf8,
                                       ConstTag::kUtf8,
                                       ConstTag::kInteger,
                                       ConstTag::kFloat,
                                       ConstTag::kLong,
                                       ConstTag::kDouble,
                                       ConstTag::kClass,
                                       ConstTag::kString,
                                       ConstTag::kFieldref,
                                       ConstTag::kMethodref,
                                       ConstTag::kInterfaceMethodref,
                                       ConstTag::kNameAndType,
                                       ConstTag::kMethodHandle,
                                       ConstTag::kMethodType,
                                       ConstTag::kDynamic,
                                       ConstTag::kInvokeDynamic,
                                       ConstTag::kModule,
                                       ConstTag::kPackage};
  if (e.index() == 0) return std::nullopt;
  return kTags[e.index()];
}

std::string_view TagName(ConstTag tag) {
  switch (tag) {
    case ConstTag::kUtf8:
      return "Utf8";
    case ConstTag::kInteger:
      return "Integer";
    case ConstTag::kFloat:
      return "Float";
    case ConstTag::kLong:
      return "Long";
    case ConstTag::kDouble:
      return "Double";
    case ConstTag::kClass:
      return "Class";
    case ConstTag::kString:
      return "String";
    case ConstTag::kFieldref:
      return "Fieldref";
    case ConstTag::kMethodref:
      return "Methodref";
    case ConstTag::kInterfaceMethodref:
      return "InterfaceMethodref";
    case ConstTag::kNameAndType:
      return "NameAndType";
    case ConstTag::kMethodHandle:
      return "MethodHandle";
    case ConstTag::kMethodType:
      return "MethodType";
    case ConstTag::kDynamic:
      return "Dynamic";
    case ConstTag::kInvokeDynamic:
      return "InvokeDynamic";
    case ConstTag::kModule:
      return "Module";
    case ConstTag::kPackage:
      return "Package";
  }
  return "?";
}

bool ConstantPool::Matches(std::uint32_t index, TagMask allowed) const {
  if (!InRange(index)) return false;
  auto tag = TagOf(entries[index]);
  return tag.has_value() && (allowed & Mask(*tag)) != 0;
}

const ConstEntry& ConstantPool::At(std::uint32_t index) const {
  if (!InRange(index)) {
    throw BadPoolReference("constant pool index #" + std::to_string(index) + " out of range");
  }
  return entries[index];
}

std::uint16_t ConstantPool::Add(ConstEntry entry) {
  auto index = entries.size();
  bool wide = std::holds_alternative<cp::Long>(entry) || std::holds_alternative<cp::Double>(entry);
  entries.push_back(std::move(entry));
  if (wide) entries.emplace_back(cp::Unusable{});
  if (entries.size() > 0xffff) {
    throw UnencodableModel("constant pool exceeds 65535 slots");
  }
  return static_cast<std::uint16_t>(index);
}

void ValidateClass(const ClassFile& c) {
  const ConstantPool& pool = c.pool;
  internal::VisitPoolRefs(c, [&](const auto& index, const internal::RefSite& site) {
    auto value = static_cast<std::int64_t>(index);
    if (value == 0 && site.zero_ok) return;
    if (value < 0 || !pool.Matches(static_cast<std::uint32_t>(value), site.allowed)) {
      throw BadPoolReference(std::string("invalid constant pool reference #") +
                             std::to_string(value) + " at " + site.where);
    }
  });
  const auto* bsm = FindAttribute<BootstrapMethodsAttribute>(c.attributes);
  std::size_t bsm_count = bsm ? bsm->methods.size() : 0;
  for (std::size_t i = 1; i < pool.entries.size(); ++i) {
    const auto& e = pool.entries[i];
    std::uint16_t bsm_index = 0;
    if (const auto* d = std::get_if<cp::Dynamic>(&e)) {
      bsm_index = d->bootstrap_method_attr_index;
    } else if (const auto* d = std::get_if<cp::InvokeDynamic>(&e)) {
      bsm_index = d->bootstrap_method_attr_index;
    } else {
      continue;
    }
    if (bsm_index >= bsm_count) {
      throw BadPoolReference("constant #" + std::to_string(i) +
                             " names a missing bootstrap method");
    }
  }
  for (std::size_t i = 1; i < pool.entries.size(); ++i) {
    bool wide = std::holds_alternative<cp::Long>(pool.entries[i]) ||
                std::holds_alternative<cp::Double>(pool.entries[i]);
    if (wide && (i + 1 >= pool.entries.size() ||
                 !std::holds_alternative<cp::Unusable>(pool.entries[i + 1]))) {
      throw BadPoolReference("constant #" + std::to_string(i) +
                             " must be followed by an unusable slot");
    }
  }
}

namespace internal {

namespace {

bool AnyOpaque(const std::vector<AttributeInfo>& attrs) {
  for (const auto& a : attrs) {
    if (a.opaque()) return true;
    if (const auto* code = std::get_if<CodeAttribute>(&a.payload)) {
      if (AnyOpaque(code->attributes)) return true;
    }
    if (const auto* rec = std::get_if<RecordAttribute>(&a.payload)) {
      for (const auto& comp : rec->components) {
        if (AnyOpaque(comp.attributes)) return true;
      }
    }
  }
  return false;
}

}  // namespace

bool HasOpaqueAttributes(const ClassFile& c) {
  if (AnyOpaque(c.attributes)) return true;
  for (const auto* members : {&c.fields, &c.methods}) {
    for (const auto& m : *members) {
      if (AnyOpaque(m.attributes)) return true;
    }
  }
  return false;
}

}  // namespace internal
}  // namespace bineq
