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

#include "bineq/normalize.h"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "bineq/mutf8.h"
#include "bineq/opcodes.h"

namespace bineq {
namespace {

constexpr std::string_view kStringBuilder = "java/lang/StringBuilder";
constexpr std::string_view kConcatFactory = "java/lang/invoke/StringConcatFactory";

// Splits "(IJLa/B;)V" into parameter descriptors and the return descriptor.
bool ParseMethodDescriptor(const std::string& d, std::vector<std::string>* params,
                           std::string* ret) {
  if (d.empty() || d[0] != '(') return false;
  std::size_t i = 1;
  auto one = [&](std::string* out) {
    std::size_t start = i;
    while (i < d.size() && d[i] == '[') ++i;
    if (i >= d.size()) return false;
    if (d[i] == 'L') {
      std::size_t semi = d.find(';', i);
      if (semi == std::string::npos) return false;
      i = semi + 1;
    } else if (std::string_view("BCDFIJSZV").find(d[i]) != std::string_view::npos) {
      ++i;
    } else {
      return false;
    }
    *out = d.substr(start, i - start);
    return true;
  };
  while (i < d.size() && d[i] != ')') {
    std::string p;
    if (!one(&p)) return false;
    params->push_back(std::move(p));
  }
  if (i >= d.size()) return false;
  ++i;
  if (!one(ret)) return false;
  return i == d.size();
}

const char* TypeOfPrefix(std::uint8_t base_offset) {
  static constexpr const char* kTypes[] = {"int", "long", "float", "double", "ref"};
  return base_offset < 5 ? kTypes[base_offset] : "?";
}

CanonConstant IntConstant(std::int64_t v, bool is_long) {
  CanonConstant k;
  k.tag = is_long ? ConstTag::kLong : ConstTag::kInteger;
  k.integer = v;
  k.text = (is_long ? "long " : "int ") + std::to_string(v);
  return k;
}

std::string ConstantType(ConstTag tag) {
  switch (tag) {
    case ConstTag::kInteger:
      return "int";
    case ConstTag::kLong:
      return "long";
    case ConstTag::kFloat:
      return "float";
    case ConstTag::kDouble:
      return "double";
    case ConstTag::kString:
      return "String";
    case ConstTag::kClass:
      return "class";
    case ConstTag::kMethodType:
      return "methodtype";
    case ConstTag::kMethodHandle:
      return "methodhandle";
    default:
      return "dynamic";
  }
}

std::string MemberText(const CanonMemberRef& r) {
  return r.owner + "." + r.name + ":" + r.descriptor + (r.interface_ref ? " itf" : "");
}

void SetInvokeEffect(NormInstr& n, bool has_receiver, const std::string& descriptor) {
  std::vector<std::string> params;
  std::string ret;
  if (!ParseMethodDescriptor(descriptor, &params, &ret)) return;
  n.pops = static_cast<int>(params.size()) + (has_receiver ? 1 : 0);
  n.pushes = ret == "V" ? 0 : 1;
}

NormInstr Lift(const CanonInstr& in) {
  NormInstr n;
  const std::uint8_t o = in.opcode;
  n.operands = in.operands;
  n.op = std::string(GetOpcodeInfo(o).mnemonic);
  auto push = [&](CanonConstant k, std::string type) {
    n.kind = NormKind::kPush;
    n.op = std::move(type);
    n.constant = std::move(k);
    n.operands = {};
    n.pops = 0;
    n.pushes = 1;
  };
  auto effect = [&](int pops, int pushes) {
    n.pops = pops;
    n.pushes = pushes;
  };

  if (o == op::kNop) {
    effect(0, 0);
  } else if (o == op::kAconstNull) {
    CanonConstant k;
    k.tag = ConstTag::kClass;
    k.text = "null";
    push(k, "null");
  } else if (o >= op::kIconstM1 && o <= op::kIconst5) {
    push(IntConstant(static_cast<int>(o) - op::kIconst0, false), "int");
  } else if (o == op::kLconst0 || o == op::kLconst1) {
    push(IntConstant(o - op::kLconst0, true), "long");
  } else if (o >= op::kFconst0 && o <= op::kFconst2) {
    CanonConstant k;
    k.tag = ConstTag::kFloat;
    k.text = "float " +
             FormatFloatBits(std::bit_cast<std::uint32_t>(static_cast<float>(o - op::kFconst0)));
    push(k, "float");
  } else if (o == op::kDconst0 || o == op::kDconst1) {
    CanonConstant k;
    k.tag = ConstTag::kDouble;
    k.text = "double " +
             FormatDoubleBits(std::bit_cast<std::uint64_t>(static_cast<double>(o - op::kDconst0)));
    push(k, "double");
  } else if (o == op::kBipush || o == op::kSipush) {
    push(IntConstant(in.value, false), "int");
  } else if ((o == op::kLdc || o == op::kLdc2W) && in.constant) {
    push(*in.constant, ConstantType(in.constant->tag));
  } else if (o >= op::kIload && o <= op::kAload) {
    n.kind = NormKind::kLoad;
    n.op = TypeOfPrefix(o - op::kIload);
    effect(0, 1);
  } else if (o >= op::kIstore && o <= op::kAstore) {
    n.kind = NormKind::kStore;
    n.op = TypeOfPrefix(o - op::kIstore);
    effect(1, 0);
  } else if (o >= op::kIaload && o <= op::kSaload) {
    effect(2, 1);
  } else if (o >= op::kIastore && o <= op::kSastore) {
    effect(3, 0);
  } else if (o == op::kPop) {
    effect(1, 0);
  } else if (o == op::kDup) {
    effect(1, 2);
  } else if (o >= op::kIadd && o <= op::kLxor) {
    static constexpr const char* kOps[] = {"add", "sub", "mul",  "div", "rem", "neg",
                                           "shl", "shr", "ushr", "and", "or",  "xor"};
    static constexpr const char* kTypes[] = {"int", "long", "float", "double"};
    int rel = o - op::kIadd;
    int group = rel / 4;
    const char* type = kTypes[rel % 4];
    if (group >= 6) {
      // Shifts and bitwise ops only exist for int and long.
      int r = rel - 24;
      group = 6 + r / 2;
      type = kTypes[r % 2];
    }
    n.kind = NormKind::kArith;
    n.op = std::string(kOps[group]) + " " + type;
    effect(group == 5 ? 1 : 2, 1);
  } else if (o == op::kIinc) {
    n.kind = NormKind::kOther;
  } else if (o >= op::kI2l && o <= op::kI2s) {
    effect(1, 1);
  } else if (o >= op::kLcmp && o <= op::kDcmpg) {
    effect(2, 1);
  } else if ((o >= op::kIfeq && o <= op::kJsr) || o == op::kIfnull || o == op::kIfnonnull) {
    n.kind = NormKind::kBranch;
  } else if (o >= op::kIreturn && o <= op::kReturn) {
    n.kind = NormKind::kReturn;
    n.op = o == op::kReturn ? "void" : TypeOfPrefix(o - op::kIreturn);
  } else if (o >= op::kGetstatic && o <= op::kPutfield) {
    n.kind = NormKind::kField;
    n.member = in.member;
    effect(o == op::kGetstatic  ? 0
           : o == op::kPutfield ? 2
                                : 1,
           o == op::kGetstatic || o == op::kGetfield ? 1 : 0);
  } else if (o >= op::kInvokevirtual && o <= op::kInvokeinterface) {
    static constexpr const char* kKinds[] = {"virtual", "special", "static", "interface"};
    n.kind = NormKind::kInvoke;
    n.op = kKinds[o - op::kInvokevirtual];
    n.member = in.member;
    n.operands = {MemberText(*in.member), {}};
    SetInvokeEffect(n, o != op::kInvokestatic, in.member->descriptor);
  } else if (o == op::kInvokedynamic) {
    n.indy = in.indy;
    SetInvokeEffect(n, false, in.indy->descriptor);
  } else if (o == op::kNew) {
    n.kind = NormKind::kNew;
    n.op.clear();
    n.type_name = in.type_name;
    effect(0, 1);
  } else if (o == op::kNewarray || o == op::kAnewarray || o == op::kArraylength ||
             o == op::kCheckcast || o == op::kInstanceof) {
    effect(1, 1);
  } else if (o == op::kMultianewarray) {
    effect(in.value, 1);
  }
  return n;
}

bool IsObjectPublicMethod(const std::string& name, const std::string& desc) {
  static const std::set<std::pair<std::string, std::string>> kMethods = {
      {"getClass", "()Ljava/lang/Class;"},
      {"hashCode", "()I"},
      {"equals", "(Ljava/lang/Object;)Z"},
      {"toString", "()Ljava/lang/String;"},
      {"notify", "()V"},
      {"notifyAll", "()V"},
      {"wait", "()V"},
      {"wait", "(J)V"},
      {"wait", "(JI)V"}};
  return kMethods.count({name, desc}) > 0;
}

void CanonicalizeObjectOwner(NormInstr& n) {
  if (n.kind != NormKind::kInvoke || (n.op != "virtual" && n.op != "interface")) return;
  if (!IsObjectPublicMethod(n.member->name, n.member->descriptor)) return;
  n.op = "virtual";
  n.member->owner = "java/lang/Object";
  n.member->interface_ref = false;
  n.operands = {MemberText(*n.member), {}};
}

// The append overload javac picks for an operand of static type `d`.
std::string AppendOverload(const std::string& d) {
  if (d == "B" || d == "S") return "I";
  if (d.size() == 1) return d;
  if (d == "Ljava/lang/String;" || d == "Ljava/lang/CharSequence;" ||
      d == "Ljava/lang/StringBuffer;") {
    return d;
  }
  return "Ljava/lang/Object;";
}

std::u16string Ascii16(const std::string& s) { return std::u16string(s.begin(), s.end()); }

NormInstr MakeConcat(std::vector<ConcatPart> raw) {
  std::vector<ConcatPart> parts;
  for (auto& p : raw) {
    if (p.constant) {
      if (p.text.empty()) continue;
      if (!parts.empty() && parts.back().constant) {
        parts.back().text += p.text;
        continue;
      }
    }
    parts.push_back(std::move(p));
  }
  NormInstr n;
  n.kind = NormKind::kConcat;
  n.op.clear();
  n.pops = static_cast<int>(
      std::count_if(parts.begin(), parts.end(), [](const ConcatPart& p) { return !p.constant; }));
  n.pushes = 1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) n.operands.text += ", ";
    n.operands.text += parts[i].constant ? "const " + QuoteJavaString(parts[i].text)
                                         : "arg " + parts[i].descriptor;
  }
  n.parts = std::move(parts);
  return n;
}

bool TryIndyConcat(NormInstr& n) {
  if (!n.indy || n.indy->bootstrap.owner != kConcatFactory) return false;
  const CanonIndy& indy = *n.indy;
  std::vector<std::string> params;
  std::string ret;
  if (!ParseMethodDescriptor(indy.descriptor, &params, &ret) || ret != "Ljava/lang/String;") {
    return false;
  }
  std::vector<ConcatPart> parts;
  if (indy.bootstrap.name == "makeConcat") {
    for (const auto& p : params) parts.push_back({false, {}, AppendOverload(p)});
  } else if (indy.bootstrap.name == "makeConcatWithConstants") {
    if (indy.arguments.empty() || indy.arguments[0].tag != ConstTag::kString) return false;
    const std::u16string& recipe = indy.arguments[0].string;
    std::size_t next_arg = 0;
    std::size_t next_const = 1;
    for (char16_t ch : recipe) {
      if (ch == 1) {
        if (next_arg >= params.size()) return false;
        parts.push_back({false, {}, AppendOverload(params[next_arg++])});
      } else if (ch == 2) {
        if (next_const >= indy.arguments.size()) return false;
        const CanonConstant& k = indy.arguments[next_const++];
        if (k.tag == ConstTag::kString) {
          parts.push_back({true, k.string, {}});
        } else if (k.tag == ConstTag::kInteger || k.tag == ConstTag::kLong) {
          parts.push_back({true, Ascii16(std::to_string(k.integer)), {}});
        } else {
          return false;
        }
      } else {
        parts.push_back({true, std::u16string(1, ch), {}});
      }
    }
    if (next_arg != params.size()) return false;
  } else {
    return false;
  }
  n = MakeConcat(std::move(parts));
  return true;
}

bool IsSbCall(const NormInstr& n, const char* kind, std::string_view name) {
  return n.kind == NormKind::kInvoke && n.op == kind && n.member->owner == kStringBuilder &&
         n.member->name == name;
}

// Owner canonicalization runs first, so the closing toString may already
// name java/lang/Object.
bool IsToString(const NormInstr& n) {
  return n.kind == NormKind::kInvoke && n.op == "virtual" &&
         (n.member->owner == kStringBuilder || n.member->owner == "java/lang/Object") &&
         n.member->name == "toString";
}

// Single-push producers whose value javac would fold into the recipe.
std::optional<std::u16string> FoldedConstant(const std::vector<NormItem>& seg,
                                             const std::string& type) {
  if (seg.size() != 1 || seg[0].insn.kind != NormKind::kPush) return std::nullopt;
  const NormInstr& p = seg[0].insn;
  if (p.op == "String" && type == "Ljava/lang/String;") return p.constant->string;
  if (p.op == "int" && type == "C")
    return std::u16string(1, static_cast<char16_t>(p.constant->integer));
  if (p.op == "int" && type == "I") return Ascii16(std::to_string(p.constant->integer));
  if (p.op == "int" && type == "Z" && (p.constant->integer == 0 || p.constant->integer == 1)) {
    return Ascii16(p.constant->integer ? "true" : "false");
  }
  if (p.op == "long" && type == "J") return Ascii16(std::to_string(p.constant->integer));
  return std::nullopt;
}

// Collapses new StringBuilder / dup / <init> / append* / toString starting at
// items[i]. Returns false and leaves items untouched when the shape differs.
bool TrySbConcat(std::vector<NormItem>& items, std::size_t i) {
  const std::size_t n = items.size();
  std::size_t j = i + 1;
  if (j >= n || items[j].label >= 0 || items[j].insn.kind != NormKind::kOther ||
      items[j].insn.op != "dup") {
    return false;
  }
  ++j;

  std::vector<NormItem> kept;
  std::vector<ConcatPart> parts;
  auto add_part = [&](std::vector<NormItem> seg, const std::string& type) {
    if (auto folded = FoldedConstant(seg, type)) {
      parts.push_back({true, *folded, {}});
      return;
    }
    parts.push_back({false, {}, type});
    for (auto& s : seg) kept.push_back(std::move(s));
  };

  // Scans one producer segment. On success `j` indexes the terminating
  // StringBuilder call and `seg` holds the producer.
  enum class Want { kInit, kChain };
  auto scan = [&](Want want, std::vector<NormItem>& seg) -> bool {
    int depth = 0;
    for (; j < n; ++j) {
      const NormItem& item = items[j];
      if (item.label >= 0) return false;
      const NormInstr& in = item.insn;
      if (want == Want::kInit && IsSbCall(in, "special", "<init>")) {
        if ((in.member->descriptor == "()V" && depth == 0) ||
            (in.member->descriptor == "(Ljava/lang/String;)V" && depth == 1)) {
          return true;
        }
      }
      if (want == Want::kChain) {
        if (IsSbCall(in, "virtual", "append") && depth == 1) return true;
        if (IsToString(in) && depth == 0) return true;
      }
      if (in.pops < 0 || in.kind == NormKind::kStore || in.kind == NormKind::kBranch ||
          in.kind == NormKind::kReturn || depth < in.pops) {
        return false;
      }
      depth += in.pushes - in.pops;
      seg.push_back(item);
    }
    return false;
  };

  std::vector<NormItem> seg;
  if (!scan(Want::kInit, seg)) return false;
  if (items[j].insn.member->descriptor != "()V") {
    std::string type = "Ljava/lang/String;";
    if (!seg.empty()) {
      const NormInstr& last = seg.back().insn;
      if (last.kind == NormKind::kInvoke && last.op == "static" &&
          last.member->owner == "java/lang/String" && last.member->name == "valueOf" &&
          last.member->descriptor == "(Ljava/lang/Object;)Ljava/lang/String;") {
        seg.pop_back();
        type = "Ljava/lang/Object;";
      }
    }
    add_part(std::move(seg), type);
  }
  ++j;
  while (true) {
    seg.clear();
    if (!scan(Want::kChain, seg)) return false;
    const NormInstr& call = items[j].insn;
    if (call.member->name == "toString") {
      if (call.member->descriptor != "()Ljava/lang/String;") return false;
      break;
    }
    std::vector<std::string> params;
    std::string ret;
    if (!ParseMethodDescriptor(call.member->descriptor, &params, &ret) || params.size() != 1 ||
        ret != "Ljava/lang/StringBuilder;") {
      return false;
    }
    add_part(std::move(seg), params[0]);
    ++j;
  }
  std::vector<NormItem> replacement = std::move(kept);
  replacement.push_back(NormItem{-1, MakeConcat(std::move(parts))});
  items.erase(items.begin() + static_cast<std::ptrdiff_t>(i),
              items.begin() + static_cast<std::ptrdiff_t>(j + 1));
  items.insert(items.begin() + static_cast<std::ptrdiff_t>(i), replacement.begin(),
               replacement.end());
  return true;
}

void RenumberLabels(NormCode& code) {
  std::map<int, int> renumber;
  auto see = [&](int label) { renumber.emplace(label, static_cast<int>(renumber.size())); };
  for (const auto& item : code.items) {
    if (item.label < 0) {
      for (int l : item.insn.operands.labels) see(l);
    }
  }
  for (const auto& h : code.handlers)
    for (int l : h.labels) see(l);
  for (const auto& e : code.extra)
    for (int l : e.labels) see(l);

  std::vector<NormItem> items;
  items.reserve(code.items.size());
  for (auto& item : code.items) {
    if (item.label >= 0) {
      auto it = renumber.find(item.label);
      if (it == renumber.end()) continue;
      item.label = it->second;
    } else {
      for (int& l : item.insn.operands.labels) l = renumber.at(l);
    }
    items.push_back(std::move(item));
  }
  code.items = std::move(items);
  for (auto& h : code.handlers)
    for (int& l : h.labels) l = renumber.at(l);
  for (auto& e : code.extra)
    for (int& l : e.labels) l = renumber.at(l);
}

const char* KindName(NormKind k) {
  switch (k) {
    case NormKind::kPush:
      return "PUSH";
    case NormKind::kLoad:
      return "LOAD";
    case NormKind::kStore:
      return "STORE";
    case NormKind::kInvoke:
      return "INVOKE";
    case NormKind::kConcat:
      return "CONCAT";
    case NormKind::kField:
      return "FIELD";
    case NormKind::kBranch:
      return "BRANCH";
    case NormKind::kReturn:
      return "RETURN";
    case NormKind::kNew:
      return "NEW";
    case NormKind::kArith:
      return "ARITH";
    case NormKind::kOther:
      return "OTHER";
  }
  return "?";
}

}  // namespace

NormCode LiftCode(const CanonCode& code) {
  NormCode out;
  out.items.reserve(code.items.size());
  for (const auto& item : code.items) {
    NormItem n;
    n.label = item.label;
    if (item.label < 0) n.insn = Lift(item.insn);
    out.items.push_back(std::move(n));
  }
  out.handlers = code.handlers;
  out.extra = code.extra;
  return out;
}

void ApplyRules(NormCode& code) {
  auto& items = code.items;
  std::erase_if(items, [](const NormItem& item) {
    return item.label < 0 && item.insn.kind == NormKind::kOther && item.insn.op == "nop";
  });
  for (auto& item : items) {
    if (item.label < 0) CanonicalizeObjectOwner(item.insn);
  }
  for (auto& item : items) {
    if (item.label < 0) TryIndyConcat(item.insn);
  }
  for (std::size_t i = items.size(); i-- > 0;) {
    const NormItem& item = items[i];
    if (item.label < 0 && item.insn.kind == NormKind::kNew &&
        item.insn.type_name == kStringBuilder) {
      TrySbConcat(items, i);
    }
  }
  RenumberLabels(code);
}

NormClass NormalizeCanonical(const CanonicalClass& c) {
  NormClass out;
  out.header = c.header;
  out.fields = c.fields;
  for (const auto& m : c.methods) {
    NormMethod nm;
    nm.name = m.name;
    nm.descriptor = m.descriptor;
    nm.lines = m.lines;
    if (m.code) {
      nm.code = LiftCode(*m.code);
      ApplyRules(*nm.code);
    }
    out.methods.push_back(std::move(nm));
  }
  return out;
}

NormClass Normalize(const ClassFile& c) {
  try {
    return NormalizeCanonical(BuildCanonical(c));
  } catch (const RenderFailure& e) {
    throw NormalizeFailure(e.what());
  }
}

std::string RenderNormInstr(const NormInstr& n) {
  std::string out = KindName(n.kind);
  if (n.kind == NormKind::kPush) return out + " " + n.constant->text;
  if (!n.op.empty()) out += " " + n.op;
  std::string ops = n.operands.Render();
  if (!ops.empty()) out += " " + ops;
  return out;
}

CanonicalText RenderLevel3(const NormClass& n) {
  CanonicalText out;
  out.level = 3;
  auto& lines = out.lines;
  lines = n.header;
  for (const auto& f : n.fields) {
    lines.push_back("field " + f.name + " " + f.descriptor);
    for (const auto& l : f.lines) lines.push_back("  " + l);
  }
  for (const auto& m : n.methods) {
    lines.push_back("method " + m.name + " " + m.descriptor);
    for (const auto& l : m.lines) lines.push_back("  " + l);
    if (!m.code) continue;
    lines.push_back("  code");
    for (const auto& item : m.code->items) {
      if (item.label >= 0) {
        lines.push_back("    L" + std::to_string(item.label) + ":");
      } else {
        lines.push_back("      " + RenderNormInstr(item.insn));
      }
    }
    for (const auto& h : m.code->handlers) lines.push_back("    " + h.Render());
    for (const auto& e : m.code->extra) lines.push_back("    " + e.Render());
  }
  return out;
}

}  // namespace bineq
