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

#include "bineq/testkit.h"

#include <fmt/format.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>

#include "bineq/digest.h"
#include "bineq/opcodes.h"
#include "parallel.h"
#include "pool_refs.h"

namespace bineq {
namespace {

template <typename T>
void Shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = rng() % i;
    std::swap(v[i - 1], v[j]);
  }
}

std::uint64_t SplitMix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool IsDebugAttribute(const AttributeInfo& a) {
  return std::holds_alternative<LineNumberTableAttribute>(a.payload) ||
         std::holds_alternative<LocalVariableTableAttribute>(a.payload) ||
         std::holds_alternative<LocalVariableTypeTableAttribute>(a.payload) ||
         std::holds_alternative<SourceFileAttribute>(a.payload) ||
         std::holds_alternative<SourceDebugExtensionAttribute>(a.payload) ||
         std::holds_alternative<DeprecatedAttribute>(a.payload);
}

void StripList(std::vector<AttributeInfo>& attrs) {
  std::erase_if(attrs, IsDebugAttribute);
  for (auto& a : attrs) {
    if (auto* code = std::get_if<CodeAttribute>(&a.payload)) StripList(code->attributes);
    if (auto* rec = std::get_if<RecordAttribute>(&a.payload)) {
      for (auto& comp : rec->components) StripList(comp.attributes);
    }
  }
}

template <typename Fn>
void ForEachCode(ClassFile& c, Fn&& fn) {
  for (auto& m : c.methods) {
    for (auto& a : m.attributes) {
      if (auto* code = std::get_if<CodeAttribute>(&a.payload)) fn(*code);
    }
  }
}

bool IsNumeric(const ConstEntry& e) {
  return std::holds_alternative<cp::Integer>(e) || std::holds_alternative<cp::Long>(e) ||
         std::holds_alternative<cp::Float>(e) || std::holds_alternative<cp::Double>(e);
}

void Increment(ConstEntry& e) {
  if (auto* i = std::get_if<cp::Integer>(&e)) {
    i->value = static_cast<std::int32_t>(static_cast<std::uint32_t>(i->value) + 1);
  } else if (auto* l = std::get_if<cp::Long>(&e)) {
    l->value = static_cast<std::int64_t>(static_cast<std::uint64_t>(l->value) + 1);
  } else if (auto* f = std::get_if<cp::Float>(&e)) {
    float v;
    std::memcpy(&v, &f->bits, 4);
    float next = v + 1.0f;
    std::uint32_t bits;
    std::memcpy(&bits, &next, 4);
    f->bits = std::isfinite(v) && next != v ? bits : f->bits + 1;
  } else if (auto* d = std::get_if<cp::Double>(&e)) {
    double v;
    std::memcpy(&v, &d->bits, 8);
    double next = v + 1.0;
    std::uint64_t bits;
    std::memcpy(&bits, &next, 8);
    d->bits = std::isfinite(v) && next != v ? bits : d->bits + 1;
  }
}

}  // namespace

ClassFile PermutePool(const ClassFile& c, std::uint64_t seed) {
  if (seed == 0 || internal::HasOpaqueAttributes(c)) return c;
  // Units are pool entries together with the unusable slot that follows a
  // Long or Double.
  std::vector<std::uint32_t> units;
  for (std::uint32_t i = 1; i < c.pool.count(); ++i) {
    if (!std::holds_alternative<cp::Unusable>(c.pool.entries[i])) units.push_back(i);
  }
  if (units.size() < 2) return c;
  std::mt19937_64 rng(seed);
  Shuffle(units, rng);

  ClassFile out = c;
  std::vector<std::uint32_t> remap(c.pool.count(), 0);
  out.pool.entries.assign(1, cp::Unusable{});
  for (std::uint32_t old : units) {
    remap[old] = static_cast<std::uint32_t>(out.pool.entries.size());
    out.pool.entries.push_back(c.pool.entries[old]);
    if (std::holds_alternative<cp::Long>(c.pool.entries[old]) ||
        std::holds_alternative<cp::Double>(c.pool.entries[old])) {
      out.pool.entries.push_back(cp::Unusable{});
    }
  }
  internal::VisitPoolRefs(out, [&](auto& index, const internal::RefSite& site) {
    if (index == 0 && site.zero_ok) return;
    index = static_cast<std::remove_reference_t<decltype(index)>>(remap[index]);
  });
  return out;
}

ClassFile ReorderMembers(const ClassFile& c, std::uint64_t seed) {
  if (seed == 0) return c;
  ClassFile out = c;
  std::mt19937_64 rng(seed);
  Shuffle(out.fields, rng);
  Shuffle(out.methods, rng);
  return out;
}

ClassFile StripDebugAttrs(const ClassFile& c) {
  ClassFile out = c;
  StripList(out.attributes);
  for (auto* members : {&out.fields, &out.methods}) {
    for (auto& m : *members) StripList(m.attributes);
  }
  return out;
}

ClassFile MutateConstantValue(const ClassFile& c, std::uint64_t seed) {
  std::vector<std::uint32_t> targets;
  for (const auto& f : c.fields) {
    if (const auto* cv = FindAttribute<ConstantValueAttribute>(f.attributes)) {
      if (c.pool.InRange(cv->index) && IsNumeric(c.pool.At(cv->index))) {
        targets.push_back(cv->index);
      }
    }
  }
  ClassFile out = c;
  ForEachCode(out, [&](CodeAttribute& code) {
    for (const auto& insn : code.instructions) {
      if (insn.opcode != op::kLdc && insn.opcode != op::kLdcW && insn.opcode != op::kLdc2W) {
        continue;
      }
      auto index = static_cast<std::uint32_t>(insn.operands[0].value);
      if (c.pool.InRange(index) && IsNumeric(c.pool.At(index))) targets.push_back(index);
    }
  });
  if (targets.empty()) throw NoTarget("no numeric constant to mutate");
  std::mt19937_64 rng(seed);
  Increment(out.pool.entries[targets[rng() % targets.size()]]);
  return out;
}

ClassFile SwapOpcode(const ClassFile& c, std::uint64_t seed) {
  ClassFile out = c;
  std::vector<Instruction*> targets;
  ForEachCode(out, [&](CodeAttribute& code) {
    auto& insns = code.instructions;
    for (std::size_t i = 0; i < insns.size(); ++i) {
      switch (insns[i].opcode) {
        case op::kIadd:
        case op::kIsub:
        case op::kImul:
        case op::kIdiv:
        case op::kIfIcmplt:
        case op::kIfIcmpge:
          targets.push_back(&insns[i]);
          break;
        case op::kIconst0:
        case op::kIconst1:
          if (i + 1 < insns.size() && insns[i + 1].opcode == op::kIreturn) {
            targets.push_back(&insns[i]);
          }
          break;
        default:
          break;
      }
    }
  });
  if (targets.empty()) throw NoTarget("no swappable instruction");
  std::mt19937_64 rng(seed);
  Instruction& insn = *targets[rng() % targets.size()];
  switch (insn.opcode) {
    case op::kIadd:
      insn.opcode = op::kIsub;
      break;
    case op::kIsub:
      insn.opcode = op::kIadd;
      break;
    case op::kImul:
      insn.opcode = op::kIdiv;
      break;
    case op::kIdiv:
      insn.opcode = op::kImul;
      break;
    case op::kIfIcmplt:
      insn.opcode = op::kIfIcmpge;
      break;
    case op::kIfIcmpge:
      insn.opcode = op::kIfIcmplt;
      break;
    case op::kIconst0:
      insn.opcode = op::kIconst1;
      break;
    case op::kIconst1:
      insn.opcode = op::kIconst0;
      break;
  }
  return out;
}

std::string_view LabelName(OracleLabel l) { return l == OracleLabel::kEq ? "EQ" : "NEQ"; }

OracleSet GenerateOracleSet(std::span<const RawClass> corpus, int per_class, std::uint64_t seed,
                            unsigned jobs) {
  struct Local {
    std::vector<OraclePair> pairs;
    std::vector<Discard> discarded;
  };
  std::vector<Local> results(corpus.size());
  static const char* kEqMutations[] = {"permute_pool", "reorder_members", "strip_debug_attrs"};
  static const char* kNeqMutations[] = {"mutate_constant_value", "swap_opcode"};

  ParallelFor(corpus.size(), jobs, [&](std::size_t ci) {
    const RawClass& raw = corpus[ci];
    Local& local = results[ci];
    ClassFile base;
    try {
      base = ParseClass(raw.bytes);
    } catch (const Error& e) {
      local.discarded.push_back({raw.path, "", 0, std::string("input: ") + e.what()});
      return;
    }
    auto emit = [&](OracleLabel label, const std::string& mutation, std::uint64_t s,
                    const ClassFile& mutated) {
      Bytes bytes;
      try {
        bytes = SerializeClass(mutated);
        ValidateClass(ParseClass(bytes));
      } catch (const Error& e) {
        local.discarded.push_back({raw.path, mutation, s, e.what()});
        return;
      }
      if (bytes == raw.bytes) {
        local.discarded.push_back({raw.path, mutation, s, "mutation left the class unchanged"});
        return;
      }
      RawClass right = RawClass::FromBytes(raw.path, std::move(bytes));
      const Relation check[] = {label == OracleLabel::kEq ? Disassembled() : Normalized()};
      bool eq = CompareClassPair(raw, right, check).equivalent();
      if (eq != (label == OracleLabel::kEq)) {
        local.discarded.push_back(
            {raw.path, mutation, s,
             label == OracleLabel::kEq ? "EQ pair fails Level 2" : "NEQ pair passes Level 3"});
        return;
      }
      local.pairs.push_back({raw, std::move(right), label, mutation, s, ""});
    };

    for (int k = 0; k < per_class; ++k) {
      const std::uint64_t s = SplitMix(seed ^ SplitMix(ci * 1000003ULL + k)) | 1;
      const std::string eq = kEqMutations[k % 3];
      if (eq == "permute_pool") {
        emit(OracleLabel::kEq, eq, s, PermutePool(base, s));
      } else if (eq == "reorder_members") {
        emit(OracleLabel::kEq, eq, s, ReorderMembers(base, s));
      } else {
        emit(OracleLabel::kEq, eq, s, StripDebugAttrs(base));
      }

      bool done = false;
      for (int attempt = 0; attempt < 2 && !done; ++attempt) {
        const std::string neq = kNeqMutations[(k + attempt) % 2];
        try {
          ClassFile m = neq == "swap_opcode" ? SwapOpcode(base, s) : MutateConstantValue(base, s);
          emit(OracleLabel::kNeq, neq, s, m);
          done = true;
        } catch (const NoTarget&) {
        }
      }
      if (!done) local.discarded.push_back({raw.path, "neq", s, "no NEQ mutation target"});
    }
  });

  OracleSet set;
  for (auto& r : results) {
    std::move(r.pairs.begin(), r.pairs.end(), std::back_inserter(set.pairs));
    std::move(r.discarded.begin(), r.discarded.end(), std::back_inserter(set.discarded));
  }
  return set;
}

std::string WriteOracleSet(const std::vector<OraclePair>& pairs, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "classes");
  auto store = [&](const RawClass& c) {
    std::string rel = "classes/" + c.sha256 + ".class";
    fs::path p = fs::path(dir) / rel;
    if (!fs::exists(p)) WriteFile(p.string(), c.bytes);
    return rel;
  };
  const std::string manifest = (fs::path(dir) / "manifest.jsonl").string();
  std::ofstream out(manifest, std::ios::binary | std::ios::trunc);
  for (const auto& p : pairs) {
    nlohmann::ordered_json j;
    j["left_path"] = store(p.left);
    j["right_path"] = store(p.right);
    j["label"] = LabelName(p.label);
    j["mutation"] = p.mutation;
    j["seed"] = p.seed;
    j["left_sha256"] = p.left.sha256;
    j["right_sha256"] = p.right.sha256;
    if (!p.compiler_version.empty()) j["compiler_version"] = p.compiler_version;
    out << j.dump() << '\n';
  }
  if (!out) throw Error("cannot write " + manifest);
  return manifest;
}

std::vector<OraclePair> ReadManifest(const std::string& manifest_path) {
  namespace fs = std::filesystem;
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw ManifestError("cannot open " + manifest_path);
  const fs::path base = fs::path(manifest_path).parent_path();
  std::vector<OraclePair> pairs;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      auto load = [&](const char* path_key, const char* sha_key) {
        std::string rel = j.at(path_key).get<std::string>();
        RawClass c = RawClass::FromBytes(rel, ReadFile((base / rel).string()));
        if (j.contains(sha_key) && c.sha256 != j[sha_key].get<std::string>()) {
          throw ManifestError(fmt::format("digest mismatch for {}", rel));
        }
        return c;
      };
      OraclePair p;
      p.left = load("left_path", "left_sha256");
      p.right = load("right_path", "right_sha256");
      std::string label = j.at("label").get<std::string>();
      if (label != "EQ" && label != "NEQ") throw ManifestError("unknown label " + label);
      p.label = label == "EQ" ? OracleLabel::kEq : OracleLabel::kNeq;
      p.mutation = j.value("mutation", "");
      p.seed = j.value("seed", std::uint64_t{0});
      p.compiler_version = j.value("compiler_version", "");
      pairs.push_back(std::move(p));
    } catch (const ManifestError& e) {
      throw ManifestError(fmt::format("{}:{}: {}", manifest_path, lineno, e.what()));
    } catch (const std::exception& e) {
      throw ManifestError(fmt::format("{}:{}: {}", manifest_path, lineno, e.what()));
    }
  }
  return pairs;
}

}  // namespace bineq
