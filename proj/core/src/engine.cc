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

#include "bineq/engine.h"

#include <fmt/format.h>
#include <fnmatch.h>

#include <algorithm>
#include <deque>
#include <map>
#include <regex>

#include "bineq/class_file.h"
#include "bineq/diff.h"
#include "bineq/digest.h"
#include "bineq/normalize.h"
#include "bineq/zip.h"
#include "parallel.h"

namespace bineq {
namespace {

std::string Describe(const std::exception& e) {
  if (dynamic_cast<const MalformedClass*>(&e)) return std::string("MalformedClass: ") + e.what();
  if (dynamic_cast<const RenderFailure*>(&e)) return std::string("RenderFailure: ") + e.what();
  if (dynamic_cast<const NormalizeFailure*>(&e)) {
    return std::string("NormalizeFailure: ") + e.what();
  }
  if (dynamic_cast<const BadPoolReference*>(&e)) {
    return std::string("BadPoolReference: ") + e.what();
  }
  if (dynamic_cast<const InputTooShort*>(&e)) return std::string("InputTooShort: ") + e.what();
  if (dynamic_cast<const InsufficientComplexity*>(&e)) {
    return std::string("InsufficientComplexity: ") + e.what();
  }
  return e.what();
}

std::string DiffLabel(std::string_view side, const std::string& path) {
  return std::string(side) + (path.starts_with('/') ? "" : "/") + path;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string_view BaseName(std::string_view path) {
  auto slash = path.rfind('/');
  return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

std::size_t FirstDifference(ByteView a, ByteView b) {
  auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
  return static_cast<std::size_t>(ia - a.begin());
}

std::string RegexEscape(std::string_view s) {
  static const std::string special = R"(\^$.|?*+()[]{})";
  std::string out;
  for (char c : s) {
    if (special.find(c) != std::string::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

RawClass RawClass::FromBytes(std::string path, Bytes bytes) {
  RawClass r{std::move(path), std::move(bytes), {}};
  r.sha256 = Sha256Hex(r.bytes);
  return r;
}

RawClass RawClass::FromFile(const std::string& path) { return FromBytes(path, ReadFile(path)); }

std::string Relation::Name() const {
  switch (id) {
    case RelationId::kBitwise:
      return "bitwise";
    case RelationId::kDisassembled:
      return "disassembled";
    case RelationId::kNormalized:
      return "normalized";
    case RelationId::kTlsh:
      return "tlsh" + std::to_string(threshold.value_or(0));
  }
  return "";
}

Relation Bitwise() { return {RelationId::kBitwise, 1, true, std::nullopt}; }
Relation Disassembled() { return {RelationId::kDisassembled, 2, true, std::nullopt}; }
Relation Normalized() { return {RelationId::kNormalized, 3, true, std::nullopt}; }
Relation Tlsh(int tau) { return {RelationId::kTlsh, 4, false, tau}; }

std::vector<Relation> DefaultRelations() {
  return {Bitwise(), Disassembled(), Normalized(), Tlsh(10), Tlsh(100)};
}

std::optional<Relation> ParseRelation(std::string_view name) {
  if (name == "bitwise") return Bitwise();
  if (name == "disassembled") return Disassembled();
  if (name == "normalized") return Normalized();
  if (name.starts_with("tlsh") && name.size() > 4 && name.size() < 12) {
    int tau = 0;
    for (char c : name.substr(4)) {
      if (c < '0' || c > '9') return std::nullopt;
      tau = tau * 10 + (c - '0');
    }
    return Tlsh(tau);
  }
  return std::nullopt;
}

std::string_view OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kPass:
      return "pass";
    case Outcome::kFail:
      return "fail";
    case Outcome::kError:
      return "error";
  }
  return "";
}

const RelationOutcome* ClassVerdict::Find(std::string_view relation_name) const {
  for (const auto& o : outcomes) {
    if (o.relation.Name() == relation_name) return &o;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// PreparedClass

const std::vector<std::string>& PreparedClass::Level2() const {
  std::call_once(canon_once_, [this] {
    try {
      ClassFile c = ParseClass(raw_->bytes);
      auto canon = std::make_shared<CanonicalClass>(BuildCanonical(c));
      level2_ = RenderCanonical(*canon).lines;
      canon_ = std::move(canon);
    } catch (const std::exception& e) {
      canon_error_ = Describe(e);
    }
  });
  if (!canon_error_.empty()) throw Error(canon_error_);
  return level2_;
}

const std::vector<std::string>& PreparedClass::Level3() const {
  std::call_once(level3_once_, [this] {
    try {
      Level2();
      level3_ = RenderLevel3(NormalizeCanonical(*canon_)).lines;
    } catch (const std::exception& e) {
      level3_error_ = Describe(e);
    }
  });
  if (!level3_error_.empty()) throw Error(level3_error_);
  return level3_;
}

const TlshDigest& PreparedClass::Digest() const {
  std::call_once(digest_once_, [this] {
    try {
      digest_ = TlshHash(raw_->bytes);
    } catch (const std::exception& e) {
      digest_error_ = Describe(e);
    }
  });
  if (!digest_error_.empty()) throw Error(digest_error_);
  return digest_;
}

// ---------------------------------------------------------------------------
// Class comparison

ClassVerdict ComparePrepared(const PreparedClass& left, const PreparedClass& right,
                             std::span<const Relation> relations) {
  std::vector<Relation> rels(relations.begin(), relations.end());
  std::stable_sort(rels.begin(), rels.end(),
                   [](const Relation& a, const Relation& b) { return a.level < b.level; });
  rels.erase(std::unique(rels.begin(), rels.end()), rels.end());

  const RawClass& l = left.raw();
  const RawClass& r = right.raw();
  const bool identical = l.bytes == r.bytes;
  std::optional<int> chain_pass;

  ClassVerdict v;
  v.path = l.path == r.path ? l.path : l.path + " <> " + r.path;
  for (const Relation& rel : rels) {
    RelationOutcome o{rel, Outcome::kFail, {}, {}};
    switch (rel.id) {
      case RelationId::kBitwise:
        if (identical) {
          o.outcome = Outcome::kPass;
        } else {
          o.provenance.first_difference = FirstDifference(l.bytes, r.bytes);
        }
        break;
      case RelationId::kDisassembled:
      case RelationId::kNormalized:
        if (identical || (chain_pass && *chain_pass < rel.level)) {
          o.outcome = Outcome::kPass;
          o.provenance.by_containment = true;
          break;
        }
        try {
          const bool l2 = rel.id == RelationId::kDisassembled;
          const auto& a = l2 ? left.Level2() : left.Level3();
          const auto& b = l2 ? right.Level2() : right.Level3();
          if (a == b) {
            o.outcome = Outcome::kPass;
          } else {
            o.provenance.diff = UnifiedDiff(a, b, DiffLabel("a", l.path), DiffLabel("b", r.path));
          }
        } catch (const Error& e) {
          o.outcome = Outcome::kError;
          o.message = e.what();
        }
        break;
      case RelationId::kTlsh:
        o.provenance.threshold = rel.threshold;
        try {
          const TlshDigest& a = left.Digest();
          int d = TlshDistance(a, identical ? a : right.Digest());
          o.provenance.distance = d;
          o.outcome = d <= rel.threshold.value_or(0) ? Outcome::kPass : Outcome::kFail;
        } catch (const Error& e) {
          o.outcome = Outcome::kError;
          o.message = e.what();
        }
        break;
    }
    if (o.outcome == Outcome::kPass && rel.InChain() && !chain_pass) chain_pass = rel.level;
    v.outcomes.push_back(std::move(o));
  }

  bool any_error = false, any_chain = false;
  std::optional<int> any_pass;
  for (const auto& o : v.outcomes) {
    any_error |= o.outcome == Outcome::kError;
    any_chain |= o.relation.InChain();
    if (o.outcome == Outcome::kPass && !any_pass) any_pass = o.relation.level;
  }
  if (!any_error) v.strongest_level = any_chain ? chain_pass : any_pass;
  return v;
}

ClassVerdict CompareClassPair(const RawClass& left, const RawClass& right,
                              std::span<const Relation> relations) {
  PreparedClass a(left), b(right);
  return ComparePrepared(a, b, relations);
}

// ---------------------------------------------------------------------------
// Jar comparison

bool EntryFilter::Excludes(std::string_view path) const {
  const std::string_view base = BaseName(path);
  if (ignore_synthetic && EndsWith(path, ".class") && base.find('$') != std::string_view::npos) {
    return true;
  }
  if (ignore_multirelease && path.starts_with("META-INF/versions/")) return true;
  if (ignore_package_info && base == "package-info.class") return true;
  const std::string p(path);
  for (const auto& glob : excludes) {
    if (fnmatch(glob.c_str(), p.c_str(), 0) == 0) return true;
  }
  return false;
}

std::vector<std::string> EntryFilter::Describe() const {
  std::vector<std::string> out;
  if (ignore_synthetic) out.push_back("ignore-synthetic");
  if (ignore_multirelease) out.push_back("ignore-multirelease");
  if (ignore_package_info) out.push_back("ignore-package-info");
  for (const auto& g : excludes) out.push_back("exclude:" + g);
  return out;
}

JarComparisonReport CompareJars(const JarInput& left, const JarInput& right,
                                std::span<const Relation> relations, const EntryFilter& filter,
                                unsigned jobs) {
  JarComparisonReport report;
  report.left = {left.path, Sha256Hex(left.bytes)};
  report.right = {right.path, Sha256Hex(right.bytes)};
  report.relations.assign(relations.begin(), relations.end());
  report.filters_applied = filter.Describe();

  std::vector<ZipEntry> lz = ReadZip(left.bytes);
  std::vector<ZipEntry> rz = ReadZip(right.bytes);
  std::map<std::string, std::pair<std::vector<const ZipEntry*>, std::vector<const ZipEntry*>>>
      by_path;
  for (const auto& e : lz) {
    if (!e.directory()) by_path[e.name].first.push_back(&e);
  }
  for (const auto& e : rz) {
    if (!e.directory()) by_path[e.name].second.push_back(&e);
  }

  std::vector<std::pair<RawClass, RawClass>> pairs;
  for (const auto& [path, sides] : by_path) {
    const auto& [ls, rs] = sides;
    if (ls.size() > 1 || rs.size() > 1) {
      report.duplicate_entries.push_back({path, ls.size(), rs.size()});
    }
    const std::size_t common = std::min(ls.size(), rs.size());
    for (std::size_t i = 0; i < common; ++i) {
      const std::string name = i == 0 ? path : fmt::format("{}#{}", path, i + 1);
      if (EndsWith(path, ".class")) {
        pairs.emplace_back(RawClass::FromBytes(name, ls[i]->data),
                           RawClass::FromBytes(name, rs[i]->data));
      } else if (ls[i]->data != rs[i]->data) {
        report.resource_mismatches.push_back(
            {name, Sha256Hex(ls[i]->data), Sha256Hex(rs[i]->data)});
      }
    }
    if (!filter.Excludes(path)) {
      for (std::size_t i = common; i < ls.size(); ++i) report.missing_in_right.push_back(path);
      for (std::size_t i = common; i < rs.size(); ++i) report.missing_in_left.push_back(path);
    }
  }

  report.class_verdicts.resize(pairs.size());
  ParallelFor(pairs.size(), jobs, [&](std::size_t i) {
    report.class_verdicts[i] = CompareClassPair(pairs[i].first, pairs[i].second, relations);
  });

  std::optional<int> aggregate = 1;
  if (!report.missing_in_left.empty() || !report.missing_in_right.empty()) aggregate.reset();
  for (const auto& v : report.class_verdicts) {
    if (!aggregate) break;
    if (!v.strongest_level) {
      aggregate.reset();
    } else {
      aggregate = std::max(*aggregate, *v.strongest_level);
    }
  }
  report.aggregate_level = aggregate;
  return report;
}

JarComparisonReport CompareJarFiles(const std::string& left, const std::string& right,
                                    std::span<const Relation> relations, const EntryFilter& filter,
                                    unsigned jobs) {
  auto load = [](const std::string& path) {
    try {
      return JarInput{path, ReadFile(path)};
    } catch (const std::exception& e) {
      throw ArchiveUnreadable(e.what());
    }
  };
  return CompareJars(load(left), load(right), relations, filter, jobs);
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::ordered_json VerdictToJson(const ClassVerdict& v) {
  nlohmann::ordered_json j;
  j["path"] = v.path;
  j["equivalent"] = v.equivalent();
  j["strongest_level"] = v.strongest_level ? nlohmann::ordered_json(*v.strongest_level)
                                           : nlohmann::ordered_json(nullptr);
  j["outcomes"] = nlohmann::ordered_json::array();
  for (const auto& o : v.outcomes) {
    nlohmann::ordered_json oj;
    oj["relation"] = o.relation.Name();
    oj["level"] = o.relation.level;
    oj["outcome"] = OutcomeName(o.outcome);
    if (o.outcome == Outcome::kError) oj["message"] = o.message;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    if (o.provenance.by_containment) p["by_containment"] = true;
    if (o.provenance.first_difference) p["first_difference"] = *o.provenance.first_difference;
    if (o.provenance.distance) p["distance"] = *o.provenance.distance;
    if (o.provenance.threshold) p["threshold"] = *o.provenance.threshold;
    if (!o.provenance.diff.empty()) p["diff"] = o.provenance.diff;
    oj["provenance"] = std::move(p);
    j["outcomes"].push_back(std::move(oj));
  }
  return j;
}

nlohmann::ordered_json ReportToJson(const JarComparisonReport& r) {
  nlohmann::ordered_json j;
  j["version"] = kReportVersion;
  j["jars"]["left"] = {{"path", r.left.path}, {"sha256", r.left.sha256}};
  j["jars"]["right"] = {{"path", r.right.path}, {"sha256", r.right.sha256}};
  j["relations"] = nlohmann::ordered_json::array();
  for (const auto& rel : r.relations) j["relations"].push_back(rel.Name());
  j["filters_applied"] = r.filters_applied;
  j["aggregate"]["equivalent"] = r.equivalent();
  j["aggregate"]["level"] = r.aggregate_level ? nlohmann::ordered_json(*r.aggregate_level)
                                              : nlohmann::ordered_json(nullptr);
  j["missing_in_left"] = r.missing_in_left;
  j["missing_in_right"] = r.missing_in_right;
  j["duplicate_entries"] = nlohmann::ordered_json::array();
  for (const auto& d : r.duplicate_entries) {
    j["duplicate_entries"].push_back(
        {{"path", d.path}, {"left_count", d.left_count}, {"right_count", d.right_count}});
  }
  j["resource_mismatches"] = nlohmann::ordered_json::array();
  for (const auto& m : r.resource_mismatches) {
    j["resource_mismatches"].push_back(
        {{"path", m.path}, {"left_sha256", m.left_sha256}, {"right_sha256", m.right_sha256}});
  }
  j["class_verdicts"] = nlohmann::ordered_json::array();
  for (const auto& v : r.class_verdicts) j["class_verdicts"].push_back(VerdictToJson(v));
  return j;
}

// ---------------------------------------------------------------------------
// Versions and relation laws

std::string CanonicalizeVersion(std::string_view version, std::span<const std::string> tags) {
  static const std::vector<std::string> kDefaultTags = {"redhat"};
  if (tags.empty()) tags = kDefaultTags;
  std::string alternatives;
  for (const auto& t : tags) {
    if (!alternatives.empty()) alternatives += '|';
    alternatives += RegexEscape(t);
  }
  const std::regex suffix("^(.*)[-.](?:" + alternatives + ")-[0-9]+$");
  std::smatch m;
  std::string v(version);
  if (std::regex_match(v, m, suffix)) return m[1].str();
  return v;
}

PropertyReport RelationPropertiesCheck(const Relation& relation, std::span<const RawClass> sample,
                                       unsigned jobs) {
  PropertyReport rep;
  rep.relation = relation;
  rep.transitivity_asserted = relation.transitive;
  const std::size_t n = sample.size();
  rep.classes = n;
  std::deque<PreparedClass> prepared;
  for (const auto& c : sample) prepared.emplace_back(c);

  const Relation rels[] = {relation};
  std::vector<char> holds(n * n);
  ParallelFor(n, jobs, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      holds[i * n + j] = ComparePrepared(prepared[i], prepared[j], rels).equivalent();
    }
  });
  auto h = [&](std::size_t a, std::size_t b) { return holds[a * n + b] != 0; };

  for (std::size_t i = 0; i < n; ++i) {
    if (!h(i, i)) ++rep.reflexivity_violations;
    for (std::size_t j = i + 1; j < n; ++j) {
      ++rep.pairs;
      if (h(i, j) != h(j, i)) ++rep.symmetry_violations;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        ++rep.triples;
        const std::size_t t[3] = {i, j, k};
        for (int mid = 0; mid < 3; ++mid) {
          const std::size_t a = t[(mid + 1) % 3], b = t[mid], c = t[(mid + 2) % 3];
          if (h(a, b) && h(b, c) && !h(a, c)) {
            ++rep.transitivity_violations;
            if (rep.witnesses.size() < 10) {
              rep.witnesses.push_back(
                  fmt::format("{} ~ {} ~ {}", sample[a].path, sample[b].path, sample[c].path));
            }
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace bineq
