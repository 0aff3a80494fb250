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

#ifndef BINEQ_ENGINE_H_
#define BINEQ_ENGINE_H_

#include <cstddef>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bineq/bytes.h"
#include "bineq/canonical.h"
#include "bineq/tlsh.h"

namespace bineq {

// A class file as found in an archive or on disk.
struct RawClass {
  std::string path;
  Bytes bytes;
  std::string sha256;

  static RawClass FromBytes(std::string path, Bytes bytes);
  static RawClass FromFile(const std::string& path);
};

enum class RelationId { kBitwise, kDisassembled, kNormalized, kTlsh };

struct Relation {
  RelationId id = RelationId::kBitwise;
  int level = 1;
  bool transitive = true;
  std::optional<int> threshold;  // tlsh only

  // "bitwise", "disassembled", "normalized" or "tlsh<τ>".
  std::string Name() const;
  bool InChain() const { return level <= 3; }
  bool operator==(const Relation&) const = default;
};

Relation Bitwise();
Relation Disassembled();
Relation Normalized();
Relation Tlsh(int tau);

// bitwise, disassembled, normalized, tlsh10, tlsh100.
std::vector<Relation> DefaultRelations();
// Inverse of Relation::Name(); nullopt for unknown names.
std::optional<Relation> ParseRelation(std::string_view name);

enum class Outcome { kPass, kFail, kError };
std::string_view OutcomeName(Outcome o);

struct Provenance {
  std::optional<std::size_t> first_difference;  // bitwise
  std::string diff;                             // disassembled, normalized
  std::optional<int> distance;                  // tlsh
  std::optional<int> threshold;
  bool by_containment = false;  // pass implied by a stronger relation

  bool empty() const { return !first_difference && diff.empty() && !distance && !by_containment; }
};

struct RelationOutcome {
  Relation relation;
  Outcome outcome = Outcome::kError;
  std::string message;  // error outcomes
  Provenance provenance;
};

struct ClassVerdict {
  std::string path;
  std::vector<RelationOutcome> outcomes;  // ascending level
  // Smallest level among passing chain relations (tlsh only counts when no
  // chain relation was requested); nullopt when non-equivalent.
  std::optional<int> strongest_level;

  bool equivalent() const { return strongest_level.has_value(); }
  const RelationOutcome* Find(std::string_view relation_name) const;
};

ClassVerdict CompareClassPair(const RawClass& left, const RawClass& right,
                              std::span<const Relation> relations);

// Transformation results computed lazily, at most once, per class. Safe to
// share between threads. `raw` must outlive the object.
class PreparedClass {
 public:
  explicit PreparedClass(const RawClass& raw) : raw_(&raw) {}

  const RawClass& raw() const { return *raw_; }
  // Each getter throws bineq::Error carrying the transformation's failure.
  const std::vector<std::string>& Level2() const;
  const std::vector<std::string>& Level3() const;
  const TlshDigest& Digest() const;

 private:
  const RawClass* raw_;
  mutable std::once_flag canon_once_, level3_once_, digest_once_;
  mutable std::shared_ptr<const CanonicalClass> canon_;
  mutable std::vector<std::string> level2_, level3_;
  mutable std::string canon_error_, level3_error_, digest_error_;
  mutable TlshDigest digest_;
};

ClassVerdict ComparePrepared(const PreparedClass& left, const PreparedClass& right,
                             std::span<const Relation> relations);

// Entry selection for missing-entry accounting. Pairs present on both sides
// are always compared.
struct EntryFilter {
  bool ignore_synthetic = false;     // class names containing '$'
  bool ignore_multirelease = false;  // META-INF/versions/
  bool ignore_package_info = false;
  std::vector<std::string> excludes;  // shell globs over entry paths

  bool Excludes(std::string_view path) const;
  std::vector<std::string> Describe() const;
};

struct JarIdentity {
  std::string path;
  std::string sha256;
};

struct ResourceMismatch {
  std::string path;
  std::string left_sha256;
  std::string right_sha256;
};

struct DuplicateEntry {
  std::string path;
  std::size_t left_count = 0;
  std::size_t right_count = 0;
};

struct JarComparisonReport {
  JarIdentity left, right;
  std::vector<Relation> relations;
  std::vector<std::string> missing_in_left, missing_in_right;
  std::vector<ClassVerdict> class_verdicts;  // path order
  std::vector<ResourceMismatch> resource_mismatches;
  std::vector<DuplicateEntry> duplicate_entries;
  std::optional<int> aggregate_level;  // weakest class level
  std::vector<std::string> filters_applied;

  bool equivalent() const { return aggregate_level.has_value(); }
};

struct JarInput {
  std::string path;
  Bytes bytes;
};

// `jobs` caps the number of worker threads; 0 means hardware concurrency.
JarComparisonReport CompareJars(const JarInput& left, const JarInput& right,
                                std::span<const Relation> relations, const EntryFilter& filter,
                                unsigned jobs = 0);
JarComparisonReport CompareJarFiles(const std::string& left, const std::string& right,
                                    std::span<const Relation> relations, const EntryFilter& filter,
                                    unsigned jobs = 0);

inline constexpr std::string_view kReportVersion = "bineq-report/1";

nlohmann::ordered_json VerdictToJson(const ClassVerdict& v);
nlohmann::ordered_json ReportToJson(const JarComparisonReport& r);

// Strips a trailing provider suffix: separator ('-' or '.'), tag, '-', digits.
std::string CanonicalizeVersion(std::string_view version, std::span<const std::string> tags = {});

struct PropertyReport {
  Relation relation;
  std::size_t classes = 0;
  std::size_t pairs = 0;
  std::size_t triples = 0;
  std::size_t reflexivity_violations = 0;
  std::size_t symmetry_violations = 0;
  std::size_t transitivity_violations = 0;
  bool transitivity_asserted = true;   // false for tlsh, where it is only reported
  std::vector<std::string> witnesses;  // "a ~ b ~ c" for transitivity failures

  bool ok() const {
    return reflexivity_violations == 0 && symmetry_violations == 0 &&
           (!transitivity_asserted || transitivity_violations == 0);
  }
};

PropertyReport RelationPropertiesCheck(const Relation& relation, std::span<const RawClass> sample,
                                       unsigned jobs = 0);

}  // namespace bineq

#endif  // BINEQ_ENGINE_H_
