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

#ifndef BINEQ_TESTKIT_H_
#define BINEQ_TESTKIT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bineq/class_file.h"
#include "bineq/engine.h"
#include "bineq/error.h"

namespace bineq {

// A NEQ mutation found nothing to change.
class NoTarget : public Error {
 public:
  using Error::Error;
};

class ManifestError : public Error {
 public:
  using Error::Error;
};

// Semantics-preserving mutations. Seed 0 leaves the class unchanged.

// Shuffles the constant pool (Long/Double keep their second slot) and rewrites
// every index. Classes carrying opaque attributes are returned unchanged
// because their payloads may hold indices that cannot be rewritten.
ClassFile PermutePool(const ClassFile& c, std::uint64_t seed);
// Shuffles field order and method order independently.
ClassFile ReorderMembers(const ClassFile& c, std::uint64_t seed);
// Drops LineNumberTable, LocalVariableTable, LocalVariableTypeTable,
// SourceFile, SourceDebugExtension and Deprecated everywhere.
ClassFile StripDebugAttrs(const ClassFile& c);

// Semantics-breaking mutations. Throw NoTarget when nothing applies.

// Adds one (wrapping) to a numeric ConstantValue or to a numeric pool
// constant loaded by ldc, ldc_w or ldc2_w.
ClassFile MutateConstantValue(const ClassFile& c, std::uint64_t seed);
// Applies one of iadd<->isub, imul<->idiv, if_icmplt<->if_icmpge, or
// iconst_0<->iconst_1 directly before ireturn.
ClassFile SwapOpcode(const ClassFile& c, std::uint64_t seed);

enum class OracleLabel { kEq, kNeq };
std::string_view LabelName(OracleLabel l);

struct OraclePair {
  RawClass left, right;
  OracleLabel label = OracleLabel::kEq;
  std::string mutation;  // permute_pool, reorder_members, ...
  std::uint64_t seed = 0;
  std::string compiler_version;  // optional, empty for generated pairs
};

struct Discard {
  std::string path;
  std::string mutation;
  std::uint64_t seed;
  std::string reason;
};

struct OracleSet {
  std::vector<OraclePair> pairs;
  std::vector<Discard> discarded;
};

// For every class, up to `per_class` EQ and `per_class` NEQ pairs. Mutations
// whose output equals the input, fails to re-parse, or disagrees with the
// engine (EQ must pass Level 2, NEQ must fail Level 3) are discarded.
OracleSet GenerateOracleSet(std::span<const RawClass> corpus, int per_class, std::uint64_t seed,
                            unsigned jobs = 0);

// Writes class files under <dir>/classes/<sha256>.class and one JSON object per
// pair to <dir>/manifest.jsonl. Returns the manifest path.
std::string WriteOracleSet(const std::vector<OraclePair>& pairs, const std::string& dir);
// Reads a manifest; class paths are resolved relative to its directory and
// checked against the recorded digests.
std::vector<OraclePair> ReadManifest(const std::string& manifest_path);

}  // namespace bineq

#endif  // BINEQ_TESTKIT_H_
