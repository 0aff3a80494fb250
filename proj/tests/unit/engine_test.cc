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

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "bineq/class_file.h"
#include "bineq/testkit.h"
#include "bineq/zip.h"
#include "support/fixtures.h"

namespace bineq {
namespace {

const std::vector<Relation> kAll = DefaultRelations();

RawClass Raw(const std::string& path, Bytes b) { return RawClass::FromBytes(path, std::move(b)); }

Bytes Permuted(const Bytes& b, std::uint64_t seed) {
  return SerializeClass(PermutePool(ParseClass(b), seed));
}

std::vector<ZipEntry> JarEntries(const std::vector<RawClass>& corpus, std::size_t n) {
  std::vector<ZipEntry> entries = {{"META-INF/MANIFEST.MF", Bytes{'M', '\n'}}};
  for (std::size_t i = 0; i < n; ++i) entries.push_back({corpus[i * 3].path, corpus[i * 3].bytes});
  return entries;
}

TEST(RelationTest, NamesRoundTrip) {
  for (const auto& r : kAll) {
    auto back = ParseRelation(r.Name());
    ASSERT_TRUE(back.has_value()) << r.Name();
    EXPECT_EQ(*back, r);
  }
  EXPECT_EQ(Tlsh(10).Name(), "tlsh10");
  EXPECT_FALSE(Tlsh(10).transitive);
  EXPECT_EQ(Tlsh(10).level, 4);
  EXPECT_FALSE(ParseRelation("tlshx").has_value());
  EXPECT_FALSE(ParseRelation("fuzzy").has_value());
}

TEST(CompareClassTest, IdenticalBytesPassEverywhere) {
  auto corpus = testing::LoadCorpus();
  RawClass a = corpus[10], b = corpus[10];
  auto v = CompareClassPair(a, b, kAll);
  ASSERT_EQ(v.outcomes.size(), 5u);
  for (const auto& o : v.outcomes) EXPECT_EQ(o.outcome, Outcome::kPass) << o.relation.Name();
  EXPECT_EQ(v.strongest_level, 1);
  EXPECT_EQ(v.Find("tlsh10")->provenance.distance, 0);
}

TEST(CompareClassTest, PermutedPoolPassesFromLevel2) {
  auto corpus = testing::LoadCorpus();
  const Bytes& orig = corpus[20].bytes;
  Bytes perm = Permuted(orig, 99);
  ASSERT_NE(orig, perm);
  auto v = CompareClassPair(Raw("x.class", orig), Raw("x.class", perm), kAll);
  const auto* bitwise = v.Find("bitwise");
  ASSERT_EQ(bitwise->outcome, Outcome::kFail);
  auto mismatch = std::mismatch(orig.begin(), orig.end(), perm.begin(), perm.end());
  EXPECT_EQ(bitwise->provenance.first_difference,
            static_cast<std::size_t>(mismatch.first - orig.begin()));
  EXPECT_EQ(v.Find("disassembled")->outcome, Outcome::kPass);
  EXPECT_EQ(v.Find("normalized")->outcome, Outcome::kPass);
  EXPECT_TRUE(v.Find("normalized")->provenance.by_containment);
  auto d = TlshDistance(TlshHash(orig), TlshHash(perm));
  EXPECT_EQ(v.Find("tlsh100")->provenance.distance, d);
  EXPECT_EQ(v.Find("tlsh100")->outcome, d <= 100 ? Outcome::kPass : Outcome::kFail);
  EXPECT_EQ(v.strongest_level, 2);
}

TEST(CompareClassTest, ConstantChangeFailsChainWithConstantValueDiff) {
  auto v = CompareClassPair(Raw("Limits.class", testing::ConstantClass(123)),
                            Raw("Limits.class", testing::ConstantClass(124)), kAll);
  EXPECT_FALSE(v.equivalent());
  for (const char* name : {"bitwise", "disassembled", "normalized"}) {
    EXPECT_EQ(v.Find(name)->outcome, Outcome::kFail) << name;
  }
  const std::string& diff = v.Find("disassembled")->provenance.diff;
  EXPECT_NE(diff.find("--- a/Limits.class"), std::string::npos);
  EXPECT_NE(diff.find("\n-  ConstantValue int 123"), std::string::npos) << diff;
  EXPECT_NE(diff.find("\n+  ConstantValue int 124"), std::string::npos) << diff;
  int removed = 0, added = 0;
  std::istringstream lines(diff);
  for (std::string line; std::getline(lines, line);) {
    if (line.starts_with("-") && !line.starts_with("---")) ++removed;
    if (line.starts_with("+") && !line.starts_with("+++")) ++added;
  }
  EXPECT_EQ(removed, 1);
  EXPECT_EQ(added, 1);
}

TEST(CompareClassTest, CorruptSideIsAnError) {
  Bytes good = testing::ArithmeticClass();
  Bytes bad(good.begin(), good.begin() + good.size() / 2);
  auto v = CompareClassPair(Raw("Ops.class", good), Raw("Ops.class", bad), kAll);
  EXPECT_FALSE(v.equivalent());
  EXPECT_EQ(v.Find("bitwise")->outcome, Outcome::kFail);
  EXPECT_EQ(v.Find("disassembled")->outcome, Outcome::kError);
  EXPECT_NE(v.Find("disassembled")->message.find("malformed"), std::string::npos);
  EXPECT_EQ(v.Find("normalized")->outcome, Outcome::kError);
}

TEST(CompareClassTest, ShortInputIsTlshError) {
  auto v = CompareClassPair(Raw("a", Bytes(10, 1)), Raw("a", testing::ArithmeticClass()),
                            std::vector<Relation>{Tlsh(10)});
  EXPECT_EQ(v.outcomes[0].outcome, Outcome::kError);
  EXPECT_NE(v.outcomes[0].message.find("InputTooShort"), std::string::npos);
  EXPECT_FALSE(v.equivalent());
}

TEST(CompareClassTest, IdenticalShortInputsStillFailTlsh) {
  auto v = CompareClassPair(Raw("a", Bytes(10, 1)), Raw("a", Bytes(10, 1)), kAll);
  EXPECT_EQ(v.Find("bitwise")->outcome, Outcome::kPass);
  EXPECT_EQ(v.Find("tlsh10")->outcome, Outcome::kError);
  EXPECT_FALSE(v.equivalent());
}

TEST(CompareClassTest, TlshOnlyVerdictReportsLevelFour) {
  auto corpus = testing::LoadCorpus();
  auto v = CompareClassPair(corpus[5], corpus[5], std::vector<Relation>{Tlsh(100)});
  EXPECT_EQ(v.strongest_level, 4);
}

TEST(CompareJarsTest, IdenticalCopyIsLevelOne) {
  auto corpus = testing::LoadCorpus();
  Bytes jar = WriteZip(JarEntries(corpus, 12));
  auto r = CompareJars({"a.jar", jar}, {"b.jar", jar}, kAll, {});
  EXPECT_EQ(r.aggregate_level, 1);
  EXPECT_TRUE(r.missing_in_left.empty());
  EXPECT_TRUE(r.missing_in_right.empty());
  EXPECT_EQ(r.class_verdicts.size(), 12u);
  EXPECT_EQ(r.left.sha256, r.right.sha256);
}

TEST(CompareJarsTest, DroppedClassBlocksUntilFiltered) {
  auto corpus = testing::LoadCorpus();
  auto left = JarEntries(corpus, 12);
  auto right = left;
  right[3].data = Permuted(right[3].data, 7);
  std::string dropped = right[8].name;
  right.erase(right.begin() + 8);
  JarInput l{"l.jar", WriteZip(left)}, r{"r.jar", WriteZip(right)};

  auto plain = CompareJars(l, r, kAll, {});
  EXPECT_FALSE(plain.equivalent());
  EXPECT_EQ(plain.missing_in_right, std::vector<std::string>{dropped});
  EXPECT_TRUE(plain.missing_in_left.empty());

  EntryFilter filter;
  filter.excludes = {dropped};
  auto filtered = CompareJars(l, r, kAll, filter);
  EXPECT_EQ(filtered.aggregate_level, 2);
  EXPECT_TRUE(filtered.missing_in_right.empty());
  EXPECT_FALSE(filtered.filters_applied.empty());
}

TEST(CompareJarsTest, ResourcesAndDuplicatesAreReported) {
  auto corpus = testing::LoadCorpus();
  auto left = JarEntries(corpus, 2);
  auto right = left;
  right[0].data = Bytes{'N', '\n'};
  right.push_back(right[1]);
  auto r = CompareJars({"l", WriteZip(left)}, {"r", WriteZip(right)}, kAll, {});
  ASSERT_EQ(r.resource_mismatches.size(), 1u);
  EXPECT_EQ(r.resource_mismatches[0].path, "META-INF/MANIFEST.MF");
  ASSERT_EQ(r.duplicate_entries.size(), 1u);
  EXPECT_EQ(r.duplicate_entries[0].left_count, 1u);
  EXPECT_EQ(r.duplicate_entries[0].right_count, 2u);
  EXPECT_FALSE(r.equivalent());
}

TEST(EntryFilterTest, Rules) {
  EntryFilter f;
  f.ignore_synthetic = true;
  f.ignore_multirelease = true;
  f.ignore_package_info = true;
  f.excludes = {"com/internal/*"};
  EXPECT_TRUE(f.Excludes("a/B$1.class"));
  EXPECT_TRUE(f.Excludes("META-INF/versions/9/module-info.class"));
  EXPECT_TRUE(f.Excludes("a/b/package-info.class"));
  EXPECT_TRUE(f.Excludes("com/internal/X.class"));
  EXPECT_FALSE(f.Excludes("a/B.class"));
  EXPECT_FALSE(EntryFilter{}.Excludes("a/B$1.class"));
  EXPECT_EQ(f.Describe().size(), 4u);
}

TEST(ReportJsonTest, KeysInDocumentedOrder) {
  auto corpus = testing::LoadCorpus();
  Bytes jar = WriteZip(JarEntries(corpus, 2));
  auto j = ReportToJson(CompareJars({"a.jar", jar}, {"b.jar", jar}, kAll, {}));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys,
            (std::vector<std::string>{
                "version", "jars", "relations", "filters_applied", "aggregate", "missing_in_left",
                "missing_in_right", "duplicate_entries", "resource_mismatches", "class_verdicts"}));
  EXPECT_EQ(j["version"], kReportVersion);
  EXPECT_EQ(j["aggregate"]["level"], 1);
  EXPECT_EQ(j["class_verdicts"][0]["outcomes"].size(), 5u);
}

TEST(CanonicalizeVersionTest, StripsProviderSuffix) {
  EXPECT_EQ(CanonicalizeVersion("2.17.2.redhat-00001"), "2.17.2");
  EXPECT_EQ(CanonicalizeVersion("2.15.1"), "2.15.1");
  EXPECT_EQ(CanonicalizeVersion("1.0-redhat-1"), "1.0");
  EXPECT_EQ(CanonicalizeVersion("1.0-redhat"), "1.0-redhat");
  std::vector<std::string> tags = {"custom"};
  EXPECT_EQ(CanonicalizeVersion("3.1.custom-7", tags), "3.1");
}

TEST(PropertiesTest, BitwiseHoldsOnCorpusSample) {
  auto corpus = testing::LoadCorpus();
  std::vector<RawClass> sample(corpus.begin(), corpus.begin() + 12);
  sample.push_back(sample[0]);
  auto r = RelationPropertiesCheck(Bitwise(), sample);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.triples, 13u * 12 * 11 / 6);
}

TEST(PropertiesTest, DisassembledTransitiveOverPermutedTriples) {
  auto corpus = testing::LoadCorpus();
  std::vector<RawClass> sample;
  for (int k = 0; k < 4; ++k) {
    const Bytes& b = corpus[30 + k * 11].bytes;
    for (std::uint64_t s = 0; s < 3; ++s) sample.push_back(Raw("c", Permuted(b, s * 17)));
  }
  auto r = RelationPropertiesCheck(Disassembled(), sample);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.transitivity_violations, 0u);
}

}  // namespace
}  // namespace bineq
