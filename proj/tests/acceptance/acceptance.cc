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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <fmt/core.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "bineq/canonical.h"
#include "bineq/class_file.h"
#include "bineq/engine.h"
#include "bineq/evaluation.h"
#include "bineq/normalize.h"
#include "bineq/repo.h"
#include "bineq/testkit.h"
#include "bineq/tlsh.h"
#include "bineq/zip.h"
#include "support/fixtures.h"
#include "support/http_fixture.h"

namespace bineq {
namespace {

namespace fs = std::filesystem;

const std::string kData = BINEQ_TEST_DATA;

struct Check {
  bool pass = true;
  std::string detail;

  // Records a failed expectation; the first few messages are kept.
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail += " | ";
    pass = false;
    if (++failures <= 3) detail += what + "; ";
  }
  int failures = 0;
};

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

const std::vector<RawClass>& Corpus() {
  static const std::vector<RawClass> corpus = testing::LoadCorpus();
  return corpus;
}

const OracleSet& Oracles() {
  static const OracleSet set = GenerateOracleSet(Corpus(), 3, 20260101);
  return set;
}

Outcome At(const ClassVerdict& v, const char* name) { return v.Find(name)->outcome; }

std::optional<std::vector<std::string>> Level2Of(const Bytes& b) {
  try {
    return RenderLevel2(ParseClass(b)).lines;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<std::vector<std::string>> Level3Of(const Bytes& b) {
  try {
    return RenderLevel3(Normalize(ParseClass(b))).lines;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::size_t EngineDiscards(const OracleSet& set) {
  std::size_t n = 0;
  for (const auto& d : set.discarded) {
    if (d.reason == "EQ pair fails Level 2" || d.reason == "NEQ pair passes Level 3") ++n;
  }
  return n;
}

Check RoundTrip() {
  Check c;
  const auto& corpus = Corpus();
  c.Expect(corpus.size() >= 200, fmt::format("corpus has only {} classes", corpus.size()));
  auto start = std::chrono::steady_clock::now();
  std::size_t identical = 0;
  for (const auto& raw : corpus) {
    try {
      if (SerializeClass(ParseClass(raw.bytes)) == raw.bytes) {
        ++identical;
      } else {
        c.Expect(false, raw.path + " differs");
      }
    } catch (const Error& e) {
      c.Expect(false, raw.path + ": " + e.what());
    }
  }
  double secs = Seconds(start);
  c.Expect(secs < 5.0, fmt::format("took {:.2f} s", secs));
  c.detail =
      fmt::format("{}/{} byte-identical in {:.3f} s", identical, corpus.size(), secs) + c.detail;
  return c;
}

Check PoolPermutation() {
  Check c;
  const auto& corpus = Corpus();
  const std::vector<Relation> rels = {Bitwise(), Disassembled()};
  std::size_t runs = 0, non_identity = 0, l2_pass = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::size_t start = (seed * 31) % corpus.size();
    for (std::size_t k = 0; k < 20; ++k) {
      const RawClass& raw = corpus[(start + k) % corpus.size()];
      ClassFile orig = ParseClass(raw.bytes);
      ClassFile perm = PermutePool(orig, seed);
      bool moved = perm.pool.entries != orig.pool.entries;
      RawClass right = RawClass::FromBytes(raw.path, SerializeClass(perm));
      auto v = CompareClassPair(raw, right, rels);
      ++runs;
      if (moved) {
        ++non_identity;
        c.Expect(At(v, "bitwise") == Outcome::kFail,
                 fmt::format("{} seed {}: L1 passed a moved pool", raw.path, seed));
      }
      if (At(v, "disassembled") == Outcome::kPass) {
        ++l2_pass;
      } else {
        c.Expect(false, fmt::format("{} seed {}: L2 {}", raw.path, seed,
                                    OutcomeName(At(v, "disassembled"))));
      }
    }
  }
  c.Expect(non_identity > 0, "no permutation moved any entry");
  c.detail = fmt::format(
                 "{} permutations (100 seeds x 20 classes), {} non-identity all L1-fail, "
                 "L2 pass {}/{}",
                 runs, non_identity, l2_pass, runs) +
             c.detail;
  return c;
}

Check Containment() {
  Check c;
  const OracleSet& set = Oracles();
  struct Pair {
    const RawClass* left;
    const RawClass* right;
  };
  std::vector<Pair> pairs;
  for (const auto& p : set.pairs) pairs.push_back({&p.left, &p.right});
  const std::size_t generated = pairs.size();
  for (const auto& raw : Corpus()) pairs.push_back({&raw, &raw});
  c.Expect(generated >= 1000, fmt::format("only {} generated pairs", generated));

  const auto rels = DefaultRelations();
  std::size_t violations = 0, disagreements = 0;
  std::map<std::string, std::size_t> passes;
  for (const auto& p : pairs) {
    const Bytes& a = p.left->bytes;
    const Bytes& b = p.right->bytes;
    bool l1 = a == b;
    auto a2 = Level2Of(a), b2 = Level2Of(b);
    bool l2 = a2 && b2 && *a2 == *b2;
    auto a3 = Level3Of(a), b3 = Level3Of(b);
    bool l3 = a3 && b3 && *a3 == *b3;
    std::optional<int> distance;
    try {
      distance = TlshDistance(TlshHash(a), TlshHash(b));
    } catch (const Error&) {
    }
    if ((l1 && !l2) || (l2 && !l3) || (l1 && distance.value_or(0) != 0)) {
      ++violations;
      c.Expect(false, p.left->path + ": independent chain violated");
    }
    auto v = CompareClassPair(*p.left, *p.right, rels);
    bool e1 = At(v, "bitwise") == Outcome::kPass;
    bool e2 = At(v, "disassembled") == Outcome::kPass;
    bool e3 = At(v, "normalized") == Outcome::kPass;
    auto ed = v.Find("tlsh10")->provenance.distance;
    if ((e1 && !e2) || (e2 && !e3) || (e1 && ed.value_or(-1) != 0)) {
      ++violations;
      c.Expect(false, p.left->path + ": engine chain violated");
    }
    if (e1 != l1 || e2 != l2 || e3 != l3 || (distance && ed != distance)) {
      ++disagreements;
      c.Expect(false, p.left->path + ": engine disagrees with direct computation");
    }
    passes["L1"] += l1;
    passes["L2"] += l2;
    passes["L3"] += l3;
  }
  c.detail = fmt::format(
                 "{} generated + {} identity pairs; pass L1/L2/L3 = {}/{}/{}; "
                 "{} chain violations, {} engine/direct disagreements",
                 generated, pairs.size() - generated, passes["L1"], passes["L2"], passes["L3"],
                 violations, disagreements) +
             c.detail;
  return c;
}

Check NeqSensitivity() {
  Check c;
  const std::vector<Relation> chain = {Bitwise(), Disassembled(), Normalized()};
  std::map<std::string, std::size_t> total, caught;
  for (const auto& raw : Corpus()) {
    ClassFile base = ParseClass(raw.bytes);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      for (const std::string mutation : {"mutate_constant_value", "swap_opcode"}) {
        ClassFile m;
        try {
          m = mutation == "swap_opcode" ? SwapOpcode(base, seed) : MutateConstantValue(base, seed);
        } catch (const NoTarget&) {
          continue;
        }
        ++total[mutation];
        RawClass right = RawClass::FromBytes(raw.path, SerializeClass(m));
        auto v = CompareClassPair(raw, right, chain);
        bool all_fail = true;
        for (const auto& o : v.outcomes) all_fail = all_fail && o.outcome != Outcome::kPass;
        if (all_fail) {
          ++caught[mutation];
        } else {
          c.Expect(false, fmt::format("{} {} seed {} judged equivalent", raw.path, mutation, seed));
        }
      }
    }
  }
  auto v =
      CompareClassPair(RawClass::FromBytes("Limits.class", testing::ConstantClass(123)),
                       RawClass::FromBytes("Limits.class", testing::ConstantClass(124)), chain);
  const auto* l2 = v.Find("disassembled");
  bool constant_caught =
      l2->outcome == Outcome::kFail &&
      l2->provenance.diff.find("-  ConstantValue int 123") != std::string::npos &&
      l2->provenance.diff.find("+  ConstantValue int 124") != std::string::npos;
  c.Expect(constant_caught, "ConstantValue 123 vs 124 not caught at L2");
  c.Expect(total["mutate_constant_value"] > 0 && total["swap_opcode"] > 0, "no mutants produced");
  c.detail = fmt::format(
                 "mutate_constant_value {}/{}, swap_opcode {}/{} non-equivalent at L1-3; "
                 "ConstantValue 123 vs 124 caught at L2: {}",
                 caught["mutate_constant_value"], total["mutate_constant_value"],
                 caught["swap_opcode"], total["swap_opcode"], constant_caught ? "yes" : "no") +
             c.detail;
  return c;
}

Check GetClassPair() {
  Check c;
  auto [a, b] = testing::GetClassPair();
  auto v = CompareClassPair(RawClass::FromBytes("Holder.class", a),
                            RawClass::FromBytes("Holder.class", b), DefaultRelations());
  c.Expect(At(v, "normalized") == Outcome::kPass, "L3 not equivalent");
  c.Expect(At(v, "disassembled") == Outcome::kFail, "L2 not distinguishing");
  c.Expect(v.strongest_level == 3, "strongest level is not 3");
  c.detail = fmt::format("L2 {}, L3 {}", OutcomeName(At(v, "disassembled")),
                         OutcomeName(At(v, "normalized"))) +
             c.detail;
  return c;
}

Check ConcatPair() {
  Check c;
  auto [a, b] = testing::ConcatPair();
  auto v = CompareClassPair(RawClass::FromBytes("Greeter.class", a),
                            RawClass::FromBytes("Greeter.class", b), DefaultRelations());
  c.Expect(At(v, "normalized") == Outcome::kPass, "L3 not equivalent");
  c.detail = fmt::format("L2 {}, L3 {}", OutcomeName(At(v, "disassembled")),
                         OutcomeName(At(v, "normalized"))) +
             c.detail;
  return c;
}

Check TlshOracle() {
  Check c;
  std::ifstream in(kData + "/tlsh_vectors.json");
  auto j = nlohmann::json::parse(in);
  const auto& vecs = j["vectors"];
  std::size_t digests_ok = 0, distances_ok = 0;
  for (const auto& v : vecs) {
    bool ok = TlshHash(FromHex(v["hex"].get<std::string>())).Hex() == v["digest"];
    digests_ok += ok;
    c.Expect(ok, "digest mismatch for " + v["name"].get<std::string>());
  }
  for (const auto& d : j["distances"]) {
    auto a = TlshHash(FromHex(vecs[d[0].get<int>()]["hex"].get<std::string>()));
    auto b = TlshHash(FromHex(vecs[d[1].get<int>()]["hex"].get<std::string>()));
    bool ok = TlshDistance(a, b) == d[2].get<int>();
    distances_ok += ok;
    c.Expect(ok, fmt::format("distance mismatch {}-{}", d[0].get<int>(), d[1].get<int>()));
  }
  c.Expect(vecs.size() >= 20, "fewer than 20 vectors");

  std::mt19937_64 rng(20260101);
  std::size_t law_violations = 0;
  for (int i = 0; i < 1000; ++i) {
    Bytes a(64 + rng() % 4000), b(64 + rng() % 4000);
    for (auto& x : a) x = static_cast<std::uint8_t>(rng());
    for (auto& x : b) x = static_cast<std::uint8_t>(rng());
    TlshDigest da = TlshHash(a), db = TlshHash(b);
    if (TlshDistance(da, da) != 0 || TlshDistance(da, db) != TlshDistance(db, da)) {
      ++law_violations;
    }
  }
  c.Expect(law_violations == 0, fmt::format("{} self/symmetry violations", law_violations));

  // Frozen witness, distances recorded from the reference implementation.
  std::ifstream win(kData + "/tlsh_witness/reference.json");
  auto w = nlohmann::json::parse(win);
  std::vector<RawClass> triple;
  for (const char* n : {"a", "b", "c"}) {
    triple.push_back(RawClass::FromFile(kData + "/tlsh_witness/" + n + ".bin"));
    c.Expect(
        TlshHash(triple.back().bytes) == TlshDigest::FromHex(w["digests"][n].get<std::string>()),
        std::string("witness digest mismatch for ") + n);
  }
  int ab = TlshDistance(TlshHash(triple[0].bytes), TlshHash(triple[1].bytes));
  int bc = TlshDistance(TlshHash(triple[1].bytes), TlshHash(triple[2].bytes));
  int ac = TlshDistance(TlshHash(triple[0].bytes), TlshHash(triple[2].bytes));
  c.Expect(ab == w["distances"]["ab"] && bc == w["distances"]["bc"] && ac == w["distances"]["ac"],
           "witness distances differ from reference");
  auto props = RelationPropertiesCheck(Tlsh(10), triple);
  c.Expect(props.transitivity_violations > 0, "witness not reported as a transitivity violation");

  // A fresh witness found by walking single-byte edits away from a corpus class.
  std::string fresh = "none";
  std::mt19937_64 walk(1);
  for (const auto& raw : Corpus()) {
    if (raw.bytes.size() < 512 || fresh != "none") continue;
    TlshDigest da = TlshHash(raw.bytes);
    Bytes b = raw.bytes;
    int dab = -1;
    for (int step = 0; step < 200 && dab < 0; ++step) {
      b[walk() % b.size()] = static_cast<std::uint8_t>(walk());
      int d = TlshDistance(da, TlshHash(b));
      if (d > 10) {
        b = raw.bytes;
      } else if (d >= 5) {
        dab = d;
      }
    }
    if (dab < 0) continue;
    TlshDigest db = TlshHash(b);
    for (int attempt = 0; attempt < 300 && fresh == "none"; ++attempt) {
      Bytes cc = b;
      for (int step = 0; step < 40; ++step) {
        cc[walk() % cc.size()] = static_cast<std::uint8_t>(walk());
        TlshDigest dc = TlshHash(cc);
        int dbc = TlshDistance(db, dc);
        if (dbc > 10) break;
        int dac = TlshDistance(da, dc);
        if (dac > 10) {
          fresh = fmt::format("{} ({}, {}, {})", raw.path, dab, dbc, dac);
          break;
        }
      }
    }
  }
  c.Expect(fresh != "none", "no fresh witness found");
  c.detail = fmt::format(
                 "{}/{} digests, {}/{} distances match reference; 1000 random pairs: "
                 "{} law violations; witness d(a,b)={} d(b,c)={} d(a,c)={} at tau=10; "
                 "fresh witness {}",
                 digests_ok, vecs.size(), distances_ok, j["distances"].size(), law_violations, ab,
                 bc, ac, fresh) +
             c.detail;
  return c;
}

Check RelationLaws() {
  Check c;
  const auto& corpus = Corpus();
  std::vector<RawClass> sample;
  for (std::size_t k = 0; k < 10; ++k) {
    const RawClass& raw = corpus[(k * 29 + 3) % corpus.size()];
    ClassFile base = ParseClass(raw.bytes);
    sample.push_back(raw);
    sample.push_back(RawClass::FromBytes(raw.path, SerializeClass(PermutePool(base, k + 1))));
    sample.push_back(RawClass::FromBytes(raw.path, SerializeClass(StripDebugAttrs(base))));
  }
  std::string summary;
  for (const auto& rel : DefaultRelations()) {
    auto r = RelationPropertiesCheck(rel, sample);
    c.Expect(r.ok(),
             fmt::format("{}: refl {} sym {} trans {}", rel.Name(), r.reflexivity_violations,
                         r.symmetry_violations, r.transitivity_violations));
    summary +=
        fmt::format("{} {}/{}/{}{} ", rel.Name(), r.reflexivity_violations, r.symmetry_violations,
                    r.transitivity_violations, r.transitivity_asserted ? "" : " (reported)");
    if (rel.id == RelationId::kBitwise) {
      c.Expect(r.triples >= 4000, fmt::format("only {} triples", r.triples));
      summary =
          fmt::format("{} classes, {} triples; violations refl/sym/trans: ", r.classes, r.triples) +
          summary;
    }
  }
  c.detail = summary + c.detail;
  return c;
}

Check EvaluationSanity() {
  Check c;
  const OracleSet& set = Oracles();
  std::map<std::string, std::vector<const OraclePair*>> by_mutation;
  for (const auto& p : set.pairs) by_mutation[p.mutation].push_back(&p);
  std::vector<OraclePair> chosen;
  auto take = [&](const std::vector<std::string>& mutations, std::size_t want) {
    std::size_t taken = 0;
    for (std::size_t i = 0; taken < want; ++i) {
      bool any = false;
      for (const auto& m : mutations) {
        if (i < by_mutation[m].size() && taken < want) {
          chosen.push_back(*by_mutation[m][i]);
          ++taken;
          any = true;
        }
      }
      if (!any) break;
    }
    return taken;
  };
  std::size_t eq = take({"permute_pool", "reorder_members", "strip_debug_attrs"}, 200);
  std::size_t neq = take({"mutate_constant_value", "swap_opcode"}, 200);
  c.Expect(eq == 200 && neq == 200, fmt::format("only {} EQ / {} NEQ pairs", eq, neq));
  std::size_t engine_discards = EngineDiscards(set);
  c.Expect(engine_discards == 0,
           fmt::format("{} pairs discarded by the engine self-check", engine_discards));

  auto report = Evaluate(DefaultRelations(), chosen);
  double bw_eq = report.Cell("EQ", "bitwise").fraction();
  double bw_neq = report.Cell("NEQ", "bitwise").fraction();
  double dis_neq = report.Cell("NEQ", "disassembled").fraction();
  c.Expect(bw_eq == 0.0, fmt::format("bitwise EQ {:.3f}", bw_eq));
  c.Expect(bw_neq == 1.0, fmt::format("bitwise NEQ {:.3f}", bw_neq));
  c.Expect(dis_neq >= 0.99, fmt::format("disassembled NEQ {:.3f}", dis_neq));
  std::string subsets;
  for (const char* m : {"permute_pool", "reorder_members", "strip_debug_attrs"}) {
    double f = report.Cell(std::string("EQ/") + m, "disassembled").fraction();
    c.Expect(f == 1.0, fmt::format("disassembled EQ/{} {:.3f}", m, f));
    subsets += fmt::format(" {}={:.3f}", m, f);
  }
  c.detail = fmt::format(
                 "{} EQ + {} NEQ; bitwise EQ {:.3f} NEQ {:.3f}; disassembled EQ{} "
                 "NEQ {:.3f}; engine-check discards {}",
                 eq, neq, bw_eq, bw_neq, subsets, dis_neq, engine_discards) +
             c.detail;
  return c;
}

Check RepoIngest() {
  Check c;
  testing::FixtureServer server;
  const std::string base = "/maven/org/acme/widget/";
  server.Serve(base + "maven-metadata.xml",
               "<metadata><groupId>org.acme</groupId><artifactId>widget</artifactId>"
               "<versioning><versions><version>1.0.redhat-00003</version>"
               "<version>1.0</version><version>1.0-redhat-1</version>"
               "<version>1.0.redhat-00002</version></versions></versioning></metadata>");
  const std::string body = "fixture jar body";
  for (const char* v : {"1.0.redhat-00003", "1.0.redhat-00002"}) {
    std::string jar = base + v + "/widget-" + v + ".jar";
    server.Serve(jar, body);
    server.Serve(jar + ".md5", testing::Md5Sidecar(body));
  }
  server.Serve(base + "1.0-redhat-1/widget-1.0-redhat-1.jar", body);
  server.Serve(base + "1.0-redhat-1/widget-1.0-redhat-1.jar.md5", testing::Md5Sidecar("tampered"));

  fs::path cache = fs::temp_directory_path() / "bineq_acceptance_cache";
  fs::remove_all(cache);
  FetchOptions options;
  options.cache_root = cache.string();
  options.initial_backoff = std::chrono::milliseconds(1);
  RepoClient client(options);
  RepoSpec repo = RepoSpec::Make("fixture", server.base_url() + "/maven");

  VersionList versions = client.FetchVersions(repo, "org.acme", "widget");
  VersionList expected = {"1.0.redhat-00003", "1.0", "1.0-redhat-1", "1.0.redhat-00002"};
  c.Expect(versions == expected, "version order not preserved");
  std::string rh1 = SelectVersion(versions, "1.0", SelectStrategy::kFirst);
  std::string rh2 = SelectVersion(versions, "1.0", SelectStrategy::kLast);
  c.Expect(rh1 == "1.0.redhat-00003" && rh2 == "1.0.redhat-00002", "first/last selection wrong");

  bool mismatch = false;
  try {
    client.FetchArtifact(repo, Coordinates::Parse("org.acme:widget:1.0-redhat-1"));
  } catch (const ChecksumMismatch&) {
    mismatch = true;
  }
  c.Expect(mismatch, "corrupted sidecar accepted");

  Coordinates good = Coordinates::Parse("org.acme:widget:" + rh2);
  auto first = client.FetchArtifact(repo, good);
  std::size_t before = server.request_count();
  auto second = client.FetchArtifact(repo, good);
  std::size_t extra = server.request_count() - before;
  c.Expect(extra == 0 && second.from_cache, fmt::format("second fetch made {} requests", extra));
  c.Expect(first.sha256 == second.sha256, "cached content differs");
  c.detail = fmt::format(
                 "order preserved ({} versions), rh1={} rh2={}, ChecksumMismatch: {}, "
                 "second fetch requests: {}",
                 versions.size(), rh1, rh2, mismatch ? "yes" : "no", extra) +
             c.detail;
  return c;
}

Check Performance() {
  Check c;
  const auto& corpus = Corpus();
  std::vector<ZipEntry> left, right;
  for (std::size_t i = 0; i < 1000; ++i) {
    const RawClass& raw = corpus[i % corpus.size()];
    std::string name = fmt::format("copy{}/{}", i / corpus.size(), raw.path);
    left.push_back({name, raw.bytes});
    right.push_back({name, SerializeClass(PermutePool(ParseClass(raw.bytes), i + 1))});
  }
  JarInput l{"left.jar", WriteZip(left)}, r{"right.jar", WriteZip(right)};
  const std::vector<Relation> chain = {Bitwise(), Disassembled(), Normalized()};
  auto start = std::chrono::steady_clock::now();
  auto report = CompareJars(l, r, chain, {});
  double secs = Seconds(start);
  c.Expect(report.class_verdicts.size() == 1000, "not 1000 class verdicts");
  c.Expect(secs < 10.0, fmt::format("took {:.2f} s", secs));
  std::size_t l1 = 0;
  for (const auto& v : report.class_verdicts) l1 += v.strongest_level == 1;
  c.detail =
      fmt::format(
          "1000 vs 1000 classes at L1-L3 in {:.2f} s (hardware threads: {}); {} at level 1, "
          "aggregate level {}",
          secs, std::thread::hardware_concurrency(), l1,
          report.aggregate_level ? std::to_string(*report.aggregate_level) : std::string("none")) +
      c.detail;
  return c;
}

}  // namespace
}  // namespace bineq

int main() {
  using namespace bineq;
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"round-trip", RoundTrip},
      {"level-2 pool-permutation invariance", PoolPermutation},
      {"containment chain", Containment},
      {"NEQ sensitivity", NeqSensitivity},
      {"getClass receiver pair", GetClassPair},
      {"string concatenation pair", ConcatPair},
      {"TLSH reference equality", TlshOracle},
      {"relation laws", RelationLaws},
      {"evaluation harness sanity", EvaluationSanity},
      {"repo ingest", RepoIngest},
      {"performance", Performance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    failed += !c.pass;
    std::cout << fmt::format("{} {:2} {}: {}", c.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                             c.detail)
              << std::endl;
  }
  std::cout << fmt::format("{}/{} criteria passed", criteria.size() - failed, criteria.size())
            << std::endl;
  return failed == 0 ? 0 : 1;
}
