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

#include "cli.h"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <thread>

#include "bineq/canonical.h"
#include "bineq/class_file.h"
#include "bineq/engine.h"
#include "bineq/evaluation.h"
#include "bineq/normalize.h"
#include "bineq/repo.h"
#include "bineq/source_equiv.h"
#include "bineq/testkit.h"
#include "bineq/tlsh.h"
#include "bineq/zip.h"

namespace bineq::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string format = "text";
  std::vector<std::string> relations = {"bitwise", "disassembled", "normalized", "tlsh"};
  std::vector<int> taus = {10, 100};
  unsigned jobs = 0;
  std::string cache;

  std::string left, right;
  bool ignore_synthetic = false, ignore_multirelease = false, ignore_package_info = false;
  std::vector<std::string> excludes;

  int level = 2;
  std::string input;

  std::string repo, repo_id, gav, classifier, strategy;

  std::string corpus, out_dir;
  std::uint64_t seed = 1;
  int count = 3;

  std::string manifest;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<Relation> SelectedRelations(const Options& o) {
  std::vector<Relation> rels;
  for (const auto& name : o.relations) {
    if (name == "tlsh") {
      for (int tau : o.taus) {
        if (tau < 0) throw UsageError("tau must be non-negative");
        rels.push_back(Tlsh(tau));
      }
    } else if (auto r = ParseRelation(name)) {
      rels.push_back(*r);
    } else {
      throw UsageError("unknown relation: " + name);
    }
  }
  if (rels.empty()) throw UsageError("no relations selected");
  return rels;
}

void AddRelationFlags(CLI::App* sub, Options& o) {
  sub->add_option("--relations", o.relations,
                  "Relations: bitwise, disassembled, normalized, tlsh, tlsh<N>")
      ->delimiter(',');
  sub->add_option("--tau", o.taus, "Thresholds for the tlsh relation")->delimiter(',');
}

void AddFormatFlag(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));
}

std::string OutcomeLine(const RelationOutcome& o) {
  std::string line = fmt::format("  {:<13} {:<5}", o.relation.Name(), OutcomeName(o.outcome));
  const Provenance& p = o.provenance;
  if (o.outcome == Outcome::kError) {
    line += "  " + o.message;
  } else if (p.first_difference) {
    line += fmt::format("  first difference at byte {}", *p.first_difference);
  } else if (p.distance) {
    line += fmt::format("  distance {} (threshold {})", *p.distance, p.threshold.value_or(0));
  } else if (p.by_containment) {
    line += "  implied by a stronger relation";
  }
  while (!line.empty() && line.back() == ' ') line.pop_back();
  return line;
}

std::string LevelText(const std::optional<int>& level) {
  return level ? fmt::format("level {}", *level) : "non-equivalent";
}

void PrintVerdict(const ClassVerdict& v, std::ostream& out, bool with_diffs) {
  out << v.path << ": " << LevelText(v.strongest_level) << '\n';
  for (const auto& o : v.outcomes) out << OutcomeLine(o) << '\n';
  if (!with_diffs) return;
  for (const auto& o : v.outcomes) {
    if (!o.provenance.diff.empty()) {
      out << "\n" << o.relation.Name() << " diff:\n" << o.provenance.diff;
    }
  }
}

void WriteJson(std::ostream& out, const nlohmann::ordered_json& j) { out << j.dump(2) << '\n'; }

int CompareClasses(const Options& o, std::ostream& out) {
  auto rels = SelectedRelations(o);
  RawClass a = RawClass::FromFile(o.left);
  RawClass b = RawClass::FromFile(o.right);
  ClassVerdict v = CompareClassPair(a, b, rels);
  if (o.format == "structured") {
    nlohmann::ordered_json j;
    j["version"] = kReportVersion;
    j["left"] = {{"path", a.path}, {"sha256", a.sha256}};
    j["right"] = {{"path", b.path}, {"sha256", b.sha256}};
    j["class_verdict"] = VerdictToJson(v);
    WriteJson(out, j);
  } else {
    PrintVerdict(v, out, true);
  }
  return v.equivalent() ? kExitEquivalent : kExitNonEquivalent;
}

int CompareJarsCommand(const Options& o, std::ostream& out) {
  auto rels = SelectedRelations(o);
  EntryFilter filter{o.ignore_synthetic, o.ignore_multirelease, o.ignore_package_info, o.excludes};
  JarComparisonReport r = CompareJarFiles(o.left, o.right, rels, filter, o.jobs);
  if (o.format == "structured") {
    WriteJson(out, ReportToJson(r));
    return r.equivalent() ? kExitEquivalent : kExitNonEquivalent;
  }
  out << "left:  " << r.left.path << " sha256=" << r.left.sha256 << '\n';
  out << "right: " << r.right.path << " sha256=" << r.right.sha256 << '\n';
  if (!r.filters_applied.empty()) {
    out << "filters:";
    for (const auto& f : r.filters_applied) out << ' ' << f;
    out << '\n';
  }
  std::map<std::string, int> levels;
  for (const auto& v : r.class_verdicts) levels[LevelText(v.strongest_level)]++;
  out << "classes compared: " << r.class_verdicts.size() << '\n';
  for (const auto& [name, n] : levels) out << "  " << name << ": " << n << '\n';
  for (const auto& p : r.missing_in_left) out << "missing in left: " << p << '\n';
  for (const auto& p : r.missing_in_right) out << "missing in right: " << p << '\n';
  for (const auto& d : r.duplicate_entries) {
    out << fmt::format("duplicate entry: {} (left {}, right {})\n", d.path, d.left_count,
                       d.right_count);
  }
  for (const auto& m : r.resource_mismatches) out << "resource differs: " << m.path << '\n';
  for (const auto& v : r.class_verdicts) {
    if (v.strongest_level == 1) continue;
    out << '\n';
    PrintVerdict(v, out, true);
  }
  out << "\naggregate: " << LevelText(r.aggregate_level) << '\n';
  return r.equivalent() ? kExitEquivalent : kExitNonEquivalent;
}

int Render(const Options& o, std::ostream& out) {
  ClassFile c = ParseClass(ReadFile(o.input));
  CanonicalText t = o.level == 2 ? RenderLevel2(c) : RenderLevel3(Normalize(c));
  out << t.Joined();
  return kExitEquivalent;
}

int Hash(const Options& o, std::ostream& out) {
  out << TlshHash(ReadFile(o.input)).Hex() << "  " << o.input << '\n';
  return kExitEquivalent;
}

int Fetch(const Options& o, std::ostream& out, std::ostream& err) {
  FetchOptions fo;
  fo.cache_root = o.cache;
  RepoClient client(fo);
  RepoSpec repo = RepoSpec::Make(o.repo_id.empty() ? "default" : o.repo_id, o.repo);
  Coordinates c = Coordinates::Parse(o.gav);
  if (!o.classifier.empty()) c.classifier = o.classifier;
  if (!o.strategy.empty()) {
    VersionList versions = client.FetchVersions(repo, c.group, c.artifact);
    c.version =
        SelectVersion(versions, c.version,
                      o.strategy == "first" ? SelectStrategy::kFirst : SelectStrategy::kLast);
  }
  CachedArtifact a = client.FetchArtifact(repo, c);
  if (a.checksum_warning) err << "warning: no .md5 or .sha1 sidecar for " << c.version << '\n';
  if (o.format == "structured") {
    nlohmann::ordered_json j;
    j["version"] = c.version;
    j["path"] = a.path;
    j["sha256"] = a.sha256;
    j["verified_with"] = ChecksumKindName(a.verified_with);
    j["checksum_warning"] = a.checksum_warning;
    j["from_cache"] = a.from_cache;
    WriteJson(out, j);
  } else {
    out << fmt::format("{} {} sha256={} verified={}{}\n", c.version, a.path, a.sha256,
                       ChecksumKindName(a.verified_with), a.from_cache ? " (cached)" : "");
  }
  return kExitEquivalent;
}

int SourceEquivCommand(const Options& o, std::ostream& out) {
  auto is_jar = [](const std::string& p) { return p.ends_with(".jar") || p.ends_with(".zip"); };
  if (is_jar(o.left) && is_jar(o.right)) {
    SourceJarReport r = CompareSourceJars(ReadFile(o.left), ReadFile(o.right));
    if (o.format == "structured") {
      nlohmann::ordered_json j;
      j["equivalent"] = r.equivalent();
      j["missing_in_left"] = r.missing_in_left;
      j["missing_in_right"] = r.missing_in_right;
      j["entries"] = nlohmann::ordered_json::array();
      for (const auto& e : r.entries) {
        j["entries"].push_back({{"path", e.path},
                                {"equivalent", e.verdict.equivalent},
                                {"provenance", e.verdict.provenance},
                                {"lex_fallback", e.verdict.lex_fallback}});
      }
      WriteJson(out, j);
    } else {
      for (const auto& p : r.missing_in_left) out << "missing in left: " << p << '\n';
      for (const auto& p : r.missing_in_right) out << "missing in right: " << p << '\n';
      for (const auto& e : r.entries) {
        if (e.verdict.lex_fallback)
          out << "warning: " << e.path << ": " << e.verdict.warning << '\n';
        if (!e.verdict.equivalent)
          out << "differs: " << e.path << ": " << e.verdict.provenance << '\n';
      }
      out << (r.equivalent() ? "equivalent" : "non-equivalent") << '\n';
    }
    return r.equivalent() ? kExitEquivalent : kExitNonEquivalent;
  }
  SourceVerdict v = SourceEquiv({o.left, ReadFile(o.left)}, {o.right, ReadFile(o.right)});
  if (o.format == "structured") {
    WriteJson(out, {{"equivalent", v.equivalent},
                    {"provenance", v.provenance},
                    {"lex_fallback", v.lex_fallback},
                    {"warning", v.warning}});
  } else {
    if (v.lex_fallback) out << "warning: " << v.warning << " (compared bytes)\n";
    out << (v.equivalent ? "equivalent" : "non-equivalent: " + v.provenance) << '\n';
  }
  return v.equivalent ? kExitEquivalent : kExitNonEquivalent;
}

int GenOracles(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<RawClass> corpus;
  for (const auto& e : fs::recursive_directory_iterator(o.corpus)) {
    if (e.is_regular_file() && e.path().extension() == ".class") {
      corpus.push_back(RawClass::FromFile(e.path().string()));
    }
  }
  std::sort(corpus.begin(), corpus.end(),
            [](const RawClass& a, const RawClass& b) { return a.path < b.path; });
  for (auto& c : corpus) c.path = fs::relative(c.path, o.corpus).generic_string();
  OracleSet set = GenerateOracleSet(corpus, o.count, o.seed, o.jobs);
  std::string manifest = WriteOracleSet(set.pairs, o.out_dir);
  std::size_t eq = std::count_if(set.pairs.begin(), set.pairs.end(),
                                 [](const OraclePair& p) { return p.label == OracleLabel::kEq; });
  for (const auto& d : set.discarded) {
    err << fmt::format("discarded {} {} seed={}: {}\n", d.path, d.mutation, d.seed, d.reason);
  }
  out << fmt::format("{} classes, {} EQ pairs, {} NEQ pairs, {} discarded\nmanifest: {}\n",
                     corpus.size(), eq, set.pairs.size() - eq, set.discarded.size(), manifest);
  return kExitEquivalent;
}

int EvaluateCommand(const Options& o, std::ostream& out) {
  auto rels = SelectedRelations(o);
  std::vector<OraclePair> pairs = ReadManifest(o.manifest);
  if (pairs.empty()) throw UsageError("manifest has no pairs");
  CorrectnessReport r = Evaluate(rels, pairs, o.jobs);
  if (o.format == "structured") {
    WriteJson(out, CorrectnessToJson(r));
  } else {
    out << CorrectnessToText(r);
  }
  return kExitEquivalent;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide JVM class and jar equivalence at four levels", "bineq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bineq 0.1.0");
  Options o;

  auto* cc = app.add_subcommand("compare-classes", "Compare two class files");
  cc->add_option("left", o.left)->required()->check(CLI::ExistingFile);
  cc->add_option("right", o.right)->required()->check(CLI::ExistingFile);
  AddRelationFlags(cc, o);
  AddFormatFlag(cc, o);

  auto* cj = app.add_subcommand("compare-jars", "Compare two jar archives");
  cj->add_option("left", o.left)->required()->check(CLI::ExistingFile);
  cj->add_option("right", o.right)->required()->check(CLI::ExistingFile);
  AddRelationFlags(cj, o);
  AddFormatFlag(cj, o);
  cj->add_option("--jobs", o.jobs, "Worker threads (default: logical CPUs)");
  cj->add_flag("--ignore-synthetic", o.ignore_synthetic, "Ignore missing classes with '$'");
  cj->add_flag("--ignore-multirelease", o.ignore_multirelease,
               "Ignore missing entries under META-INF/versions/");
  cj->add_flag("--ignore-package-info", o.ignore_package_info,
               "Ignore missing package-info.class entries");
  cj->add_option("--exclude", o.excludes, "Ignore missing entries matching a glob");

  auto* rd = app.add_subcommand("render", "Print the Level 2 or Level 3 text of a class");
  rd->add_option("--level", o.level, "2 or 3")->check(CLI::IsMember({2, 3}));
  rd->add_option("class", o.input)->required()->check(CLI::ExistingFile);

  auto* hs = app.add_subcommand("hash", "Print the TLSH digest of a file");
  hs->add_option("file", o.input)->required()->check(CLI::ExistingFile);

  auto* ft = app.add_subcommand("fetch", "Download a jar from a Maven-layout repository");
  ft->add_option("--repo", o.repo, "Repository base URL")->required();
  ft->add_option("--repo-id", o.repo_id, "Cache namespace for the repository");
  ft->add_option("--gav", o.gav, "group:artifact:version")->required();
  ft->add_option("--classifier", o.classifier, "Artifact classifier, e.g. sources");
  ft->add_option("--strategy", o.strategy,
                 "Treat the version as canonical and pick the first or last match")
      ->check(CLI::IsMember({"first", "last"}));
  ft->add_option("--cache", o.cache, "Cache root (default: $BINEQ_CACHE)");
  AddFormatFlag(ft, o);

  auto* se = app.add_subcommand("source-equiv", "Compare two source files or source jars");
  se->add_option("left", o.left)->required()->check(CLI::ExistingFile);
  se->add_option("right", o.right)->required()->check(CLI::ExistingFile);
  AddFormatFlag(se, o);

  auto* go = app.add_subcommand("gen-oracles", "Generate labeled EQ/NEQ class pairs");
  go->add_option("corpus", o.corpus)->required()->check(CLI::ExistingDirectory);
  go->add_option("--seed", o.seed)->required();
  go->add_option("--out", o.out_dir)->required();
  go->add_option("--count", o.count, "EQ and NEQ pairs per class")->check(CLI::PositiveNumber);
  go->add_option("--jobs", o.jobs, "Worker threads (default: logical CPUs)");

  auto* ev = app.add_subcommand("evaluate", "Score relations against an oracle manifest");
  ev->add_option("--manifest", o.manifest)->required()->check(CLI::ExistingFile);
  AddRelationFlags(ev, o);
  AddFormatFlag(ev, o);
  ev->add_option("--jobs", o.jobs, "Worker threads (default: logical CPUs)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  CLI::App* active = &app;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    for (auto* sub : app.get_subcommands()) active = sub;
    out << active->help();
    return kExitEquivalent;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return kExitEquivalent;
  } catch (const CLI::ParseError& e) {
    for (auto* sub : app.get_subcommands()) active = sub;
    err << "error: " << e.what() << "\n\n" << active->help();
    return kExitUsage;
  }

  try {
    if (*cc) return CompareClasses(o, out);
    if (*cj) return CompareJarsCommand(o, out);
    if (*rd) return Render(o, out);
    if (*hs) return Hash(o, out);
    if (*ft) return Fetch(o, out, err);
    if (*se) return SourceEquivCommand(o, out);
    if (*go) return GenOracles(o, out, err);
    if (*ev) return EvaluateCommand(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace bineq::cli
