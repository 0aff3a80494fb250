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

#include <gtest/gtest.h>

#include <filesystem>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "bineq/bytes.h"
#include "bineq/tlsh.h"
#include "bineq/zip.h"
#include "support/fixtures.h"

namespace bineq {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out, err;
};

Result RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "bineq");
  std::ostringstream out, err;
  int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bineq_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  std::string Put(const std::string& name, const Bytes& data) {
    std::string p = (dir_ / name).string();
    WriteFile(p, data);
    return p;
  }
  fs::path dir_;
};

TEST_F(CliTest, ConstantChangeExitsOneAndNamesConstantValue) {
  auto a = Put("a.class", testing::ConstantClass(123));
  auto b = Put("b.class", testing::ConstantClass(124));
  auto r = RunCli({"compare-classes", a, b});
  EXPECT_EQ(r.code, cli::kExitNonEquivalent);
  EXPECT_NE(r.out.find("ConstantValue int 123"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("ConstantValue int 124"), std::string::npos) << r.out;
}

TEST_F(CliTest, IdenticalJarsExitZeroAtLevelOne) {
  auto corpus = testing::LoadCorpus();
  Bytes jar = WriteZip({{corpus[0].path, corpus[0].bytes}, {corpus[1].path, corpus[1].bytes}});
  auto a = Put("a.jar", jar), b = Put("b.jar", jar);
  auto text = RunCli({"compare-jars", a, b});
  EXPECT_EQ(text.code, cli::kExitEquivalent);
  EXPECT_NE(text.out.find("aggregate: level 1"), std::string::npos) << text.out;
  auto structured = RunCli({"compare-jars", a, b, "--format", "structured"});
  EXPECT_EQ(structured.code, cli::kExitEquivalent);
  auto j = nlohmann::json::parse(structured.out);
  EXPECT_EQ(j["aggregate"]["level"], 1);
}

TEST_F(CliTest, UsageErrorsExit64) {
  auto a = Put("a.class", testing::MinimalClass());
  EXPECT_EQ(RunCli({"compare-classes", a, a, "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(RunCli({}).code, cli::kExitUsage);
  EXPECT_EQ(RunCli({"compare-classes", a, a, "--relations", "fuzzy"}).code, cli::kExitUsage);
  auto r = RunCli({"frobnicate"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE((r.out + r.err).find("Usage"), std::string::npos);
}

TEST_F(CliTest, UnreadableInputExitsTwo) {
  auto a = Put("a.jar", Bytes{1, 2, 3});
  EXPECT_EQ(RunCli({"compare-jars", a, a}).code, cli::kExitError);
}

TEST_F(CliTest, RenderAndHash) {
  auto [l, r] = testing::GetClassPair();
  auto a = Put("a.class", l), b = Put("b.class", r);
  auto l2a = RunCli({"render", "--level", "2", a}), l2b = RunCli({"render", "--level", "2", b});
  EXPECT_EQ(l2a.code, 0);
  EXPECT_NE(l2a.out, l2b.out);
  EXPECT_EQ(RunCli({"render", "--level", "3", a}).out, RunCli({"render", "--level", "3", b}).out);
  auto h = RunCli({"hash", a});
  EXPECT_EQ(h.code, 0);
  EXPECT_TRUE(h.out.starts_with(TlshHash(l).Hex())) << h.out;
}

TEST_F(CliTest, OraclesThenEvaluate) {
  auto corpus = testing::LoadCorpus();
  fs::create_directories(dir_ / "corpus");
  for (int i = 0; i < 4; ++i) Put("corpus/c" + std::to_string(i) + ".class", corpus[i * 20].bytes);
  std::string out = (dir_ / "oracles").string();
  auto gen = RunCli({"gen-oracles", "--seed", "9", "--out", out, (dir_ / "corpus").string()});
  ASSERT_EQ(gen.code, 0) << gen.err;
  auto eval = RunCli({"evaluate", "--manifest", out + "/manifest.jsonl"});
  EXPECT_EQ(eval.code, 0) << eval.err;
  EXPECT_NE(eval.out.find("disassembled"), std::string::npos);
}

}  // namespace
}  // namespace bineq
