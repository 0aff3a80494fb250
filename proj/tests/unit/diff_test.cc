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

#include "bineq/diff.h"

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

namespace bineq {
namespace {

std::size_t LcsLength(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = a.size(); i-- > 0;) {
    for (std::size_t j = b.size(); j-- > 0;) {
      t[i][j] = a[i] == b[j] ? t[i + 1][j + 1] + 1 : std::max(t[i + 1][j], t[i][j + 1]);
    }
  }
  return t[0][0];
}

TEST(DiffTest, EqualInputsGiveEmptyDiff) {
  std::vector<std::string> a = {"x", "y"};
  EXPECT_EQ(UnifiedDiff(a, a, "a", "b"), "");
}

TEST(DiffTest, EditScriptIsMinimalAndReconstructsBothSides) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    std::vector<std::string> a(rng() % 30), b(rng() % 30);
    for (auto& s : a) s = std::string(1, static_cast<char>('a' + rng() % 4));
    for (auto& s : b) s = std::string(1, static_cast<char>('a' + rng() % 4));
    auto edits = DiffLines(a, b);
    std::vector<std::string> left, right;
    std::size_t keeps = 0;
    for (const auto& e : edits) {
      if (e.kind != EditKind::kInsert) left.push_back(a[e.left]);
      if (e.kind != EditKind::kDelete) right.push_back(b[e.right]);
      if (e.kind == EditKind::kKeep) {
        ++keeps;
        ASSERT_EQ(a[e.left], b[e.right]);
      }
    }
    ASSERT_EQ(left, a);
    ASSERT_EQ(right, b);
    ASSERT_EQ(keeps, LcsLength(a, b));
  }
}

TEST(DiffTest, UnifiedFormatWithThreeContextLines) {
  std::vector<std::string> a, b;
  for (int i = 1; i <= 20; ++i) a.push_back("l" + std::to_string(i));
  b = a;
  b[5] = "changed";
  b.push_back("tail");
  EXPECT_EQ(UnifiedDiff(a, b, "a/x", "b/x"),
            "--- a/x\n+++ b/x\n"
            "@@ -3,7 +3,7 @@\n l3\n l4\n l5\n-l6\n+changed\n l7\n l8\n l9\n"
            "@@ -18,3 +18,4 @@\n l18\n l19\n l20\n+tail\n");
}

TEST(DiffTest, NearbyChangesShareAHunk) {
  std::vector<std::string> a = {"1", "2", "3", "4", "5", "6", "7", "8"};
  std::vector<std::string> b = {"1", "X", "3", "4", "5", "6", "Y", "8"};
  EXPECT_EQ(UnifiedDiff(a, b, "a", "b"),
            "--- a\n+++ b\n@@ -1,8 +1,8 @@\n 1\n-2\n+X\n 3\n 4\n 5\n 6\n-7\n+Y\n 8\n");
}

TEST(DiffTest, EmptySides) {
  EXPECT_EQ(UnifiedDiff({}, {"a"}, "l", "r"), "--- l\n+++ r\n@@ -0,0 +1 @@\n+a\n");
  EXPECT_EQ(UnifiedDiff({"a"}, {}, "l", "r"), "--- l\n+++ r\n@@ -1 +0,0 @@\n-a\n");
}

}  // namespace
}  // namespace bineq
