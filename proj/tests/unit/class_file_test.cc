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

#include "bineq/class_file.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "bineq/bytes.h"

namespace bineq {
namespace {

std::vector<std::filesystem::path> CorpusClasses() {
  std::vector<std::filesystem::path> out;
  for (const auto& e :
       std::filesystem::recursive_directory_iterator(std::string(BINEQ_TEST_DATA) + "/corpus")) {
    if (e.path().extension() == ".class") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(ClassFileTest, CorpusHasEnoughClasses) { EXPECT_GE(CorpusClasses().size(), 200u); }

TEST(ClassFileTest, CorpusRoundTripsByteForByte) {
  for (const auto& path : CorpusClasses()) {
    SCOPED_TRACE(path.string());
    Bytes in = ReadFile(path);
    ClassFile c = ParseClass(in);
    ValidateClass(c);
    EXPECT_EQ(SerializeClass(c), in);
  }
}

TEST(ClassFileTest, ReparseIsStable) {
  for (const auto& path : CorpusClasses()) {
    Bytes in = ReadFile(path);
    ClassFile c = ParseClass(in);
    EXPECT_EQ(ParseClass(SerializeClass(c)), c) << path;
  }
}

TEST(ClassFileTest, RejectsBadMagic) {
  Bytes b = {0xCA, 0xFE, 0xBA, 0xBF, 0, 0, 0, 52};
  try {
    ParseClass(b);
    FAIL();
  } catch (const MalformedClass& e) {
    EXPECT_EQ(e.offset(), 0u);
  }
}

TEST(ClassFileTest, TruncationReportsOffset) {
  Bytes in = ReadFile(CorpusClasses().front());
  for (std::size_t cut : {std::size_t{3}, std::size_t{9}, in.size() / 2, in.size() - 1}) {
    Bytes part(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(cut));
    EXPECT_THROW(ParseClass(part), MalformedClass) << cut;
  }
}

TEST(ClassFileTest, TrailingBytesAreMalformed) {
  Bytes in = ReadFile(CorpusClasses().front());
  in.push_back(0);
  try {
    ParseClass(in);
    FAIL();
  } catch (const MalformedClass& e) {
    EXPECT_EQ(e.offset(), in.size() - 1);
  }
}

TEST(ClassFileTest, EveryTruncationIsRejected) {
  Bytes in = ReadFile(CorpusClasses().front());
  for (std::size_t cut = 0; cut < in.size(); ++cut) {
    Bytes part(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(cut));
    EXPECT_THROW(ParseClass(part), MalformedClass) << cut;
  }
}

TEST(ClassFileTest, SingleByteCorruptionNeverCrashes) {
  Bytes in = ReadFile(CorpusClasses().front());
  for (std::size_t i = 0; i < in.size(); ++i) {
    Bytes b = in;
    b[i] ^= 0x5a;
    try {
      ClassFile c = ParseClass(b);
      (void)SerializeClass(c);
    } catch (const Error&) {
    }
  }
}

}  // namespace
}  // namespace bineq
