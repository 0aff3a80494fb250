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

#include "corpus.h"

#include <algorithm>
#include <filesystem>

namespace bineq::bench {

const std::vector<RawClass>& Corpus() {
  static const std::vector<RawClass> corpus = [] {
    namespace fs = std::filesystem;
    std::vector<RawClass> out;
    const fs::path root = BINEQ_BENCH_CORPUS;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (!e.is_regular_file() || e.path().extension() != ".class") continue;
      RawClass raw = RawClass::FromFile(e.path().string());
      raw.path = fs::relative(e.path(), root).generic_string();
      out.push_back(std::move(raw));
    }
    std::sort(out.begin(), out.end(),
              [](const RawClass& a, const RawClass& b) { return a.path < b.path; });
    return out;
  }();
  return corpus;
}

}  // namespace bineq::bench
