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

#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "bineq/class_file.h"
#include "bineq/engine.h"
#include "bineq/testkit.h"
#include "bineq/zip.h"
#include "corpus.h"

namespace bineq {
namespace {

std::pair<JarInput, JarInput> PermutedJars(std::size_t classes) {
  const auto& corpus = bench::Corpus();
  std::vector<ZipEntry> left, right;
  for (std::size_t i = 0; i < classes; ++i) {
    const RawClass& raw = corpus[i % corpus.size()];
    std::string name = "copy" + std::to_string(i / corpus.size()) + "/" + raw.path;
    left.push_back({name, raw.bytes});
    right.push_back({name, SerializeClass(PermutePool(ParseClass(raw.bytes), i + 1))});
  }
  return {JarInput{"left.jar", WriteZip(left)}, JarInput{"right.jar", WriteZip(right)}};
}

void BM_ComparePermutedPair(benchmark::State& state) {
  const RawClass& raw = bench::Corpus()[state.range(0)];
  RawClass right =
      RawClass::FromBytes(raw.path, SerializeClass(PermutePool(ParseClass(raw.bytes), 42)));
  const auto relations = DefaultRelations();
  for (auto s : state) benchmark::DoNotOptimize(CompareClassPair(raw, right, relations));
}
BENCHMARK(BM_ComparePermutedPair)->Arg(0)->Arg(100)->Arg(200);

void BM_CompareJarsChain(benchmark::State& state) {
  auto [left, right] = PermutedJars(static_cast<std::size_t>(state.range(0)));
  const std::vector<Relation> relations = {Bitwise(), Disassembled(), Normalized()};
  for (auto s : state) {
    benchmark::DoNotOptimize(
        CompareJars(left, right, relations, {}, static_cast<unsigned>(state.range(1))));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CompareJarsChain)->Args({1000, 1})->Args({1000, 0})->Unit(benchmark::kMillisecond);

void BM_GenerateOracleSet(benchmark::State& state) {
  const auto& corpus = bench::Corpus();
  for (auto s : state) benchmark::DoNotOptimize(GenerateOracleSet(corpus, 1, 7, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.size()));
}
BENCHMARK(BM_GenerateOracleSet)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace bineq
