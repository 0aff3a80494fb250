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

#include <cstdint>

#include "benchmark/benchmark.h"
#include "bineq/canonical.h"
#include "bineq/class_file.h"
#include "bineq/normalize.h"
#include "bineq/tlsh.h"
#include "corpus.h"

namespace bineq {
namespace {

std::int64_t CorpusBytes() {
  std::int64_t n = 0;
  for (const auto& raw : bench::Corpus()) n += static_cast<std::int64_t>(raw.bytes.size());
  return n;
}

void BM_ParseCorpus(benchmark::State& state) {
  for (auto s : state) {
    for (const auto& raw : bench::Corpus()) benchmark::DoNotOptimize(ParseClass(raw.bytes));
  }
  state.SetBytesProcessed(state.iterations() * CorpusBytes());
}
BENCHMARK(BM_ParseCorpus);

void BM_SerializeCorpus(benchmark::State& state) {
  std::vector<ClassFile> models;
  for (const auto& raw : bench::Corpus()) models.push_back(ParseClass(raw.bytes));
  for (auto s : state) {
    for (const auto& c : models) benchmark::DoNotOptimize(SerializeClass(c));
  }
  state.SetBytesProcessed(state.iterations() * CorpusBytes());
}
BENCHMARK(BM_SerializeCorpus);

void BM_RenderLevel2(benchmark::State& state) {
  std::vector<ClassFile> models;
  for (const auto& raw : bench::Corpus()) models.push_back(ParseClass(raw.bytes));
  for (auto s : state) {
    for (const auto& c : models) benchmark::DoNotOptimize(RenderLevel2(c));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(models.size()));
}
BENCHMARK(BM_RenderLevel2);

void BM_NormalizeAndRenderLevel3(benchmark::State& state) {
  std::vector<ClassFile> models;
  for (const auto& raw : bench::Corpus()) models.push_back(ParseClass(raw.bytes));
  for (auto s : state) {
    for (const auto& c : models) benchmark::DoNotOptimize(RenderLevel3(Normalize(c)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(models.size()));
}
BENCHMARK(BM_NormalizeAndRenderLevel3);

void BM_TlshHash(benchmark::State& state) {
  for (auto s : state) {
    for (const auto& raw : bench::Corpus()) benchmark::DoNotOptimize(TlshHash(raw.bytes));
  }
  state.SetBytesProcessed(state.iterations() * CorpusBytes());
}
BENCHMARK(BM_TlshHash);

void BM_TlshDistance(benchmark::State& state) {
  const auto& corpus = bench::Corpus();
  TlshDigest a = TlshHash(corpus[0].bytes), b = TlshHash(corpus[1].bytes);
  for (auto s : state) {
    benchmark::DoNotOptimize(a);
    benchmark::DoNotOptimize(TlshDistance(a, b));
  }
}
BENCHMARK(BM_TlshDistance);

}  // namespace
}  // namespace bineq
