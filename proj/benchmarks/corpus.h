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

#ifndef BINEQ_BENCHMARKS_CORPUS_H_
#define BINEQ_BENCHMARKS_CORPUS_H_

#include <vector>

#include "bineq/engine.h"

namespace bineq::bench {

// Class files of the vendored test corpus, path-sorted; loaded once.
const std::vector<RawClass>& Corpus();

}  // namespace bineq::bench

#endif  // BINEQ_BENCHMARKS_CORPUS_H_
