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

#ifndef BINEQ_EVALUATION_H_
#define BINEQ_EVALUATION_H_

#include <cstddef>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

#include "bineq/engine.h"
#include "bineq/testkit.h"

namespace bineq {

// Pairs whose relation outcome was an error are tallied in `error` only.
// Errors count as non-equivalence: correct for NEQ pairs, incorrect for EQ.
struct CellCounts {
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::size_t error = 0;
  bool neq = false;

  std::size_t total() const { return correct + incorrect + error; }
  double fraction() const;
};

struct CorrectnessReport {
  std::vector<std::string> relations;
  // "EQ", "NEQ", then "EQ/<mutation>" and "NEQ/<mutation>" in name order.
  std::vector<std::string> subsets;
  std::vector<std::vector<CellCounts>> cells;  // [subset][relation]
  std::string error_policy;

  const CellCounts& Cell(std::string_view subset, std::string_view relation) const;
};

CorrectnessReport Evaluate(std::span<const Relation> relations, std::span<const OraclePair> oracles,
                           unsigned jobs = 0);

nlohmann::ordered_json CorrectnessToJson(const CorrectnessReport& r);
// Aligned plain-text table, one row per subset, one column per relation.
std::string CorrectnessToText(const CorrectnessReport& r);

}  // namespace bineq

#endif  // BINEQ_EVALUATION_H_
