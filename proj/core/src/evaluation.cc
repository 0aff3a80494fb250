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

#include "bineq/evaluation.h"

#include <fmt/format.h>

#include <algorithm>
#include <map>

#include "parallel.h"

namespace bineq {

double CellCounts::fraction() const {
  if (total() == 0) return 0.0;
  const std::size_t good = correct + (neq ? error : 0);
  return static_cast<double>(good) / static_cast<double>(total());
}

const CellCounts& CorrectnessReport::Cell(std::string_view subset,
                                          std::string_view relation) const {
  auto s = std::find(subsets.begin(), subsets.end(), subset);
  auto r = std::find(relations.begin(), relations.end(), relation);
  if (s == subsets.end() || r == relations.end()) {
    throw Error(fmt::format("no cell {} / {}", subset, relation));
  }
  return cells[s - subsets.begin()][r - relations.begin()];
}

CorrectnessReport Evaluate(std::span<const Relation> relations, std::span<const OraclePair> oracles,
                           unsigned jobs) {
  std::vector<ClassVerdict> verdicts(oracles.size());
  ParallelFor(oracles.size(), jobs, [&](std::size_t i) {
    verdicts[i] = CompareClassPair(oracles[i].left, oracles[i].right, relations);
  });

  CorrectnessReport report;
  for (const auto& r : relations) report.relations.push_back(r.Name());
  report.error_policy =
      "errors count as non-equivalence: correct for NEQ pairs, incorrect for EQ pairs; "
      "they are tallied separately and never excluded";

  std::map<std::string, std::vector<CellCounts>> by_mutation;
  std::vector<CellCounts> eq(relations.size()), neq(relations.size());
  for (auto& c : neq) c.neq = true;
  for (std::size_t i = 0; i < oracles.size(); ++i) {
    const bool is_neq = oracles[i].label == OracleLabel::kNeq;
    const std::string key =
        fmt::format("{}/{}", LabelName(oracles[i].label),
                    oracles[i].mutation.empty() ? "unspecified" : oracles[i].mutation);
    auto& cells = by_mutation[key];
    if (cells.empty()) {
      cells.resize(relations.size());
      for (auto& c : cells) c.neq = is_neq;
    }
    for (std::size_t r = 0; r < relations.size(); ++r) {
      const RelationOutcome* o = verdicts[i].Find(relations[r].Name());
      auto tally = [&](CellCounts& c) {
        if (o == nullptr || o->outcome == Outcome::kError) {
          ++c.error;
        } else if ((o->outcome == Outcome::kPass) != is_neq) {
          ++c.correct;
        } else {
          ++c.incorrect;
        }
      };
      tally(is_neq ? neq[r] : eq[r]);
      tally(cells[r]);
    }
  }
  report.subsets = {"EQ", "NEQ"};
  report.cells = {eq, neq};
  for (const std::string prefix : {"EQ/", "NEQ/"}) {
    for (auto& [name, cells] : by_mutation) {
      if (!name.starts_with(prefix)) continue;
      report.subsets.push_back(name);
      report.cells.push_back(cells);
    }
  }
  return report;
}

nlohmann::ordered_json CorrectnessToJson(const CorrectnessReport& r) {
  nlohmann::ordered_json j;
  j["version"] = "bineq-correctness/1";
  j["relations"] = r.relations;
  j["error_policy"] = r.error_policy;
  j["subsets"] = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < r.subsets.size(); ++s) {
    nlohmann::ordered_json sj;
    sj["subset"] = r.subsets[s];
    sj["pairs"] = r.cells[s].empty() ? 0 : r.cells[s][0].total();
    for (std::size_t k = 0; k < r.relations.size(); ++k) {
      const CellCounts& c = r.cells[s][k];
      sj["results"][r.relations[k]] = {{"fraction", c.fraction()},
                                       {"correct", c.correct},
                                       {"incorrect", c.incorrect},
                                       {"error", c.error}};
    }
    j["subsets"].push_back(std::move(sj));
  }
  return j;
}

std::string CorrectnessToText(const CorrectnessReport& r) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"subset", "pairs"};
  header.insert(header.end(), r.relations.begin(), r.relations.end());
  rows.push_back(header);
  for (std::size_t s = 0; s < r.subsets.size(); ++s) {
    std::vector<std::string> row = {r.subsets[s],
                                    std::to_string(r.cells[s].empty() ? 0 : r.cells[s][0].total())};
    for (const auto& c : r.cells[s]) {
      row.push_back(
          fmt::format("{:.3f} ({}/{}/{})", c.fraction(), c.correct, c.incorrect, c.error));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) line += "  ";
      line += k == 0 ? fmt::format("{:<{}}", row[k], width[k])
                     : fmt::format("{:>{}}", row[k], width[k]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  out += "cells: fraction (correct/incorrect/error); " + r.error_policy + "\n";
  return out;
}

}  // namespace bineq
