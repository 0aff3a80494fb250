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

#ifndef BINEQ_DIFF_H_
#define BINEQ_DIFF_H_

#include <string>
#include <string_view>
#include <vector>

namespace bineq {

enum class EditKind { kKeep, kDelete, kInsert };

struct Edit {
  EditKind kind;
  std::size_t left;   // line index in the left input (kKeep, kDelete)
  std::size_t right;  // line index in the right input (kKeep, kInsert)
};

// Shortest edit script between two line sequences (Myers, linear space).
std::vector<Edit> DiffLines(const std::vector<std::string>& left,
                            const std::vector<std::string>& right);

// GNU-style unified diff. Empty when the inputs are equal.
std::string UnifiedDiff(const std::vector<std::string>& left, const std::vector<std::string>& right,
                        std::string_view left_name, std::string_view right_name, int context = 3);

}  // namespace bineq

#endif  // BINEQ_DIFF_H_
