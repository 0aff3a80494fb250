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

#ifndef BINEQ_TOOLS_CLI_H_
#define BINEQ_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace bineq::cli {

inline constexpr int kExitEquivalent = 0;
inline constexpr int kExitNonEquivalent = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitUsage = 64;

// Runs the command line `args` (args[0] is the program name).
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bineq::cli

#endif  // BINEQ_TOOLS_CLI_H_
