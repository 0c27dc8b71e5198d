// Copyright 2026 The OptiGraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver.
//
// Exit codes: 0 optimal or converged, 1 numerical or unbounded failure,
// 2 iteration or node limit, 3 infeasible, 4 usage or structure error.

#ifndef OPTIGRAPH_CLI_HPP_
#define OPTIGRAPH_CLI_HPP_

#include <iosfwd>

namespace optigraph {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitLimit = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitUsage = 4;

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);
int cli_main(int argc, const char* const* argv);

}  // namespace optigraph

#endif  // OPTIGRAPH_CLI_HPP_
