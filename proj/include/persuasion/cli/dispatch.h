// Copyright 2026 The Persuasion Harness Authors.
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

#ifndef PERSUASION_CLI_DISPATCH_H_
#define PERSUASION_CLI_DISPATCH_H_

#include <ostream>
#include <string>
#include <vector>

namespace persuasion::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeFailure = 1;
inline constexpr int kExitUsageError = 2;
inline constexpr int kExitConfigError = 3;

// Runs one `persuade` subcommand. `args` excludes the program name. Results
// that are not written to a file go to `out`; diagnostics go to `err`.
int Dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace persuasion::cli

#endif  // PERSUASION_CLI_DISPATCH_H_
