//
// Copyright 2026 The RobustAnon Authors
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
//

#ifndef ROBUSTANON_CLI_H_
#define ROBUSTANON_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace robustanon {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitSuppressed = 2;
inline constexpr int kExitViolations = 3;
inline constexpr int kExitUsage = 64;

// Runs the command line `args` (args[0] is the program name).
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace robustanon

#endif  // ROBUSTANON_CLI_H_
