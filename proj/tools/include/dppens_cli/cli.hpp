// Copyright 2026 The dppens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Entry point of the dppens command-line tool, kept as a library so tests
// can drive it in-process.

#ifndef DPPENS_CLI_CLI_HPP
#define DPPENS_CLI_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dppens::cli {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitVerification = 3,
  kExitNumerical = 4,
};

/// Runs the tool with `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`. Returns one of ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dppens::cli

#endif  // DPPENS_CLI_CLI_HPP
