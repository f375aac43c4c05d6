// Copyright 2026 The fbandit Authors
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

#ifndef FBANDIT_CLI_COMMANDS_HPP_
#define FBANDIT_CLI_COMMANDS_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/report.hpp"

namespace fbandit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerdictFailed = 2;

// Result of running one subcommand on a validated config.
struct CommandOutcome {
  Report report;
  int exit_code = kExitOk;
  std::string summary;
  bool allow_empty = false;
};

// Subcommand names accepted by RunCommand.
const std::vector<std::string>& CommandNames();

// Runs `command` ("value", "verify-myopic", ...) on `config`.
CommandOutcome Dispatch(const std::string& command,
                        const ExperimentConfig& config);

// Full front end: parses argv, loads --config, applies flag overrides,
// dispatches, writes the report and prints a summary table.
// Returns 0 on success, 2 on a failed verdict, 1 on usage/config errors.
int RunCommand(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

}  // namespace fbandit::cli

#endif  // FBANDIT_CLI_COMMANDS_HPP_
