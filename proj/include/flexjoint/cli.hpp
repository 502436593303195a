// Copyright 2026 The flexjoint Authors
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

#ifndef FLEXJOINT_CLI_HPP_
#define FLEXJOINT_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "flexjoint/validation.hpp"

namespace flexjoint {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailed = 1,
  kExitUsage = 2,
  kExitRuntimeFault = 3,
};

// Empty csv_override keeps [output] csv_path; with neither, the CSV goes to out.
int cmd_simulate(const std::string& config_path, const std::vector<std::string>& overrides,
                 const std::string& csv_override, std::ostream& out, std::ostream& err);

int cmd_compare(const std::string& config_path, const std::vector<std::string>& overrides, bool serial,
                std::ostream& out, std::ostream& err);

// Runs the checks whose ids are listed, or all of them.
int cmd_validate(const ValidationOptions& options, const std::vector<std::string>& only, std::ostream& out,
                 std::ostream& err);

int cmd_params(const std::string& set_name, std::ostream& out, std::ostream& err);

// Full command line, argv[0] included.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flexjoint

#endif  // FLEXJOINT_CLI_HPP_
