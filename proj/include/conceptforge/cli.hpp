// Copyright 2026 The ConceptForge Authors.
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

#ifndef CONCEPTFORGE_CLI_HPP_
#define CONCEPTFORGE_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace conceptforge {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode {
  kExitOk = 0,
  kExitValidation = 1,
  kExitRuntime = 2,
  kExitUsage = 64,
};

// Entry point of the `conceptforge` tool. `args` excludes the program name.
// Primary output goes to `out` unless --out names a file; diagnostics and,
// without --manifest or --out, the run manifest go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace conceptforge

#endif  // CONCEPTFORGE_CLI_HPP_
