/* Copyright 2026 The Palate Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/


#ifndef PALATE_TOOLS_CLI_H_
#define PALATE_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace palate::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDataError = 2,
  kNumericError = 3,
};

// Runs one invocation. `args` excludes the program name. The resolved
// configuration and a human-readable summary go to `out`, diagnostics to
// `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace palate::cli

#endif  // PALATE_TOOLS_CLI_H_
