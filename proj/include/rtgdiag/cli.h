// Copyright 2026 The rtgdiag Authors
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

#ifndef RTGDIAG_CLI_H_
#define RTGDIAG_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace rtgdiag {

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

// Runs the command line `args` (without the program name). Reports go to
// `out`, diagnostics to `err`. RTGDIAG_CAPS is read from the environment.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rtgdiag

#endif  // RTGDIAG_CLI_H_
