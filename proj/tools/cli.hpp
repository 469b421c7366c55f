// Copyright 2026 The PSC Authors. All Rights Reserved.
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

#ifndef PSC_TOOLS_CLI_HPP_
#define PSC_TOOLS_CLI_HPP_

namespace psc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Parses argv, runs one subcommand and returns the process exit code.
// Diagnostics go to stderr as a single line.
int dispatch(int argc, char** argv);

}  // namespace psc::cli

#endif  // PSC_TOOLS_CLI_HPP_
