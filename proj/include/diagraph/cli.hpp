// Copyright 2026 The Diagraph Authors
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

#ifndef DIAGRAPH_CLI_HPP_
#define DIAGRAPH_CLI_HPP_

#include <ostream>

namespace diagraph {

/// Process exit codes of the `diagraph` tool.
enum ExitStatus : int {
  kExitOk = 0,
  kExitFindings = 1,  // validation errors or an analysis that cannot run
  kExitUsage = 2,     // bad flags or malformed input
  kExitIo = 3,        // unreadable input or unwritable output
};

/// Entry point of the `diagraph` tool with injectable streams.
/// Subcommands: validate, agree, features, sample, convert, serve.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace diagraph

#endif  // DIAGRAPH_CLI_HPP_
