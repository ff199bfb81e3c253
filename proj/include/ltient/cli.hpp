// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ltient::cli {

enum ExitCode : int {
    kOk = 0,
    kInvariantViolation = 1,
    kBadConfig = 2,
    kBadInput = 3,
    kCorruptStream = 4,
};

/// Environment variable naming the default output path for table output.
inline constexpr const char *kOutputEnv = "LTIENT_OUTPUT";

/**
 * Runs the command line `ltient <subcommand> ...`. args excludes the
 * program name. Tables go to `out` (or the output file), diagnostics and
 * summaries to `err`. Returns one of ExitCode.
 */
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace ltient::cli
