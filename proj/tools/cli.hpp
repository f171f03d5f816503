/*
 * Copyright 2026 The propcal Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PROPCAL_TOOLS_CLI_HPP
#define PROPCAL_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace propcal::cli {

enum ExitCode : int
{
    kOk = 0,
    kUsage = 1,
    kData = 2,
    kDomain = 3,
};

/// Runs one propcal invocation. args excludes the program name. Machine
/// readable output goes to `out` (or --out), diagnostics to `err`, each
/// failure as a single line starting with "propcal: error:".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace propcal::cli

#endif // PROPCAL_TOOLS_CLI_HPP
