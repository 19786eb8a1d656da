// Copyright 2026 The qsprep developers
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

#ifndef QSPREP_CLI_HPP_
#define QSPREP_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace qsprep {

// Parses argv-style arguments (program name excluded) and runs one of the
// synth / bench / inspect subcommands.  All terminal output, errors
// included, goes to `out` so tests can capture it.  Returns the process
// exit code: 0 success, 1 verification failure, 2 usage error, 3 I/O or
// input-format error.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

// Same, writing to stdout.
int run_cli(const std::vector<std::string>& args);

}  // namespace qsprep

#endif  // QSPREP_CLI_HPP_
