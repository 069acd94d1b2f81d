// Copyright 2026 The speckleq Authors
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

#ifndef SPECKLEQ_CLI_COMMANDS_HPP
#define SPECKLEQ_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "speckleq_cli/config.hpp"

namespace speckleq::cli {

// Process exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitVerifyFailed = 4;

/// Samples one disordered matrix and writes CSV + JSON maps for every
/// requested kind into config.out_dir.
int run_speckle(const RunConfig& config, std::ostream& out);

/// Writes closed-form ensemble curves over the s grid, one CSV per input
/// group, plus a sweep.json manifest with experiment markers.
int run_sweep(const RunConfig& config, std::ostream& out);

/// Monte Carlo average against fresh disorder; writes mc.json.
int run_mc(const RunConfig& config, std::ostream& out);

/// Runs the internal cross-check suite and prints one line per check.
int run_verify(const RunConfig& config, std::ostream& out);

/// Full CLI entry point: parses argv, resolves config in precedence order
/// defaults < preset < config file < flags, then dispatches. Returns the
/// process exit code (0 ok, 2 config, 3 degenerate run, 4 verify failure).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace speckleq::cli

#endif  // SPECKLEQ_CLI_COMMANDS_HPP
