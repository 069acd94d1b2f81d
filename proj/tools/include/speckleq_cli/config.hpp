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

#ifndef SPECKLEQ_CLI_CONFIG_HPP
#define SPECKLEQ_CLI_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "speckleq/correlators.hpp"
#include "speckleq/ensemble.hpp"
#include "speckleq/states.hpp"

namespace speckleq::cli {

/// Any configuration problem: bad token, bad key, bad value, missing
/// requirement. Messages carry the source context (file:line, preset name,
/// or flag) so the user can find the offending input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { speckle, sweep, mc, verify };

std::string command_name(Command command);

/// Fully resolved run parameters. Populated in precedence order
/// defaults < preset < config file < command-line flags.
struct RunConfig {
  Command command = Command::verify;

  std::uint64_t seed = 42;
  std::string out_dir = ".";
  int workers = 1;
  std::string preset;

  // speckle + mc
  int ports = 0;
  double tau = 0.0;  // 0 means unset
  std::string input_spec;

  // speckle
  int grid_rows = 0;
  int grid_cols = 0;
  std::vector<GridKind> kinds;
  int reference = -1;  // -1 resolves to the grid center

  // sweep
  int modes = 0;  // N
  std::string model;  // "analytic" or a CSV path
  double s_min = 0.0;
  double s_max = 0.0;
  int s_count = 0;
  bool s_log = false;
  std::vector<std::string> sweep_inputs;  // token groups

  // mc + verify
  std::int64_t realizations = 0;
  McStatistic statistic = McStatistic::c2;
  double inject_moment_bias = 0.0;  // verify negative-control hook
};

/// Parses one state token: "fock:n", "sqz:r:phi", "coh:re:im",
/// "thermal:nbar", "vac".
ModeState parse_mode_state(const std::string& token);

/// Parses "token[@port]" entries joined by commas into a ProductInput.
/// Bare tokens fill ports left to right from 0; @port pins an entry.
/// total_ports <= 0 sizes the input to the highest used port + 1.
ProductInput parse_input_spec(const std::string& spec, int total_ports);

/// Applies one key/value pair to the config. `context` prefixes error
/// messages (e.g. "config.ini:7" or "preset fig3a").
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value,
                        const std::string& context);

/// Reads a "key = value" file ('#' comments, blank lines ignored) and
/// applies every entry. Errors carry path:line.
void apply_config_file(RunConfig& config, const std::string& path);

/// Fills derived defaults and checks every requirement of config.command.
/// Throws ConfigError listing all problems.
void finalize_config(RunConfig& config);

/// The s grid implied by a finalized sweep config.
std::vector<double> sweep_s_values(const RunConfig& config);

}  // namespace speckleq::cli

#endif  // SPECKLEQ_CLI_CONFIG_HPP
