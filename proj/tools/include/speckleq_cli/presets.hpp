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

#ifndef SPECKLEQ_CLI_PRESETS_HPP
#define SPECKLEQ_CLI_PRESETS_HPP

#include <string>
#include <utility>
#include <vector>

#include "speckleq_cli/config.hpp"

namespace speckleq::cli {

/// A named bundle of config entries for one command. Entries run through
/// the same machinery as config files, so presets and files compose.
struct Preset {
  Command command;
  std::string summary;
  std::vector<std::pair<std::string, std::string>> entries;
};

const std::vector<std::pair<std::string, Preset>>& preset_table();

/// Applies the named preset; throws ConfigError for unknown names or a
/// preset/command mismatch.
void apply_preset(RunConfig& config, const std::string& name);

}  // namespace speckleq::cli

#endif  // SPECKLEQ_CLI_PRESETS_HPP
