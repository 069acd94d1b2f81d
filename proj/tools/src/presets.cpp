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

#include "speckleq_cli/presets.hpp"

namespace speckleq::cli {

const std::vector<std::pair<std::string, Preset>>& preset_table() {
  // tau = 1/300 and phi = pi, written as shortest round-trip decimals.
  static const std::vector<std::pair<std::string, Preset>> table = {
      {"fig3a",
       {Command::speckle,
        "10x10 photon-correlation speckle map, two single photons, tau=1/300",
        {
            {"ports", "100"},
            {"grid", "10x10"},
            {"tau", "0.0033333333333333335"},
            {"input", "fock:1@0,fock:1@1"},
            {"kind", "photon_correlation"},
        }}},
      {"fig3b",
       {Command::speckle,
        "10x10 log10 quadrature-variance-product map, opposite-phase squeezed pair",
        {
            {"ports", "100"},
            {"grid", "10x10"},
            {"tau", "0.0033333333333333335"},
            {"input", "sqz:0.15:0@0,sqz:0.15:3.141592653589793@1"},
            {"kind", "log10_qvp"},
        }}},
      {"fig4",
       {Command::sweep,
        "ensemble curves versus disorder strength s for N=50, analytic model",
        {
            {"modes", "50"},
            {"model", "analytic"},
            {"s_min", "2"},
            {"s_max", "100"},
            {"s_count", "60"},
            {"s_scale", "log"},
            {"input",
             "fock:2 ; fock:1@0,fock:1@1 ; fock:3 ; fock:1@0,fock:1@1,fock:1@2 ; "
             "sqz:0.15:0@0,sqz:0.15:3.141592653589793@1"},
        }}},
  };
  return table;
}

void apply_preset(RunConfig& config, const std::string& name) {
  for (const auto& [preset_name, preset] : preset_table()) {
    if (preset_name != name) continue;
    if (preset.command != config.command) {
      throw ConfigError("preset '" + name + "' belongs to the " +
                        command_name(preset.command) + " command, not " +
                        command_name(config.command));
    }
    for (const auto& [key, value] : preset.entries)
      apply_config_entry(config, key, value, "preset " + name);
    config.preset = name;
    return;
  }
  std::string known;
  for (const auto& [preset_name, preset] : preset_table()) {
    if (!known.empty()) known += ", ";
    known += preset_name;
  }
  throw ConfigError("unknown preset '" + name + "' (available: " + known + ")");
}

}  // namespace speckleq::cli
