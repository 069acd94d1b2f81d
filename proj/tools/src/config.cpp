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

#include "speckleq_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace speckleq::cli {
namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void fail(const std::string& context, const std::string& message) {
  throw ConfigError(context.empty() ? message : context + ": " + message);
}

long long parse_integer(const std::string& text, const std::string& context,
                        const std::string& what) {
  const std::string value = trim(text);
  long long parsed = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    fail(context, "expected an integer for " + what + ", got '" + value + "'");
  return parsed;
}

std::uint64_t parse_u64(const std::string& text, const std::string& context,
                        const std::string& what) {
  const std::string value = trim(text);
  std::uint64_t parsed = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    fail(context, "expected an unsigned integer for " + what + ", got '" + value + "'");
  return parsed;
}

double parse_real(const std::string& text, const std::string& context, const std::string& what) {
  const std::string value = trim(text);
  double parsed = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(parsed))
    fail(context, "expected a finite number for " + what + ", got '" + value + "'");
  return parsed;
}

GridKind parse_grid_kind(const std::string& text, const std::string& context) {
  const std::string value = trim(text);
  if (value == "photon_correlation") return GridKind::photon_correlation;
  if (value == "log10_qvp") return GridKind::log10_qvp;
  fail(context, "unknown map kind '" + value + "' (use photon_correlation or log10_qvp)");
}

McStatistic parse_statistic(const std::string& text, const std::string& context) {
  const std::string value = trim(text);
  if (value == "c2") return McStatistic::c2;
  if (value == "qvp") return McStatistic::qvp;
  fail(context, "unknown statistic '" + value + "' (use c2 or qvp)");
}

}  // namespace

std::string command_name(Command command) {
  switch (command) {
    case Command::speckle: return "speckle";
    case Command::sweep: return "sweep";
    case Command::mc: return "mc";
    case Command::verify: return "verify";
  }
  return "unknown";
}

ModeState parse_mode_state(const std::string& token) {
  const std::string context = "state token '" + token + "'";
  const auto parts = split(trim(token), ':');
  const std::string& head = parts.front();
  if (head == "vac") {
    if (parts.size() != 1) fail(context, "vac takes no arguments");
    return ModeState::vacuum();
  }
  if (head == "fock") {
    if (parts.size() != 2) fail(context, "expected fock:n");
    const long long n = parse_integer(parts[1], context, "photon number");
    if (n < 0 || n > 1'000'000) fail(context, "photon number out of range");
    return ModeState::fock(static_cast<int>(n));
  }
  if (head == "sqz") {
    if (parts.size() != 3) fail(context, "expected sqz:r:phi");
    const double r = parse_real(parts[1], context, "squeezing strength");
    const double phi = parse_real(parts[2], context, "squeezing phase");
    if (r < 0.0) fail(context, "squeezing strength must be >= 0");
    return ModeState::squeezed_vacuum(r, phi);
  }
  if (head == "coh") {
    if (parts.size() != 3) fail(context, "expected coh:re:im");
    const double re = parse_real(parts[1], context, "amplitude real part");
    const double im = parse_real(parts[2], context, "amplitude imaginary part");
    return ModeState::coherent({re, im});
  }
  if (head == "thermal") {
    if (parts.size() != 2) fail(context, "expected thermal:nbar");
    const double nbar = parse_real(parts[1], context, "mean occupation");
    if (nbar < 0.0) fail(context, "mean occupation must be >= 0");
    return ModeState::thermal(nbar);
  }
  fail(context, "unknown state kind '" + head + "'");
}

ProductInput parse_input_spec(const std::string& spec, int total_ports) {
  const std::string context = "input spec '" + spec + "'";
  if (trim(spec).empty()) fail(context, "no state tokens given");

  struct Entry {
    ModeState state = ModeState::vacuum();
    int port = 0;
  };
  std::vector<Entry> entries;
  int next_bare_port = 0;
  for (const std::string& raw : split(spec, ',')) {
    const std::string item = trim(raw);
    if (item.empty()) fail(context, "empty entry in state list");
    const auto at = item.rfind('@');
    Entry entry;
    if (at == std::string::npos) {
      entry.state = parse_mode_state(item);
      entry.port = next_bare_port++;
    } else {
      entry.state = parse_mode_state(item.substr(0, at));
      const long long port = parse_integer(item.substr(at + 1), context, "port index");
      if (port < 0) fail(context, "port index must be >= 0");
      entry.port = static_cast<int>(port);
    }
    entries.push_back(entry);
  }

  int max_port = 0;
  std::set<int> used;
  for (const Entry& entry : entries) {
    if (!used.insert(entry.port).second)
      fail(context, "port " + std::to_string(entry.port) + " assigned twice");
    max_port = std::max(max_port, entry.port);
  }
  if (total_ports <= 0) total_ports = max_port + 1;
  if (max_port >= total_ports)
    fail(context, "port " + std::to_string(max_port) + " outside the " +
                      std::to_string(total_ports) + "-port input");

  ProductInput input(total_ports);
  for (const Entry& entry : entries) input.set(entry.port, entry.state);
  return input;
}

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value,
                        const std::string& context) {
  const Command cmd = config.command;
  const bool for_speckle = cmd == Command::speckle;
  const bool for_sweep = cmd == Command::sweep;
  const bool for_mc = cmd == Command::mc;
  const bool for_verify = cmd == Command::verify;

  if (key == "seed") {
    config.seed = parse_u64(value, context, "seed");
    return;
  }
  if (key == "out") {
    config.out_dir = trim(value);
    if (config.out_dir.empty()) fail(context, "out must name a directory");
    return;
  }
  if (key == "workers") {
    const long long workers = parse_integer(value, context, "workers");
    if (workers < 1 || workers > 4096) fail(context, "workers must be in [1, 4096]");
    config.workers = static_cast<int>(workers);
    return;
  }

  if (key == "ports" && (for_speckle || for_mc)) {
    const long long ports = parse_integer(value, context, "ports");
    if (ports < 2 || ports > 1'000'000) fail(context, "ports must be in [2, 1000000]");
    config.ports = static_cast<int>(ports);
    return;
  }
  if (key == "tau" && (for_speckle || for_mc)) {
    const double tau = parse_real(value, context, "tau");
    if (tau <= 0.0) fail(context, "tau must be > 0");
    config.tau = tau;
    return;
  }
  if (key == "input" && (for_speckle || for_mc)) {
    config.input_spec = trim(value);
    parse_input_spec(config.input_spec, 0);  // validate tokens now, with file context
    return;
  }
  if (key == "input" && for_sweep) {
    config.sweep_inputs.clear();
    for (const std::string& group : split(value, ';')) {
      const std::string g = trim(group);
      if (g.empty()) fail(context, "empty input group in sweep input list");
      parse_input_spec(g, 0);
      config.sweep_inputs.push_back(g);
    }
    return;
  }

  if (key == "grid" && for_speckle) {
    const auto dims = split(trim(value), 'x');
    if (dims.size() != 2) fail(context, "expected grid = ROWSxCOLS");
    const long long rows = parse_integer(dims[0], context, "grid rows");
    const long long cols = parse_integer(dims[1], context, "grid cols");
    if (rows < 1 || cols < 1 || rows * cols > 1'000'000)
      fail(context, "grid dimensions out of range");
    config.grid_rows = static_cast<int>(rows);
    config.grid_cols = static_cast<int>(cols);
    return;
  }
  if (key == "kind" && for_speckle) {
    config.kinds.clear();
    for (const std::string& part : split(value, ',')) {
      const GridKind kind = parse_grid_kind(part, context);
      const bool seen = std::find(config.kinds.begin(), config.kinds.end(), kind) !=
                        config.kinds.end();
      if (seen) fail(context, "map kind listed twice");
      config.kinds.push_back(kind);
    }
    return;
  }
  if (key == "reference" && for_speckle) {
    const long long reference = parse_integer(value, context, "reference mode");
    if (reference < 0) fail(context, "reference mode must be >= 0");
    config.reference = static_cast<int>(reference);
    return;
  }

  if (key == "modes" && for_sweep) {
    const long long modes = parse_integer(value, context, "modes");
    if (modes < 1 || modes > 1'000'000) fail(context, "modes must be in [1, 1000000]");
    config.modes = static_cast<int>(modes);
    return;
  }
  if (key == "model" && for_sweep) {
    config.model = trim(value);
    if (config.model.empty()) fail(context, "model must be 'analytic' or a CSV path");
    return;
  }
  if (key == "s_min" && for_sweep) {
    config.s_min = parse_real(value, context, "s_min");
    return;
  }
  if (key == "s_max" && for_sweep) {
    config.s_max = parse_real(value, context, "s_max");
    return;
  }
  if (key == "s_count" && for_sweep) {
    const long long count = parse_integer(value, context, "s_count");
    if (count < 1 || count > 1'000'000) fail(context, "s_count must be in [1, 1000000]");
    config.s_count = static_cast<int>(count);
    return;
  }
  if (key == "s_scale" && for_sweep) {
    const std::string scale = trim(value);
    if (scale == "linear") {
      config.s_log = false;
    } else if (scale == "log") {
      config.s_log = true;
    } else {
      fail(context, "s_scale must be linear or log");
    }
    return;
  }

  if (key == "statistic" && for_mc) {
    config.statistic = parse_statistic(value, context);
    return;
  }
  if (key == "realizations" && (for_mc || for_verify)) {
    const long long n = parse_integer(value, context, "realizations");
    if (n < 2) fail(context, "realizations must be >= 2");
    config.realizations = n;
    return;
  }

  fail(context, "unknown key '" + key + "' for the " + command_name(cmd) + " command");
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream stream(path);
  if (!stream) throw ConfigError("cannot open config file '" + path + "'");

  std::set<std::string> seen;
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const std::string context = path + ":" + std::to_string(line_number);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(context, "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) fail(context, "missing key before '='");
    if (!seen.insert(key).second) fail(context, "key '" + key + "' set twice in this file");
    apply_config_entry(config, key, value, context);
  }
}

void finalize_config(RunConfig& config) {
  std::vector<std::string> problems;
  const auto require = [&problems](bool ok, const std::string& message) {
    if (!ok) problems.push_back(message);
  };

  switch (config.command) {
    case Command::speckle: {
      require(config.ports > 0, "ports is required");
      require(config.tau > 0.0, "tau is required");
      require(!config.input_spec.empty(), "input is required");
      if (config.grid_rows == 0 && config.grid_cols == 0 && config.ports > 0) {
        // Default to one row of all output modes.
        config.grid_rows = 1;
        config.grid_cols = config.ports;
      }
      require(config.grid_rows >= 1 && config.grid_cols >= 1, "grid is required");
      if (config.ports > 0 && config.grid_rows >= 1 &&
          static_cast<long long>(config.grid_rows) * config.grid_cols != config.ports) {
        problems.push_back("grid " + std::to_string(config.grid_rows) + "x" +
                           std::to_string(config.grid_cols) + " does not cover " +
                           std::to_string(config.ports) + " output modes");
      }
      if (config.kinds.empty()) config.kinds.push_back(GridKind::photon_correlation);
      if (config.reference < 0 && config.grid_rows >= 1)
        config.reference = (config.grid_rows / 2) * config.grid_cols + config.grid_cols / 2;
      require(config.reference < config.ports || config.ports == 0,
              "reference mode outside the output grid");
      if (!config.input_spec.empty() && config.ports > 0) {
        const ProductInput probe = parse_input_spec(config.input_spec, 0);
        require(probe.total_ports() <= config.ports,
                "input uses ports beyond the configured port count");
      }
      break;
    }
    case Command::sweep: {
      require(config.modes >= 1, "modes is required");
      require(!config.model.empty(), "model is required (analytic or a CSV path)");
      require(config.s_count >= 1, "s_count is required");
      require(std::isfinite(config.s_min) && config.s_min > 0.0, "s_min must be > 0");
      require(config.s_max >= config.s_min || config.s_count == 1,
              "s_max must be >= s_min");
      require(!config.sweep_inputs.empty(), "input is required");
      break;
    }
    case Command::mc: {
      require(config.ports > 0, "ports is required");
      require(config.tau > 0.0, "tau is required");
      require(!config.input_spec.empty(), "input is required");
      require(config.realizations >= 2, "realizations is required (>= 2)");
      if (!config.input_spec.empty() && config.ports > 0) {
        const ProductInput probe = parse_input_spec(config.input_spec, 0);
        require(probe.total_ports() <= config.ports,
                "input uses ports beyond the configured port count");
      }
      break;
    }
    case Command::verify: {
      if (config.realizations == 0) config.realizations = 4000;
      break;
    }
  }

  if (!problems.empty()) {
    std::string message = command_name(config.command) + " configuration invalid: ";
    for (std::size_t i = 0; i < problems.size(); ++i) {
      if (i > 0) message += "; ";
      message += problems[i];
    }
    throw ConfigError(message);
  }
}

std::vector<double> sweep_s_values(const RunConfig& config) {
  std::vector<double> values(static_cast<std::size_t>(config.s_count));
  if (config.s_count == 1) {
    values[0] = config.s_min;
    return values;
  }
  for (int i = 0; i < config.s_count; ++i) {
    const double frac = static_cast<double>(i) / (config.s_count - 1);
    values[static_cast<std::size_t>(i)] =
        config.s_log ? config.s_min * std::pow(config.s_max / config.s_min, frac)
                     : config.s_min + frac * (config.s_max - config.s_min);
  }
  values.back() = config.s_max;
  return values;
}

}  // namespace speckleq::cli
