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

#include "speckleq_cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "speckleq/errors.hpp"
#include "speckleq/format.hpp"
#include "speckleq/network.hpp"
#include "speckleq/verify.hpp"
#include "speckleq_cli/presets.hpp"

namespace speckleq::cli {
namespace {

using nlohmann::json;

struct SweepMarker {
  std::string name;
  double s;
  std::string note;
};

std::vector<SweepMarker> sweep_markers() {
  return {
      {"peeters", 2.0, "disordered waveguide, s = 2"},
      {"smolka", 20.0 / 0.9, "disordered waveguide, s = 20/0.9"},
      {"phcw", 5.0, "photonic-crystal waveguide, s = 5 (N = 5 there)"},
  };
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  file << text;
  file.flush();
  if (!file) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::filesystem::path ensure_out_dir(const RunConfig& config) {
  std::filesystem::path dir(config.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + config.out_dir +
                            "': " + ec.message());
  return dir;
}

/// The physics parameters that determine the outputs. Deliberately leaves
/// out the output directory and the worker count, which must not change a
/// single byte of what gets written.
json resolved_config(const RunConfig& config) {
  json j;
  j["command"] = command_name(config.command);
  j["seed"] = config.seed;
  if (!config.preset.empty()) j["preset"] = config.preset;
  switch (config.command) {
    case Command::speckle: {
      j["ports"] = config.ports;
      j["tau"] = config.tau;
      j["input"] = config.input_spec;
      j["grid"] = std::to_string(config.grid_rows) + "x" + std::to_string(config.grid_cols);
      json kinds = json::array();
      for (const GridKind kind : config.kinds) kinds.push_back(grid_kind_name(kind));
      j["kind"] = kinds;
      j["reference"] = config.reference;
      break;
    }
    case Command::sweep: {
      j["modes"] = config.modes;
      j["model"] = config.model;
      j["s_min"] = config.s_min;
      j["s_max"] = config.s_max;
      j["s_count"] = config.s_count;
      j["s_scale"] = config.s_log ? "log" : "linear";
      j["input"] = config.sweep_inputs;
      break;
    }
    case Command::mc: {
      j["ports"] = config.ports;
      j["tau"] = config.tau;
      j["input"] = config.input_spec;
      j["statistic"] = mc_statistic_name(config.statistic);
      j["realizations"] = config.realizations;
      break;
    }
    case Command::verify: {
      j["realizations"] = config.realizations;
      if (config.inject_moment_bias != 0.0) j["inject_moment_bias"] = config.inject_moment_bias;
      break;
    }
  }
  return j;
}

json grid_values_json(const ObservableGrid& grid) {
  json rows = json::array();
  for (int ky = 0; ky < grid.rows(); ++ky) {
    json row = json::array();
    for (int kx = 0; kx < grid.cols(); ++kx) row.push_back(grid.values(ky, kx));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

int run_speckle(const RunConfig& config, std::ostream& out) {
  const auto dir = ensure_out_dir(config);
  const ProductInput input = parse_input_spec(config.input_spec, config.ports);
  const TransmissionMatrix t =
      sample_diffusive(config.ports, config.ports, config.tau, config.seed);

  for (const GridKind kind : config.kinds) {
    const ObservableGrid grid = speckle_map(t, input, kind, config.reference, config.grid_rows,
                                            config.grid_cols, config.workers);
    const std::string stem = "speckle_" + grid_kind_name(kind);

    std::ostringstream csv;
    grid.write_csv(csv);
    write_text_file(dir / (stem + ".csv"), csv.str());

    json j;
    j["command"] = "speckle";
    j["kind"] = grid_kind_name(kind);
    j["sampler"] = t.sampler;
    j["seed"] = config.seed;
    j["tau"] = config.tau;
    j["input"] = grid.input_token;
    j["reference_mode"] = grid.reference_mode;
    j["grid"] = {{"rows", grid.rows()}, {"cols", grid.cols()}};
    j["values"] = grid_values_json(grid);
    j["cells_below_zero"] = grid.cells_below(0.0);
    j["config"] = resolved_config(config);
    write_text_file(dir / (stem + ".json"), j.dump(2) + "\n");

    out << "wrote " << (dir / (stem + ".csv")).string() << " and .json ("
        << grid.cells_below(0.0) << " cells below zero)\n";
  }
  return kExitOk;
}

int run_sweep(const RunConfig& config, std::ostream& out) {
  const auto dir = ensure_out_dir(config);
  const CorrelationModel model = [&config] {
    try {
      return config.model == "analytic" ? CorrelationModel::analytic(config.modes)
                                        : CorrelationModel::load_csv_file(config.model);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("model: ") + e.what());
    }
  }();
  const std::vector<double> s_values = sweep_s_values(config);

  // Locate the grid row nearest each experiment marker once; the same
  // annotations go into every per-input CSV and the manifest.
  struct PlacedMarker {
    SweepMarker marker;
    int nearest_index;
  };
  std::vector<PlacedMarker> placed;
  for (const SweepMarker& marker : sweep_markers()) {
    int best = 0;
    for (std::size_t i = 1; i < s_values.size(); ++i) {
      if (std::abs(s_values[i] - marker.s) < std::abs(s_values[static_cast<std::size_t>(best)] -
                                                      marker.s))
        best = static_cast<int>(i);
    }
    placed.push_back({marker, best});
  }

  json manifest;
  manifest["command"] = "sweep";
  manifest["model"] = config.model;
  manifest["modes"] = config.modes;
  manifest["s"] = {{"min", config.s_min},
                   {"max", config.s_max},
                   {"count", config.s_count},
                   {"scale", config.s_log ? "log" : "linear"}};
  json inputs_json = json::array();
  json markers_json = json::array();
  for (const PlacedMarker& pm : placed) {
    markers_json.push_back({{"name", pm.marker.name},
                            {"s", pm.marker.s},
                            {"nearest_s", s_values[static_cast<std::size_t>(pm.nearest_index)]},
                            {"nearest_row", pm.nearest_index},
                            {"note", pm.marker.note}});
  }

  for (std::size_t k = 0; k < config.sweep_inputs.size(); ++k) {
    const ProductInput input = parse_input_spec(config.sweep_inputs[k], 0);
    const std::vector<EnsembleCurvePoint> points = sweep(input, model, config.modes, s_values);

    std::vector<std::string> comments;
    comments.push_back("input: " + input.token());
    comments.push_back("model: " + config.model);
    comments.push_back("modes: " + std::to_string(config.modes));
    for (const PlacedMarker& pm : placed) {
      comments.push_back("marker " + pm.marker.name + ": s=" + format_double(pm.marker.s) +
                         " nearest_row=" + std::to_string(pm.nearest_index) + " (s=" +
                         format_double(s_values[static_cast<std::size_t>(pm.nearest_index)]) +
                         ")");
    }

    const std::string file_name = "sweep_input" + std::to_string(k) + ".csv";
    std::ostringstream csv;
    write_sweep_csv(csv, points, comments);
    write_text_file(dir / file_name, csv.str());
    inputs_json.push_back(
        {{"index", k}, {"input", input.token()}, {"file", file_name}});
    out << "wrote " << (dir / file_name).string() << " (" << points.size() << " rows)\n";
  }

  manifest["inputs"] = inputs_json;
  manifest["markers"] = markers_json;
  manifest["config"] = resolved_config(config);
  write_text_file(dir / "sweep.json", manifest.dump(2) + "\n");
  out << "wrote " << (dir / "sweep.json").string() << "\n";
  return kExitOk;
}

int run_mc(const RunConfig& config, std::ostream& out) {
  const auto dir = ensure_out_dir(config);
  const ProductInput input = parse_input_spec(config.input_spec, config.ports);
  DiffusiveSamplerSpec sampler;
  sampler.inputs = config.ports;
  sampler.tau = config.tau;
  const McResult result = monte_carlo_average(input, sampler, config.statistic,
                                              config.realizations, config.seed, config.workers);

  json j;
  j["command"] = "mc";
  j["statistic"] = mc_statistic_name(config.statistic);
  j["mean"] = result.mean;
  j["stderr"] = result.std_error;
  j["n"] = result.realizations;
  j["degenerate"] = result.degenerate;
  j["seed"] = result.seed;
  j["closed_form"] = result.closed_form;
  j["z_score"] = result.z_score;
  j["config"] = resolved_config(config);
  write_text_file(dir / "mc.json", j.dump(2) + "\n");

  out << "mc " << mc_statistic_name(config.statistic) << ": mean=" << format_double(result.mean)
      << " stderr=" << format_double(result.std_error) << " n=" << result.realizations
      << " degenerate=" << result.degenerate << " closed_form="
      << format_double(result.closed_form) << " z=" << format_double(result.z_score) << "\n";
  out << "wrote " << (dir / "mc.json").string() << "\n";
  return kExitOk;
}

int run_verify(const RunConfig& config, std::ostream& out) {
  VerifyOptions options;
  options.mc_realizations = config.realizations;
  options.seed = config.seed;
  options.moment_bias = config.inject_moment_bias;

  const std::vector<VerifyCheck> checks = run_verification(options);
  std::size_t passed = 0;
  for (const VerifyCheck& check : checks) {
    out << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << ": " << check.detail << "\n";
    if (check.passed) ++passed;
  }
  out << passed << "/" << checks.size() << " checks passed\n";
  return all_passed(checks) ? kExitOk : kExitVerifyFailed;
}

namespace {

struct FlagValues {
  std::string config_path;
  std::string preset;
  std::string model;
  std::string out_dir;
  std::uint64_t seed = 0;
  long long realizations = 0;
  int workers = 0;
  double inject_bias = 0.0;

  CLI::Option* config_opt = nullptr;
  CLI::Option* preset_opt = nullptr;
  CLI::Option* model_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* realizations_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
  CLI::Option* inject_opt = nullptr;
};

void add_common_flags(CLI::App* sub, FlagValues& flags) {
  flags.config_opt = sub->add_option("--config", flags.config_path,
                                     "config file with 'key = value' lines");
  flags.preset_opt = sub->add_option("--preset", flags.preset, "named parameter bundle");
  flags.out_opt = sub->add_option("--out", flags.out_dir, "output directory (default '.')");
  flags.seed_opt = sub->add_option("--seed", flags.seed, "master RNG seed");
  flags.workers_opt = sub->add_option("--workers", flags.workers,
                                      "worker threads; never changes the output bytes");
}

RunConfig build_config(Command command, const FlagValues& flags) {
  RunConfig config;
  config.command = command;
  if (flags.preset_opt && flags.preset_opt->count() > 0) apply_preset(config, flags.preset);
  if (flags.config_opt && flags.config_opt->count() > 0)
    apply_config_file(config, flags.config_path);
  if (flags.seed_opt && flags.seed_opt->count() > 0) config.seed = flags.seed;
  if (flags.out_opt && flags.out_opt->count() > 0) {
    if (flags.out_dir.empty()) throw ConfigError("--out: must name a directory");
    config.out_dir = flags.out_dir;
  }
  if (flags.workers_opt && flags.workers_opt->count() > 0) {
    if (flags.workers < 1 || flags.workers > 4096)
      throw ConfigError("--workers: must be in [1, 4096]");
    config.workers = flags.workers;
  }
  if (flags.realizations_opt && flags.realizations_opt->count() > 0) {
    if (flags.realizations < 2) throw ConfigError("--realizations: must be >= 2");
    config.realizations = flags.realizations;
  }
  if (flags.model_opt && flags.model_opt->count() > 0) {
    if (flags.model.empty()) throw ConfigError("--model: must be 'analytic' or a CSV path");
    config.model = flags.model;
  }
  if (flags.inject_opt && flags.inject_opt->count() > 0) {
    if (!std::isfinite(flags.inject_bias))
      throw ConfigError("--inject-moment-bias: must be finite");
    config.inject_moment_bias = flags.inject_bias;
  }
  finalize_config(config);
  return config;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"quantum correlations of multimode light behind disordered media"};
  app.require_subcommand(1);

  FlagValues speckle_flags;
  CLI::App* speckle_cmd =
      app.add_subcommand("speckle", "sample one disordered matrix and map an observable");
  add_common_flags(speckle_cmd, speckle_flags);

  FlagValues sweep_flags;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "closed-form ensemble curves over a disorder-strength grid");
  add_common_flags(sweep_cmd, sweep_flags);
  sweep_flags.model_opt = sweep_cmd->add_option("--model", sweep_flags.model,
                                                "'analytic' or a CSV file with s,C1,C2,g rows");

  FlagValues mc_flags;
  CLI::App* mc_cmd =
      app.add_subcommand("mc", "Monte Carlo average of a statistic over fresh disorder");
  add_common_flags(mc_cmd, mc_flags);
  mc_flags.realizations_opt =
      mc_cmd->add_option("--realizations", mc_flags.realizations, "number of disorder draws");

  FlagValues verify_flags;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the internal cross-check suite");
  add_common_flags(verify_cmd, verify_flags);
  verify_flags.realizations_opt = verify_cmd->add_option(
      "--realizations", verify_flags.realizations, "Monte Carlo draws for the MC cross-check");
  verify_flags.inject_opt = verify_cmd->add_option(
      "--inject-moment-bias", verify_flags.inject_bias,
      "negative control: bias closed-form moments so the oracle check must fail");

  // CLI11 wants mutable argv; copy.
  std::vector<std::string> argv_copy(args);
  try {
    std::vector<const char*> argv;
    argv.reserve(argv_copy.size());
    for (const std::string& arg : argv_copy) argv.push_back(arg.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (app.got_subcommand(speckle_cmd))
      return run_speckle(build_config(Command::speckle, speckle_flags), out);
    if (app.got_subcommand(sweep_cmd))
      return run_sweep(build_config(Command::sweep, sweep_flags), out);
    if (app.got_subcommand(mc_cmd)) return run_mc(build_config(Command::mc, mc_flags), out);
    if (app.got_subcommand(verify_cmd))
      return run_verify(build_config(Command::verify, verify_flags), out);
    err << "config error: no command given\n";
    return kExitConfig;
  } catch (const DegenerateEnsembleError& e) {
    err << "degenerate run: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace speckleq::cli
