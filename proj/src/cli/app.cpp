// Copyright 2026 The collapsesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "collapsesim/cli/app.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "collapsesim/cli/config.hpp"
#include "collapsesim/cli/experiments.hpp"
#include "collapsesim/rng.hpp"

namespace collapsesim::cli {

namespace {

namespace fs = std::filesystem;

const char* kDescriptions[] = {
    "polarizer cascades: analytic and Monte Carlo stage intensities, optional middle-axis sweep",
    "Shannon entropy of the Born distribution before and after one collapse",
    "entangled-pair correlation sweep and CHSH value",
    "Bob's reduced state under each Alice basis: trace distances and outcome statistics",
    "entanglement bit-transmission scheme with a chosen receiver",
    "Mach-Zehnder fringe, open-port statistics and delayed-choice timing comparison",
};

std::string type_name(ParamType t) {
  switch (t) {
    case ParamType::kNumber: return "number";
    case ParamType::kCount: return "integer";
    case ParamType::kBool: return "bool";
    case ParamType::kString: return "string";
    case ParamType::kNumberList: return "number list";
  }
  return "";
}

void print_schema(Experiment e, std::ostream& out) {
  out << "parameters for " << to_string(e) << ":\n";
  for (const auto& spec : parameter_schema(e))
    out << "  " << spec.key << " (" << type_name(spec.type) << ", default " << spec.default_value.dump() << "): "
        << spec.help << "\n";
}

std::string render_csv(const RunConfig& cfg, const Table& table) {
  std::ostringstream os;
  os << "# collapsesim " << COLLAPSESIM_VERSION << " experiment=" << to_string(cfg.experiment) << " seed=" << cfg.seed
     << " rng=" << RngStream::kAlgorithm << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << "\n";
  }
  return os.str();
}

std::string render_json(const RunConfig& cfg, const ExperimentOutput& result) {
  Json j;
  j["tool"] = "collapsesim";
  j["tool_version"] = COLLAPSESIM_VERSION;
  j["experiment"] = to_string(cfg.experiment);
  j["seed"] = cfg.seed;
  j["rng_algorithm"] = RngStream::kAlgorithm;
  j["parameters"] = cfg.parameters;
  j["results"] = result.results;
  return j.dump(2) + "\n";
}

// Write to a sibling temporary and rename, so a failed run leaves no partial
// file behind.
void write_atomically(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << text;
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  fs::rename(tmp, path);
}

int execute(Experiment e, const Overrides& overrides, const std::optional<std::string>& default_out_dir,
            std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = resolve_config(e, overrides, default_out_dir);
  } catch (const ConfigError& ce) {
    err << "collapsesim " << to_string(e) << ": invalid configuration\n";
    for (const auto& p : ce.problems()) err << "  - " << p << "\n";
    return kExitConfig;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    const ExperimentOutput result = run_experiment(cfg);
    const std::string body = cfg.format == Format::kCsv ? render_csv(cfg, result.table) : render_json(cfg, result);
    const auto stop = std::chrono::steady_clock::now();

    Json manifest;
    manifest["tool"] = "collapsesim";
    manifest["tool_version"] = COLLAPSESIM_VERSION;
    manifest["config"] = cfg.to_json();
    manifest["seed"] = cfg.seed;
    manifest["rng_algorithm"] = RngStream::kAlgorithm;
    manifest["wall_time_ms"] = std::chrono::duration<double, std::milli>(stop - start).count();
    manifest["result_file"] = cfg.out.string();
    manifest["summary"] = result.summary;

    const fs::path mpath = manifest_path(cfg.out);
    write_atomically(cfg.out, body);
    write_atomically(mpath, manifest.dump(2) + "\n");
    out << "wrote " << cfg.out.string() << "\n";
    out << "wrote " << mpath.string() << "\n";
    out << "summary " << result.summary.dump() << "\n";
    return kExitOk;
  } catch (const std::exception& ex) {
    err << "collapsesim " << to_string(e) << ": " << ex.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

std::optional<std::string> out_dir_from_environment() {
  if (const char* v = std::getenv("COLLAPSESIM_OUT_DIR"); v && *v) return std::string(v);
  return std::nullopt;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::optional<std::string>& default_out_dir) {
  CLI::App app{"collapsesim: measurement-collapse, entanglement and interferometer simulator"};
  app.name("collapsesim");
  app.set_version_flag("--version", COLLAPSESIM_VERSION);
  app.require_subcommand(1, 1);

  Overrides ov;
  std::string config_path;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out_path;
  std::string format;
  bool show_schema = false;
  auto* o_config = app.add_option("--config", config_path, "JSON config file or a previously written manifest");
  auto* o_seed = app.add_option("--seed", seed, "RNG seed (unsigned 64-bit)");
  auto* o_workers = app.add_option("--workers", workers, "parallel workers; results do not depend on it");
  auto* o_out = app.add_option("--out", out_path, "result file; the manifest goes next to it as <stem>.manifest.json");
  auto* o_format = app.add_option("--format", format, "json | csv");
  app.add_option("-p,--param", ov.params, "parameter override key=value (value parsed as JSON when possible)")
      ->allow_extra_args(false);
  app.add_flag("--schema", show_schema, "print the experiment's parameters and defaults, then exit");

  std::vector<CLI::App*> subs;
  for (Experiment e : all_experiments()) {
    auto* sub = app.add_subcommand(to_string(e), kDescriptions[static_cast<int>(e)]);
    sub->fallthrough();
    subs.push_back(sub);
  }

  std::vector<std::string> argv_store;
  argv_store.push_back("collapsesim");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "collapsesim: " << e.what() << "\n";
    if (std::string(e.what()).find("subcommand") != std::string::npos) {
      err << "subcommands:";
      for (Experiment x : all_experiments()) err << " " << to_string(x);
      err << "\n";
    }
    return kExitConfig;
  }

  Experiment chosen = Experiment::kMalus;
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (subs[i]->parsed()) chosen = all_experiments()[i];

  if (show_schema) {
    print_schema(chosen, out);
    return kExitOk;
  }
  if (o_config->count()) ov.config_path = config_path;
  if (o_seed->count()) ov.seed = seed;
  if (o_workers->count()) ov.workers = workers;
  if (o_out->count()) ov.out = out_path;
  if (o_format->count()) ov.format = format;
  return execute(chosen, ov, default_out_dir, out, err);
}

}  // namespace collapsesim::cli
