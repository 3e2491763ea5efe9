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

#include "collapsesim/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "collapsesim/entangle.hpp"
#include "collapsesim/optics.hpp"
#include "collapsesim/protocol.hpp"

namespace collapsesim::cli {

namespace {

using Check = std::function<std::optional<std::string>(const Json&)>;

constexpr double kMaxCount = 1e10;
constexpr std::size_t kMaxListLength = 100000;

Json degree_grid(double start, double step, int count) {
  Json out = Json::array();
  for (int i = 0; i < count; ++i) out.push_back(start + step * i);
  return out;
}

Check one_of(std::vector<std::string> allowed) {
  return [allowed](const Json& v) -> std::optional<std::string> {
    for (const auto& a : allowed)
      if (v.get<std::string>() == a) return std::nullopt;
    std::string msg = "must be one of:";
    for (const auto& a : allowed) msg += " " + a;
    return msg;
  };
}

template <typename Parse>
Check parses_with(Parse parse) {
  return [parse](const Json& v) -> std::optional<std::string> {
    try {
      parse(v.get<std::string>());
      return std::nullopt;
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
  };
}

Check list_within(double lo, double hi) {
  return [lo, hi](const Json& v) -> std::optional<std::string> {
    for (const auto& x : v)
      if (x.get<double>() < lo || x.get<double>() > hi) {
        std::ostringstream os;
        os << "entries must lie in [" << lo << ", " << hi << "]";
        return os.str();
      }
    return std::nullopt;
  };
}

Check within(double lo, double hi) {
  return [lo, hi](const Json& v) -> std::optional<std::string> {
    if (v.get<double>() < lo || v.get<double>() > hi) {
      std::ostringstream os;
      os << "must lie in [" << lo << ", " << hi << "]";
      return os.str();
    }
    return std::nullopt;
  };
}

Check list_size(std::size_t n) {
  return [n](const Json& v) -> std::optional<std::string> {
    if (v.size() != n) return "must have exactly " + std::to_string(n) + " entries";
    return std::nullopt;
  };
}

Check at_least(double lo) {
  return [lo](const Json& v) -> std::optional<std::string> {
    if (v.get<double>() < lo) {
      std::ostringstream os;
      os << "must be at least " << lo;
      return os.str();
    }
    return std::nullopt;
  };
}

std::vector<ParamSpec> make_schema(Experiment e) {
  const Check parse_state = parses_with([](const std::string& s) { entangle::parse_pair_kind(s); });
  switch (e) {
    case Experiment::kMalus:
      return {
          {"axes_deg", ParamType::kNumberList, Json::array({90, 45, 0}), "polarizer axes in order, degrees", {}},
          {"mode", ParamType::kString, "both", "analytic | mc | both", one_of({"analytic", "mc", "both"})},
          {"n", ParamType::kCount, 1000000, "Monte Carlo source photons", {}},
          {"source", ParamType::kString, "natural", "natural | linear:<deg>",
           parses_with([](const std::string& s) { optics::Source::parse(s); })},
          {"sweep", ParamType::kBool, false, "sweep the middle axis between the first and last axes", {}},
          {"sweep_from_deg", ParamType::kNumber, 1, "first swept angle", {}},
          {"sweep_to_deg", ParamType::kNumber, 89, "last swept angle", {}},
          {"sweep_step_deg", ParamType::kNumber, 1, "sweep step", [](const Json& v) -> std::optional<std::string> {
             if (v.get<double>() <= 0) return "must be positive";
             return std::nullopt;
           }},
      };
    case Experiment::kEntropy:
      return {
          {"alpha_sq", ParamType::kNumberList, Json::array({0, 0.25, 0.5, 0.75, 1}),
           "|alpha|^2 of the state alpha|0> + beta|1>", list_within(0.0, 1.0)},
          {"phase_deg", ParamType::kNumber, 0, "relative phase of beta, degrees", {}},
          {"basis_deg", ParamType::kNumber, 0, "measurement basis angle", {}},
      };
    case Experiment::kBell:
      return {
          {"state", ParamType::kString, "singlet", "singlet | psi-plus", parse_state},
          {"alice_deg", ParamType::kNumber, 0, "Alice's basis for the correlation sweep", {}},
          {"deltas_deg", ParamType::kNumberList, degree_grid(0, 11.25, 9), "Bob's basis offsets from Alice's", {}},
          {"n", ParamType::kCount, 100000, "pairs per sweep point", {}},
          {"chsh_deg", ParamType::kNumberList, Json::array({0, 45, 22.5, 67.5}), "a, a', b, b'", list_size(4)},
          {"chsh_n", ParamType::kCount, 1000000, "pairs per CHSH setting", {}},
      };
    case Experiment::kNoSignal:
      return {
          {"state", ParamType::kString, "singlet", "singlet | psi-plus", parse_state},
          {"alice_bases_deg", ParamType::kNumberList, degree_grid(0, 5.625, 32), "Alice's measurement bases", {}},
          {"bob_basis_deg", ParamType::kNumber, 0, "Bob's measurement basis", {}},
          {"n", ParamType::kCount, 100000, "pairs per Alice basis", {}},
      };
    case Experiment::kProtocol:
      return {
          {"n_bits", ParamType::kCount, 100000, "message length", {}},
          {"strategy", ParamType::kString, "fixed-basis-ml:0", protocol::ReceiverStrategy::valid_forms(),
           parses_with([](const std::string& s) { protocol::ReceiverStrategy::parse(s); })},
          {"rule_one_deg", ParamType::kNumber, 0, "Alice's basis for bit 1", {}},
          {"rule_zero_deg", ParamType::kNumber, 45, "Alice's basis for bit 0", {}},
          {"shuffles", ParamType::kCount, 1000, "permutation-null shuffles", at_least(1000)},
      };
    case Experiment::kMzi:
      return {
          {"phases_deg", ParamType::kNumberList, degree_grid(0, 22.5, 16), "fringe phases", {}},
          {"n", ParamType::kCount, 100000, "photons per phase and configuration", {}},
          {"p_present", ParamType::kNumber, 0.5, "delayed-choice probability of inserting the second splitter",
           within(0.0, 1.0)},
          {"timing_phase_deg", ParamType::kNumber, 60, "phase of the choice-timing comparison", {}},
          {"timing_n", ParamType::kCount, 1000000, "photons per timing run", {}},
      };
  }
  return {};
}

std::optional<std::string> check_type(const ParamSpec& spec, const Json& v) {
  auto finite_number = [](const Json& x) { return x.is_number() && std::isfinite(x.get<double>()); };
  switch (spec.type) {
    case ParamType::kNumber:
      if (!finite_number(v)) return "must be a finite number";
      return std::nullopt;
    case ParamType::kCount: {
      if (!v.is_number()) return "must be a positive integer";
      const double d = v.get<double>();
      if (!(d >= 1 && d <= kMaxCount && std::floor(d) == d)) return "must be an integer in [1, 1e10]";
      return std::nullopt;
    }
    case ParamType::kBool:
      if (!v.is_boolean()) return "must be true or false";
      return std::nullopt;
    case ParamType::kString:
      if (!v.is_string()) return "must be a string";
      return std::nullopt;
    case ParamType::kNumberList:
      if (!v.is_array() || v.empty()) return "must be a non-empty list of numbers";
      if (v.size() > kMaxListLength) return "has too many entries";
      for (const auto& x : v)
        if (!finite_number(x)) return "must be a non-empty list of finite numbers";
      return std::nullopt;
  }
  return std::nullopt;
}

// Counts are stored as unsigned integers so the echo is stable whether the
// user wrote 1000000 or 1e6.
Json normalize(const ParamSpec& spec, const Json& v) {
  if (spec.type == ParamType::kCount) return static_cast<std::uint64_t>(v.get<double>());
  return v;
}

void cross_checks(Experiment e, const Json& p, std::vector<std::string>& problems) {
  if (e == Experiment::kMalus && p["sweep"].get<bool>()) {
    if (p["axes_deg"].size() < 2) problems.push_back("parameters.sweep: needs at least two axes_deg (the outer polarizers)");
    const double from = p["sweep_from_deg"].get<double>();
    const double to = p["sweep_to_deg"].get<double>();
    const double step = p["sweep_step_deg"].get<double>();
    if (from > to) problems.push_back("parameters.sweep_from_deg: must not exceed sweep_to_deg");
    else if (step > 0 && (to - from) / step > static_cast<double>(kMaxListLength))
      problems.push_back("parameters.sweep_step_deg: sweep has too many rows");
  }
}

std::string known_keys(const std::vector<ParamSpec>& schema) {
  std::string s;
  for (const auto& spec : schema) s += (s.empty() ? "" : ", ") + spec.key;
  return s;
}

Json load_file(const std::string& path, std::vector<std::string>& problems) {
  std::ifstream in(path);
  if (!in) {
    problems.push_back("config: cannot read " + path);
    return Json::object();
  }
  try {
    Json j = Json::parse(in);
    if (!j.is_object()) {
      problems.push_back("config: top level must be an object");
      return Json::object();
    }
    return j;
  } catch (const Json::parse_error& e) {
    problems.push_back(std::string("config: ") + e.what());
    return Json::object();
  }
}

const std::vector<std::string> kConfigKeys = {"experiment", "seed", "workers", "output", "parameters"};
const std::vector<std::string> kManifestKeys = {"tool",           "tool_version", "config",  "seed",
                                                "rng_algorithm", "wall_time_ms", "result_file", "summary"};

bool contains(const std::vector<std::string>& keys, const std::string& k) {
  return std::find(keys.begin(), keys.end(), k) != keys.end();
}

std::optional<std::uint64_t> json_u64(const Json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  return std::nullopt;
}

}  // namespace

const std::vector<Experiment>& all_experiments() {
  static const std::vector<Experiment> all = {Experiment::kMalus,    Experiment::kEntropy,  Experiment::kBell,
                                              Experiment::kNoSignal, Experiment::kProtocol, Experiment::kMzi};
  return all;
}

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::kMalus: return "malus";
    case Experiment::kEntropy: return "entropy";
    case Experiment::kBell: return "bell";
    case Experiment::kNoSignal: return "nosignal";
    case Experiment::kProtocol: return "protocol";
    case Experiment::kMzi: return "mzi";
  }
  return "";
}

std::optional<Experiment> parse_experiment(const std::string& name) {
  for (Experiment e : all_experiments())
    if (to_string(e) == name) return e;
  return std::nullopt;
}

std::string to_string(Format f) { return f == Format::kCsv ? "csv" : "json"; }

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(problems.empty() ? "invalid configuration" : problems.front()),
      problems_(std::move(problems)) {}

const std::vector<ParamSpec>& parameter_schema(Experiment e) {
  static const std::vector<std::vector<ParamSpec>> schemas = [] {
    std::vector<std::vector<ParamSpec>> s;
    for (Experiment x : all_experiments()) s.push_back(make_schema(x));
    return s;
  }();
  return schemas.at(static_cast<std::size_t>(e));
}

Json RunConfig::to_json() const {
  Json j;
  j["experiment"] = to_string(experiment);
  j["seed"] = seed;
  j["workers"] = workers;
  j["output"] = {{"path", out.string()}, {"format", to_string(format)}};
  j["parameters"] = parameters;
  return j;
}

std::filesystem::path manifest_path(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  p.replace_extension(".manifest.json");
  return p;
}

RunConfig resolve_config(Experiment e, const Overrides& overrides, const std::optional<std::string>& default_out_dir) {
  std::vector<std::string> problems;
  Json file = Json::object();
  if (overrides.config_path) {
    file = load_file(*overrides.config_path, problems);
    if (file.contains("config") && file.contains("tool_version")) {
      for (const auto& [k, v] : file.items())
        if (!contains(kManifestKeys, k)) problems.push_back("manifest: unknown key '" + k + "'");
      file = file["config"].is_object() ? file["config"] : Json::object();
    }
    for (const auto& [k, v] : file.items())
      if (!contains(kConfigKeys, k)) problems.push_back("config: unknown key '" + k + "'");
    if (!file.contains("experiment")) {
      problems.push_back("config: missing required key 'experiment'");
    } else if (!file["experiment"].is_string() || file["experiment"].get<std::string>() != to_string(e)) {
      problems.push_back("config: experiment " + file["experiment"].dump() + " does not match subcommand '" +
                         to_string(e) + "'");
    }
  }

  RunConfig cfg;
  cfg.experiment = e;

  if (overrides.seed) {
    cfg.seed = *overrides.seed;
  } else if (file.contains("seed")) {
    if (auto s = json_u64(file["seed"])) cfg.seed = *s;
    else problems.push_back("seed: must be an unsigned 64-bit integer");
  } else {
    problems.push_back("seed: missing (give --seed or 'seed' in the config)");
  }

  if (overrides.workers) {
    cfg.workers = *overrides.workers;
  } else if (file.contains("workers")) {
    if (auto w = json_u64(file["workers"]); w && *w <= 4096) cfg.workers = static_cast<int>(*w);
    else problems.push_back("workers: must be an integer in [1, 4096]");
  }
  if (cfg.workers < 1 || cfg.workers > 4096) problems.push_back("workers: must be an integer in [1, 4096]");

  Json output = Json::object();
  if (file.contains("output")) {
    if (file["output"].is_object()) {
      output = file["output"];
      for (const auto& [k, v] : output.items())
        if (k != "path" && k != "format") problems.push_back("output: unknown key '" + k + "'");
    } else {
      problems.push_back("output: must be an object with 'path' and/or 'format'");
    }
  }

  std::optional<std::string> format = overrides.format;
  if (!format && output.contains("format")) {
    if (output["format"].is_string()) format = output["format"].get<std::string>();
    else problems.push_back("output.format: must be \"json\" or \"csv\"");
  }
  if (format) {
    if (*format == "json") cfg.format = Format::kJson;
    else if (*format == "csv") cfg.format = Format::kCsv;
    else problems.push_back("format: must be json or csv, got '" + *format + "'");
  }

  if (overrides.out) {
    cfg.out = *overrides.out;
  } else if (output.contains("path")) {
    if (output["path"].is_string() && !output["path"].get<std::string>().empty()) cfg.out = output["path"].get<std::string>();
    else problems.push_back("output.path: must be a non-empty string");
  } else if (default_out_dir && !default_out_dir->empty()) {
    cfg.out = std::filesystem::path(*default_out_dir) / (to_string(e) + "." + to_string(cfg.format));
  } else {
    problems.push_back("output: missing path (give --out, output.path in the config, or set COLLAPSESIM_OUT_DIR)");
  }

  const auto& schema = parameter_schema(e);
  Json given = Json::object();
  if (file.contains("parameters")) {
    if (file["parameters"].is_object()) given = file["parameters"];
    else problems.push_back("parameters: must be an object");
  }
  for (const std::string& kv : overrides.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      problems.push_back("--param '" + kv + "': expected key=value");
      continue;
    }
    const std::string key = kv.substr(0, eq);
    const std::string text = kv.substr(eq + 1);
    try {
      given[key] = Json::parse(text);
    } catch (const Json::parse_error&) {
      given[key] = text;
    }
  }
  for (const auto& [k, v] : given.items()) {
    const bool known = std::any_of(schema.begin(), schema.end(), [&](const ParamSpec& s) { return s.key == k; });
    if (!known)
      problems.push_back("parameters: unknown key '" + k + "' for " + to_string(e) + " (known: " + known_keys(schema) + ")");
  }

  bool params_ok = true;
  for (const auto& spec : schema) {
    const Json& v = given.contains(spec.key) ? given[spec.key] : spec.default_value;
    auto problem = check_type(spec, v);
    if (!problem && spec.check) problem = spec.check(v);
    if (problem) {
      problems.push_back("parameters." + spec.key + ": " + *problem);
      params_ok = false;
      continue;
    }
    cfg.parameters[spec.key] = normalize(spec, v);
  }
  if (params_ok) cross_checks(e, cfg.parameters, problems);

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

}  // namespace collapsesim::cli
