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

#pragma once

// Experiment configuration: per-experiment parameter schemas, config files,
// flag overrides and validation.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace collapsesim::cli {

using Json = nlohmann::ordered_json;

enum class Experiment { kMalus, kEntropy, kBell, kNoSignal, kProtocol, kMzi };

const std::vector<Experiment>& all_experiments();
std::string to_string(Experiment e);
std::optional<Experiment> parse_experiment(const std::string& name);

enum class Format { kJson, kCsv };

std::string to_string(Format f);

/// Raised for any invalid or incomplete configuration; carries every problem
/// found so they can be reported together.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

enum class ParamType { kNumber, kCount, kBool, kString, kNumberList };

struct ParamSpec {
  std::string key;
  ParamType type;
  Json default_value;
  std::string help;
  // Extra semantic check on a value already of the right type.
  std::function<std::optional<std::string>(const Json&)> check;
};

const std::vector<ParamSpec>& parameter_schema(Experiment e);

/// Values given on the command line; each one, when present, wins over the
/// config file.
struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::vector<std::string> params;  // key=value, value parsed as JSON when possible
};

struct RunConfig {
  Experiment experiment = Experiment::kMalus;
  std::uint64_t seed = 0;
  int workers = 1;
  std::filesystem::path out;
  Format format = Format::kJson;
  Json parameters;  // every schema key, in schema order

  /// Config echo written into the manifest; loading it back yields an equal
  /// RunConfig.
  Json to_json() const;
};

/// Merges the config file (a config or a previously written manifest), the
/// overrides and the schema defaults, then validates everything. Throws
/// ConfigError listing all problems; nothing is computed or written before
/// this returns. default_out_dir names the directory used when no output path
/// is given.
RunConfig resolve_config(Experiment e, const Overrides& overrides,
                         const std::optional<std::string>& default_out_dir);

/// result path "dir/name.ext" -> "dir/name.manifest.json"
std::filesystem::path manifest_path(const std::filesystem::path& out);

}  // namespace collapsesim::cli
