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

// Experiment runners behind the CLI subcommands.

#include <string>
#include <vector>

#include "collapsesim/cli/config.hpp"

namespace collapsesim::cli {

/// Plot-ready rows. Cells are JSON scalars (number, string, bool or null).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

struct ExperimentOutput {
  Json results;  // full JSON report body
  Table table;   // CSV rows
  Json summary;  // headline numbers for the manifest
};

/// Runs a validated configuration. Output depends only on (config, seed), not
/// on the worker count.
ExperimentOutput run_experiment(const RunConfig& config);

/// One CSV cell: integers verbatim, other numbers with 10 significant digits,
/// strings quoted when they contain a comma or quote, null as empty.
std::string csv_cell(const Json& v);

}  // namespace collapsesim::cli
