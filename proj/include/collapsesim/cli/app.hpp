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

// Command-line front end: argument parsing, config resolution, execution and
// report writing.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace collapsesim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

/// args excludes the program name. default_out_dir plays the role of the
/// COLLAPSESIM_OUT_DIR environment variable. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::optional<std::string>& default_out_dir = std::nullopt);

/// Reads COLLAPSESIM_OUT_DIR, if set.
std::optional<std::string> out_dir_from_environment();

}  // namespace collapsesim::cli
