// Copyright 2026 The riplab Authors.
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

#ifndef RIPLAB_TOOLS_CLI_COMMANDS_HPP_
#define RIPLAB_TOOLS_CLI_COMMANDS_HPP_

#include <string>
#include <vector>

#include "cli/config.hpp"
#include "riplab/serialize.hpp"

namespace riplab::cli {

// Plot-ready table plus a structured payload for the JSON file.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  Json json = Json::object();
};

// Executes a validated config. Library exceptions propagate untouched.
Report run(const ExperimentConfig& config);

// '#' header lines (subcommand, seed, every resolved key, optional stamp),
// then the column row and the body.
std::string render_csv(const ExperimentConfig& config, const Report& report,
                       const std::string& stamp = "");
std::string render_json(const ExperimentConfig& config, const Report& report,
                        const std::string& stamp = "");

// Temp file in the same directory, then rename.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace riplab::cli

#endif  // RIPLAB_TOOLS_CLI_COMMANDS_HPP_
