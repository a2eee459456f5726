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

#ifndef RIPLAB_TOOLS_CLI_CONFIG_HPP_
#define RIPLAB_TOOLS_CLI_CONFIG_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace riplab::cli {

enum class KeyType { kInt, kReal, kString, kIntList, kRealList, kBool };

struct KeySpec {
  std::string name;
  KeyType type = KeyType::kString;
  bool required = false;
  std::string default_value;  // empty: no default
  std::string help;
  std::vector<std::string> choices;  // kString only; empty means free text
};

struct ExperimentConfig;

struct SubcommandSchema {
  std::string name;
  std::string help;
  std::vector<KeySpec> keys;
  // Cross-key checks run after every key parsed; appends diagnostics.
  std::function<void(const ExperimentConfig&, std::vector<std::string>&)> check;
};

const std::vector<SubcommandSchema>& schemas();
// Throws InvalidParameter for an unknown subcommand.
const SubcommandSchema& schema_for(const std::string& subcommand);

struct ExperimentConfig {
  std::string subcommand;
  std::map<std::string, std::string> params;  // raw text, as given
  std::uint64_t seed = 0;
  std::string output;  // prefix for <output>.csv / <output>.json; empty = stdout
  bool stamp = false;

  bool has(const std::string& key) const;
  // Typed reads fall back to the schema default. Malformed text throws
  // InvalidParameter (validate() reports it first in normal use).
  std::int64_t get_int(const std::string& key) const;
  double get_real(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<std::int64_t> get_int_list(const std::string& key) const;
  std::vector<double> get_real_list(const std::string& key) const;

  // Every schema key with its effective value (given or default), sorted.
  std::map<std::string, std::string> resolved() const;
};

// key=value lines; '#' and ';' start comments; blank lines skipped. A
// "[section]" line is accepted only if it names the subcommand. Errors carry
// the line number.
std::map<std::string, std::string> read_ini(const std::string& path, const std::string& subcommand);

// Schema check without execution. Empty means valid.
std::vector<std::string> validate(const ExperimentConfig& config);

}  // namespace riplab::cli

#endif  // RIPLAB_TOOLS_CLI_CONFIG_HPP_
