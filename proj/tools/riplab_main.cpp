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

// riplab: batch runner for the riplab experiments.

#include <chrono>
#include <ctime>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "riplab/errors.hpp"
#include "riplab/numerics.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitNumerical = 4;

std::string utc_stamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int execute(const riplab::cli::ExperimentConfig& config, bool dry_run) {
  const auto diags = riplab::cli::validate(config);
  if (!diags.empty()) {
    for (const auto& d : diags) std::cerr << "riplab " << config.subcommand << ": " << d << "\n";
    return kExitConfig;
  }
  if (dry_run) {
    std::cout << "config ok\n";
    return 0;
  }
  const riplab::cli::Report report = riplab::cli::run(config);
  const std::string stamp = config.stamp ? utc_stamp() : "";
  const std::string csv = riplab::cli::render_csv(config, report, stamp);
  if (config.output.empty()) {
    std::cout << csv;
  } else {
    riplab::cli::write_atomic(config.output + ".csv", csv);
    riplab::cli::write_atomic(config.output + ".json", riplab::cli::render_json(config, report, stamp));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"riplab: restricted-isometry experiments for structured measurements"};
  app.require_subcommand(1);

  std::string config_file;
  std::uint64_t seed = 0;
  std::string out;
  bool stamp = false;
  bool dry_run = false;
  unsigned threads = 0;
  app.add_option("--config", config_file, "key=value file; flags override it");
  app.add_option("--seed", seed, "64-bit seed");
  app.add_option("--out", out, "write PREFIX.csv and PREFIX.json instead of CSV on stdout");
  app.add_flag("--stamp", stamp, "add a UTC timestamp to the headers");
  app.add_flag("--validate", dry_run, "check the config and exit");
  app.add_option("--threads", threads, "worker threads (0 = hardware)");

  // One string slot per schema key; typing happens in validate().
  std::map<std::string, std::map<std::string, std::optional<std::string>>> values;
  for (const auto& schema : riplab::cli::schemas()) {
    CLI::App* sub = app.add_subcommand(schema.name, schema.help);
    sub->fallthrough();
    auto& slots = values[schema.name];
    for (const auto& key : schema.keys) {
      std::string help = key.help;
      if (!key.default_value.empty()) help += " [default " + key.default_value + "]";
      if (key.required) help += " (required)";
      sub->add_option("--" + key.name, slots[key.name], help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    riplab::cli::ExperimentConfig config;
    for (const auto* sub : app.get_subcommands()) config.subcommand = sub->get_name();
    if (!config_file.empty()) config.params = riplab::cli::read_ini(config_file, config.subcommand);
    for (const auto& [k, v] : values[config.subcommand]) {
      if (v) config.params[k] = *v;
    }
    config.seed = seed;
    config.output = out;
    config.stamp = stamp;
    riplab::set_thread_count(threads);
    return execute(config, dry_run);
  } catch (const riplab::InvalidParameter& e) {
    std::cerr << "riplab: " << e.what() << "\n";
    return kExitConfig;
  } catch (const riplab::CapacityError& e) {
    std::cerr << "riplab: capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "riplab: numerical: " << e.what() << "\n";
    return kExitNumerical;
  }
}
