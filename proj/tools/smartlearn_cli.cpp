/*
 * Copyright (C) 2026 The smartlearn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "smartlearn/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

std::optional<smartlearn::TimeWindow> parse_window_flag(const std::string& text) {
  return smartlearn::TimeWindow::parse(text);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"smartlearn: agent-based simulation of forced smart-meter adoption with user learning"};
  app.require_subcommand(1);

  smartlearn::RunArgs run_args;
  std::uint64_t run_seed = 0;
  std::string run_window;
  double run_fraction = 0.0;
  auto* run = app.add_subcommand("run", "Run a scenario and write load-curve, adoption and event CSVs");
  run->add_option("--config", run_args.config_path, "Scenario JSON")->required();
  auto* run_seed_opt = run->add_option("--seed", run_seed, "Override the scenario seed");
  run->add_option("--out", run_args.out_dir, "Output directory")->capture_default_str();
  run->add_flag("--events", run_args.events, "Write events.csv");
  auto* run_window_opt = run->add_option("--window", run_window, "Peak window HH:MM-HH:MM for experienced users");
  auto* run_fraction_opt =
      run->add_option("--experienced-fraction", run_fraction, "Fraction of agents seeded as experienced");

  smartlearn::CompareArgs compare_args;
  std::string compare_window = compare_args.window.to_string();
  auto* compare = app.add_subcommand("compare", "Compare two load-curve CSVs");
  compare->add_option("base", compare_args.base_path, "Base (reference) load curve")->required();
  compare->add_option("treated", compare_args.treated_path, "Treated load curve")->required();
  compare->add_option("--window", compare_window, "Peak window HH:MM-HH:MM")->capture_default_str();

  smartlearn::NetworkStatsArgs net_args;
  std::uint64_t net_seed = 0;
  auto* net = app.add_subcommand("network-stats", "Print statistics of the scenario's communication network");
  net->add_option("--config", net_args.config_path, "Scenario JSON")->required();
  auto* net_seed_opt = net->add_option("--seed", net_seed, "Override the scenario seed");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("--config", validate_path, "Scenario JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : smartlearn::exit_code::invalid_input;
  }

  if (*run) {
    if (*run_seed_opt) {
      run_args.seed = run_seed;
    }
    if (*run_fraction_opt) {
      run_args.experienced_fraction = run_fraction;
    }
    if (*run_window_opt) {
      run_args.window = parse_window_flag(run_window);
      if (!run_args.window) {
        std::cerr << "error: --window must look like HH:MM-HH:MM\n";
        return smartlearn::exit_code::invalid_input;
      }
    }
    return smartlearn::cmd_run(run_args, std::cout, std::cerr);
  }
  if (*compare) {
    auto w = parse_window_flag(compare_window);
    if (!w) {
      std::cerr << "error: --window must look like HH:MM-HH:MM\n";
      return smartlearn::exit_code::invalid_input;
    }
    compare_args.window = *w;
    return smartlearn::cmd_compare(compare_args, std::cout, std::cerr);
  }
  if (*net) {
    if (*net_seed_opt) {
      net_args.seed = net_seed;
    }
    return smartlearn::cmd_network_stats(net_args, std::cout, std::cerr);
  }
  return smartlearn::cmd_validate(validate_path, std::cout, std::cerr);
}
