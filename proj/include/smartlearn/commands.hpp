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
#pragma once

#include "smartlearn/csv_io.hpp"
#include "smartlearn/domain.hpp"
#include "smartlearn/engine.hpp"
#include "smartlearn/metrics.hpp"
#include "smartlearn/network.hpp"
#include "smartlearn/scenario_io.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace smartlearn {

inline constexpr const char* engine_version = "0.1.0";

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int io_failure = 1;
inline constexpr int invalid_input = 2;
} // namespace exit_code

struct RunArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  bool events = false;
  std::optional<TimeWindow> window;
  std::optional<double> experienced_fraction;
};

struct CompareArgs {
  std::string base_path;
  std::string treated_path;
  TimeWindow window{TimeOfDay::hm(17, 0), TimeOfDay::hm(20, 0)};
};

struct NetworkStatsArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
};

/// Parsed and validated scenario, or the exit status and messages to report.
struct LoadedScenario {
  std::optional<Scenario> scenario;
  int status = exit_code::ok;
};

namespace detail {

inline void print_errors(std::ostream& err, const std::vector<ValidationError>& errors) {
  for (const auto& e : errors) {
    err << e.to_string() << '\n';
  }
}

template <typename Tweak>
LoadedScenario load_scenario(const std::string& path, std::ostream& err, Tweak&& tweak) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return {std::nullopt, exit_code::io_failure};
  }
  auto parsed = parse_scenario_json(text);
  if (!parsed.document) {
    print_errors(err, parsed.errors);
    return {std::nullopt, exit_code::invalid_input};
  }
  tweak(*parsed.document);
  auto validated = validate_scenario(*parsed.document);
  if (!validated.ok()) {
    print_errors(err, validated.errors);
    return {std::nullopt, exit_code::invalid_input};
  }
  return {std::move(validated.scenario), exit_code::ok};
}

inline bool write_file(const std::filesystem::path& path, const std::string& content, std::ostream& err) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) {
    err << "error: cannot write '" << path.string() << "'\n";
    return false;
  }
  return true;
}

} // namespace detail

inline int cmd_validate(const std::string& config_path, std::ostream& out, std::ostream& err) {
  auto loaded = detail::load_scenario(config_path, err, [](ScenarioDocument&) {});
  if (!loaded.scenario) {
    return loaded.status;
  }
  const auto& s = *loaded.scenario;
  out << "valid: population=" << s.config().population << " archetypes=" << s.archetypes().size()
      << " appliances=" << s.appliances().size() << " horizon_days=" << s.config().horizon_days << '\n';
  return exit_code::ok;
}

/// Runs a scenario and writes loadcurve.csv, adoption.csv, optionally
/// events.csv, and manifest.json into the output directory.
inline int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  auto loaded = detail::load_scenario(args.config_path, err, [&](ScenarioDocument& doc) {
    if (args.experienced_fraction) {
      doc.config.initial_experienced_fraction = *args.experienced_fraction;
    }
    if (args.window) {
      doc.config.peak_window = *args.window;
    }
    if (args.seed) {
      doc.config.seed = *args.seed;
    }
  });
  if (!loaded.scenario) {
    return loaded.status;
  }
  const Scenario& scenario = *loaded.scenario;
  if (default_bucket_minutes % scenario.config().tick_minutes != 0) {
    err << "BadBucket: tick_minutes " << scenario.config().tick_minutes
        << " does not divide the 30 min load-curve bucket\n";
    return exit_code::invalid_input;
  }

  const auto started = std::chrono::steady_clock::now();
  const auto output = run(scenario, {scenario.config().seed, args.events});
  const auto curve = aggregate_load(output);

  namespace fs = std::filesystem;
  const fs::path dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    err << "error: cannot create '" << dir.string() << "': " << ec.message() << '\n';
    return exit_code::io_failure;
  }

  std::vector<std::string> files;
  auto emit = [&](const std::string& name, const std::string& content) {
    if (!detail::write_file(dir / name, content, err)) {
      return false;
    }
    files.push_back(name);
    return true;
  };

  std::ostringstream lc, ad, ev;
  write_load_curve(lc, curve);
  write_adoption(ad, output.adoption);
  if (!emit("loadcurve.csv", lc.str()) || !emit("adoption.csv", ad.str())) {
    return exit_code::io_failure;
  }
  if (args.events) {
    write_events(ev, output.events, scenario.appliances());
    if (!emit("events.csv", ev.str())) {
      return exit_code::io_failure;
    }
  }

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  nlohmann::json manifest = {
      {"scenario", args.config_path},
      {"seed", output.seed},
      {"output_dir", args.out_dir},
      {"files", files},
      {"engine_version", engine_version},
      {"wall_clock_seconds", seconds},
      {"config", config_to_json(output.config)},
  };
  if (!detail::write_file(dir / "manifest.json", manifest.dump(2) + "\n", err)) {
    return exit_code::io_failure;
  }

  const auto peak = peak_stats(curve);
  const auto& last = output.adoption.back();
  out << "seed=" << output.seed << '\n'
      << "ticks=" << output.load_series.size() << '\n'
      << "peak_bucket=" << peak.bucket.to_string() << '\n'
      << "peak_watts=" << detail::fixed(peak.watts, 3) << '\n'
      << "final_uninfluenced=" << last.uninfluenced << '\n'
      << "final_inexperienced=" << last.inexperienced << '\n'
      << "final_experienced=" << last.experienced << '\n'
      << "output_dir=" << args.out_dir << '\n';
  return exit_code::ok;
}

/// Compares two load-curve CSVs and prints a key=value report.
inline int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& err) {
  LoadCurve base, treated;
  for (auto [path, curve] : {std::pair{&args.base_path, &base}, std::pair{&args.treated_path, &treated}}) {
    std::ifstream in(*path, std::ios::binary);
    if (!in) {
      err << "error: cannot open '" << *path << "'\n";
      return exit_code::io_failure;
    }
    try {
      *curve = read_load_curve(in);
    } catch (const CsvError& e) {
      err << "error: " << *path << ": " << e.what() << '\n';
      return exit_code::invalid_input;
    }
  }
  try {
    const double r = pearson_correlation(base, treated);
    const auto pb = peak_stats(base);
    const auto pt = peak_stats(treated);
    const double reduction = peak_reduction(base, treated, args.window);
    out << "correlation=" << detail::fixed(r, 6) << '\n'
        << "base_peak_bucket=" << pb.bucket.to_string() << '\n'
        << "base_peak_watts=" << detail::fixed(pb.watts, 3) << '\n'
        << "treated_peak_bucket=" << pt.bucket.to_string() << '\n'
        << "treated_peak_watts=" << detail::fixed(pt.watts, 3) << '\n'
        << "window=" << args.window.to_string() << '\n'
        << "peak_reduction=" << detail::fixed(reduction, 6) << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::invalid_input;
  }
  return exit_code::ok;
}

/// Builds the scenario's network with the run's own substream and prints
/// one CSV row of summary statistics.
inline int cmd_network_stats(const NetworkStatsArgs& args, std::ostream& out, std::ostream& err) {
  auto loaded = detail::load_scenario(args.config_path, err, [&](ScenarioDocument& doc) {
    if (args.seed) {
      doc.config.seed = *args.seed;
    }
  });
  if (!loaded.scenario) {
    return loaded.status;
  }
  const auto& cfg = loaded.scenario->config();
  Rng net_rng = make_substream(cfg.seed, "network");
  Network net;
  try {
    net = generate_small_world(static_cast<std::size_t>(cfg.population), static_cast<std::size_t>(cfg.network_mean_degree),
                               cfg.network_rewire_beta, net_rng);
  } catch (const BadDegree& e) {
    err << "BadDegree: " << e.what() << '\n';
    return exit_code::invalid_input;
  }
  Rng path_rng = make_substream(cfg.seed, "network-stats");
  const auto path = sampled_mean_path_length(net, path_rng);
  out << "nodes,edges,mean_degree,clustering,mean_path_length\n"
      << net.node_count() << ',' << net.edge_count() << ',' << detail::fixed(net.mean_degree(), 6) << ','
      << detail::fixed(clustering_coefficient(net), 6) << ',' << (path ? detail::fixed(*path, 6) : std::string("nan"))
      << '\n';
  return exit_code::ok;
}

} // namespace smartlearn
