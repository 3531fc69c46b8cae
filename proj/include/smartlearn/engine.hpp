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

#include "smartlearn/agent.hpp"
#include "smartlearn/domain.hpp"
#include "smartlearn/network.hpp"
#include "smartlearn/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace smartlearn {

struct AdoptionCounts {
  std::int64_t uninfluenced = 0;
  std::int64_t inexperienced = 0;
  std::int64_t experienced = 0;

  std::int64_t total() const { return uninfluenced + inexperienced + experienced; }
  friend bool operator==(const AdoptionCounts&, const AdoptionCounts&) = default;
};

struct SimOutput {
  std::vector<double> load_series;          ///< watts, one sample per tick
  std::vector<AdoptionCounts> adoption;     ///< one entry per day, taken at the day's last tick
  std::vector<AgentEvent> events;           ///< empty unless requested
  ScenarioConfig config;
  std::uint64_t seed = 0;
};

struct Population {
  std::vector<AgentState> agents;
  Network network;
};

/// Member counts per mix entry by largest-remainder apportionment; ties in
/// the remainder go to the earlier mix entry.
inline std::vector<std::int64_t> apportion(std::int64_t total, std::span<const double> fractions) {
  std::vector<std::int64_t> counts(fractions.size());
  std::vector<double> remainder(fractions.size());
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    double quota = fractions[i] * static_cast<double>(total);
    counts[i] = static_cast<std::int64_t>(std::floor(quota));
    remainder[i] = quota - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  std::vector<std::size_t> order(fractions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < total && !order.empty(); i = (i + 1) % order.size()) {
    ++counts[order[i]];
    ++assigned;
  }
  return counts;
}

/// Agents, archetype assignment, appliance instances, experienced seeding and
/// the communication network, all drawn from substreams of `seed`.
inline Population build_population(const Scenario& scenario, std::uint64_t seed) {
  const auto& cfg = scenario.config();
  const auto n = static_cast<std::size_t>(cfg.population);
  Rng rng = make_substream(seed, "population");

  std::vector<double> fractions;
  for (const auto& entry : scenario.mix()) {
    fractions.push_back(entry.second);
  }
  auto counts = apportion(cfg.population, fractions);
  std::vector<std::uint32_t> assignment;
  assignment.reserve(n);
  for (std::size_t m = 0; m < counts.size(); ++m) {
    assignment.insert(assignment.end(), static_cast<std::size_t>(counts[m]),
                      static_cast<std::uint32_t>(scenario.mix()[m].first));
  }
  shuffle(assignment, rng);

  Population pop;
  pop.agents.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& a = pop.agents[i];
    a.id = static_cast<AgentId>(i);
    a.archetype = assignment[i];
    for (std::size_t appliance : scenario.bundle(a.archetype)) {
      a.appliances.push_back({static_cast<std::uint32_t>(appliance), scenario.appliances()[appliance].always_on});
    }
  }

  std::vector<AgentId> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  const auto seeded = static_cast<std::size_t>(std::floor(cfg.initial_experienced_fraction * static_cast<double>(n) + 0.5));
  for (std::size_t i = 0; i < seeded && i < n; ++i) {
    auto& a = pop.agents[order[i]];
    a.learning = experienced_seed(scenario.learning_params(a.archetype));
  }

  Rng net_rng = make_substream(seed, "network");
  pop.network = generate_small_world(n, static_cast<std::size_t>(cfg.network_mean_degree), cfg.network_rewire_beta, net_rng);
  return pop;
}

/// The tick loop. Per tick every agent, in ascending id order, runs the
/// day-boundary bookkeeping (first tick of a day), presence, appliance and
/// interaction steps; interactions read a snapshot of learning states taken
/// before any agent moved, so the outcome never depends on agent order.
class Simulation {
public:
  Simulation(const Scenario& scenario, std::uint64_t seed, bool record_events = false)
      : scenario_(scenario), record_events_(record_events), behavior_(BehaviorParams::from(scenario.config())),
        population_(build_population(scenario, seed)) {
    rngs_.reserve(population_.agents.size());
    for (std::size_t i = 0; i < population_.agents.size(); ++i) {
      rngs_.push_back(make_substream(seed, "agent", i));
    }
    const auto& cfg = scenario.config();
    output_.config = cfg;
    output_.seed = seed;
    output_.load_series.reserve(static_cast<std::size_t>(cfg.horizon_days * cfg.ticks_per_day()));
  }

  std::int64_t total_ticks() const { return scenario_.config().horizon_days * scenario_.config().ticks_per_day(); }
  std::int64_t current_tick() const { return tick_; }
  bool done() const { return tick_ >= total_ticks(); }

  const std::vector<AgentState>& agents() const { return population_.agents; }
  const Network& network() const { return population_.network; }
  const SimOutput& output() const { return output_; }

  void step() {
    const auto& cfg = scenario_.config();
    const auto per_day = cfg.ticks_per_day();
    const std::int64_t day = tick_ / per_day;
    const bool day_start = tick_ % per_day == 0;
    const TimeOfDay now(static_cast<int>((tick_ % per_day) * cfg.tick_minutes));
    const auto catalog = std::span<const ApplianceSpec>(scenario_.appliances());

    snapshot_.resize(population_.agents.size());
    for (std::size_t i = 0; i < population_.agents.size(); ++i) {
      snapshot_[i] = population_.agents[i].learning;
    }

    buffer_.clear();
    for (auto& agent : population_.agents) {
      const auto& archetype = scenario_.archetypes()[agent.archetype];
      const auto params = scenario_.learning_params(agent.archetype);
      auto& rng = rngs_[agent.id];

      if (day_start) {
        begin_day(agent, archetype, rng, tick_, buffer_);
        if (day >= cfg.intervention_start_day) {
          apply_intervention(agent, tick_, buffer_);
        }
        if (agent.influenced() && agent.presence == Presence::AtHome) {
          reinforce(agent, params, tick_, buffer_);
        }
      }
      step_presence(agent, now, tick_, catalog, buffer_);
      if (agent.presence == Presence::AtHome) {
        appliance_tick(agent, now, tick_, catalog, behavior_, rng, buffer_);
        if (agent.influenced()) {
          maybe_interact(agent, archetype.awareness, cfg.base_interaction_rate, population_.network.neighbors(agent.id),
                         snapshot_, params, rng, tick_, buffer_);
        }
      }
    }

    double load = 0.0;
    for (const auto& agent : population_.agents) {
      for (const auto& inst : agent.appliances) {
        if (inst.on) {
          load += scenario_.appliances()[inst.appliance].power_watts;
        }
      }
    }
    output_.load_series.push_back(load);

    if (tick_ % per_day == per_day - 1) {
      AdoptionCounts counts;
      for (const auto& agent : population_.agents) {
        if (!agent.influenced()) {
          ++counts.uninfluenced;
        } else if (agent.experienced()) {
          ++counts.experienced;
        } else {
          ++counts.inexperienced;
        }
      }
      output_.adoption.push_back(counts);
    }
    if (record_events_) {
      output_.events.insert(output_.events.end(), buffer_.begin(), buffer_.end());
    }
    ++tick_;
  }

  SimOutput finish() && {
    while (!done()) {
      step();
    }
    return std::move(output_);
  }

private:
  const Scenario& scenario_;
  bool record_events_;
  BehaviorParams behavior_;
  Population population_;
  std::vector<Rng> rngs_;
  std::vector<std::optional<LearningState>> snapshot_;
  EventBuffer buffer_;
  SimOutput output_;
  std::int64_t tick_ = 0;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;  ///< overrides the config seed
  bool record_events = false;
};

/// Runs the full horizon. Output depends only on (scenario, effective seed).
inline SimOutput run(const Scenario& scenario, const RunOptions& options = {}) {
  const auto seed = options.seed.value_or(scenario.config().seed);
  return Simulation(scenario, seed, options.record_events).finish();
}

} // namespace smartlearn
