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

#include "smartlearn/domain.hpp"
#include "smartlearn/learning.hpp"
#include "smartlearn/network.hpp"
#include "smartlearn/rng.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace smartlearn {

using AgentId = std::uint32_t;

enum class Presence { AtHome, Out };

struct ApplianceInstance {
  std::uint32_t appliance = 0;  ///< index into the scenario catalog
  bool on = false;
};

/// Runtime state of one residential consumer.
/// Influence is history state: `learning` is empty while uninfluenced and
/// keeps its value across every presence change once set.
struct AgentState {
  AgentId id = 0;
  std::uint32_t archetype = 0;
  Presence presence = Presence::AtHome;
  std::optional<LearningState> learning;
  std::vector<ApplianceInstance> appliances;
  TimeOfDay today_leave;
  TimeOfDay today_return;
  bool left_today = false;
  bool bonus_trial_used = false;

  bool influenced() const { return learning.has_value(); }
  bool experienced() const { return learning && learning->experienced; }
};

enum class EventKind { LeftHome, ReturnedHome, Influenced, BecameExperienced, SwitchedOn, SwitchedOff, Interacted };

inline const char* to_string(EventKind k) {
  switch (k) {
  case EventKind::LeftHome: return "LeftHome";
  case EventKind::ReturnedHome: return "ReturnedHome";
  case EventKind::Influenced: return "Influenced";
  case EventKind::BecameExperienced: return "BecameExperienced";
  case EventKind::SwitchedOn: return "SwitchedOn";
  case EventKind::SwitchedOff: return "SwitchedOff";
  case EventKind::Interacted: return "Interacted";
  }
  return "?";
}

struct AgentEvent {
  std::int64_t tick = 0;
  AgentId agent = 0;
  EventKind kind = EventKind::LeftHome;
  /// Appliance instance index for switch events, peer id for Interacted, -1 otherwise.
  std::int64_t detail = -1;
  /// Catalog index of the switched appliance; switch events only.
  std::int32_t appliance = -1;

  friend bool operator==(const AgentEvent&, const AgentEvent&) = default;
};

using EventBuffer = std::vector<AgentEvent>;

/// Scenario-wide knobs the appliance model reads every tick.
struct BehaviorParams {
  int tick_minutes = 10;
  TimeWindow peak_window{TimeOfDay::hm(17, 0), TimeOfDay::hm(20, 0)};
  double peak_suppression = 0.5;
  double peak_off_multiplier = 2.0;

  static BehaviorParams from(const ScenarioConfig& c) {
    return {static_cast<int>(c.tick_minutes), c.peak_window, c.peak_suppression, c.peak_off_multiplier};
  }
};

/// Today's leave and return times, each uniform over its window in whole minutes.
inline std::pair<TimeOfDay, TimeOfDay> sample_daily_times(const ArchetypeSpec& archetype, Rng& rng) {
  auto leave = uniform_int(rng, archetype.leave_start.minutes(), archetype.leave_end.minutes());
  auto back = uniform_int(rng, archetype.return_start.minutes(), archetype.return_end.minutes());
  return {TimeOfDay(static_cast<int>(leave)), TimeOfDay(static_cast<int>(back))};
}

/// Start-of-day reset: new daily times, fresh per-day flags. An agent whose
/// return time fell after the last tick of the previous day comes home now.
inline void begin_day(AgentState& agent, const ArchetypeSpec& archetype, Rng& rng, std::int64_t tick,
                      EventBuffer& events) {
  if (agent.presence == Presence::Out) {
    agent.presence = Presence::AtHome;
    events.push_back({tick, agent.id, EventKind::ReturnedHome});
  }
  agent.left_today = false;
  agent.bonus_trial_used = false;
  std::tie(agent.today_leave, agent.today_return) = sample_daily_times(archetype, rng);
}

/// AtHome -> Out at the first tick at or after today's leave time, Out ->
/// AtHome at the first tick at or after the return time. Controllable
/// appliances still running are switched off on the way out.
inline void step_presence(AgentState& agent, TimeOfDay now, std::int64_t tick,
                          std::span<const ApplianceSpec> catalog, EventBuffer& events) {
  if (agent.presence == Presence::AtHome) {
    if (!agent.left_today && now >= agent.today_leave) {
      for (std::size_t i = 0; i < agent.appliances.size(); ++i) {
        auto& inst = agent.appliances[i];
        if (inst.on && !catalog[inst.appliance].always_on) {
          inst.on = false;
          events.push_back({tick, agent.id, EventKind::SwitchedOff, static_cast<std::int64_t>(i),
                            static_cast<std::int32_t>(inst.appliance)});
        }
      }
      agent.presence = Presence::Out;
      agent.left_today = true;
      events.push_back({tick, agent.id, EventKind::LeftHome});
    }
  } else if (now >= agent.today_return) {
    agent.presence = Presence::AtHome;
    events.push_back({tick, agent.id, EventKind::ReturnedHome});
  }
}

/// Uninfluenced -> Influenced(t = 0). Returns false (and does nothing) when
/// the agent is already influenced.
inline bool apply_intervention(AgentState& agent, std::int64_t tick, EventBuffer& events) {
  if (agent.influenced()) {
    return false;
  }
  agent.learning = LearningState{};
  events.push_back({tick, agent.id, EventKind::Influenced});
  return true;
}

/// Counts one reinforced trial and reports the experienced transition.
inline void reinforce(AgentState& agent, const LearningParams& params, std::int64_t tick, EventBuffer& events,
                      std::optional<LearningState> donor = std::nullopt) {
  const bool before = agent.learning->experienced;
  agent.learning = donor ? absorb_interaction(*agent.learning, *donor, params) : record_trial(*agent.learning, params);
  if (!before && agent.learning->experienced) {
    events.push_back({tick, agent.id, EventKind::BecameExperienced});
  }
}

inline double switch_on_probability(const ApplianceSpec& appliance, bool experienced, TimeOfDay now,
                                    const BehaviorParams& params) {
  double p = appliance.propensity_at(now);
  if (experienced && appliance.deferrable && params.peak_window.contains(now)) {
    p *= params.peak_suppression;
  }
  return p;
}

inline double switch_off_probability(const ApplianceSpec& appliance, bool experienced, TimeOfDay now,
                                     const BehaviorParams& params) {
  if (appliance.always_on) {
    return 0.0;
  }
  double p = std::min(1.0, params.tick_minutes / appliance.mean_on_minutes);
  if (experienced && appliance.deferrable && params.peak_window.contains(now)) {
    p = std::min(1.0, p * params.peak_off_multiplier);
  }
  return p;
}

/// One switching decision per controllable appliance instance; callers
/// invoke this only while the agent is at home.
inline void appliance_tick(AgentState& agent, TimeOfDay now, std::int64_t tick, std::span<const ApplianceSpec> catalog,
                           const BehaviorParams& params, Rng& rng, EventBuffer& events) {
  const bool experienced = agent.experienced();
  for (std::size_t i = 0; i < agent.appliances.size(); ++i) {
    auto& inst = agent.appliances[i];
    const auto& spec = catalog[inst.appliance];
    if (spec.always_on) {
      continue;
    }
    if (inst.on) {
      if (bernoulli(rng, switch_off_probability(spec, experienced, now, params))) {
        inst.on = false;
        events.push_back({tick, agent.id, EventKind::SwitchedOff, static_cast<std::int64_t>(i),
                            static_cast<std::int32_t>(inst.appliance)});
      }
    } else if (bernoulli(rng, switch_on_probability(spec, experienced, now, params))) {
      inst.on = true;
      events.push_back({tick, agent.id, EventKind::SwitchedOn, static_cast<std::int64_t>(i),
                          static_cast<std::int32_t>(inst.appliance)});
    }
  }
}

/// Knowledge exchange attempt of an influenced, at-home agent. With
/// probability awareness * base_rate the agent contacts one uniformly drawn
/// network neighbour that was influenced in `snapshot` and absorbs from it.
/// Only the first absorbed trial of a day counts; later contacts that day
/// are logged but leave the learning state alone. Returns the peer, if any.
inline std::optional<AgentId> maybe_interact(AgentState& agent, double awareness, double base_rate,
                                             std::span<const NodeId> neighbors,
                                             std::span<const std::optional<LearningState>> snapshot,
                                             const LearningParams& params, Rng& rng, std::int64_t tick,
                                             EventBuffer& events) {
  if (!bernoulli(rng, awareness * base_rate)) {
    return std::nullopt;
  }
  std::vector<AgentId> eligible;
  for (NodeId n : neighbors) {
    if (snapshot[n].has_value()) {
      eligible.push_back(n);
    }
  }
  if (eligible.empty()) {
    return std::nullopt;
  }
  AgentId peer = eligible[uniform_below(rng, eligible.size())];
  events.push_back({tick, agent.id, EventKind::Interacted, static_cast<std::int64_t>(peer)});
  if (!agent.bonus_trial_used) {
    const auto before = agent.learning->trials;
    reinforce(agent, params, tick, events, snapshot[peer]);
    agent.bonus_trial_used = agent.learning->trials != before;
  }
  return peer;
}

} // namespace smartlearn
