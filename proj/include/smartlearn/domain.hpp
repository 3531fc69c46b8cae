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

#include "smartlearn/learning.hpp"
#include "smartlearn/time_of_day.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smartlearn {

inline constexpr std::size_t profile_buckets = 48;
inline constexpr int profile_bucket_minutes = minutes_per_day / static_cast<int>(profile_buckets);

struct ApplianceSpec {
  std::string id;
  std::string label;
  double power_watts = 0.0;
  /// Per-tick switch-on propensity for each half-hour of the day.
  std::vector<double> usage_profile;
  /// Experienced users move this appliance's use out of the peak window.
  bool deferrable = false;
  /// Cold appliances and similar base load: on from the start, never switched.
  bool always_on = false;
  /// Mean on-duration; converted to a per-tick geometric switch-off chance.
  double mean_on_minutes = 60.0;

  double propensity_at(TimeOfDay now) const {
    return usage_profile[static_cast<std::size_t>(now.minutes() / profile_bucket_minutes)];
  }
};

struct ApplianceCount {
  std::string appliance_id;
  int count = 1;
};

/// A consumer class: presence schedule, awareness, learning constants and
/// the appliance bundle each member owns.
struct ArchetypeSpec {
  std::string id;
  std::string label;
  TimeOfDay leave_start, leave_end;
  TimeOfDay return_start, return_end;
  double awareness = 0.0;
  double learning_rate = 0.1;   // k
  double max_level = 1.0;       // M
  std::vector<ApplianceCount> appliances;
};

struct MixEntry {
  std::string archetype_id;
  double fraction = 0.0;
};

struct ScenarioConfig {
  std::int64_t population = 1000;
  std::vector<MixEntry> archetype_mix;
  std::int64_t network_mean_degree = 4;
  double network_rewire_beta = 0.1;
  double p_threshold = 0.85;
  std::int64_t intervention_start_day = 0;
  double initial_experienced_fraction = 0.0;
  std::int64_t horizon_days = 30;
  std::int64_t tick_minutes = 10;
  double base_interaction_rate = 0.02;
  std::uint64_t seed = 42;
  TimeWindow peak_window{TimeOfDay::hm(17, 0), TimeOfDay::hm(20, 0)};
  double peak_suppression = 0.5;
  double peak_off_multiplier = 2.0;

  std::int64_t ticks_per_day() const { return minutes_per_day / tick_minutes; }
};

/// Raw, unchecked scenario as read from disk.
struct ScenarioDocument {
  ScenarioConfig config;
  std::vector<ArchetypeSpec> archetypes;
  std::vector<ApplianceSpec> appliances;
};

enum class ErrorKind {
  Malformed,
  InvalidValue,
  DuplicateId,
  MixNotNormalized,
  UnknownArchetype,
  UnknownAppliance,
  BadWindow,
  BadProfileLength,
  BadDegree,
  UnreachableThreshold,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Malformed: return "Malformed";
  case ErrorKind::InvalidValue: return "InvalidValue";
  case ErrorKind::DuplicateId: return "DuplicateId";
  case ErrorKind::MixNotNormalized: return "MixNotNormalized";
  case ErrorKind::UnknownArchetype: return "UnknownArchetype";
  case ErrorKind::UnknownAppliance: return "UnknownAppliance";
  case ErrorKind::BadWindow: return "BadWindow";
  case ErrorKind::BadProfileLength: return "BadProfileLength";
  case ErrorKind::BadDegree: return "BadDegree";
  case ErrorKind::UnreachableThreshold: return "UnreachableThreshold";
  }
  return "Unknown";
}

struct ValidationError {
  ErrorKind kind;
  std::string message;

  std::string to_string() const { return std::string(smartlearn::to_string(kind)) + ": " + message; }
};

struct ValidationResult;
inline ValidationResult validate_scenario(const ScenarioDocument& doc);

/// A cross-referenced scenario. Construct only through validate_scenario;
/// immutable afterwards.
class Scenario {
public:
  const ScenarioConfig& config() const { return doc_.config; }
  const std::vector<ArchetypeSpec>& archetypes() const { return doc_.archetypes; }
  const std::vector<ApplianceSpec>& appliances() const { return doc_.appliances; }

  /// (archetype index, fraction) in mix order.
  const std::vector<std::pair<std::size_t, double>>& mix() const { return mix_; }

  /// Appliance catalog indices owned by one member of the archetype, one entry per instance.
  const std::vector<std::size_t>& bundle(std::size_t archetype) const { return bundles_[archetype]; }

  LearningParams learning_params(std::size_t archetype) const {
    const auto& a = doc_.archetypes[archetype];
    return {a.max_level, a.learning_rate, doc_.config.p_threshold};
  }

private:
  friend ValidationResult validate_scenario(const ScenarioDocument& doc);
  Scenario() = default;

  ScenarioDocument doc_;
  std::vector<std::pair<std::size_t, double>> mix_;
  std::vector<std::vector<std::size_t>> bundles_;
};

struct ValidationResult {
  std::optional<Scenario> scenario;
  std::vector<ValidationError> errors;

  bool ok() const { return scenario.has_value(); }
};

/// Checks every invariant and cross-reference; collects all violations
/// rather than stopping at the first.
inline ValidationResult validate_scenario(const ScenarioDocument& doc) {
  std::vector<ValidationError> errors;
  auto fail = [&](ErrorKind kind, std::string msg) { errors.push_back({kind, std::move(msg)}); };
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };

  const auto& cfg = doc.config;

  if (cfg.population <= 0) {
    fail(ErrorKind::InvalidValue, "population must be positive");
  }
  if (cfg.tick_minutes <= 0 || minutes_per_day % cfg.tick_minutes != 0) {
    fail(ErrorKind::InvalidValue, "tick_minutes must be a positive divisor of 1440");
  }
  if (cfg.horizon_days <= 0) {
    fail(ErrorKind::InvalidValue, "horizon_days must be positive");
  }
  if (cfg.intervention_start_day < 0) {
    fail(ErrorKind::InvalidValue, "intervention_start_day must be non-negative");
  }
  if (cfg.network_mean_degree < 2 || cfg.network_mean_degree % 2 != 0) {
    fail(ErrorKind::BadDegree, "network_mean_degree must be a positive even integer");
  } else if (cfg.population > 0 && cfg.network_mean_degree >= cfg.population) {
    fail(ErrorKind::BadDegree, "network_mean_degree must be smaller than population");
  }
  if (!in_unit(cfg.network_rewire_beta)) {
    fail(ErrorKind::InvalidValue, "network_rewire_beta must lie in [0,1]");
  }
  if (!(cfg.p_threshold > 0.0 && cfg.p_threshold <= 1.0)) {
    fail(ErrorKind::InvalidValue, "p_threshold must lie in (0,1]");
  }
  if (!in_unit(cfg.initial_experienced_fraction)) {
    fail(ErrorKind::InvalidValue, "initial_experienced_fraction must lie in [0,1]");
  }
  if (!in_unit(cfg.base_interaction_rate)) {
    fail(ErrorKind::InvalidValue, "base_interaction_rate must lie in [0,1]");
  }
  if (!in_unit(cfg.peak_suppression)) {
    fail(ErrorKind::InvalidValue, "peak_suppression must lie in [0,1]");
  }
  if (!(cfg.peak_off_multiplier >= 0.0) || !std::isfinite(cfg.peak_off_multiplier)) {
    fail(ErrorKind::InvalidValue, "peak_off_multiplier must be non-negative");
  }
  if (cfg.peak_window.empty()) {
    fail(ErrorKind::BadWindow, "peak_window must be non-empty");
  }

  std::map<std::string, std::size_t> appliance_index;
  for (std::size_t i = 0; i < doc.appliances.size(); ++i) {
    const auto& a = doc.appliances[i];
    if (!appliance_index.emplace(a.id, i).second) {
      fail(ErrorKind::DuplicateId, "appliance '" + a.id + "' defined twice");
    }
    if (!(a.power_watts > 0.0) || !std::isfinite(a.power_watts)) {
      fail(ErrorKind::InvalidValue, "appliance '" + a.id + "': power_watts must be positive");
    }
    if (a.usage_profile.size() != profile_buckets) {
      fail(ErrorKind::BadProfileLength, "appliance '" + a.id + "': usage_profile has " +
                                            std::to_string(a.usage_profile.size()) +
                                            " entries, expected 48");
    } else {
      for (double p : a.usage_profile) {
        if (!in_unit(p)) {
          fail(ErrorKind::InvalidValue, "appliance '" + a.id + "': usage_profile entries must lie in [0,1]");
          break;
        }
      }
    }
    if (!a.always_on && !(a.mean_on_minutes > 0.0)) {
      fail(ErrorKind::InvalidValue, "appliance '" + a.id + "': mean_on_minutes must be positive");
    }
  }

  std::map<std::string, std::size_t> archetype_index;
  std::vector<std::vector<std::size_t>> bundles(doc.archetypes.size());
  for (std::size_t i = 0; i < doc.archetypes.size(); ++i) {
    const auto& a = doc.archetypes[i];
    if (!archetype_index.emplace(a.id, i).second) {
      fail(ErrorKind::DuplicateId, "archetype '" + a.id + "' defined twice");
    }
    if (a.leave_start > a.leave_end || a.return_start > a.return_end || !(a.leave_end < a.return_start)) {
      fail(ErrorKind::BadWindow, "archetype '" + a.id + "': need leave_start <= leave_end < return_start <= return_end, got leave " +
                                     a.leave_start.to_string() + "-" + a.leave_end.to_string() + ", return " +
                                     a.return_start.to_string() + "-" + a.return_end.to_string());
    }
    if (!in_unit(a.awareness)) {
      fail(ErrorKind::InvalidValue, "archetype '" + a.id + "': awareness must lie in [0,1]");
    }
    if (!(a.learning_rate > 0.0) || !std::isfinite(a.learning_rate)) {
      fail(ErrorKind::InvalidValue, "archetype '" + a.id + "': learning_rate_k must be positive");
    }
    if (!(a.max_level > 0.0 && a.max_level <= 1.0)) {
      fail(ErrorKind::InvalidValue, "archetype '" + a.id + "': max_attainable_M must lie in (0,1]");
    }
    for (const auto& entry : a.appliances) {
      auto it = appliance_index.find(entry.appliance_id);
      if (it == appliance_index.end()) {
        fail(ErrorKind::UnknownAppliance, "archetype '" + a.id + "' references unknown appliance '" +
                                              entry.appliance_id + "'");
        continue;
      }
      if (entry.count < 0) {
        fail(ErrorKind::InvalidValue, "archetype '" + a.id + "': appliance count must be non-negative");
        continue;
      }
      bundles[i].insert(bundles[i].end(), static_cast<std::size_t>(entry.count), it->second);
    }
  }

  std::vector<std::pair<std::size_t, double>> mix;
  double total = 0.0;
  for (const auto& m : cfg.archetype_mix) {
    total += m.fraction;
    if (!(m.fraction >= 0.0)) {
      fail(ErrorKind::InvalidValue, "mix fraction for '" + m.archetype_id + "' must be non-negative");
    }
    auto it = archetype_index.find(m.archetype_id);
    if (it == archetype_index.end()) {
      fail(ErrorKind::UnknownArchetype, "archetype_mix references unknown archetype '" + m.archetype_id + "'");
      continue;
    }
    mix.emplace_back(it->second, m.fraction);
  }
  if (cfg.archetype_mix.empty()) {
    fail(ErrorKind::MixNotNormalized, "archetype_mix is empty");
  } else if (!(std::abs(total - 1.0) <= 1e-9)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", total);
    fail(ErrorKind::MixNotNormalized, std::string("archetype_mix fractions sum to ") + buf + ", expected 1");
  }

  // Seeding users as experienced needs a reachable threshold in every
  // archetype that can be drawn.
  if (cfg.initial_experienced_fraction > 0.0 && cfg.p_threshold > 0.0 && cfg.p_threshold <= 1.0) {
    for (const auto& [idx, fraction] : mix) {
      const auto& a = doc.archetypes[idx];
      if (fraction > 0.0 && a.max_level <= cfg.p_threshold) {
        fail(ErrorKind::UnreachableThreshold, "archetype '" + a.id + "': p_threshold " +
                                                  std::to_string(cfg.p_threshold) +
                                                  " is not below max_attainable_M, cannot seed experienced users");
      }
    }
  }

  ValidationResult result;
  if (!errors.empty()) {
    result.errors = std::move(errors);
    return result;
  }
  Scenario s;
  s.doc_ = doc;
  s.mix_ = std::move(mix);
  s.bundles_ = std::move(bundles);
  result.scenario = std::move(s);
  return result;
}

} // namespace smartlearn
