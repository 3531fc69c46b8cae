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

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace smartlearn {

/// Outcome of reading a scenario document: either a document or the
/// complete list of problems found.
struct ParseResult {
  std::optional<ScenarioDocument> document;
  std::vector<ValidationError> errors;
};

namespace detail {

using nlohmann::json;

class FieldReader {
public:
  FieldReader(const json& obj, std::string context, std::vector<ValidationError>& errors)
      : obj_(obj), context_(std::move(context)), errors_(errors) {}

  bool has(const char* key) const { return obj_.contains(key); }

  void missing(const char* key) { error(std::string("missing required field '") + key + "'"); }

  void error(const std::string& msg) { errors_.push_back({ErrorKind::Malformed, context_ + ": " + msg}); }

  template <typename Fn>
  void optional(const char* key, Fn&& read) {
    if (obj_.contains(key)) {
      read(obj_.at(key));
    }
  }

  template <typename Fn>
  void required(const char* key, Fn&& read) {
    if (obj_.contains(key)) {
      read(obj_.at(key));
    } else {
      missing(key);
    }
  }

  void read_int(const json& v, const char* key, std::int64_t& out) {
    if (v.is_number_integer()) {
      out = v.get<std::int64_t>();
    } else {
      error(std::string("'") + key + "' must be an integer");
    }
  }

  void read_uint(const json& v, const char* key, std::uint64_t& out) {
    if (v.is_number_unsigned()) {
      out = v.get<std::uint64_t>();
    } else {
      error(std::string("'") + key + "' must be a non-negative integer");
    }
  }

  void read_real(const json& v, const char* key, double& out) {
    if (v.is_number()) {
      out = v.get<double>();
    } else {
      error(std::string("'") + key + "' must be a number");
    }
  }

  void read_bool(const json& v, const char* key, bool& out) {
    if (v.is_boolean()) {
      out = v.get<bool>();
    } else {
      error(std::string("'") + key + "' must be a boolean");
    }
  }

  void read_string(const json& v, const char* key, std::string& out) {
    if (v.is_string()) {
      out = v.get<std::string>();
    } else {
      error(std::string("'") + key + "' must be a string");
    }
  }

  void read_window(const json& v, const char* key, TimeOfDay& a, TimeOfDay& b) {
    if (v.is_array() && v.size() == 2 && v[0].is_string() && v[1].is_string()) {
      auto x = TimeOfDay::parse(v[0].get<std::string>());
      auto y = TimeOfDay::parse(v[1].get<std::string>());
      if (x && y) {
        a = *x;
        b = *y;
        return;
      }
    }
    error(std::string("'") + key + "' must be a pair of \"HH:MM\" strings");
  }

  const std::string& context() const { return context_; }

private:
  const json& obj_;
  std::string context_;
  std::vector<ValidationError>& errors_;
};

inline ScenarioConfig parse_config(const json& j, std::vector<ValidationError>& errors) {
  ScenarioConfig c;
  FieldReader r(j, "scenario", errors);
  r.required("population", [&](const json& v) { r.read_int(v, "population", c.population); });
  r.required("archetype_mix", [&](const json& v) {
    if (!v.is_array()) {
      r.error("'archetype_mix' must be an array of {\"archetype\", \"fraction\"} objects");
      return;
    }
    for (const auto& e : v) {
      if (!e.is_object()) {
        r.error("'archetype_mix' entries must be objects");
        continue;
      }
      MixEntry m;
      FieldReader er(e, "scenario.archetype_mix", errors);
      er.required("archetype", [&](const json& x) { er.read_string(x, "archetype", m.archetype_id); });
      er.required("fraction", [&](const json& x) { er.read_real(x, "fraction", m.fraction); });
      c.archetype_mix.push_back(std::move(m));
    }
  });
  r.optional("network_mean_degree_K", [&](const json& v) { r.read_int(v, "network_mean_degree_K", c.network_mean_degree); });
  r.optional("network_rewire_beta", [&](const json& v) { r.read_real(v, "network_rewire_beta", c.network_rewire_beta); });
  r.optional("p_threshold", [&](const json& v) { r.read_real(v, "p_threshold", c.p_threshold); });
  r.optional("intervention_start_day", [&](const json& v) { r.read_int(v, "intervention_start_day", c.intervention_start_day); });
  r.optional("initial_experienced_fraction", [&](const json& v) {
    r.read_real(v, "initial_experienced_fraction", c.initial_experienced_fraction);
  });
  r.optional("horizon_days", [&](const json& v) { r.read_int(v, "horizon_days", c.horizon_days); });
  r.optional("tick_minutes", [&](const json& v) { r.read_int(v, "tick_minutes", c.tick_minutes); });
  r.optional("base_interaction_rate", [&](const json& v) { r.read_real(v, "base_interaction_rate", c.base_interaction_rate); });
  r.optional("seed", [&](const json& v) { r.read_uint(v, "seed", c.seed); });
  r.optional("peak_window", [&](const json& v) {
    std::optional<TimeWindow> w;
    if (v.is_string()) {
      w = TimeWindow::parse(v.get<std::string>());
    }
    if (w) {
      c.peak_window = *w;
    } else {
      r.error("'peak_window' must be a \"HH:MM-HH:MM\" string");
    }
  });
  r.optional("peak_suppression", [&](const json& v) { r.read_real(v, "peak_suppression", c.peak_suppression); });
  r.optional("peak_off_multiplier", [&](const json& v) { r.read_real(v, "peak_off_multiplier", c.peak_off_multiplier); });
  return c;
}

inline ArchetypeSpec parse_archetype(const json& j, std::size_t index, std::vector<ValidationError>& errors) {
  ArchetypeSpec a;
  FieldReader r(j, "archetypes[" + std::to_string(index) + "]", errors);
  r.required("id", [&](const json& v) { r.read_string(v, "id", a.id); });
  r.optional("label", [&](const json& v) { r.read_string(v, "label", a.label); });
  r.required("leave_window", [&](const json& v) { r.read_window(v, "leave_window", a.leave_start, a.leave_end); });
  r.required("return_window", [&](const json& v) { r.read_window(v, "return_window", a.return_start, a.return_end); });
  r.optional("awareness", [&](const json& v) { r.read_real(v, "awareness", a.awareness); });
  r.optional("learning_rate_k", [&](const json& v) { r.read_real(v, "learning_rate_k", a.learning_rate); });
  r.optional("max_attainable_M", [&](const json& v) { r.read_real(v, "max_attainable_M", a.max_level); });
  r.optional("appliances", [&](const json& v) {
    if (!v.is_array()) {
      r.error("'appliances' must be an array of {\"appliance\", \"count\"} objects");
      return;
    }
    for (const auto& e : v) {
      if (!e.is_object()) {
        r.error("'appliances' entries must be objects");
        continue;
      }
      ApplianceCount ac;
      std::int64_t count = 1;
      FieldReader er(e, r.context() + ".appliances", errors);
      er.required("appliance", [&](const json& x) { er.read_string(x, "appliance", ac.appliance_id); });
      er.optional("count", [&](const json& x) { er.read_int(x, "count", count); });
      if (count < 0 || count > 1000) {
        er.error("'count' must lie in [0, 1000]");
        count = 0;
      }
      ac.count = static_cast<int>(count);
      a.appliances.push_back(std::move(ac));
    }
  });
  return a;
}

inline ApplianceSpec parse_appliance(const json& j, std::size_t index, std::vector<ValidationError>& errors) {
  ApplianceSpec a;
  FieldReader r(j, "appliances[" + std::to_string(index) + "]", errors);
  r.required("id", [&](const json& v) { r.read_string(v, "id", a.id); });
  r.optional("label", [&](const json& v) { r.read_string(v, "label", a.label); });
  r.required("power_watts", [&](const json& v) { r.read_real(v, "power_watts", a.power_watts); });
  r.required("usage_profile", [&](const json& v) {
    if (!v.is_array()) {
      r.error("'usage_profile' must be an array of numbers");
      return;
    }
    for (const auto& x : v) {
      if (!x.is_number()) {
        r.error("'usage_profile' must be an array of numbers");
        a.usage_profile.clear();
        return;
      }
      a.usage_profile.push_back(x.get<double>());
    }
  });
  r.optional("deferrable", [&](const json& v) { r.read_bool(v, "deferrable", a.deferrable); });
  r.optional("always_on", [&](const json& v) { r.read_bool(v, "always_on", a.always_on); });
  r.optional("mean_on_minutes", [&](const json& v) { r.read_real(v, "mean_on_minutes", a.mean_on_minutes); });
  return a;
}

} // namespace detail

/// Reads the JSON scenario document (top-level "scenario", "archetypes",
/// "appliances"). Never throws; every problem becomes a Malformed error.
inline ParseResult parse_scenario_json(std::string_view text) {
  using nlohmann::json;
  ParseResult result;
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    result.errors.push_back({ErrorKind::Malformed, std::string("invalid JSON: ") + e.what()});
    return result;
  }
  if (!root.is_object()) {
    result.errors.push_back({ErrorKind::Malformed, "top level must be a JSON object"});
    return result;
  }

  auto& errors = result.errors;
  ScenarioDocument doc;
  for (const char* key : {"scenario", "archetypes", "appliances"}) {
    if (!root.contains(key)) {
      errors.push_back({ErrorKind::Malformed, std::string("missing top-level key '") + key + "'"});
    }
  }
  if (root.contains("scenario")) {
    if (root["scenario"].is_object()) {
      doc.config = detail::parse_config(root["scenario"], errors);
    } else {
      errors.push_back({ErrorKind::Malformed, "'scenario' must be an object"});
    }
  }
  auto each = [&](const char* key, auto&& fn) {
    if (!root.contains(key)) {
      return;
    }
    const auto& arr = root[key];
    if (!arr.is_array()) {
      errors.push_back({ErrorKind::Malformed, std::string("'") + key + "' must be an array"});
      return;
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_object()) {
        errors.push_back({ErrorKind::Malformed, std::string(key) + "[" + std::to_string(i) + "] must be an object"});
        continue;
      }
      fn(arr[i], i);
    }
  };
  each("archetypes", [&](const json& j, std::size_t i) { doc.archetypes.push_back(detail::parse_archetype(j, i, errors)); });
  each("appliances", [&](const json& j, std::size_t i) { doc.appliances.push_back(detail::parse_appliance(j, i, errors)); });

  if (errors.empty()) {
    result.document = std::move(doc);
  }
  return result;
}

/// Reads a whole file; throws std::runtime_error when it cannot be opened.
inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Canonical JSON form of a config, used for the run manifest echo.
inline nlohmann::json config_to_json(const ScenarioConfig& c) {
  nlohmann::json mix = nlohmann::json::array();
  for (const auto& m : c.archetype_mix) {
    mix.push_back({{"archetype", m.archetype_id}, {"fraction", m.fraction}});
  }
  return {
      {"population", c.population},
      {"archetype_mix", mix},
      {"network_mean_degree_K", c.network_mean_degree},
      {"network_rewire_beta", c.network_rewire_beta},
      {"p_threshold", c.p_threshold},
      {"intervention_start_day", c.intervention_start_day},
      {"initial_experienced_fraction", c.initial_experienced_fraction},
      {"horizon_days", c.horizon_days},
      {"tick_minutes", c.tick_minutes},
      {"base_interaction_rate", c.base_interaction_rate},
      {"seed", c.seed},
      {"peak_window", c.peak_window.to_string()},
      {"peak_suppression", c.peak_suppression},
      {"peak_off_multiplier", c.peak_off_multiplier},
  };
}

} // namespace smartlearn
