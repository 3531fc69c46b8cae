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
#include "smartlearn/engine.hpp"
#include "smartlearn/metrics.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace smartlearn {

struct CsvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) {
      return out;
    }
    start = pos + 1;
  }
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw CsvError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) + "'");
  }
  return value;
}

/// Reads the header then every non-empty line, tolerating a trailing CR.
inline std::vector<std::string> read_rows(std::istream& in, std::string_view expected_header) {
  std::string line;
  if (!std::getline(in, line)) {
    throw CsvError("empty file");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  if (line != expected_header) {
    throw CsvError("expected header '" + std::string(expected_header) + "', got '" + line + "'");
  }
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (!line.empty()) {
      rows.push_back(line);
    }
  }
  return rows;
}

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

} // namespace detail

inline constexpr std::string_view load_curve_header = "bucket_start_min,mean_watts";
inline constexpr std::string_view adoption_header = "day,uninfluenced,inexperienced,experienced";
inline constexpr std::string_view events_header = "tick,agent_id,kind,detail";

inline void write_load_curve(std::ostream& out, const LoadCurve& curve) {
  out << load_curve_header << '\n';
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out << i * static_cast<std::size_t>(curve.bucket_minutes) << ',' << detail::fixed(curve.values[i], 3) << '\n';
  }
}

/// Parses a load-curve CSV. Bucket starts must be consecutive equal steps
/// from 0 that tile the day.
inline LoadCurve read_load_curve(std::istream& in) {
  auto rows = detail::read_rows(in, load_curve_header);
  if (rows.empty() || minutes_per_day % static_cast<int>(rows.size()) != 0) {
    throw CsvError("a load curve needs a number of rows dividing 1440, got " + std::to_string(rows.size()));
  }
  LoadCurve curve;
  curve.bucket_minutes = minutes_per_day / static_cast<int>(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto fields = detail::split(rows[i]);
    if (fields.size() != 2) {
      throw CsvError("line " + std::to_string(i + 2) + ": expected 2 fields");
    }
    auto start = detail::parse_number<long>(fields[0], i + 2);
    if (start != static_cast<long>(i) * curve.bucket_minutes) {
      throw CsvError("line " + std::to_string(i + 2) + ": bucket_start_min " + std::to_string(start) + " out of sequence");
    }
    auto watts = detail::parse_number<double>(fields[1], i + 2);
    if (!(watts >= 0.0) || !std::isfinite(watts)) {
      throw CsvError("line " + std::to_string(i + 2) + ": mean_watts must be finite and non-negative");
    }
    curve.values.push_back(watts);
  }
  return curve;
}

inline void write_adoption(std::ostream& out, std::span<const AdoptionCounts> days) {
  out << adoption_header << '\n';
  for (std::size_t d = 0; d < days.size(); ++d) {
    out << d << ',' << days[d].uninfluenced << ',' << days[d].inexperienced << ',' << days[d].experienced << '\n';
  }
}

inline std::vector<AdoptionCounts> read_adoption(std::istream& in) {
  auto rows = detail::read_rows(in, adoption_header);
  std::vector<AdoptionCounts> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto f = detail::split(rows[i]);
    if (f.size() != 4) {
      throw CsvError("line " + std::to_string(i + 2) + ": expected 4 fields");
    }
    if (detail::parse_number<std::size_t>(f[0], i + 2) != i) {
      throw CsvError("line " + std::to_string(i + 2) + ": day out of sequence");
    }
    out.push_back({detail::parse_number<std::int64_t>(f[1], i + 2), detail::parse_number<std::int64_t>(f[2], i + 2),
                   detail::parse_number<std::int64_t>(f[3], i + 2)});
  }
  return out;
}

/// detail column: "<instance>:<appliance id>" for switch events, the peer id
/// for Interacted, empty otherwise.
inline void write_events(std::ostream& out, std::span<const AgentEvent> events, std::span<const ApplianceSpec> catalog) {
  out << events_header << '\n';
  for (const auto& e : events) {
    out << e.tick << ',' << e.agent << ',' << to_string(e.kind) << ',';
    if (e.kind == EventKind::SwitchedOn || e.kind == EventKind::SwitchedOff) {
      out << e.detail << ':' << catalog[static_cast<std::size_t>(e.appliance)].id;
    } else if (e.kind == EventKind::Interacted) {
      out << e.detail;
    }
    out << '\n';
  }
}

inline std::vector<AgentEvent> read_events(std::istream& in, std::span<const ApplianceSpec> catalog) {
  static constexpr EventKind kinds[] = {EventKind::LeftHome,    EventKind::ReturnedHome, EventKind::Influenced,
                                        EventKind::BecameExperienced, EventKind::SwitchedOn, EventKind::SwitchedOff,
                                        EventKind::Interacted};
  auto rows = detail::read_rows(in, events_header);
  std::vector<AgentEvent> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto line_no = i + 2;
    auto f = detail::split(rows[i]);
    if (f.size() != 4) {
      throw CsvError("line " + std::to_string(line_no) + ": expected 4 fields");
    }
    AgentEvent e;
    e.tick = detail::parse_number<std::int64_t>(f[0], line_no);
    e.agent = detail::parse_number<AgentId>(f[1], line_no);
    bool known = false;
    for (auto k : kinds) {
      if (f[2] == to_string(k)) {
        e.kind = k;
        known = true;
      }
    }
    if (!known) {
      throw CsvError("line " + std::to_string(line_no) + ": unknown event kind '" + std::string(f[2]) + "'");
    }
    if (e.kind == EventKind::SwitchedOn || e.kind == EventKind::SwitchedOff) {
      auto colon = f[3].find(':');
      if (colon == std::string_view::npos) {
        throw CsvError("line " + std::to_string(line_no) + ": switch detail must be instance:appliance");
      }
      e.detail = detail::parse_number<std::int64_t>(f[3].substr(0, colon), line_no);
      auto id = f[3].substr(colon + 1);
      for (std::size_t a = 0; a < catalog.size(); ++a) {
        if (catalog[a].id == id) {
          e.appliance = static_cast<std::int32_t>(a);
        }
      }
      if (e.appliance < 0) {
        throw CsvError("line " + std::to_string(line_no) + ": unknown appliance '" + std::string(id) + "'");
      }
    } else if (e.kind == EventKind::Interacted) {
      e.detail = detail::parse_number<std::int64_t>(f[3], line_no);
    } else if (!f[3].empty()) {
      throw CsvError("line " + std::to_string(line_no) + ": unexpected detail");
    }
    out.push_back(e);
  }
  return out;
}

} // namespace smartlearn
