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

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace smartlearn {

inline constexpr int minutes_per_day = 1440;

/// Clock time within a single day, at minute resolution.
class TimeOfDay {
public:
  constexpr TimeOfDay() = default;

  /// Throws std::out_of_range unless 0 <= minutes < 1440.
  explicit constexpr TimeOfDay(int minutes_since_midnight) : minutes_(minutes_since_midnight) {
    if (minutes_since_midnight < 0 || minutes_since_midnight >= minutes_per_day) {
      throw std::out_of_range("TimeOfDay outside [0, 1440)");
    }
  }

  static constexpr TimeOfDay hm(int hours, int minutes) { return TimeOfDay(hours * 60 + minutes); }

  constexpr int minutes() const { return minutes_; }

  /// Parses "HH:MM" (24 h clock). Returns nullopt on any malformed input.
  static std::optional<TimeOfDay> parse(std::string_view text) {
    if (text.size() != 5 || text[2] != ':') {
      return std::nullopt;
    }
    auto digit = [&](std::size_t i) -> int {
      char c = text[i];
      return (c >= '0' && c <= '9') ? c - '0' : -1;
    };
    int h1 = digit(0), h2 = digit(1), m1 = digit(3), m2 = digit(4);
    if (h1 < 0 || h2 < 0 || m1 < 0 || m2 < 0) {
      return std::nullopt;
    }
    int hours = h1 * 10 + h2;
    int minutes = m1 * 10 + m2;
    if (hours > 23 || minutes > 59) {
      return std::nullopt;
    }
    return TimeOfDay(hours * 60 + minutes);
  }

  std::string to_string() const {
    const int h = minutes_ / 60, m = minutes_ % 60;
    return {char('0' + h / 10), char('0' + h % 10), ':', char('0' + m / 10), char('0' + m % 10)};
  }

  friend constexpr auto operator<=>(TimeOfDay, TimeOfDay) = default;

private:
  int minutes_ = 0;
};

/// Half-open interval [start, end) of clock time; used for peak windows.
struct TimeWindow {
  TimeOfDay start;
  TimeOfDay end;

  constexpr bool contains(TimeOfDay t) const { return t >= start && t < end; }
  constexpr bool empty() const { return end <= start; }

  /// Parses "HH:MM-HH:MM".
  static std::optional<TimeWindow> parse(std::string_view text) {
    if (text.size() != 11 || text[5] != '-') {
      return std::nullopt;
    }
    auto a = TimeOfDay::parse(text.substr(0, 5));
    auto b = TimeOfDay::parse(text.substr(6, 5));
    if (!a || !b) {
      return std::nullopt;
    }
    return TimeWindow{*a, *b};
  }

  std::string to_string() const { return start.to_string() + "-" + end.to_string(); }

  friend constexpr bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

} // namespace smartlearn
