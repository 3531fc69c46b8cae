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

#include "smartlearn/engine.hpp"
#include "smartlearn/time_of_day.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace smartlearn {

struct BadBucket : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct LengthMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegenerateCurve : std::domain_error {
  using std::domain_error::domain_error;
};
struct ZeroBase : std::domain_error {
  using std::domain_error::domain_error;
};

/// Mean demand per time-of-day bucket, averaged over days.
struct LoadCurve {
  int bucket_minutes = 30;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  TimeOfDay bucket_start(std::size_t i) const { return TimeOfDay(static_cast<int>(i) * bucket_minutes); }

  friend bool operator==(const LoadCurve&, const LoadCurve&) = default;
};

inline constexpr int default_bucket_minutes = 30;

inline LoadCurve aggregate_load(std::span<const double> series, int tick_minutes, int bucket_minutes = default_bucket_minutes) {
  if (tick_minutes <= 0 || minutes_per_day % tick_minutes != 0) {
    throw BadBucket("tick length must divide the day");
  }
  if (bucket_minutes <= 0 || bucket_minutes % tick_minutes != 0 || minutes_per_day % bucket_minutes != 0) {
    throw BadBucket("bucket of " + std::to_string(bucket_minutes) + " min is not a multiple of the " +
                    std::to_string(tick_minutes) + " min tick dividing the day");
  }
  const std::size_t per_day = static_cast<std::size_t>(minutes_per_day / tick_minutes);
  const std::size_t per_bucket = static_cast<std::size_t>(bucket_minutes / tick_minutes);
  const std::size_t buckets = static_cast<std::size_t>(minutes_per_day / bucket_minutes);
  const std::size_t days = series.size() / per_day;
  if (days == 0 || series.size() % per_day != 0) {
    throw BadBucket("load series does not cover a whole number of days");
  }
  LoadCurve curve{bucket_minutes, std::vector<double>(buckets, 0.0)};
  for (std::size_t t = 0; t < series.size(); ++t) {
    curve.values[(t % per_day) / per_bucket] += series[t];
  }
  for (auto& v : curve.values) {
    v /= static_cast<double>(per_bucket * days);
  }
  return curve;
}

inline LoadCurve aggregate_load(const SimOutput& output, int bucket_minutes = default_bucket_minutes) {
  return aggregate_load(output.load_series, static_cast<int>(output.config.tick_minutes), bucket_minutes);
}

inline double pearson_correlation(const LoadCurve& a, const LoadCurve& b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("curves have " + std::to_string(a.size()) + " and " + std::to_string(b.size()) + " buckets");
  }
  const auto n = static_cast<double>(a.size());
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a.values[i];
    mean_b += b.values[i];
  }
  mean_a /= n;
  mean_b /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a.values[i] - mean_a;
    const double db = b.values[i] - mean_b;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) {
    throw DegenerateCurve("correlation undefined for a constant curve");
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

struct PeakStats {
  TimeOfDay bucket;
  double watts = 0.0;
};

/// Maximum bucket; the earliest one wins ties.
inline PeakStats peak_stats(const LoadCurve& curve) {
  if (curve.values.empty()) {
    throw std::invalid_argument("peak_stats of an empty curve");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve.values[i] > curve.values[best]) {
      best = i;
    }
  }
  return {curve.bucket_start(best), curve.values[best]};
}

/// Mean over buckets whose start time lies in [window.start, window.end).
inline double window_mean(const LoadCurve& curve, const TimeWindow& window) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (window.contains(curve.bucket_start(i))) {
      sum += curve.values[i];
      ++count;
    }
  }
  if (count == 0) {
    throw std::invalid_argument("window " + window.to_string() + " covers no bucket");
  }
  return sum / static_cast<double>(count);
}

/// 1 - treated/base over the window means; positive values are reductions.
inline double peak_reduction(const LoadCurve& base, const LoadCurve& treated, const TimeWindow& window) {
  if (base.size() != treated.size() || base.bucket_minutes != treated.bucket_minutes) {
    throw LengthMismatch("curves use different bucketing");
  }
  const double b = window_mean(base, window);
  if (b == 0.0) {
    throw ZeroBase("base curve is zero over " + window.to_string());
  }
  return 1.0 - window_mean(treated, window) / b;
}

} // namespace smartlearn
