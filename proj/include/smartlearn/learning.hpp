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

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace smartlearn {

/// Parameters of the behavioural learning curve P(t) = M (1 - exp(-k t)).
struct LearningParams {
  double max_level = 1.0;     ///< M, the asymptotic level, in (0, 1]
  double rate = 0.1;          ///< k, learning rate per reinforced trial, > 0
  double p_threshold = 0.85;  ///< level at which a user counts as experienced, in (0, 1]

  bool valid() const {
    return max_level > 0.0 && max_level <= 1.0 && rate > 0.0 && std::isfinite(rate) &&
           p_threshold > 0.0 && p_threshold <= 1.0;
  }
};

/// Reinforced-trial count plus the experienced flag derived from it.
struct LearningState {
  std::uint64_t trials = 0;
  bool experienced = false;

  friend bool operator==(const LearningState&, const LearningState&) = default;
};

/// Learning level after `trials` reinforced trials.
inline double adoption_probability(const LearningParams& params, std::uint64_t trials) {
  // -expm1(-x) keeps full relative precision for small k t.
  return params.max_level * -std::expm1(-params.rate * static_cast<double>(trials));
}

inline bool reaches_threshold(const LearningParams& params, std::uint64_t trials) {
  return adoption_probability(params, trials) >= params.p_threshold;
}

/// Smallest t >= 1 with adoption_probability(t) >= p_threshold, or nullopt
/// when the threshold sits at or above the asymptote M.
inline std::optional<std::uint64_t> trials_to_threshold(const LearningParams& params) {
  if (!params.valid()) {
    throw std::invalid_argument("trials_to_threshold: invalid learning parameters");
  }
  if (params.p_threshold >= params.max_level) {
    return std::nullopt;
  }
  // Closed-form guess, then settle against the exact predicate so the result
  // agrees with record_trial bit for bit.
  double guess = -std::log1p(-params.p_threshold / params.max_level) / params.rate;
  if (!(guess < 1e18)) {
    return std::nullopt;
  }
  std::uint64_t t = guess < 1.0 ? 1 : static_cast<std::uint64_t>(std::ceil(guess));
  while (t > 1 && reaches_threshold(params, t - 1)) {
    --t;
  }
  for (int step = 0; !reaches_threshold(params, t); ++step) {
    if (step > 1'000'000) {
      return std::nullopt;  // threshold lost in rounding just below M
    }
    ++t;
  }
  return t;
}

/// One more reinforced trial. Experienced is absorbing.
inline LearningState record_trial(LearningState state, const LearningParams& params) {
  state.trials += 1;
  state.experienced = state.experienced || reaches_threshold(params, state.trials);
  return state;
}

/// Knowledge exchange: the recipient gains one trial from a strictly more
/// practised donor, otherwise nothing changes.
inline LearningState absorb_interaction(LearningState recipient, const LearningState& donor,
                                        const LearningParams& params) {
  if (donor.trials > recipient.trials) {
    return record_trial(recipient, params);
  }
  return recipient;
}

/// Learning state of a user seeded as already experienced.
inline std::optional<LearningState> experienced_seed(const LearningParams& params) {
  auto t = trials_to_threshold(params);
  if (!t) {
    return std::nullopt;
  }
  return LearningState{*t, true};
}

} // namespace smartlearn
