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

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace smartlearn {

/// Engine behind every stochastic decision. The std::mt19937_64 output
/// sequence is fixed by the standard, so together with the portable
/// distributions below a run is reproducible on any conforming host.
using Rng = std::mt19937_64;

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

} // namespace detail

/// Derives the seed of a named substream (optionally indexed, e.g. per agent)
/// from the master seed. Distinct (name, index) pairs give unrelated streams,
/// so drawing more numbers in one subsystem never shifts another.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::string_view name,
                                       std::uint64_t index = 0) {
  std::uint64_t h = detail::splitmix64(master ^ detail::fnv1a(name));
  h = detail::splitmix64(h ^ detail::splitmix64(index + 0x632be59bd9b4e019ULL));
  return h;
}

inline Rng make_substream(std::uint64_t master, std::string_view name, std::uint64_t index = 0) {
  return Rng(substream_seed(master, name, index));
}

// The standard distributions are implementation-defined, so the few we need
// are spelled out here.

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// True with probability p; p <= 0 never fires, p >= 1 always fires.
/// Always consumes exactly one draw.
inline bool bernoulli(Rng& rng, double p) {
  return uniform01(rng) < p;
}

/// Uniform integer in [0, bound) by rejection; bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - Rng::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) {
    x = rng();
  }
  return x % bound;
}

/// Uniform integer in the closed range [lo, hi].
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

/// Fisher-Yates with the portable integer draw above.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

} // namespace smartlearn
