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

#include "smartlearn/rng.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace smartlearn {

using NodeId = std::uint32_t;

struct BadDegree : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnknownNode : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Undirected simple graph over agent ids 0..n-1 with sorted adjacency lists.
class Network {
public:
  Network() = default;
  explicit Network(std::vector<std::vector<NodeId>> adjacency) : adjacency_(std::move(adjacency)) {
    for (auto& list : adjacency_) {
      std::sort(list.begin(), list.end());
    }
  }

  std::size_t node_count() const { return adjacency_.size(); }

  std::size_t edge_count() const {
    std::size_t degree_sum = 0;
    for (const auto& list : adjacency_) {
      degree_sum += list.size();
    }
    return degree_sum / 2;
  }

  double mean_degree() const {
    return adjacency_.empty() ? 0.0 : 2.0 * static_cast<double>(edge_count()) / static_cast<double>(node_count());
  }

  std::span<const NodeId> neighbors(NodeId id) const {
    if (id >= adjacency_.size()) {
      throw UnknownNode("node " + std::to_string(id) + " not in network of " + std::to_string(adjacency_.size()) +
                        " nodes");
    }
    return adjacency_[id];
  }

  bool connected(NodeId a, NodeId b) const {
    const auto& list = adjacency_.at(a);
    return std::binary_search(list.begin(), list.end(), b);
  }

  friend bool operator==(const Network&, const Network&) = default;

private:
  std::vector<std::vector<NodeId>> adjacency_;
};

/// Watts-Strogatz construction: ring lattice where every node links to its
/// `degree` nearest neighbours, then each lattice edge (i, i+j) has its far
/// end moved with probability `beta` to a uniformly drawn node that is
/// neither i nor already adjacent to i. Edge count stays n*degree/2.
inline Network generate_small_world(std::size_t n, std::size_t degree, double beta, Rng& rng) {
  if (degree < 2 || degree % 2 != 0 || degree >= n) {
    throw BadDegree("small-world degree K=" + std::to_string(degree) + " must be even, >= 2 and < n=" +
                    std::to_string(n));
  }
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("rewire probability must lie in [0,1]");
  }
  std::vector<std::vector<NodeId>> adj(n);
  const std::size_t half = degree / 2;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j <= half; ++j) {
      auto k = (i + j) % n;
      adj[i].push_back(static_cast<NodeId>(k));
      adj[k].push_back(static_cast<NodeId>(i));
    }
  }

  auto has = [&](std::size_t a, std::size_t b) {
    return std::find(adj[a].begin(), adj[a].end(), static_cast<NodeId>(b)) != adj[a].end();
  };
  auto erase = [&](std::size_t a, std::size_t b) {
    auto& list = adj[a];
    list.erase(std::find(list.begin(), list.end(), static_cast<NodeId>(b)));
  };

  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!bernoulli(rng, beta)) {
        continue;
      }
      if (adj[i].size() >= n - 1) {
        continue;
      }
      const std::size_t old = (i + j) % n;
      std::size_t target = 0;
      do {
        target = static_cast<std::size_t>(uniform_below(rng, n));
      } while (target == i || has(i, target));
      erase(i, old);
      erase(old, i);
      adj[i].push_back(static_cast<NodeId>(target));
      adj[target].push_back(static_cast<NodeId>(i));
    }
  }
  return Network(std::move(adj));
}

/// Mean local clustering; nodes with fewer than two neighbours count as 0.
inline double clustering_coefficient(const Network& net) {
  const std::size_t n = net.node_count();
  if (n == 0) {
    return 0.0;
  }
  double sum = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    auto nb = net.neighbors(v);
    const std::size_t d = nb.size();
    if (d < 2) {
      continue;
    }
    std::size_t closed = 0;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a + 1; b < d; ++b) {
        if (net.connected(nb[a], nb[b])) {
          ++closed;
        }
      }
    }
    sum += static_cast<double>(closed) / (static_cast<double>(d * (d - 1)) / 2.0);
  }
  return sum / static_cast<double>(n);
}

/// Hop distances from `source`; -1 marks unreachable nodes.
inline std::vector<int> bfs_distances(const Network& net, NodeId source) {
  std::vector<int> dist(net.node_count(), -1);
  std::queue<NodeId> frontier;
  dist.at(source) = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    NodeId u = frontier.front();
    frontier.pop();
    for (NodeId w : net.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

/// Mean shortest-path length over up to `max_pairs` random distinct pairs.
/// Unreachable pairs are skipped; nullopt when no sampled pair is connected.
inline std::optional<double> sampled_mean_path_length(const Network& net, Rng& rng, std::size_t max_pairs = 1000) {
  const std::size_t n = net.node_count();
  if (n < 2 || max_pairs == 0) {
    return std::nullopt;
  }
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t s = 0; s < max_pairs; ++s) {
    auto u = static_cast<NodeId>(uniform_below(rng, n));
    auto v = static_cast<NodeId>(uniform_below(rng, n - 1));
    if (v >= u) {
      ++v;
    }
    int d = bfs_distances(net, u)[v];
    if (d > 0) {
      total += d;
      ++counted;
    }
  }
  if (counted == 0) {
    return std::nullopt;
  }
  return total / static_cast<double>(counted);
}

} // namespace smartlearn
