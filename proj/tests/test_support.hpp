// Copyright 2026 The resvor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent oracles and generators shared by the test binaries. Nothing
// here calls into the enumeration or extension code it is used to check.

#ifndef RESVOR_TESTS_TEST_SUPPORT_HPP
#define RESVOR_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "resvor/geometry.hpp"
#include "resvor/graph.hpp"
#include "resvor/rng.hpp"

namespace resvor::testing {

inline std::vector<Point2> random_points(Rng& rng, int n, double w = 10.0, double h = 10.0) {
  std::vector<Point2> pts(n);
  for (auto& p : pts) p = Point2(rng.uniform(0.0, w), rng.uniform(0.0, h));
  return pts;
}

/// Distinct lattice points, which produce many cocircular quadruples.
inline std::vector<Point2> random_lattice_points(Rng& rng, int n, int side) {
  std::set<std::pair<int, int>> used;
  std::vector<Point2> pts;
  while (static_cast<int>(pts.size()) < n) {
    const int x = rng.uniform_int(0, side - 1);
    const int y = rng.uniform_int(0, side - 1);
    if (used.insert({x, y}).second) pts.emplace_back(x, y);
  }
  return pts;
}

/// Erdos-Renyi style graph, not necessarily connected.
inline CommGraph random_graph(Rng& rng, int n, double p) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) e.emplace_back(u, v);
    }
  }
  return CommGraph(n, std::move(e));
}

inline std::vector<std::vector<int>> adjacency_lists(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

/// Hop distances by BFS over the given edges; -1 when unreachable.
inline std::vector<std::vector<int>> bfs_distances(int n, const std::vector<Edge>& edges) {
  const auto adj = adjacency_lists(n, edges);
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::queue<int> q;
    dist[s][s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int w : adj[u]) {
        if (dist[s][w] < 0) {
          dist[s][w] = dist[s][u] + 1;
          q.push(w);
        }
      }
    }
  }
  return dist;
}

/// Edge set of the distance-<=K power of the delta graph.
inline std::set<Edge> distance_k_edges(const CommGraph& base, int K) {
  const auto dist = bfs_distances(base.n(), base.delta_edges());
  std::set<Edge> out;
  for (int u = 0; u < base.n(); ++u) {
    for (int v = u + 1; v < base.n(); ++v) {
      if (dist[u][v] >= 1 && dist[u][v] <= K) out.insert({u, v});
    }
  }
  return out;
}

/// Brute-force (r,s)-robustness straight from the definition: every ordered
/// pair of non-empty disjoint subsets, built recursively as explicit sets.
inline bool naive_rs_robust(const CommGraph& g, int r, int s) {
  const int n = g.n();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
  auto x_count = [&](const std::set<int>& S) {
    int count = 0;
    for (int v : S) {
      int outside = 0;
      for (int w = 0; w < n; ++w) {
        if (adj[v][w] && !S.contains(w)) ++outside;
      }
      if (outside >= r) ++count;
    }
    return count;
  };
  std::set<int> s1, s2;
  bool ok = true;
  std::function<void(int)> assign = [&](int v) {
    if (!ok) return;
    if (v == n) {
      if (s1.empty() || s2.empty()) return;
      const int x1 = x_count(s1);
      const int x2 = x_count(s2);
      if (x1 != static_cast<int>(s1.size()) && x2 != static_cast<int>(s2.size()) && x1 + x2 < s) {
        ok = false;
      }
      return;
    }
    assign(v + 1);
    s1.insert(v);
    assign(v + 1);
    s1.erase(v);
    s2.insert(v);
    assign(v + 1);
    s2.erase(v);
  };
  assign(0);
  return ok;
}

}  // namespace resvor::testing

#endif  // RESVOR_TESTS_TEST_SUPPORT_HPP
