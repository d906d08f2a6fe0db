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

#include "resvor/graph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "resvor/error.hpp"

namespace resvor {

namespace {

std::vector<Edge> normalized(std::vector<Edge> edges, int n) {
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorCode::InvalidVertex,
                  "edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
    }
    if (u == v) throw Error(ErrorCode::InvalidArgument, "self-loop at " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate edge");
  }
  return edges;
}

// BFS distances over the given adjacency; -1 marks unreachable.
std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int source) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int w : adj[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

}  // namespace

CommGraph::CommGraph(int n, std::vector<Edge> delta_edges, std::vector<Edge> ext_edges, int k)
    : n_(n), k_(k) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative vertex count");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "extension level must be >= 1");
  delta_ = normalized(std::move(delta_edges), n);
  ext_ = normalized(std::move(ext_edges), n);
  if (k == 1 && !ext_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "extension edges present with k = 1");
  }
  std::vector<Edge> overlap;
  std::set_intersection(delta_.begin(), delta_.end(), ext_.begin(), ext_.end(),
                        std::back_inserter(overlap));
  if (!overlap.empty()) throw Error(ErrorCode::InvalidArgument, "delta and ext edges overlap");

  adj_.assign(n, {});
  delta_adj_.assign(n, {});
  for (const auto& [u, v] : delta_) {
    delta_adj_[u].push_back(v);
    delta_adj_[v].push_back(u);
  }
  adj_ = delta_adj_;
  for (const auto& [u, v] : ext_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  for (auto& a : delta_adj_) std::sort(a.begin(), a.end());

  if (!ext_.empty()) {
    std::vector<std::vector<int>> dist(n);
    for (const auto& [u, v] : ext_) {
      if (dist[u].empty()) dist[u] = bfs(delta_adj_, u);
      const int d = dist[u][v];
      if (d < 2 || d > k) {
        throw Error(ErrorCode::InvalidArgument,
                    "ext edge (" + std::to_string(u) + ", " + std::to_string(v) +
                        ") has delta-distance " + std::to_string(d) + " outside [2, k]");
      }
    }
  }
}

std::vector<Edge> CommGraph::edges() const {
  std::vector<Edge> all;
  all.reserve(num_edges());
  std::merge(delta_.begin(), delta_.end(), ext_.begin(), ext_.end(), std::back_inserter(all));
  return all;
}

const std::vector<int>& CommGraph::neighbors(int v) const {
  if (v < 0 || v >= n_) throw Error(ErrorCode::InvalidVertex, "vertex " + std::to_string(v));
  return adj_[v];
}

const std::vector<int>& CommGraph::delta_neighbors(int v) const {
  if (v < 0 || v >= n_) throw Error(ErrorCode::InvalidVertex, "vertex " + std::to_string(v));
  return delta_adj_[v];
}

bool CommGraph::has_edge(int u, int v) const {
  const auto& a = neighbors(u);
  return std::binary_search(a.begin(), a.end(), v);
}

CommGraph from_triangulation(const Triangulation& tri) {
  return CommGraph(tri.num_vertices(), tri.edges());
}

Eigen::MatrixXi adjacency_matrix(const CommGraph& g) {
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(g.n(), g.n());
  for (const auto& [u, v] : g.edges()) {
    a(u, v) = 1;
    a(v, u) = 1;
  }
  return a;
}

CommGraph k_hop_extend(const CommGraph& g, int K) {
  if (g.k() != 1) throw Error(ErrorCode::NotBaseGraph, "graph is already extended");
  if (K < 1) throw Error(ErrorCode::InvalidArgument, "K must be >= 1");
  if (K == 1) return g;

  // Reachability within K steps: nonzero pattern of (I + A)^K.
  const int n = g.n();
  const Eigen::MatrixXi step = adjacency_matrix(g) + Eigen::MatrixXi::Identity(n, n);
  Eigen::MatrixXi reach = step;
  for (int i = 1; i < K; ++i) {
    reach = (reach * step).cwiseMin(1);
  }

  std::vector<Edge> ext;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (reach(u, v) != 0 && step(u, v) == 0) ext.emplace_back(u, v);
    }
  }
  return CommGraph(n, g.delta_edges(), std::move(ext), K);
}

Eigen::MatrixXi delta_distance_matrix(const CommGraph& g) {
  const int n = g.n();
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v) adj[v] = g.delta_neighbors(v);
  Eigen::MatrixXi dist(n, n);
  for (int s = 0; s < n; ++s) {
    const auto d = bfs(adj, s);
    for (int t = 0; t < n; ++t) {
      if (d[t] < 0) {
        throw Error(ErrorCode::DisconnectedDeltaGraph,
                    "vertices " + std::to_string(s) + " and " + std::to_string(t) +
                        " are not delta-connected");
      }
      dist(s, t) = d[t];
    }
  }
  return dist;
}

CommGraph voronoi_graph(std::span<const Point2> positions, int K) {
  return k_hop_extend(from_triangulation(delaunay(positions)), K);
}

CommGraph complete_graph(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return CommGraph(n, std::move(e));
}

CommGraph path_graph(int n) {
  std::vector<Edge> e;
  for (int u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return CommGraph(n, std::move(e));
}

}  // namespace resvor
