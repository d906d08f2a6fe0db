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

#ifndef RESVOR_GRAPH_HPP
#define RESVOR_GRAPH_HPP

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "resvor/geometry.hpp"

namespace resvor {

using Edge = std::pair<int, int>;

/// Undirected communication graph. Edges of the base triangulation graph
/// ("delta" edges) are kept apart from edges added by k-hop extension.
class CommGraph {
 public:
  CommGraph() = default;

  /// Validates: endpoints in range, no self-loops or duplicates, delta and
  /// ext disjoint, k >= 1, ext empty when k == 1, and every ext edge has
  /// delta-distance in [2, k].
  CommGraph(int n, std::vector<Edge> delta_edges, std::vector<Edge> ext_edges = {}, int k = 1);

  int n() const { return n_; }
  int k() const { return k_; }
  const std::vector<Edge>& delta_edges() const { return delta_; }
  const std::vector<Edge>& ext_edges() const { return ext_; }
  std::size_t num_edges() const { return delta_.size() + ext_.size(); }
  /// All edges, sorted.
  std::vector<Edge> edges() const;

  /// Sorted neighbors over delta and ext edges.
  const std::vector<int>& neighbors(int v) const;
  const std::vector<int>& delta_neighbors(int v) const;
  bool has_edge(int u, int v) const;
  bool is_complete() const { return num_edges() == static_cast<std::size_t>(n_) * (n_ - 1) / 2; }

  friend bool operator==(const CommGraph& a, const CommGraph& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.delta_ == b.delta_ && a.ext_ == b.ext_;
  }

 private:
  int n_ = 0;
  int k_ = 1;
  std::vector<Edge> delta_;
  std::vector<Edge> ext_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<int>> delta_adj_;
};

CommGraph from_triangulation(const Triangulation& tri);

/// Connects every pair at delta-distance 2..K. Throws NotBaseGraph when the
/// input is already extended.
CommGraph k_hop_extend(const CommGraph& g, int K);

/// Hop counts over delta edges only. Throws DisconnectedDeltaGraph.
Eigen::MatrixXi delta_distance_matrix(const CommGraph& g);

Eigen::MatrixXi adjacency_matrix(const CommGraph& g);

/// Delaunay graph of `positions` extended to K hops.
CommGraph voronoi_graph(std::span<const Point2> positions, int K);

CommGraph complete_graph(int n);
CommGraph path_graph(int n);

}  // namespace resvor

#endif  // RESVOR_GRAPH_HPP
