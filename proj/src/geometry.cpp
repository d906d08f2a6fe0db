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

#include "resvor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "resvor/error.hpp"

namespace resvor {

namespace {

using DirectedEdge = std::pair<int, int>;

std::pair<int, int> undirected(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

void validate_input(std::span<const Point2> points, const std::vector<int>& order) {
  const auto n = static_cast<int>(points.size());
  if (n < 3) throw Error(ErrorCode::TooFewPoints, "need at least 3 points, got " + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    if (!points[i].allFinite()) {
      throw Error(ErrorCode::NonFiniteInput, "point " + std::to_string(i) + " is not finite");
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Point2& p = points[order[i]];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const Point2& q = points[order[j]];
      if (q.x() - p.x() >= kDuplicateDistance) break;
      if ((q - p).norm() < kDuplicateDistance) {
        throw Error(ErrorCode::DuplicatePoints, "points " + std::to_string(order[i]) + " and " +
                                                    std::to_string(order[j]) + " coincide");
      }
    }
  }
}

// Triangle soup plus a directed-edge index; every CCW triangle (a, b, c)
// registers a->b, b->c and c->a.
class Mesh {
 public:
  explicit Mesh(std::span<const Point2> pts) : pts_(pts) {}

  void add(int a, int b, int c) {
    const int t = static_cast<int>(tris_.size());
    tris_.push_back({a, b, c});
    index(t);
  }

  // Lawson flipping until every interior edge is locally Delaunay.
  void legalize() {
    std::vector<std::pair<int, int>> stack;
    for (const auto& [e, t] : owner_) {
      if (e.first < e.second) stack.push_back(e);
    }
    // Process in a fixed order independent of map layout.
    std::sort(stack.rbegin(), stack.rend());
    const std::size_t n = pts_.size();
    const std::size_t max_flips = 64 * n * n + 1024;
    std::size_t flips = 0;
    while (!stack.empty()) {
      const auto [a0, b0] = stack.back();
      stack.pop_back();
      auto it1 = owner_.find({a0, b0});
      auto it2 = owner_.find({b0, a0});
      if (it1 == owner_.end() || it2 == owner_.end()) continue;
      const int t1 = it1->second;
      const int t2 = it2->second;
      const int a = a0, b = b0;
      const int c = third(t1, a, b);
      const int d = third(t2, b, a);
      if (!should_flip(a, b, c, d)) continue;
      if (++flips > max_flips) {
        throw Error(ErrorCode::CollinearInput, "edge flipping did not terminate");
      }
      unindex(t1);
      unindex(t2);
      tris_[t1] = {a, d, c};
      tris_[t2] = {d, b, c};
      index(t1);
      index(t2);
      stack.push_back(undirected(a, d));
      stack.push_back(undirected(d, b));
      stack.push_back(undirected(b, c));
      stack.push_back(undirected(c, a));
    }
  }

  const std::vector<Triangle>& triangles() const { return tris_; }

 private:
  bool should_flip(int a, int b, int c, int d) const {
    const Point2& pa = pts_[a];
    const Point2& pb = pts_[b];
    const Point2& pc = pts_[c];
    const Point2& pd = pts_[d];
    if (orient2d(pa, pd, pc) <= 0.0 || orient2d(pd, pb, pc) <= 0.0) return false;
    double scale = 0.0;
    const double det = incircle(pa, pb, pc, pd, &scale);
    const double band = kIncircleRelEps * scale;
    if (det > band) return true;
    if (det < -band) return false;
    // Cocircular within tolerance: keep the lexicographically smaller diagonal.
    return undirected(c, d) < undirected(a, b);
  }

  int third(int t, int a, int b) const {
    for (int v : tris_[t]) {
      if (v != a && v != b) return v;
    }
    return -1;
  }

  void index(int t) {
    const auto& tr = tris_[t];
    for (int i = 0; i < 3; ++i) owner_[{tr[i], tr[(i + 1) % 3]}] = t;
  }

  void unindex(int t) {
    const auto& tr = tris_[t];
    for (int i = 0; i < 3; ++i) owner_.erase({tr[i], tr[(i + 1) % 3]});
  }

  std::span<const Point2> pts_;
  std::vector<Triangle> tris_;
  std::map<DirectedEdge, int> owner_;
};

}  // namespace

double orient2d(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

double incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d,
                double* scale) {
  const Eigen::Vector2d ad = a - d;
  const Eigen::Vector2d bd = b - d;
  const Eigen::Vector2d cd = c - d;
  const double alift = ad.squaredNorm();
  const double blift = bd.squaredNorm();
  const double clift = cd.squaredNorm();
  const double bc = bd.x() * cd.y() - cd.x() * bd.y();
  const double ca = cd.x() * ad.y() - ad.x() * cd.y();
  const double ab = ad.x() * bd.y() - bd.x() * ad.y();
  if (scale != nullptr) {
    *scale = alift * (std::abs(bd.x() * cd.y()) + std::abs(cd.x() * bd.y())) +
             blift * (std::abs(cd.x() * ad.y()) + std::abs(ad.x() * cd.y())) +
             clift * (std::abs(ad.x() * bd.y()) + std::abs(bd.x() * ad.y()));
  }
  return alift * bc + blift * ca + clift * ab;
}

std::vector<std::pair<int, int>> Triangulation::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(triangles.size() * 3);
  for (const auto& t : triangles) {
    for (int i = 0; i < 3; ++i) out.push_back(undirected(t[i], t[(i + 1) % 3]));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Triangulation delaunay(std::span<const Point2> points) {
  const auto n = static_cast<int>(points.size());
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (points[i].x() != points[j].x()) return points[i].x() < points[j].x();
    if (points[i].y() != points[j].y()) return points[i].y() < points[j].y();
    return i < j;
  });
  validate_input(points, order);

  // Leading run of collinear points in sweep order.
  int m = 2;
  while (m < n && orient2d(points[order[0]], points[order[1]], points[order[m]]) == 0.0) ++m;
  if (m == n) throw Error(ErrorCode::CollinearInput, "all points lie on one line");

  Mesh mesh(points);
  const int apex = order[m];
  const bool apex_left = orient2d(points[order[0]], points[order[1]], points[apex]) > 0.0;
  for (int i = 0; i + 1 < m; ++i) {
    if (apex_left) {
      mesh.add(order[i], order[i + 1], apex);
    } else {
      mesh.add(order[i + 1], order[i], apex);
    }
  }

  // CCW hull as a cyclic vertex list.
  std::vector<int> hull;
  if (apex_left) {
    for (int i = 0; i < m; ++i) hull.push_back(order[i]);
    hull.push_back(apex);
  } else {
    hull.push_back(order[0]);
    hull.push_back(apex);
    for (int i = m - 1; i >= 1; --i) hull.push_back(order[i]);
  }

  for (int k = m + 1; k < n; ++k) {
    const int p = order[k];
    const auto h = static_cast<int>(hull.size());
    std::vector<char> visible(h);
    for (int i = 0; i < h; ++i) {
      visible[i] = orient2d(points[hull[i]], points[hull[(i + 1) % h]], points[p]) < 0.0;
    }
    int first = -1;
    for (int i = 0; i < h; ++i) {
      if (visible[i] && !visible[(i + h - 1) % h]) {
        first = i;
        break;
      }
    }
    if (first < 0) throw Error(ErrorCode::CollinearInput, "sweep found no visible hull edge");
    int last = first;
    while (visible[(last + 1) % h]) last = (last + 1) % h;
    for (int i = first;; i = (i + 1) % h) {
      mesh.add(hull[(i + 1) % h], hull[i], p);
      if (i == last) break;
    }
    // Replace the vertices strictly inside the visible chain with p.
    std::vector<int> next_hull;
    next_hull.reserve(hull.size() + 1);
    const int keep_from = (last + 1) % h;
    for (int i = keep_from;; i = (i + 1) % h) {
      next_hull.push_back(hull[i]);
      if (i == first) break;
    }
    next_hull.push_back(p);
    hull = std::move(next_hull);
  }

  mesh.legalize();

  Triangulation tri;
  tri.points.assign(points.begin(), points.end());
  tri.triangles = mesh.triangles();
  for (auto& t : tri.triangles) {
    const auto min_it = std::min_element(t.begin(), t.end());
    std::rotate(t.begin(), min_it, t.end());
  }
  std::sort(tri.triangles.begin(), tri.triangles.end());
  const auto start = std::min_element(hull.begin(), hull.end());
  std::rotate(hull.begin(), start, hull.end());
  tri.hull = std::move(hull);
  return tri;
}

NeighborRing vertex_neighbor_ring(const Triangulation& tri, int v) {
  if (v < 0 || v >= tri.num_vertices()) {
    throw Error(ErrorCode::InvalidVertex, "vertex " + std::to_string(v) + " out of range");
  }
  std::map<int, int> succ;
  std::map<int, int> pred;
  for (const auto& t : tri.triangles) {
    for (int i = 0; i < 3; ++i) {
      if (t[i] != v) continue;
      const int u = t[(i + 1) % 3];
      const int w = t[(i + 2) % 3];
      succ[u] = w;
      pred[w] = u;
    }
  }
  NeighborRing ring;
  if (succ.empty()) return ring;
  int start = succ.begin()->first;
  ring.is_cycle = true;
  for (const auto& [u, w] : succ) {
    if (!pred.contains(u)) {
      start = u;
      ring.is_cycle = false;
      break;
    }
  }
  int cur = start;
  do {
    ring.vertices.push_back(cur);
    auto it = succ.find(cur);
    if (it == succ.end()) break;
    cur = it->second;
  } while (cur != start);
  return ring;
}

}  // namespace resvor
