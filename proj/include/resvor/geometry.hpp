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

#ifndef RESVOR_GEOMETRY_HPP
#define RESVOR_GEOMETRY_HPP

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace resvor {

using Point2 = Eigen::Vector2d;
using Triangle = std::array<int, 3>;

/// Relative band on the incircle determinant inside which four points are
/// treated as cocircular and the lexicographic diagonal rule applies.
inline constexpr double kIncircleRelEps = 1e-9;

/// Points closer than this are rejected as duplicates.
inline constexpr double kDuplicateDistance = 1e-12;

/// Delaunay triangulation of a planar point set. Triangles are CCW with the
/// smallest index first and sorted; the hull is CCW starting at its smallest
/// vertex and contains boundary points that are collinear with hull edges.
struct Triangulation {
  std::vector<Point2> points;
  std::vector<Triangle> triangles;
  std::vector<int> hull;

  int num_vertices() const { return static_cast<int>(points.size()); }
  /// Undirected edges as (min, max) pairs, sorted.
  std::vector<std::pair<int, int>> edges() const;
};

struct NeighborRing {
  std::vector<int> vertices;  // CCW around the center vertex
  bool is_cycle = false;      // true iff the center is an interior vertex
};

/// Sign-carrying orientation determinant, positive for a CCW turn.
double orient2d(const Point2& a, const Point2& b, const Point2& c);

/// Incircle determinant for CCW (a, b, c); positive when d lies inside.
/// `scale` receives the magnitude of the summed terms for relative tests.
double incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d,
                double* scale = nullptr);

/// Throws Error{TooFewPoints | DuplicatePoints | CollinearInput | NonFiniteInput}.
Triangulation delaunay(std::span<const Point2> points);

NeighborRing vertex_neighbor_ring(const Triangulation& tri, int v);

}  // namespace resvor

#endif  // RESVOR_GEOMETRY_HPP
