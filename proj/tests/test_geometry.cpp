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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "resvor/error.hpp"
#include "resvor/geometry.hpp"
#include "resvor/study.hpp"
#include "test_support.hpp"

using namespace resvor;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected resvor::Error");
  return ErrorCode::InvalidArgument;
}

// Circumcircle emptiness with an explicit circumcenter, separate from the
// determinant predicate used by the implementation.
bool circumcircle_empty(const std::vector<Point2>& pts, const Triangle& t, double rel_tol) {
  const Point2& a = pts[t[0]];
  const Point2& b = pts[t[1]];
  const Point2& c = pts[t[2]];
  const double d = 2.0 * (a.x() * (b.y() - c.y()) + b.x() * (c.y() - a.y()) + c.x() * (a.y() - b.y()));
  const double ux = (a.squaredNorm() * (b.y() - c.y()) + b.squaredNorm() * (c.y() - a.y()) +
                     c.squaredNorm() * (a.y() - b.y())) / d;
  const double uy = (a.squaredNorm() * (c.x() - b.x()) + b.squaredNorm() * (a.x() - c.x()) +
                     c.squaredNorm() * (b.x() - a.x())) / d;
  const Point2 center(ux, uy);
  const double radius = (a - center).norm();
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    if (i == t[0] || i == t[1] || i == t[2]) continue;
    if ((pts[i] - center).norm() < radius * (1.0 - rel_tol)) return false;
  }
  return true;
}

void check_invariants(const std::vector<Point2>& pts, const Triangulation& tri) {
  const int V = tri.num_vertices();
  const int H = static_cast<int>(tri.hull.size());
  const auto edges = tri.edges();
  CHECK(static_cast<int>(edges.size()) == 3 * V - 3 - H);
  for (const auto& t : tri.triangles) {
    CHECK(orient2d(pts[t[0]], pts[t[1]], pts[t[2]]) > 0.0);
    CHECK(circumcircle_empty(pts, t, 1e-7));
  }
  std::vector<int> degree(V, 0);
  for (const auto& [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }
  CHECK(*std::min_element(degree.begin(), degree.end()) >= 2);

  const std::set<int> hull(tri.hull.begin(), tri.hull.end());
  const std::set<std::pair<int, int>> edge_set(edges.begin(), edges.end());
  auto adjacent = [&](int a, int b) { return edge_set.contains({std::min(a, b), std::max(a, b)}); };
  for (int v = 0; v < V; ++v) {
    const auto ring = vertex_neighbor_ring(tri, v);
    CHECK(ring.is_cycle == !hull.contains(v));
    CHECK(static_cast<int>(ring.vertices.size()) == degree[v]);
    for (std::size_t i = 0; i + 1 < ring.vertices.size(); ++i) {
      CHECK(adjacent(ring.vertices[i], ring.vertices[i + 1]));
    }
    if (ring.is_cycle) CHECK(adjacent(ring.vertices.front(), ring.vertices.back()));
  }
}

}  // namespace

TEST_CASE("three points give one triangle") {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {0, 1}};
  const auto tri = delaunay(pts);
  REQUIRE(tri.triangles.size() == 1);
  CHECK(tri.edges().size() == 3);
  CHECK(tri.triangles[0] == Triangle{0, 1, 2});
  for (int v = 0; v < 3; ++v) {
    const auto ring = vertex_neighbor_ring(tri, v);
    CHECK_FALSE(ring.is_cycle);
    CHECK(ring.vertices.size() == 2);
  }
}

TEST_CASE("clockwise input is reoriented") {
  const std::vector<Point2> pts{{0, 0}, {0, 1}, {1, 0}};
  const auto tri = delaunay(pts);
  REQUIRE(tri.triangles.size() == 1);
  const auto& t = tri.triangles[0];
  CHECK(orient2d(pts[t[0]], pts[t[1]], pts[t[2]]) > 0.0);
}

TEST_CASE("unit square keeps the lexicographically smaller diagonal") {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  // Both diagonals give empty circumcircles within tolerance.
  CHECK(circumcircle_empty(pts, {0, 1, 2}, 1e-9));
  CHECK(circumcircle_empty(pts, {0, 2, 3}, 1e-9));
  CHECK(circumcircle_empty(pts, {0, 1, 3}, 1e-9));
  CHECK(circumcircle_empty(pts, {1, 2, 3}, 1e-9));

  const auto tri = delaunay(pts);
  CHECK(tri.triangles.size() == 2);
  const auto edges = tri.edges();
  CHECK(edges.size() == 5);
  CHECK(std::find(edges.begin(), edges.end(), std::pair{0, 2}) != edges.end());
  CHECK(std::find(edges.begin(), edges.end(), std::pair{1, 3}) == edges.end());

  // Corner 0 touches the diagonal, corner 1 does not.
  CHECK(vertex_neighbor_ring(tri, 0).vertices.size() == 3);
  CHECK(vertex_neighbor_ring(tri, 1).vertices.size() == 2);
  CHECK(tri.hull == std::vector<int>{0, 1, 2, 3});

  // Relabeling the corners flips which diagonal is smaller.
  const std::vector<Point2> relabeled{{1, 0}, {0, 0}, {0, 1}, {1, 1}};
  const auto alt = delaunay(relabeled).edges();
  CHECK(std::find(alt.begin(), alt.end(), std::pair{0, 2}) != alt.end());
}

TEST_CASE("plus configuration center has a cycle of four") {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto tri = delaunay(pts);
  const auto ring = vertex_neighbor_ring(tri, 0);
  CHECK(ring.is_cycle);
  CHECK(ring.vertices == std::vector<int>{1, 2, 3, 4});
  check_invariants(pts, tri);
}

TEST_CASE("two-lines strip of 11 has 19 edges") {
  const auto pts = generate_formation({TwoLines{11}});
  const auto tri = delaunay(pts);
  CHECK(tri.edges().size() == 19);
  CHECK(tri.hull.size() == 11);
  check_invariants(pts, tri);
}

TEST_CASE("degenerate formations triangulate consistently") {
  for (const auto& spec : {FormationSpec{Grid{3, 3}}, FormationSpec{Grid{4, 5}},
                           FormationSpec{Circle{20, true}}, FormationSpec{Circle{12}},
                           FormationSpec{HollowSquare{5}}}) {
    CAPTURE(describe(spec));
    const auto pts = generate_formation(spec);
    const auto tri = delaunay(pts);
    check_invariants(pts, tri);
  }
}

TEST_CASE("wheel: center of the circle formation neighbors every rim point") {
  const auto pts = generate_formation({Circle{19, true}});
  const auto tri = delaunay(pts);
  const auto ring = vertex_neighbor_ring(tri, 19);
  CHECK(ring.is_cycle);
  CHECK(ring.vertices.size() == 19);
}

TEST_CASE("input errors") {
  CHECK(code_of([] { delaunay(std::vector<Point2>{{0, 0}, {1, 1}}); }) == ErrorCode::TooFewPoints);
  CHECK(code_of([] { delaunay(std::vector<Point2>{{0, 0}, {1, 1}, {2, 2}, {3, 3}}); }) ==
        ErrorCode::CollinearInput);
  CHECK(code_of([] { delaunay(std::vector<Point2>{{0, 0}, {1, 0}, {0, 1}, {1e-13, 0}}); }) ==
        ErrorCode::DuplicatePoints);
  CHECK(code_of([] {
          delaunay(std::vector<Point2>{{0, 0}, {1, 0}, {0, std::numeric_limits<double>::quiet_NaN()}});
        }) == ErrorCode::NonFiniteInput);
  const auto tri = delaunay(std::vector<Point2>{{0, 0}, {1, 0}, {0, 1}});
  CHECK(code_of([&] { vertex_neighbor_ring(tri, 3); }) == ErrorCode::InvalidVertex);
  CHECK(code_of([&] { vertex_neighbor_ring(tri, -1); }) == ErrorCode::InvalidVertex);
}

TEST_CASE("collinear prefix followed by an apex") {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {1.5, 2}};
  const auto tri = delaunay(pts);
  CHECK(tri.triangles.size() == 3);
  check_invariants(pts, tri);
}

TEST_CASE("random point sets satisfy every triangulation invariant") {
  Rng rng(20260101);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(3, 50);
    const auto pts = testing::random_points(rng, n, 10.0, rng.uniform(0.5, 10.0));
    CAPTURE(trial);
    Triangulation tri;
    try {
      tri = delaunay(pts);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CollinearInput);
      continue;
    }
    check_invariants(pts, tri);
    const auto again = delaunay(pts);
    CHECK(again.triangles == tri.triangles);
    CHECK(again.hull == tri.hull);
  }
}

TEST_CASE("random lattice subsets with many cocircular quadruples") {
  Rng rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = rng.uniform_int(4, 30);
    const auto pts = testing::random_lattice_points(rng, n, 7);
    CAPTURE(trial);
    Triangulation tri;
    try {
      tri = delaunay(pts);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CollinearInput);
      continue;
    }
    check_invariants(pts, tri);
    CHECK(delaunay(pts).triangles == tri.triangles);
  }
}
