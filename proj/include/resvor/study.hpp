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

#ifndef RESVOR_STUDY_HPP
#define RESVOR_STUDY_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "resvor/geometry.hpp"
#include "resvor/robustness.hpp"

namespace resvor {

/// Uniform points in a rectangle of area scale^2 whose aspect ratio is drawn
/// log-uniformly from [aspect_min, aspect_max].
struct RandomRect {
  int n = 10;
  double aspect_min = 1.0;
  double aspect_max = 8.0;
  std::uint64_t seed = 0;
};

/// Bottom row at (2j, 0), top row at (2j + 1, 1): a zigzag strip.
struct TwoLines {
  int n = 11;
};

struct Grid {
  int rows = 3;
  int cols = 3;
};

/// n points evenly on a circle, optionally followed by its center.
struct Circle {
  int n = 20;
  bool with_center = false;
};

/// Lattice points on the boundary of a square with `side` points per edge.
struct HollowSquare {
  int side = 4;
};

struct FormationSpec {
  std::variant<RandomRect, TwoLines, Grid, Circle, HollowSquare> kind;
  double scale = 1.0;
};

std::string describe(const FormationSpec& spec);

/// Throws InvalidArgument for malformed specs and DegenerateAfterRetries
/// when random draws keep failing to triangulate.
std::vector<Point2> generate_formation(const FormationSpec& spec);

/// `samples` random rectangles with n uniform in [n_min, n_max]; per-sample
/// seeds come from the "formation" stream of the master seed.
std::vector<FormationSpec> random_rect_specs(std::uint64_t master_seed, int samples, int n_min,
                                             int n_max, double aspect_min = 1.0,
                                             double aspect_max = 8.0, double scale = 10.0);

struct StudySample {
  int sample = 0;
  std::string formation;
  int n = 0;
  int K = 1;
  std::size_t edges = 0;
  bool complete = false;
  int max_rs = -1;  // -1 when robustness was not computed
};

struct StudyReport {
  int K_max = 1;
  int num_samples = 0;
  std::vector<StudySample> rows;  // sample-major, K-minor
  /// (K, r) -> number of samples whose max r=s is exactly r.
  std::map<std::pair<int, int>, int> exact_counts;
  /// (K, r) -> percentage of samples that are at least (r,r)-robust.
  std::map<std::pair<int, int>, double> percent_at_least;
  std::map<int, double> percent_complete;
  std::map<int, int> min_rs;
  /// Samples below min(K + 1, ceil(n/2)): violations for K <= 2,
  /// observations for K = 3, 4.
  std::vector<std::string> flags;
};

struct StudyOptions {
  RobustnessOptions robustness;
  int threads = 1;
  bool edges_only = false;
};

StudyReport run_robustness_study(std::span<const FormationSpec> specs, int K_max,
                                 const StudyOptions& opts = {});

}  // namespace resvor

#endif  // RESVOR_STUDY_HPP
