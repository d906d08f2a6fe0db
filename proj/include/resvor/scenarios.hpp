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

#ifndef RESVOR_SCENARIOS_HPP
#define RESVOR_SCENARIOS_HPP

#include <cmath>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "resvor/consensus.hpp"
#include "resvor/geometry.hpp"
#include "resvor/graph.hpp"

namespace resvor {

// ---------------------------------------------------------------------------
// Parameter estimation on a static formation.

struct ParameterEstimationResult {
  CommGraph graph;
  SafeInterval<double> safe;
  ConsensusRun<double> run;
  std::vector<bool> inside_safe;  // per step: every cooperative value in `safe`
};

ParameterEstimationResult run_parameter_estimation(
    std::span<const Point2> positions, const Matrix<double>& initial_values,
    const std::vector<AgentBehavior<double>>& behaviors, int K, const WmsrConfig& cfg);

// ---------------------------------------------------------------------------
// Polygon rendezvous with per-step re-triangulation.

struct RendezvousConfig {
  double radius = 2.0;
  double tau = 0.5;
  double v_max = 1.0;
  int K = 1;
  int F = 0;
  double convergence_eps = 1e-6;
  /// Cooperative agents must also be this close to their polygon corner.
  double position_tol = 1e-6;
  int max_steps = 10000;
};

/// Corner i of the regular N-gon of the given radius around `center`.
Point2 rendezvous_goal(const Point2& center, int i, int N, double radius);

/// Proportional step toward g, speed capped at v_max.
Point2 motion_step(const Point2& p, const Point2& g, double tau, double v_max);

struct RendezvousResult {
  std::vector<std::vector<Point2>> positions;     // per step
  std::vector<ConsensusState<double>> centers;    // per step, N x 2
  SafeInterval<double> safe;
  std::vector<bool> inside_safe;
  Verdict<double> verdict;
};

/// Throws Error{DegenerateFormation} naming the step when the positions can
/// no longer be triangulated.
RendezvousResult run_rendezvous(std::span<const Point2> initial_positions,
                                const Matrix<double>& center_initials,
                                const std::vector<AgentBehavior<double>>& behaviors,
                                const RendezvousConfig& cfg);

// ---------------------------------------------------------------------------
// Occupancy-grid map consensus with frontier exploration.

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Dense occupancy grid; NaN marks Unknown. Known values lie in [0, 1].
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  OccupancyGrid(int width, int height);

  /// Parses '#' (occupied) and '.' (free) rows; blank lines and lines
  /// starting with ';' are skipped.
  static OccupancyGrid from_bitmap(std::istream& in);
  static OccupancyGrid from_bitmap_file(const std::string& path);

  int width() const { return width_; }
  int height() const { return height_; }
  int size() const { return width_ * height_; }
  int index(const Cell& c) const { return c.row * width_ + c.col; }
  Cell cell(int index) const { return {index / width_, index % width_}; }
  bool in_bounds(const Cell& c) const {
    return c.row >= 0 && c.col >= 0 && c.row < height_ && c.col < width_;
  }

  bool known(int i) const { return !std::isnan(cells_(i)); }
  double value(int i) const { return cells_(i); }
  void set(int i, double v) { cells_(i) = v; }
  void forget(int i) { cells_(i) = std::numeric_limits<double>::quiet_NaN(); }
  bool believed_free(int i) const { return known(i) && cells_(i) < 0.5; }

  const Eigen::ArrayXd& cells() const { return cells_; }

  friend bool operator==(const OccupancyGrid& a, const OccupancyGrid& b);

 private:
  int width_ = 0;
  int height_ = 0;
  Eigen::ArrayXd cells_;
};

struct MapConfig {
  int F = 0;
  int sensor_half_width = 2;
  int max_steps = 500;
  double convergence_eps = 1e-6;
  /// Keep a belief snapshot every this many steps (0: final only).
  int snapshot_every = 0;
};

struct MapAdversarySpec {
  Cell cell;
  std::vector<Cell> claims;
};

struct MapSnapshot {
  int step = 0;
  std::vector<OccupancyGrid> beliefs;  // cooperative agents, in start order
};

struct ExplorationSummary {
  int steps = 0;              // steps executed
  int exploration_steps = 0;  // first step after which no agent had a target
  bool exploration_complete = false;
  bool beliefs_converged = false;
  double coverage = 0.0;      // reachable free cells sensed by a cooperative agent
  int reachable_free = 0;
  int sensed_reachable_free = 0;
  bool beliefs_match_truth = false;  // every agent, every cell
};

struct MapRunResult {
  std::vector<std::vector<Cell>> positions;  // per step, cooperative then adversaries
  std::vector<MapSnapshot> snapshots;
  std::vector<OccupancyGrid> final_beliefs;
  ExplorationSummary summary;
};

/// Throws Error{StartOnOccupiedCell} if a start is a wall or out of bounds.
MapRunResult run_map_consensus(const OccupancyGrid& environment, std::span<const Cell> starts,
                               std::span<const MapAdversarySpec> adversaries,
                               const MapConfig& cfg);

/// Point used for triangulation: cell center plus a small per-agent offset so
/// that agents sharing a row or a cell stay in general position.
Point2 agent_point(const Cell& c, int agent);

/// Communication graph for a handful of agents; fewer than three agents are
/// fully connected.
CommGraph team_graph(std::span<const Point2> positions, int K);

}  // namespace resvor

#endif  // RESVOR_SCENARIOS_HPP
