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

#include "resvor/scenarios.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <queue>
#include <string>

#include "resvor/error.hpp"

namespace resvor {

namespace {

// Rounding in the equal-weight average can leave a value an ulp or so
// outside the interval it was averaged from.
double containment_tol(const SafeInterval<double>& box) {
  const double mag = std::max(box.lo.cwiseAbs().maxCoeff(), box.hi.cwiseAbs().maxCoeff());
  return 1e-12 * std::max(1.0, mag);
}

bool cooperative_inside(const ConsensusState<double>& st,
                        std::span<const AgentBehavior<double>> behaviors,
                        const SafeInterval<double>& box) {
  const double tol = containment_tol(box);
  for (int i = 0; i < st.agents(); ++i) {
    if (is_cooperative(behaviors[i]) && !box.contains(st.values.row(i).transpose(), tol)) {
      return false;
    }
  }
  return true;
}

}  // namespace

ParameterEstimationResult run_parameter_estimation(
    std::span<const Point2> positions, const Matrix<double>& initial_values,
    const std::vector<AgentBehavior<double>>& behaviors, int K, const WmsrConfig& cfg) {
  ParameterEstimationResult res;
  res.graph = voronoi_graph(positions, K);
  const ConsensusState<double> initial{initial_values, 0};
  const std::span<const AgentBehavior<double>> beh(behaviors);
  res.safe = safe_interval(initial, beh);
  res.run = run_consensus(initial, res.graph, cfg, behaviors);
  res.inside_safe.reserve(res.run.trajectory.size());
  for (const auto& st : res.run.trajectory) {
    res.inside_safe.push_back(cooperative_inside(st, beh, res.safe));
  }
  return res;
}

Point2 rendezvous_goal(const Point2& center, int i, int N, double radius) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(N);
  return center + radius * Point2(std::cos(angle), std::sin(angle));
}

Point2 motion_step(const Point2& p, const Point2& g, double tau, double v_max) {
  const Point2 err = g - p;
  const double dist = err.norm();
  if (dist == 0.0) return p;
  return p + tau * std::min(dist, v_max) * (err / dist);
}

RendezvousResult run_rendezvous(std::span<const Point2> initial_positions,
                                const Matrix<double>& center_initials,
                                const std::vector<AgentBehavior<double>>& behaviors,
                                const RendezvousConfig& cfg) {
  const auto n = static_cast<int>(initial_positions.size());
  if (center_initials.rows() != n || center_initials.cols() != 2 ||
      static_cast<int>(behaviors.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "rendezvous expects N positions, N x 2 centers");
  }
  const std::span<const AgentBehavior<double>> beh(behaviors);
  const WmsrConfig wcfg{cfg.F, cfg.convergence_eps, cfg.max_steps};

  RendezvousResult res;
  res.positions.emplace_back(initial_positions.begin(), initial_positions.end());
  res.centers.push_back({center_initials, 0});
  res.safe = safe_interval(res.centers.front(), beh);
  StallTracker tracker(beh);

  while (true) {
    const auto& pos = res.positions.back();
    const auto& cur = res.centers.back();
    res.inside_safe.push_back(cooperative_inside(cur, beh, res.safe));

    const Matrix<double> shared = broadcast_values(cur, beh);
    std::vector<Point2> goals(n);
    double position_error = 0.0;
    for (int i = 0; i < n; ++i) {
      goals[i] = rendezvous_goal(shared.row(i).transpose(), i, n, cfg.radius);
      if (is_cooperative(behaviors[i])) {
        position_error = std::max(position_error, (goals[i] - pos[i]).norm());
      }
    }
    const bool centers_agree =
        (cooperative_spread(cur, beh).array() < cfg.convergence_eps).all();
    if (centers_agree && position_error < cfg.position_tol) {
      res.verdict.kind = VerdictKind::Converged;
      break;
    }
    if (cur.step >= cfg.max_steps) {
      res.verdict.stalled = tracker.stalled();
      res.verdict.kind =
          res.verdict.stalled.empty() ? VerdictKind::MaxStepsReached : VerdictKind::Stalled;
      break;
    }

    CommGraph g;
    try {
      g = voronoi_graph(pos, cfg.K);
    } catch (const Error& e) {
      throw Error(ErrorCode::DegenerateFormation,
                  "step " + std::to_string(cur.step) + ": " + e.what());
    }
    StepStats stats;
    auto next = consensus_step(cur, g, wcfg, beh, &stats);
    tracker.observe(stats);
    std::vector<Point2> moved(n);
    for (int i = 0; i < n; ++i) moved[i] = motion_step(pos[i], goals[i], cfg.tau, cfg.v_max);
    res.centers.push_back(std::move(next));
    res.positions.push_back(std::move(moved));
  }
  res.verdict.steps = res.centers.back().step;
  res.verdict.value = cooperative_mean(res.centers.back(), beh);
  return res;
}

// ---------------------------------------------------------------------------

OccupancyGrid::OccupancyGrid(int width, int height)
    : width_(width),
      height_(height),
      cells_(Eigen::ArrayXd::Constant(static_cast<Eigen::Index>(width) * height,
                                      std::numeric_limits<double>::quiet_NaN())) {
  if (width < 1 || height < 1) throw Error(ErrorCode::InvalidArgument, "grid must be non-empty");
}

OccupancyGrid OccupancyGrid::from_bitmap(std::istream& in) {
  std::vector<std::string> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == ';') continue;
    if (!rows.empty() && line.size() != rows.front().size()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": ragged grid row");
    }
    for (char ch : line) {
      if (ch != '#' && ch != '.') {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": unexpected character '" + ch + "'");
      }
    }
    rows.push_back(line);
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, "empty grid");
  OccupancyGrid grid(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      grid.set(grid.index({r, c}), rows[r][c] == '#' ? 1.0 : 0.0);
    }
  }
  return grid;
}

OccupancyGrid OccupancyGrid::from_bitmap_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open grid file " + path);
  return from_bitmap(in);
}

bool operator==(const OccupancyGrid& a, const OccupancyGrid& b) {
  if (a.width_ != b.width_ || a.height_ != b.height_) return false;
  for (int i = 0; i < a.size(); ++i) {
    if (a.known(i) != b.known(i)) return false;
    if (a.known(i) && a.value(i) != b.value(i)) return false;
  }
  return true;
}

Point2 agent_point(const Cell& c, int agent) {
  constexpr double kGoldenAngle = 2.399963229728653;
  constexpr double kOffset = 0.2;
  const double a = kGoldenAngle * static_cast<double>(agent);
  return {c.col + 0.5 + kOffset * std::cos(a), c.row + 0.5 + kOffset * std::sin(a)};
}

CommGraph team_graph(std::span<const Point2> positions, int K) {
  const auto n = static_cast<int>(positions.size());
  if (n < 3) return complete_graph(n);
  return voronoi_graph(positions, K);
}

namespace {

constexpr int kDRow[4] = {-1, 0, 0, 1};
constexpr int kDCol[4] = {0, -1, 1, 0};

// Next cell toward the nearest reachable unknown cell, or nullopt when no
// unknown cell is reachable through believed-free cells.
std::optional<Cell> plan_move(const OccupancyGrid& belief, const Cell& from) {
  std::vector<int> dist(belief.size(), -1);
  std::vector<int> parent(belief.size(), -1);
  std::queue<int> q;
  const int start = belief.index(from);
  dist[start] = 0;
  q.push(start);
  int best = -1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    if (best >= 0 && dist[u] >= dist[best]) break;
    const Cell cu = belief.cell(u);
    for (int d = 0; d < 4; ++d) {
      const Cell cv{cu.row + kDRow[d], cu.col + kDCol[d]};
      if (!belief.in_bounds(cv)) continue;
      const int v = belief.index(cv);
      if (dist[v] >= 0) continue;
      if (belief.known(v) && !belief.believed_free(v)) continue;
      dist[v] = dist[u] + 1;
      parent[v] = u;
      if (!belief.known(v)) {
        if (best < 0 || v < best) best = v;
      } else {
        q.push(v);
      }
    }
  }
  if (best < 0) return std::nullopt;
  int step = best;
  while (parent[step] != start) step = parent[step];
  if (!belief.known(step)) return from;
  return belief.cell(step);
}

}  // namespace

MapRunResult run_map_consensus(const OccupancyGrid& environment, std::span<const Cell> starts,
                               std::span<const MapAdversarySpec> adversaries,
                               const MapConfig& cfg) {
  if (cfg.sensor_half_width < 1) {
    throw Error(ErrorCode::InvalidArgument, "sensor_half_width must be >= 1");
  }
  for (int i = 0; i < environment.size(); ++i) {
    if (!environment.known(i) || (environment.value(i) != 0.0 && environment.value(i) != 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "environment cells must be 0 or 1");
    }
  }
  auto check_start = [&](const Cell& c) {
    if (!environment.in_bounds(c) || !environment.believed_free(environment.index(c))) {
      throw Error(ErrorCode::StartOnOccupiedCell,
                  "cell (" + std::to_string(c.row) + ", " + std::to_string(c.col) +
                      ") is occupied or outside the grid");
    }
  };
  for (const auto& c : starts) check_start(c);
  for (const auto& a : adversaries) {
    check_start(a.cell);
    for (const auto& c : a.claims) {
      if (!environment.in_bounds(c)) throw Error(ErrorCode::InvalidArgument, "claim outside grid");
    }
  }

  const auto coop = static_cast<int>(starts.size());
  const int total = coop + static_cast<int>(adversaries.size());
  const int cells = environment.size();

  // What each adversary shares for every cell.
  std::vector<Eigen::ArrayXd> adversary_view;
  for (const auto& a : adversaries) {
    Eigen::ArrayXd v = environment.cells();
    for (const auto& c : a.claims) v(environment.index(c)) = 1.0;
    adversary_view.push_back(std::move(v));
  }

  std::vector<Cell> pos(starts.begin(), starts.end());
  for (const auto& a : adversaries) pos.push_back(a.cell);
  std::vector<OccupancyGrid> beliefs(coop, OccupancyGrid(environment.width(), environment.height()));
  std::vector<char> sensed(cells, 0);

  MapRunResult res;
  res.positions.push_back(pos);
  int last_active = 0;
  bool active = true;
  bool converged = false;
  int step = 0;
  std::vector<std::pair<int, double>> informants;

  while (step < cfg.max_steps) {
    ++step;
    std::vector<Point2> pts(total);
    for (int i = 0; i < total; ++i) pts[i] = agent_point(pos[i], i);
    const CommGraph g = team_graph(pts, 1);

    std::vector<OccupancyGrid> next = beliefs;
    for (int i = 0; i < coop; ++i) {
      const auto& nb = g.neighbors(i);
      for (int c = 0; c < cells; ++c) {
        informants.clear();
        for (int j : nb) {
          if (j < coop) {
            if (beliefs[j].known(c)) informants.emplace_back(j, beliefs[j].value(c));
          } else {
            informants.emplace_back(j, adversary_view[j - coop](c));
          }
        }
        if (informants.empty()) continue;
        const bool own_known = beliefs[i].known(c);
        const double own = own_known ? beliefs[i].value(c) : 0.5;
        const auto kept = wmsr_filter<double>(own, informants, cfg.F);
        if (kept.empty()) continue;
        double sum = own_known ? own : 0.0;
        for (int j : kept) {
          sum += j < coop ? beliefs[j].value(c) : adversary_view[j - coop](c);
        }
        const auto weight = static_cast<double>(kept.size() + (own_known ? 1 : 0));
        next[i].set(c, sum / weight);
      }
    }

    const int hw = cfg.sensor_half_width;
    for (int i = 0; i < coop; ++i) {
      for (int dr = -hw; dr <= hw; ++dr) {
        for (int dc = -hw; dc <= hw; ++dc) {
          const Cell s{pos[i].row + dr, pos[i].col + dc};
          if (!environment.in_bounds(s)) continue;
          const int idx = environment.index(s);
          next[i].set(idx, environment.value(idx));
          sensed[idx] = 1;
        }
      }
    }

    double change = 0.0;
    for (int i = 0; i < coop; ++i) {
      for (int c = 0; c < cells; ++c) {
        if (next[i].known(c) != beliefs[i].known(c)) {
          change = std::numeric_limits<double>::infinity();
        } else if (next[i].known(c)) {
          change = std::max(change, std::abs(next[i].value(c) - beliefs[i].value(c)));
        }
      }
    }
    beliefs = std::move(next);

    active = false;
    for (int i = 0; i < coop; ++i) {
      if (const auto move = plan_move(beliefs[i], pos[i])) {
        active = true;
        pos[i] = *move;
      }
    }
    if (active) last_active = step;
    res.positions.push_back(pos);
    if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) {
      res.snapshots.push_back({step, beliefs});
    }
    if (!active && change < cfg.convergence_eps) {
      converged = true;
      break;
    }
  }
  if (res.snapshots.empty() || res.snapshots.back().step != step) {
    res.snapshots.push_back({step, beliefs});
  }

  auto& sum = res.summary;
  sum.steps = step;
  sum.exploration_complete = !active;
  sum.exploration_steps = active ? step : last_active + 1;
  sum.beliefs_converged = converged;

  // Free cells reachable from the cooperative starts in the true map.
  std::vector<char> reach(cells, 0);
  std::queue<int> q;
  for (const auto& c : starts) {
    const int idx = environment.index(c);
    if (!reach[idx]) {
      reach[idx] = 1;
      q.push(idx);
    }
  }
  while (!q.empty()) {
    const Cell cu = environment.cell(q.front());
    q.pop();
    for (int d = 0; d < 4; ++d) {
      const Cell cv{cu.row + kDRow[d], cu.col + kDCol[d]};
      if (!environment.in_bounds(cv)) continue;
      const int v = environment.index(cv);
      if (reach[v] || !environment.believed_free(v)) continue;
      reach[v] = 1;
      q.push(v);
    }
  }
  for (int c = 0; c < cells; ++c) {
    if (!reach[c]) continue;
    ++sum.reachable_free;
    if (sensed[c]) ++sum.sensed_reachable_free;
  }
  sum.coverage = sum.reachable_free > 0
                     ? static_cast<double>(sum.sensed_reachable_free) / sum.reachable_free
                     : 1.0;
  sum.beliefs_match_truth = std::all_of(beliefs.begin(), beliefs.end(),
                                        [&](const OccupancyGrid& b) { return b == environment; });
  res.final_beliefs = std::move(beliefs);
  return res;
}

}  // namespace resvor
