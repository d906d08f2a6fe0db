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

#ifndef RESVOR_CONSENSUS_HPP
#define RESVOR_CONSENSUS_HPP

#include <algorithm>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "resvor/error.hpp"
#include "resvor/graph.hpp"

namespace resvor {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

struct WmsrConfig {
  int F = 0;
  double convergence_eps = 1e-6;
  int max_steps = 10000;
};

struct Cooperative {};

template <typename Scalar>
struct ConstantAdversary {
  Vector<Scalar> value;
};

/// Broadcasts start + k * drift at step k.
template <typename Scalar>
struct DriftingAdversary {
  Vector<Scalar> start;
  Vector<Scalar> drift;
};

/// Broadcasts 1 on the claimed components and its own state elsewhere.
struct MapAdversary {
  std::vector<int> claimed_occupied;
};

template <typename Scalar>
using AgentBehavior =
    std::variant<Cooperative, ConstantAdversary<Scalar>, DriftingAdversary<Scalar>, MapAdversary>;

template <typename Scalar>
bool is_cooperative(const AgentBehavior<Scalar>& b) {
  return std::holds_alternative<Cooperative>(b);
}

template <typename Scalar>
std::string_view behavior_tag(const AgentBehavior<Scalar>& b) {
  switch (b.index()) {
    case 0: return "cooperative";
    case 1: return "constant";
    case 2: return "drifting";
    default: return "map";
  }
}

/// Row i holds agent i's value vector at `step`.
template <typename Scalar>
struct ConsensusState {
  Matrix<Scalar> values;
  int step = 0;

  int agents() const { return static_cast<int>(values.rows()); }
  int dim() const { return static_cast<int>(values.cols()); }
};

template <typename Scalar>
struct SafeInterval {
  Vector<Scalar> lo;
  Vector<Scalar> hi;

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& v, Scalar tol = Scalar(0)) const {
    return ((v.array() >= lo.array() - tol) && (v.array() <= hi.array() + tol)).all();
  }
};

/// Per-step filter bookkeeping: retained(i, c) is the number of neighbors
/// agent i kept for component c, or -1 for non-cooperative agents.
struct StepStats {
  Eigen::MatrixXi retained;
};

/// Ids kept after discarding the (up to) F largest values strictly above
/// `own` and the (up to) F smallest strictly below. Among equal values the
/// larger id is discarded first. The result is sorted by id.
template <typename Scalar>
std::vector<int> wmsr_filter(Scalar own, std::span<const std::pair<int, Scalar>> neighbor_values,
                             int F) {
  std::vector<std::pair<int, Scalar>> above;
  std::vector<std::pair<int, Scalar>> below;
  std::vector<int> kept;
  for (const auto& nv : neighbor_values) {
    if (nv.second > own) {
      above.push_back(nv);
    } else if (nv.second < own) {
      below.push_back(nv);
    } else {
      kept.push_back(nv.first);
    }
  }
  const auto drop = static_cast<std::size_t>(std::max(F, 0));
  std::sort(above.begin(), above.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first > b.first;
  });
  std::sort(below.begin(), below.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first > b.first;
  });
  for (std::size_t i = drop; i < above.size(); ++i) kept.push_back(above[i].first);
  for (std::size_t i = drop; i < below.size(); ++i) kept.push_back(below[i].first);
  std::sort(kept.begin(), kept.end());
  return kept;
}

template <typename Scalar>
std::vector<int> wmsr_filter(Scalar own, const std::vector<std::pair<int, Scalar>>& neighbor_values,
                             int F) {
  return wmsr_filter<Scalar>(own, std::span<const std::pair<int, Scalar>>(neighbor_values), F);
}

namespace detail {

template <typename Scalar>
void check_dimensions(const ConsensusState<Scalar>& state, const CommGraph& g,
                      std::span<const AgentBehavior<Scalar>> behaviors) {
  if (state.agents() != g.n() || static_cast<int>(behaviors.size()) != g.n()) {
    throw Error(ErrorCode::DimensionMismatch,
                "state has " + std::to_string(state.agents()) + " agents, graph " +
                    std::to_string(g.n()) + ", behaviors " + std::to_string(behaviors.size()));
  }
  if (state.dim() < 1) throw Error(ErrorCode::DimensionMismatch, "value dimension must be >= 1");
  for (const auto& b : behaviors) {
    const bool ok = std::visit(
        [&](const auto& beh) {
          using T = std::decay_t<decltype(beh)>;
          if constexpr (std::is_same_v<T, ConstantAdversary<Scalar>>) {
            return beh.value.size() == state.dim();
          } else if constexpr (std::is_same_v<T, DriftingAdversary<Scalar>>) {
            return beh.start.size() == state.dim() && beh.drift.size() == state.dim();
          } else if constexpr (std::is_same_v<T, MapAdversary>) {
            return std::all_of(beh.claimed_occupied.begin(), beh.claimed_occupied.end(),
                               [&](int c) { return c >= 0 && c < state.dim(); });
          } else {
            return true;
          }
        },
        b);
    if (!ok) throw Error(ErrorCode::DimensionMismatch, "adversary value dimension mismatch");
  }
}

template <typename Scalar>
Vector<Scalar> broadcast_row(const ConsensusState<Scalar>& state, const AgentBehavior<Scalar>& b,
                             int agent, int step) {
  return std::visit(
      [&](const auto& beh) -> Vector<Scalar> {
        using T = std::decay_t<decltype(beh)>;
        if constexpr (std::is_same_v<T, ConstantAdversary<Scalar>>) {
          return beh.value;
        } else if constexpr (std::is_same_v<T, DriftingAdversary<Scalar>>) {
          return beh.start + Scalar(step) * beh.drift;
        } else if constexpr (std::is_same_v<T, MapAdversary>) {
          Vector<Scalar> v = state.values.row(agent).transpose();
          for (int c : beh.claimed_occupied) v(c) = Scalar(1);
          return v;
        } else {
          return state.values.row(agent).transpose();
        }
      },
      b);
}

}  // namespace detail

/// Values every agent shares at the state's step.
template <typename Scalar>
Matrix<Scalar> broadcast_values(const ConsensusState<Scalar>& state,
                                std::span<const AgentBehavior<Scalar>> behaviors) {
  Matrix<Scalar> out(state.agents(), state.dim());
  for (int i = 0; i < state.agents(); ++i) {
    out.row(i) = detail::broadcast_row(state, behaviors[i], i, state.step).transpose();
  }
  return out;
}

/// One synchronous W-MSR round with equal weights 1 / (|retained| + 1),
/// filtering each component independently. Adversary rows are replaced by
/// what they will broadcast at the next step.
template <typename Scalar>
ConsensusState<Scalar> consensus_step(const ConsensusState<Scalar>& state, const CommGraph& g,
                                      const WmsrConfig& cfg,
                                      std::span<const AgentBehavior<Scalar>> behaviors,
                                      StepStats* stats = nullptr) {
  detail::check_dimensions(state, g, behaviors);
  const Matrix<Scalar> shared = broadcast_values(state, behaviors);
  ConsensusState<Scalar> next{state.values, state.step + 1};
  if (stats != nullptr) stats->retained = Eigen::MatrixXi::Constant(state.agents(), state.dim(), -1);

  std::vector<std::pair<int, Scalar>> incoming;
  for (int i = 0; i < state.agents(); ++i) {
    if (!is_cooperative(behaviors[i])) {
      next.values.row(i) = detail::broadcast_row(state, behaviors[i], i, state.step + 1).transpose();
      continue;
    }
    const auto& nb = g.neighbors(i);
    for (int c = 0; c < state.dim(); ++c) {
      incoming.clear();
      for (int j : nb) incoming.emplace_back(j, shared(j, c));
      const Scalar own = state.values(i, c);
      const auto kept = wmsr_filter<Scalar>(own, incoming, cfg.F);
      Scalar sum = own;
      for (int j : kept) sum += shared(j, c);
      next.values(i, c) = sum / Scalar(kept.size() + 1);
      if (stats != nullptr) stats->retained(i, c) = static_cast<int>(kept.size());
    }
  }
  return next;
}

template <typename Scalar>
ConsensusState<Scalar> consensus_step(const ConsensusState<Scalar>& state, const CommGraph& g,
                                      const WmsrConfig& cfg,
                                      const std::vector<AgentBehavior<Scalar>>& behaviors,
                                      StepStats* stats = nullptr) {
  return consensus_step<Scalar>(state, g, cfg, std::span<const AgentBehavior<Scalar>>(behaviors),
                                stats);
}

/// Plain equal-weight linear consensus over the full neighbor set.
template <typename Scalar>
ConsensusState<Scalar> linear_consensus_step(const ConsensusState<Scalar>& state,
                                             const CommGraph& g) {
  ConsensusState<Scalar> next{state.values, state.step + 1};
  for (int i = 0; i < state.agents(); ++i) {
    const auto& nb = g.neighbors(i);
    for (int c = 0; c < state.dim(); ++c) {
      Scalar sum = state.values(i, c);
      for (int j : nb) sum += state.values(j, c);
      next.values(i, c) = sum / Scalar(nb.size() + 1);
    }
  }
  return next;
}

/// Componentwise min/max over cooperative agents. Throws NoCooperativeAgents.
template <typename Scalar>
SafeInterval<Scalar> safe_interval(const ConsensusState<Scalar>& initial,
                                   std::span<const AgentBehavior<Scalar>> behaviors) {
  SafeInterval<Scalar> out;
  bool any = false;
  for (int i = 0; i < initial.agents(); ++i) {
    if (!is_cooperative(behaviors[i])) continue;
    const Vector<Scalar> v = initial.values.row(i).transpose();
    if (!any) {
      out.lo = v;
      out.hi = v;
      any = true;
    } else {
      out.lo = out.lo.cwiseMin(v);
      out.hi = out.hi.cwiseMax(v);
    }
  }
  if (!any) throw Error(ErrorCode::NoCooperativeAgents, "no cooperative agents");
  return out;
}

template <typename Scalar>
SafeInterval<Scalar> safe_interval(const ConsensusState<Scalar>& initial,
                                   const std::vector<AgentBehavior<Scalar>>& behaviors) {
  return safe_interval<Scalar>(initial, std::span<const AgentBehavior<Scalar>>(behaviors));
}

/// Max minus min over cooperative agents, per component.
template <typename Scalar>
Vector<Scalar> cooperative_spread(const ConsensusState<Scalar>& state,
                                  std::span<const AgentBehavior<Scalar>> behaviors) {
  const auto box = safe_interval(state, behaviors);
  return box.hi - box.lo;
}

template <typename Scalar>
Vector<Scalar> cooperative_mean(const ConsensusState<Scalar>& state,
                                std::span<const AgentBehavior<Scalar>> behaviors) {
  Vector<Scalar> sum = Vector<Scalar>::Zero(state.dim());
  int count = 0;
  for (int i = 0; i < state.agents(); ++i) {
    if (!is_cooperative(behaviors[i])) continue;
    sum += state.values.row(i).transpose();
    ++count;
  }
  return sum / Scalar(std::max(count, 1));
}

enum class VerdictKind { Converged, MaxStepsReached, Stalled };

inline std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Converged: return "converged";
    case VerdictKind::MaxStepsReached: return "max_steps_reached";
    case VerdictKind::Stalled: return "stalled";
  }
  return "unknown";
}

template <typename Scalar>
struct Verdict {
  VerdictKind kind = VerdictKind::MaxStepsReached;
  Vector<Scalar> value;       // cooperative mean at the final step
  std::vector<int> stalled;   // see StallTracker
  int steps = 0;
};

template <typename Scalar>
struct ConsensusRun {
  std::vector<ConsensusState<Scalar>> trajectory;
  Verdict<Scalar> verdict;
};

template <typename Scalar>
using GraphProvider = std::function<const CommGraph&(const ConsensusState<Scalar>&)>;

/// Tracks, per cooperative agent, how many trailing steps in a row its
/// retained set was empty in every component. An agent is stalled when that
/// streak covers at least the final half of the run, which for a static
/// graph means every step.
class StallTracker {
 public:
  template <typename Scalar>
  explicit StallTracker(std::span<const AgentBehavior<Scalar>> behaviors)
      : cooperative_(behaviors.size()), streak_(behaviors.size(), 0) {
    for (std::size_t i = 0; i < behaviors.size(); ++i) {
      cooperative_[i] = is_cooperative(behaviors[i]);
    }
  }

  void observe(const StepStats& stats) {
    ++steps_;
    for (int i = 0; i < static_cast<int>(streak_.size()); ++i) {
      streak_[i] = stats.retained.row(i).maxCoeff() > 0 ? 0 : streak_[i] + 1;
    }
  }

  std::vector<int> stalled() const {
    std::vector<int> out;
    if (steps_ == 0) return out;
    const int needed = (steps_ + 1) / 2;
    for (std::size_t i = 0; i < streak_.size(); ++i) {
      if (cooperative_[i] && streak_[i] >= needed) out.push_back(static_cast<int>(i));
    }
    return out;
  }

 private:
  std::vector<bool> cooperative_;
  std::vector<int> streak_;
  int steps_ = 0;
};

/// Iterates consensus_step until the cooperative spread drops below
/// convergence_eps in every component or max_steps is reached.
template <typename Scalar>
ConsensusRun<Scalar> run_consensus(const ConsensusState<Scalar>& initial,
                                   const GraphProvider<Scalar>& graph_provider,
                                   const WmsrConfig& cfg,
                                   std::span<const AgentBehavior<Scalar>> behaviors) {
  ConsensusRun<Scalar> run;
  StallTracker tracker(behaviors);
  run.trajectory.push_back(initial);
  auto converged = [&](const ConsensusState<Scalar>& st) {
    return (cooperative_spread(st, behaviors).array() < Scalar(cfg.convergence_eps)).all();
  };
  while (true) {
    const auto& cur = run.trajectory.back();
    if (converged(cur)) {
      run.verdict.kind = VerdictKind::Converged;
      break;
    }
    if (cur.step - initial.step >= cfg.max_steps) {
      run.verdict.stalled = tracker.stalled();
      run.verdict.kind =
          run.verdict.stalled.empty() ? VerdictKind::MaxStepsReached : VerdictKind::Stalled;
      break;
    }
    StepStats stats;
    const CommGraph& g = graph_provider(cur);
    auto next = consensus_step(cur, g, cfg, behaviors, &stats);
    tracker.observe(stats);
    run.trajectory.push_back(std::move(next));
  }
  run.verdict.steps = run.trajectory.back().step - initial.step;
  run.verdict.value = cooperative_mean(run.trajectory.back(), behaviors);
  return run;
}

template <typename Scalar>
ConsensusRun<Scalar> run_consensus(const ConsensusState<Scalar>& initial, const CommGraph& g,
                                   const WmsrConfig& cfg,
                                   const std::vector<AgentBehavior<Scalar>>& behaviors) {
  GraphProvider<Scalar> provider = [&g](const ConsensusState<Scalar>&) -> const CommGraph& {
    return g;
  };
  return run_consensus<Scalar>(initial, provider, cfg,
                               std::span<const AgentBehavior<Scalar>>(behaviors));
}

}  // namespace resvor

#endif  // RESVOR_CONSENSUS_HPP
