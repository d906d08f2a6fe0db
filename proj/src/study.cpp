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

#include "resvor/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "resvor/error.hpp"
#include "resvor/graph.hpp"
#include "resvor/rng.hpp"

namespace resvor {

namespace {

constexpr int kMaxFormationRetries = 16;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<Point2> random_rect(const RandomRect& spec, double scale) {
  if (spec.n < 3) throw Error(ErrorCode::InvalidArgument, "random formation needs n >= 3");
  if (!(spec.aspect_min >= 1.0) || spec.aspect_max < spec.aspect_min) {
    throw Error(ErrorCode::InvalidArgument, "aspect range must satisfy 1 <= min <= max");
  }
  for (int attempt = 0; attempt < kMaxFormationRetries; ++attempt) {
    Rng rng(derive_seed(spec.seed, "rect-attempt", attempt));
    const double aspect =
        std::exp(rng.uniform(std::log(spec.aspect_min), std::log(spec.aspect_max)));
    const double width = scale * std::sqrt(aspect);
    const double height = scale / std::sqrt(aspect);
    std::vector<Point2> pts(spec.n);
    for (auto& p : pts) p = Point2(rng.uniform(0.0, width), rng.uniform(0.0, height));
    try {
      delaunay(pts);
      return pts;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::DegenerateAfterRetries, "random formation stayed degenerate");
}

}  // namespace

std::string describe(const FormationSpec& spec) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const RandomRect& s) { os << "random_rect(n=" << s.n << ",seed=" << s.seed << ")"; },
                 [&](const TwoLines& s) { os << "two_lines(n=" << s.n << ")"; },
                 [&](const Grid& s) { os << "grid(" << s.rows << "x" << s.cols << ")"; },
                 [&](const Circle& s) {
                   os << "circle(n=" << s.n << (s.with_center ? ",center" : "") << ")";
                 },
                 [&](const HollowSquare& s) { os << "hollow_square(side=" << s.side << ")"; },
             },
             spec.kind);
  return os.str();
}

std::vector<Point2> generate_formation(const FormationSpec& spec) {
  if (!(spec.scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
  const double s = spec.scale;
  return std::visit(
      Overloaded{
          [&](const RandomRect& r) { return random_rect(r, s); },
          [&](const TwoLines& t) {
            if (t.n < 3) throw Error(ErrorCode::InvalidArgument, "two_lines needs n >= 3");
            std::vector<Point2> pts;
            for (int j = 0; 2 * j < t.n; ++j) pts.emplace_back(s * 2.0 * j, 0.0);
            for (int j = 0; 2 * j + 1 < t.n; ++j) pts.emplace_back(s * (2.0 * j + 1.0), s);
            return pts;
          },
          [&](const Grid& g) {
            if (g.rows < 2 || g.cols < 2) {
              throw Error(ErrorCode::InvalidArgument, "grid needs at least 2x2");
            }
            std::vector<Point2> pts;
            for (int r = 0; r < g.rows; ++r) {
              for (int c = 0; c < g.cols; ++c) pts.emplace_back(s * c, s * r);
            }
            return pts;
          },
          [&](const Circle& c) {
            if (c.n < 3) throw Error(ErrorCode::InvalidArgument, "circle needs n >= 3");
            std::vector<Point2> pts;
            for (int i = 0; i < c.n; ++i) {
              const double a = 2.0 * std::numbers::pi * i / c.n;
              pts.emplace_back(s * std::cos(a), s * std::sin(a));
            }
            if (c.with_center) pts.emplace_back(0.0, 0.0);
            return pts;
          },
          [&](const HollowSquare& h) {
            if (h.side < 2) throw Error(ErrorCode::InvalidArgument, "hollow_square needs side >= 2");
            std::vector<Point2> pts;
            const int m = h.side - 1;
            for (int i = 0; i < m; ++i) pts.emplace_back(s * i, 0.0);
            for (int i = 0; i < m; ++i) pts.emplace_back(s * m, s * i);
            for (int i = 0; i < m; ++i) pts.emplace_back(s * (m - i), s * m);
            for (int i = 0; i < m; ++i) pts.emplace_back(0.0, s * (m - i));
            return pts;
          },
      },
      spec.kind);
}

std::vector<FormationSpec> random_rect_specs(std::uint64_t master_seed, int samples, int n_min,
                                             int n_max, double aspect_min, double aspect_max,
                                             double scale) {
  if (n_min < 3 || n_max < n_min) throw Error(ErrorCode::InvalidArgument, "bad n range");
  std::vector<FormationSpec> specs;
  specs.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t seed = derive_seed(master_seed, "formation", i);
    Rng rng(derive_seed(seed, "size"));
    specs.push_back({RandomRect{rng.uniform_int(n_min, n_max), aspect_min, aspect_max, seed}, scale});
  }
  return specs;
}

StudyReport run_robustness_study(std::span<const FormationSpec> specs, int K_max,
                                 const StudyOptions& opts) {
  if (K_max < 1) throw Error(ErrorCode::InvalidArgument, "K_max must be >= 1");
  StudyReport report;
  report.K_max = K_max;
  report.num_samples = static_cast<int>(specs.size());
  report.rows.resize(specs.size() * K_max);

  // Fail fast on size before spending time on enumeration.
  std::vector<std::vector<Point2>> formations;
  formations.reserve(specs.size());
  for (const auto& spec : specs) {
    formations.push_back(generate_formation(spec));
    if (!opts.edges_only && static_cast<int>(formations.back().size()) >
                                std::min(opts.robustness.cap, kMaxSizeCap)) {
      throw Error(ErrorCode::GraphTooLarge,
                  describe(spec) + " exceeds the robustness cap; use edges_only");
    }
  }

  RobustnessOptions inner = opts.robustness;
  inner.threads = 1;
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      const CommGraph base = from_triangulation(delaunay(formations[i]));
      for (int K = 1; K <= K_max; ++K) {
        const CommGraph g = k_hop_extend(base, K);
        StudySample& row = report.rows[i * K_max + (K - 1)];
        row.sample = static_cast<int>(i);
        row.formation = describe(specs[i]);
        row.n = g.n();
        row.K = K;
        row.edges = g.num_edges();
        row.complete = g.is_complete();
        if (!opts.edges_only) row.max_rs = max_equal_rs(g, inner);
      }
    }
  };
  auto worker = [&] {
    try {
      work();
    } catch (...) {
      const std::scoped_lock lock(error_mutex);
      if (!error) error = std::current_exception();
      next = specs.size();
    }
  };
  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  if (specs.empty()) return report;
  const double total = static_cast<double>(specs.size());
  for (int K = 1; K <= K_max; ++K) {
    int complete = 0;
    int min_rs = -1;
    int max_rs = 0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const auto& row = report.rows[i * K_max + (K - 1)];
      if (row.complete) ++complete;
      if (row.max_rs < 0) continue;
      ++report.exact_counts[{K, row.max_rs}];
      min_rs = min_rs < 0 ? row.max_rs : std::min(min_rs, row.max_rs);
      max_rs = std::max(max_rs, row.max_rs);
      // No graph on n vertices exceeds ceil(n/2), so that bound caps the target.
      const int target = std::min(K + 1, (row.n + 1) / 2);
      if (row.max_rs < target && K <= 4) {
        std::ostringstream msg;
        msg << (K <= 2 ? "violation" : "observation") << ": sample " << i << " (" << row.formation
            << ") K=" << K << " max r=s " << row.max_rs << " < " << target;
        report.flags.push_back(msg.str());
      }
    }
    report.percent_complete[K] = 100.0 * complete / total;
    if (min_rs < 0) continue;
    report.min_rs[K] = min_rs;
    for (int r = 1; r <= max_rs; ++r) {
      int at_least = 0;
      for (std::size_t i = 0; i < specs.size(); ++i) {
        if (report.rows[i * K_max + (K - 1)].max_rs >= r) ++at_least;
      }
      report.percent_at_least[{K, r}] = 100.0 * at_least / total;
    }
  }
  return report;
}

}  // namespace resvor
