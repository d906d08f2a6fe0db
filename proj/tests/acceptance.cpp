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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Every suite writes a detail record; the determinism
// check runs all suites twice and compares the records byte for byte, along
// with the files the CLI writes for each shipped config.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "resvor/cli.hpp"
#include "resvor/consensus.hpp"
#include "resvor/io.hpp"
#include "resvor/robustness.hpp"
#include "resvor/scenarios.hpp"
#include "resvor/study.hpp"
#include "test_support.hpp"

using namespace resvor;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kMasterSeed = 20260101;

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Suites take a detail stream that must be a pure function of the seed.
using Suite = std::function<Outcome(std::ostream&)>;

using Behaviors = std::vector<AgentBehavior<double>>;

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

Outcome two_lines_n11(std::ostream& rec) {
  const std::vector<std::size_t> edges{19, 34, 45, 52, 55, 55, 55, 55};
  const std::vector<int> levels{2, 3, 4, 5, 6, 6, 6, 6};
  const auto base = from_triangulation(delaunay(generate_formation({TwoLines{11}})));
  std::vector<std::size_t> got_e;
  std::vector<int> got_r;
  for (int K = 1; K <= 8; ++K) {
    const auto g = k_hop_extend(base, K);
    got_e.push_back(g.num_edges());
    got_r.push_back(max_equal_rs(g, {.threads = 4}));
  }
  rec << "edges " << join(got_e) << "\nmax_rs " << join(got_r) << '\n';
  return {got_e == edges && got_r == levels, "edges [" + join(got_e) + "], max r=s [" + join(got_r) + "]"};
}

Outcome two_lines_n19(std::ostream& rec) {
  const std::vector<std::size_t> edges{35, 66, 93, 116, 135, 150, 161, 168};
  const auto base = from_triangulation(delaunay(generate_formation({TwoLines{19}})));
  std::vector<std::size_t> got;
  for (int K = 1; K <= 8; ++K) got.push_back(k_hop_extend(base, K).num_edges());
  rec << "edges " << join(got) << '\n';
  return {got == edges, "edges [" + join(got) + "]"};
}

std::vector<FormationSpec> random_specs() { return random_rect_specs(kMasterSeed, 100, 8, 12); }

Outcome random_robustness(std::ostream& rec, int K, int level, bool r_only) {
  int ok = 0;
  for (const auto& spec : random_specs()) {
    const auto g = voronoi_graph(generate_formation(spec), K);
    const bool robust = r_only ? is_r_robust(g, level, {.threads = 4})
                               : is_rs_robust(g, level, level, {.threads = 4}).robust;
    rec << describe(spec) << ' ' << g.num_edges() << ' ' << robust << '\n';
    ok += robust ? 1 : 0;
  }
  return {ok == 100, std::to_string(ok) + "/100"};
}

Outcome oracle_equivalence(std::ostream& rec) {
  Rng rng(derive_seed(kMasterSeed, "oracle"));
  int disagreements = 0;
  int checks = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = rng.uniform_int(2, 7);
    CommGraph g;
    if (t % 2 == 0 || n < 3) {
      g = testing::random_graph(rng, n, rng.uniform(0.2, 0.9));
    } else {
      g = voronoi_graph(testing::random_points(rng, n), rng.uniform_int(1, 2));
    }
    for (int r = 1; r <= 4; ++r) {
      for (int s = 1; s <= 4; ++s) {
        const bool fast = is_rs_robust(g, r, s).robust;
        const bool slow = testing::naive_rs_robust(g, r, s);
        ++checks;
        if (fast != slow) ++disagreements;
        rec << fast;
      }
    }
    rec << '\n';
  }
  return {disagreements == 0, std::to_string(disagreements) + " disagreements in " + std::to_string(checks) + " checks"};
}

Outcome khop_oracle(std::ostream& rec) {
  Rng rng(derive_seed(kMasterSeed, "khop"));
  int disagreements = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = rng.uniform_int(3, 40);
    const auto base = from_triangulation(delaunay(testing::random_points(rng, n)));
    for (int K = 1; K <= 5; ++K) {
      const auto g = k_hop_extend(base, K);
      const auto expected = testing::distance_k_edges(base, K);
      const auto got = g.edges();
      if (std::set<Edge>(got.begin(), got.end()) != expected) ++disagreements;
      rec << g.num_edges() << (K == 5 ? '\n' : ' ');
    }
  }
  return {disagreements == 0, std::to_string(disagreements) + " disagreements in 500 graphs"};
}

// Containment tolerance for values in [0, 1]: a few ulps of rounding in the
// weighted mean.
constexpr double kSafeTol = 1e-12;

Outcome wmsr_safety(std::ostream& rec) {
  const auto specs = random_rect_specs(derive_seed(kMasterSeed, "wmsr"), 50, 8, 12);
  int safe_ok = 0;
  int follow_ok = 0;
  double worst_gap = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto pts = generate_formation(specs[i]);
    const auto n = static_cast<int>(pts.size());
    Rng rng(derive_seed(kMasterSeed, "wmsr-values", i));
    Matrix<double> init(n, 1);
    for (int a = 0; a < n; ++a) init(a, 0) = rng.uniform(0.0, 1.0);
    const int who = rng.uniform_int(0, n - 1);
    const double claim = (i % 2 == 0) ? 1.0 + rng.uniform(0.5, 5.0) : -rng.uniform(0.5, 5.0);
    init(who, 0) = claim;
    Behaviors beh(n, Cooperative{});
    beh[who] = ConstantAdversary<double>{Eigen::VectorXd::Constant(1, claim)};
    const auto g = voronoi_graph(pts, 1);

    const auto guarded = run_consensus(ConsensusState<double>{init, 0}, g, WmsrConfig{1, 1e-6, 10000}, beh);
    const auto box = safe_interval(ConsensusState<double>{init, 0}, std::span<const AgentBehavior<double>>(beh));
    bool inside = true;
    for (const auto& st : guarded.trajectory) {
      for (int a = 0; a < n; ++a) {
        if (a != who && !box.contains(st.values.row(a).transpose(), kSafeTol)) inside = false;
      }
    }
    const bool converged = guarded.verdict.kind == VerdictKind::Converged;
    safe_ok += (inside && converged) ? 1 : 0;

    const auto open = run_consensus(ConsensusState<double>{init, 0}, g, WmsrConfig{0, 1e-9, 10000}, beh);
    double gap = 0.0;
    for (int a = 0; a < n; ++a) {
      if (a != who) gap = std::max(gap, std::abs(open.trajectory.back().values(a, 0) - claim));
    }
    worst_gap = std::max(worst_gap, gap);
    follow_ok += gap < 1e-3 ? 1 : 0;
    rec << i << ' ' << n << ' ' << who << ' ' << format_double(claim) << ' ' << guarded.verdict.steps << ' '
        << format_double(guarded.verdict.value(0)) << ' ' << inside << ' ' << open.verdict.steps << ' '
        << format_double(gap) << '\n';
  }
  std::ostringstream d;
  d << "F=1 safe and converged " << safe_ok << "/50; F=0 within 1e-3 of adversary " << follow_ok
    << "/50 (worst gap " << worst_gap << ")";
  return {safe_ok == 50 && follow_ok == 50, d.str()};
}

Outcome rendezvous_suite(std::ostream& rec) {
  constexpr int kFormations = 5;
  int a_ok = 0, b_ok = 0, c_ok = 0, d_ok = 0;
  for (int f = 0; f < kFormations; ++f) {
    const auto pts = generate_formation({RandomRect{12, 1.0, 8.0, derive_seed(kMasterSeed, "rendezvous", f)}, 10.0});
    Matrix<double> centers(12, 2);
    for (int i = 0; i < 12; ++i) centers.row(i) = pts[i].transpose();

    // Drifting adversary: agent 0, starting inside the cooperative box.
    Rng rng(derive_seed(kMasterSeed, "drift", f));
    const Eigen::Vector2d lo = centers.bottomRows(11).colwise().minCoeff().transpose();
    const Eigen::Vector2d hi = centers.bottomRows(11).colwise().maxCoeff().transpose();
    const Eigen::Vector2d start(rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()));
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    Behaviors drift(12, Cooperative{});
    drift[0] = DriftingAdversary<double>{start, 0.05 * Eigen::Vector2d(std::cos(angle), std::sin(angle))};
    const Behaviors honest(12, Cooperative{});
    auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };

    const auto a = run_rendezvous(pts, centers, honest, {.K = 2, .F = 1});
    const auto b = run_rendezvous(pts, centers, drift, {.K = 1, .F = 0, .max_steps = 3000});
    const auto c = run_rendezvous(pts, centers, drift, {.K = 1, .F = 1});
    const auto d = run_rendezvous(pts, centers, honest, {.K = 1, .F = 2, .max_steps = 3000});
    a_ok += a.verdict.kind == VerdictKind::Converged ? 1 : 0;
    b_ok += !all(b.inside_safe) ? 1 : 0;
    c_ok += (c.verdict.kind == VerdictKind::Converged && all(c.inside_safe)) ? 1 : 0;
    d_ok += (d.verdict.kind == VerdictKind::Stalled && !d.verdict.stalled.empty()) ? 1 : 0;
    rec << f << " a " << to_string(a.verdict.kind) << ' ' << a.verdict.steps << " b " << all(b.inside_safe)
        << " c " << to_string(c.verdict.kind) << ' ' << c.verdict.steps << ' ' << all(c.inside_safe) << " d "
        << to_string(d.verdict.kind) << " [" << join(d.verdict.stalled) << "]\n";
    for (const auto& p : c.positions.back()) rec << format_double(p.x()) << ',' << format_double(p.y()) << ' ';
    rec << '\n';
  }
  const int k = kFormations;
  std::ostringstream os;
  os << "(a) converged " << a_ok << "/" << k << "; (b) left safe box " << b_ok << "/" << k
     << "; (c) safe and converged " << c_ok << "/" << k << "; (d) stalled " << d_ok << "/" << k;
  return {a_ok == k && b_ok == k && c_ok == k && d_ok == k, os.str()};
}

Outcome map_suite(std::ostream& rec) {
  const auto env = OccupancyGrid::from_bitmap_file(std::string(RESVOR_DATA_DIR) + "/hallway.txt");
  const std::vector<Cell> starts{{8, 20}, {9, 22}, {7, 24}, {8, 26}};
  MapAdversarySpec blocker{{9, 6}, {}};
  for (int r = 4; r <= 6; ++r) {
    for (int c = 0; c <= 2; ++c) blocker.claims.push_back({r, c});
  }
  const std::vector<MapAdversarySpec> adv{blocker};
  const auto f0 = run_map_consensus(env, starts, adv, {.F = 0});
  const auto f1 = run_map_consensus(env, starts, adv, {.F = 1});
  for (const auto* res : {&f0, &f1}) {
    const auto& s = res->summary;
    rec << s.steps << ' ' << s.exploration_steps << ' ' << s.sensed_reachable_free << '/' << s.reachable_free << ' '
        << s.beliefs_match_truth << '\n';
    for (const auto& p : res->positions.back()) rec << p.row << ',' << p.col << ' ';
    rec << '\n';
  }
  const bool blocked = f0.summary.coverage < 1.0;
  const bool explored = f1.summary.coverage == 1.0 && f1.summary.beliefs_match_truth;
  const bool slower = f1.summary.exploration_steps >= f0.summary.exploration_steps;
  std::ostringstream os;
  os << env.width() << "x" << env.height() << " grid; F=0 coverage " << f0.summary.sensed_reachable_free << "/"
     << f0.summary.reachable_free << "; F=1 coverage " << f1.summary.sensed_reachable_free << "/"
     << f1.summary.reachable_free << ", beliefs match truth " << (f1.summary.beliefs_match_truth ? "yes" : "no")
     << "; exploration steps F=1 " << f1.summary.exploration_steps << " vs F=0 " << f0.summary.exploration_steps
     << (f1.summary.exploration_steps == f0.summary.exploration_steps ? " (equal, flagged)" : "");
  return {blocked && explored && slower && env.width() <= 40 && env.height() <= 20, os.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Manifests carry wall time, the one field allowed to differ.
std::string comparable(const fs::path& p) {
  if (p.filename() != "manifest.json") return slurp(p);
  auto j = nlohmann::ordered_json::parse(slurp(p));
  j.erase("wall_time_seconds");
  return j.dump();
}

const std::vector<std::vector<std::string>> kCliRuns{
    {"simulate", "two_lines_f2.json"}, {"simulate", "wheel_adversary.json"},
    {"simulate", "rendezvous.json"},   {"simulate", "rendezvous_drift.json"},
    {"simulate", "hallway_f0.json"},   {"simulate", "hallway_f1.json"},
    {"study", "study_two_lines.json"}, {"study", "study_two_lines_19.json"},
    {"study", "study_random.json"},
};

void run_cli_configs(const fs::path& dir) {
  for (const auto& run : kCliRuns) {
    const fs::path out = dir / "cli" / run[1];
    std::ostringstream sink;
    run_cli({run[0], std::string(RESVOR_DATA_DIR) + "/" + run[1], "--seed", std::to_string(kMasterSeed),
             "--out-dir", out.string(), "--threads", "4"},
            sink, sink);
    std::ofstream(out / "stdout.txt", std::ios::binary) << sink.str();
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Suite>> suites{
      {"two-lines-n11-levels", two_lines_n11},
      {"two-lines-n19-edges", two_lines_n19},
      {"delaunay-2-2-robust", [](std::ostream& r) { return random_robustness(r, 1, 2, false); }},
      {"two-hop-3-3-robust", [](std::ostream& r) { return random_robustness(r, 2, 3, false); }},
      {"two-hop-3-robust", [](std::ostream& r) { return random_robustness(r, 2, 3, true); }},
      {"robustness-oracle-equivalence", oracle_equivalence},
      {"khop-oracle", khop_oracle},
      {"wmsr-safety", wmsr_safety},
      {"rendezvous-n12", rendezvous_suite},
      {"map-consensus-hallway", map_suite},
  };

  const fs::path root = fs::absolute("acceptance_out");
  fs::remove_all(root);
  int failures = 0;
  auto report = [&](const std::string& name, const Outcome& o, double seconds) {
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << " [" << std::fixed
              << std::setprecision(1) << seconds << "s]" << std::defaultfloat << std::endl;
    if (!o.pass) ++failures;
  };

  for (int pass = 1; pass <= 2; ++pass) {
    const fs::path dir = root / ("run" + std::to_string(pass));
    fs::create_directories(dir);
    for (const auto& [name, suite] : suites) {
      const auto t0 = std::chrono::steady_clock::now();
      std::ofstream rec(dir / (name + ".txt"), std::ios::binary);
      const Outcome o = suite(rec);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (pass == 1) report(name, o, secs);
    }
    run_cli_configs(dir);
  }

  int files = 0;
  std::vector<std::string> mismatched;
  const fs::path first = root / "run1";
  for (const auto& entry : fs::recursive_directory_iterator(first)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), first);
    const fs::path other = root / "run2" / rel;
    ++files;
    if (!fs::exists(other) || comparable(entry.path()) != comparable(other)) mismatched.push_back(rel.string());
  }
  Outcome det;
  det.pass = mismatched.empty() && files > 0;
  det.detail = std::to_string(files) + " files compared, " + std::to_string(mismatched.size()) + " differ" +
               (mismatched.empty() ? "" : " (" + join(mismatched) + ")");
  report("determinism", det, 0.0);

  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
