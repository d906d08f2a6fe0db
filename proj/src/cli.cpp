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

#include "resvor/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "resvor/consensus.hpp"
#include "resvor/error.hpp"
#include "resvor/geometry.hpp"
#include "resvor/graph.hpp"
#include "resvor/io.hpp"
#include "resvor/rng.hpp"
#include "resvor/robustness.hpp"
#include "resvor/scenarios.hpp"
#include "resvor/study.hpp"

namespace resvor {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using Behaviors = std::vector<AgentBehavior<double>>;

struct Common {
  std::uint64_t seed = 0;
  std::string out_dir;
  int cap = kDefaultSizeCap;
  int threads = 1;
  std::string format = "csv";
};

// Files written by one command, plus the manifest that lists them.
class OutputSet {
 public:
  explicit OutputSet(const std::string& dir) : dir_(dir) {
    if (!dir.empty()) fs::create_directories(dir_);
  }

  bool enabled() const { return !dir_.empty(); }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    if (!enabled()) return;
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + (dir_ / name).string());
    body(f);
    files_.push_back(name);
  }

  void write_json(const std::string& name, const json& j) {
    write(name, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  }

  void manifest(const std::string& command, const std::string& input, std::uint64_t seed,
                double wall_seconds) {
    if (!enabled()) return;
    json m;
    m["command"] = command;
    m["config"] = input;
    m["seed"] = seed;
    m["version"] = kVersion;
    m["wall_time_seconds"] = wall_seconds;
    m["outputs"] = files_;
    std::ofstream f(dir_ / "manifest.json", std::ios::binary);
    f << m.dump(2) << '\n';
  }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

[[noreturn]] void config_error(const std::string& msg) {
  throw Error(ErrorCode::InvalidArgument, "config: " + msg);
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

// Paths inside a config resolve against the config's directory.
std::string resolve(const std::string& config_path, const std::string& p) {
  const fs::path rel(p);
  if (rel.is_absolute()) return p;
  return (fs::path(config_path).parent_path() / rel).string();
}

json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

FormationSpec parse_formation(const json& j, std::uint64_t seed) {
  const std::string kind = j.at("kind").get<std::string>();
  FormationSpec spec;
  if (kind == "two_lines") {
    spec.kind = TwoLines{j.at("n").get<int>()};
  } else if (kind == "grid") {
    spec.kind = Grid{j.at("rows").get<int>(), j.at("cols").get<int>()};
  } else if (kind == "circle") {
    spec.kind = Circle{j.at("n").get<int>(), j.value("with_center", false)};
  } else if (kind == "hollow_square") {
    spec.kind = HollowSquare{j.at("side").get<int>()};
  } else if (kind == "random_rect") {
    const auto aspect = j.value("aspect", std::vector<double>{1.0, 8.0});
    if (aspect.size() != 2) config_error("aspect must be [min, max]");
    spec.kind = RandomRect{j.at("n").get<int>(), aspect[0], aspect[1], j.value("seed", seed)};
    spec.scale = 10.0;
  } else {
    config_error("unknown formation kind '" + kind + "'");
  }
  spec.scale = j.value("scale", spec.scale);
  return spec;
}

std::vector<Point2> scenario_positions(const json& cfg, const std::string& path, std::uint64_t seed) {
  if (cfg.contains("positions")) {
    return read_positions_file(resolve(path, cfg.at("positions").get<std::string>())).points;
  }
  if (cfg.contains("formation")) {
    return generate_formation(parse_formation(cfg.at("formation"), derive_seed(seed, "formation", 0)));
  }
  config_error("needs 'positions' or 'formation'");
}

Matrix<double> initial_values(const json& cfg, int n, std::uint64_t seed) {
  const json spec = cfg.value("initial_values", json{{"uniform", {0.0, 10.0}}});
  Matrix<double> v(n, 1);
  if (spec.is_array()) {
    const auto vals = spec.get<std::vector<double>>();
    if (static_cast<int>(vals.size()) != n) config_error("initial_values needs one value per agent");
    for (int i = 0; i < n; ++i) v(i, 0) = vals[i];
  } else {
    const auto range = spec.at("uniform").get<std::vector<double>>();
    if (range.size() != 2) config_error("uniform must be [lo, hi]");
    Rng rng(derive_seed(seed, "initial"));
    for (int i = 0; i < n; ++i) v(i, 0) = rng.uniform(range[0], range[1]);
  }
  return v;
}

// Drifting adversaries start at a random point of the cooperative box and
// move along a seeded unit direction.
Behaviors parse_adversaries(const json& cfg, const Matrix<double>& initial, std::uint64_t seed) {
  const auto n = static_cast<int>(initial.rows());
  const auto dim = initial.cols();
  const json list = cfg.value("adversaries", json::array());

  std::vector<bool> honest(n, true);
  for (const auto& a : list) {
    const int agent = a.at("agent").get<int>();
    if (agent < 0 || agent >= n) config_error("adversary agent out of range");
    honest[agent] = false;
  }
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(dim, std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = -lo;
  for (int i = 0; i < n; ++i) {
    if (!honest[i]) continue;
    lo = lo.cwiseMin(initial.row(i).transpose());
    hi = hi.cwiseMax(initial.row(i).transpose());
  }

  Behaviors beh(n, Cooperative{});
  for (const auto& a : list) {
    const int agent = a.at("agent").get<int>();
    const std::string type = a.at("type").get<std::string>();
    if (type == "constant") {
      const json& val = a.at("value");
      const auto v = val.is_array() ? val.get<std::vector<double>>() : std::vector<double>{val.get<double>()};
      if (static_cast<Eigen::Index>(v.size()) != dim) config_error("adversary value has the wrong dimension");
      beh[agent] = ConstantAdversary<double>{Eigen::Map<const Eigen::VectorXd>(v.data(), dim)};
    } else if (type == "drifting") {
      if (!std::isfinite(lo(0))) throw Error(ErrorCode::NoCooperativeAgents, "every agent is an adversary");
      Rng rng(derive_seed(seed, "drift", agent));
      Eigen::VectorXd start(dim);
      for (Eigen::Index c = 0; c < dim; ++c) start(c) = rng.uniform(lo(c), hi(c));
      Eigen::VectorXd dir = Eigen::VectorXd::Zero(dim);
      if (dim == 1) {
        dir(0) = rng.uniform() < 0.5 ? -1.0 : 1.0;
      } else {
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        dir(0) = std::cos(angle);
        dir(1) = std::sin(angle);
      }
      beh[agent] = DriftingAdversary<double>{start, a.value("speed", 0.05) * dir};
    } else {
      config_error("unknown adversary type '" + type + "'");
    }
  }
  return beh;
}

WmsrConfig wmsr_config(const json& cfg) {
  WmsrConfig w;
  w.F = cfg.value("F", 0);
  w.convergence_eps = cfg.value("convergence_eps", w.convergence_eps);
  w.max_steps = cfg.value("max_steps", w.max_steps);
  if (w.F < 0 || w.max_steps < 0 || !(w.convergence_eps > 0)) config_error("bad F, max_steps or eps");
  return w;
}

json verdict_json(const std::string& scenario, const Verdict<double>& v) {
  json j;
  j["scenario"] = scenario;
  j["verdict"] = std::string(to_string(v.kind));
  j["steps"] = v.steps;
  j["value"] = vec_json(v.value);
  j["stalled"] = v.stalled;
  return j;
}

void print_record(std::ostream& out, const json& j, const std::string& format) {
  if (format == "json") {
    out << j.dump(2) << '\n';
    return;
  }
  out << "key,value\n";
  for (const auto& [k, v] : j.items()) {
    out << k << ',';
    if (v.is_array()) {
      std::string sep;
      for (const auto& x : v) {
        out << sep << (x.is_string() ? x.get<std::string>() : x.dump());
        sep = " ";
      }
    } else if (v.is_string()) {
      out << v.get<std::string>();
    } else {
      out << v.dump();
    }
    out << '\n';
  }
}

void write_position_steps(std::ostream& os, const std::vector<std::vector<Point2>>& steps) {
  os << "step,agent,x,y\n";
  for (std::size_t k = 0; k < steps.size(); ++k) {
    for (std::size_t i = 0; i < steps[k].size(); ++i) {
      os << k << ',' << i << ',' << format_double(steps[k][i].x()) << ','
         << format_double(steps[k][i].y()) << '\n';
    }
  }
}

PositionTable table_of(const std::vector<Point2>& pts) {
  PositionTable t;
  t.points = pts;
  for (std::size_t i = 0; i < pts.size(); ++i) t.ids.push_back(std::to_string(i));
  return t;
}

// ---------------------------------------------------------------------------

int simulate_parameter(const json& cfg, const std::string& path, const Common& c, OutputSet& outs,
                       std::ostream& out) {
  const auto pts = scenario_positions(cfg, path, c.seed);
  const auto n = static_cast<int>(pts.size());
  const auto init = initial_values(cfg, n, c.seed);
  const auto beh = parse_adversaries(cfg, init, c.seed);
  const auto res = run_parameter_estimation(pts, init, beh, cfg.value("K", 1), wmsr_config(cfg));

  json v = verdict_json("parameter_estimation", res.run.verdict);
  v["safe_lo"] = vec_json(res.safe.lo);
  v["safe_hi"] = vec_json(res.safe.hi);
  v["inside_safe"] = std::all_of(res.inside_safe.begin(), res.inside_safe.end(), [](bool b) { return b; });
  outs.write("formation.csv", [&](std::ostream& os) { write_positions(os, table_of(pts)); });
  outs.write("edges.txt", [&](std::ostream& os) { write_edge_list(os, res.graph); });
  outs.write("trajectory.csv", [&](std::ostream& os) {
    write_trajectory_csv(os, res.run.trajectory, beh);
  });
  outs.write_json("verdict.json", v);
  print_record(out, v, c.format);
  return res.run.verdict.kind == VerdictKind::Converged ? kExitOk : kExitNotConverged;
}

int simulate_rendezvous(const json& cfg, const std::string& path, const Common& c, OutputSet& outs,
                        std::ostream& out) {
  const auto pts = scenario_positions(cfg, path, c.seed);
  const auto n = static_cast<int>(pts.size());
  Matrix<double> centers(n, 2);
  for (int i = 0; i < n; ++i) centers.row(i) = pts[i].transpose();
  const auto beh = parse_adversaries(cfg, centers, c.seed);
  const WmsrConfig w = wmsr_config(cfg);
  RendezvousConfig rc;
  rc.radius = cfg.value("radius", rc.radius);
  rc.tau = cfg.value("tau", rc.tau);
  rc.v_max = cfg.value("v_max", rc.v_max);
  rc.position_tol = cfg.value("position_tol", rc.position_tol);
  rc.K = cfg.value("K", 1);
  rc.F = w.F;
  rc.convergence_eps = w.convergence_eps;
  rc.max_steps = w.max_steps;
  if (!(rc.radius > 0 && rc.tau > 0 && rc.v_max > 0)) config_error("radius, tau, v_max must be > 0");
  const auto res = run_rendezvous(pts, centers, beh, rc);

  json v = verdict_json("rendezvous", res.verdict);
  v["safe_lo"] = vec_json(res.safe.lo);
  v["safe_hi"] = vec_json(res.safe.hi);
  v["inside_safe"] = std::all_of(res.inside_safe.begin(), res.inside_safe.end(), [](bool b) { return b; });
  outs.write("positions.csv", [&](std::ostream& os) { write_position_steps(os, res.positions); });
  outs.write("trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, res.centers, beh); });
  outs.write_json("verdict.json", v);
  print_record(out, v, c.format);
  return res.verdict.kind == VerdictKind::Converged ? kExitOk : kExitNotConverged;
}

Cell parse_cell(const json& j) {
  const auto rc = j.get<std::vector<int>>();
  if (rc.size() != 2) config_error("cells are [row, col]");
  return {rc[0], rc[1]};
}

int simulate_map(const json& cfg, const std::string& path, const Common& c, OutputSet& outs,
                 std::ostream& out) {
  const auto env = OccupancyGrid::from_bitmap_file(resolve(path, cfg.at("grid").get<std::string>()));
  std::vector<Cell> starts;
  for (const auto& s : cfg.at("starts")) starts.push_back(parse_cell(s));
  std::vector<MapAdversarySpec> adversaries;
  for (const auto& a : cfg.value("adversaries", json::array())) {
    MapAdversarySpec spec{parse_cell(a.at("cell")), {}};
    for (const auto& rect : a.value("claims", json::array())) {
      const auto r = rect.get<std::vector<int>>();
      if (r.size() != 4) config_error("claims are [row0, col0, row1, col1] rectangles");
      for (int row = r[0]; row <= r[2]; ++row) {
        for (int col = r[1]; col <= r[3]; ++col) spec.claims.push_back({row, col});
      }
    }
    adversaries.push_back(std::move(spec));
  }
  MapConfig mc;
  mc.F = cfg.value("F", 0);
  mc.sensor_half_width = cfg.value("sensor_half_width", mc.sensor_half_width);
  mc.max_steps = cfg.value("max_steps", mc.max_steps);
  mc.convergence_eps = cfg.value("convergence_eps", mc.convergence_eps);
  mc.snapshot_every = cfg.value("snapshot_every", mc.snapshot_every);
  const auto res = run_map_consensus(env, starts, adversaries, mc);

  const auto& s = res.summary;
  json v;
  v["scenario"] = "map";
  v["verdict"] = s.exploration_complete ? (s.beliefs_converged ? "converged" : "explored")
                                        : "max_steps_reached";
  v["steps"] = s.steps;
  v["exploration_steps"] = s.exploration_steps;
  v["exploration_complete"] = s.exploration_complete;
  v["beliefs_converged"] = s.beliefs_converged;
  v["coverage"] = s.coverage;
  v["reachable_free"] = s.reachable_free;
  v["sensed_reachable_free"] = s.sensed_reachable_free;
  v["beliefs_match_truth"] = s.beliefs_match_truth;

  const auto coop = starts.size();
  outs.write("positions.csv", [&](std::ostream& os) {
    os << "step,agent,row,col,role\n";
    for (std::size_t k = 0; k < res.positions.size(); ++k) {
      for (std::size_t i = 0; i < res.positions[k].size(); ++i) {
        os << k << ',' << i << ',' << res.positions[k][i].row << ',' << res.positions[k][i].col << ','
           << (i < coop ? "cooperative" : "map") << '\n';
      }
    }
  });
  outs.write("beliefs.csv", [&](std::ostream& os) {
    os << "step,agent,row,col,value\n";
    for (const auto& snap : res.snapshots) {
      for (std::size_t i = 0; i < snap.beliefs.size(); ++i) {
        const auto& b = snap.beliefs[i];
        for (int idx = 0; idx < b.size(); ++idx) {
          const Cell cell = b.cell(idx);
          os << snap.step << ',' << i << ',' << cell.row << ',' << cell.col << ','
             << (b.known(idx) ? format_double(b.value(idx)) : "unknown") << '\n';
        }
      }
    }
  });
  outs.write_json("verdict.json", v);
  print_record(out, v, c.format);
  return s.exploration_complete ? kExitOk : kExitNotConverged;
}

int cmd_simulate(const std::string& path, bool seed_given, Common c, std::ostream& out) {
  const Stopwatch clock;
  const json cfg = load_config(path);
  if (!seed_given) c.seed = cfg.value("seed", std::uint64_t{0});
  OutputSet outs(c.out_dir);
  const std::string scenario = cfg.at("scenario").get<std::string>();
  int code = kExitOk;
  if (scenario == "parameter_estimation") {
    code = simulate_parameter(cfg, path, c, outs, out);
  } else if (scenario == "rendezvous") {
    code = simulate_rendezvous(cfg, path, c, outs, out);
  } else if (scenario == "map") {
    code = simulate_map(cfg, path, c, outs, out);
  } else {
    config_error("unknown scenario '" + scenario + "'");
  }
  outs.manifest("simulate", path, c.seed, clock.seconds());
  return code;
}

// ---------------------------------------------------------------------------

int cmd_graph(const std::string& path, int K, const Common& c, std::ostream& out) {
  const Stopwatch clock;
  const auto table = read_positions_file(path);
  const auto tri = delaunay(table.points);
  const auto g = k_hop_extend(from_triangulation(tri), K);
  OutputSet outs(c.out_dir);
  outs.write("edges.txt", [&](std::ostream& os) { write_edge_list(os, g); });
  outs.write("triangles.csv", [&](std::ostream& os) { write_triangles(os, tri); });
  if (c.format == "json") {
    json j;
    j["n"] = g.n();
    j["k"] = g.k();
    j["ids"] = table.ids;
    json edges = json::array();
    for (const auto& [u, v] : g.delta_edges()) edges.push_back({u, v, "delta"});
    for (const auto& [u, v] : g.ext_edges()) edges.push_back({u, v, "ext"});
    j["edges"] = edges;
    out << j.dump(2) << '\n';
  } else {
    write_edge_list(out, g);
  }
  outs.manifest("graph", path, c.seed, clock.seconds());
  return kExitOk;
}

int cmd_check(const std::string& path, std::optional<int> r, std::optional<int> s, bool max,
              bool audit, const Common& c, std::ostream& out, std::ostream& err) {
  if (max == (r.has_value() || s.has_value()) || (!max && !(r && s))) {
    err << "check: give either --max or both --r and --s\n";
    return kExitUsage;
  }
  const Stopwatch clock;
  const CommGraph g = read_edge_list_file(path);
  RobustnessOptions opts;
  opts.cap = c.cap;
  opts.threads = c.threads;
  opts.audit = audit;
  json j;
  j["n"] = g.n();
  j["edges"] = g.num_edges();
  if (max) {
    j["max_rs"] = max_equal_rs(g, opts);
  } else {
    const auto rep = is_rs_robust(g, *r, *s, opts);
    j["r"] = rep.r;
    j["s"] = rep.s;
    j["robust"] = rep.robust;
    j["pairs_checked"] = rep.pairs_checked;
    if (rep.witness) {
      j["witness_s1"] = rep.witness->s1;
      j["witness_s2"] = rep.witness->s2;
    }
  }
  OutputSet outs(c.out_dir);
  outs.write_json("report.json", j);
  print_record(out, j, c.format);
  outs.manifest("check", path, c.seed, clock.seconds());
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_study(const std::string& path, bool seed_given, Common c, std::ostream& out, std::ostream& err) {
  const Stopwatch clock;
  const json cfg = load_config(path);
  if (!seed_given) c.seed = cfg.value("seed", std::uint64_t{0});
  std::vector<FormationSpec> specs;
  int batch = 0;
  for (const auto& f : cfg.at("formations")) {
    if (f.contains("samples")) {
      if (f.at("kind").get<std::string>() != "random_rect") config_error("only random_rect takes samples");
      const auto nr = f.at("n").get<std::vector<int>>();
      const auto aspect = f.value("aspect", std::vector<double>{1.0, 8.0});
      if (nr.size() != 2 || aspect.size() != 2) config_error("n and aspect are [min, max]");
      const std::uint64_t master = batch == 0 ? c.seed : derive_seed(c.seed, "batch", batch);
      const auto more = random_rect_specs(master, f.at("samples").get<int>(), nr[0], nr[1], aspect[0],
                                          aspect[1], f.value("scale", 10.0));
      specs.insert(specs.end(), more.begin(), more.end());
      ++batch;
    } else {
      specs.push_back(parse_formation(f, derive_seed(c.seed, "formation", static_cast<int>(specs.size()))));
    }
  }
  StudyOptions opts;
  opts.robustness.cap = c.cap;
  opts.threads = c.threads;
  opts.edges_only = cfg.value("edges_only", false);
  const int K_max = cfg.value("K_max", 2);
  const auto rep = run_robustness_study(specs, K_max, opts);

  json table = json::array();
  for (const auto& [key, pct] : rep.percent_at_least) {
    const auto it = rep.exact_counts.find(key);
    table.push_back({{"K", key.first},
                     {"r", key.second},
                     {"exact", it == rep.exact_counts.end() ? 0 : it->second},
                     {"percent_at_least", pct}});
  }
  json j;
  j["K_max"] = rep.K_max;
  j["num_samples"] = rep.num_samples;
  j["table"] = table;
  json complete = json::object();
  for (const auto& [K, pct] : rep.percent_complete) complete[std::to_string(K)] = pct;
  j["percent_complete"] = complete;
  json min_rs = json::object();
  for (const auto& [K, m] : rep.min_rs) min_rs[std::to_string(K)] = m;
  j["min_rs"] = min_rs;
  j["flags"] = rep.flags;
  json samples = json::array();
  for (const auto& row : rep.rows) {
    samples.push_back({{"sample", row.sample}, {"formation", row.formation}, {"n", row.n}, {"K", row.K},
                       {"edges", row.edges}, {"complete", row.complete}, {"max_rs", row.max_rs}});
  }
  j["samples"] = samples;

  auto write_samples = [&](std::ostream& os) {
    os << "sample,formation,n,K,edges,complete,max_rs\n";
    for (const auto& row : rep.rows) {
      os << row.sample << ',' << '"' << row.formation << '"' << ',' << row.n << ',' << row.K << ','
         << row.edges << ',' << (row.complete ? 1 : 0) << ',' << row.max_rs << '\n';
    }
  };
  auto write_table = [&](std::ostream& os) {
    os << "K,r,exact,percent_at_least\n";
    for (const auto& t : table) {
      os << t["K"].get<int>() << ',' << t["r"].get<int>() << ',' << t["exact"].get<int>() << ','
         << format_double(t["percent_at_least"].get<double>()) << '\n';
    }
  };
  OutputSet outs(c.out_dir);
  outs.write("study_samples.csv", write_samples);
  outs.write("study_table.csv", write_table);
  outs.write_json("study.json", j);
  if (c.format == "json") {
    out << j.dump(2) << '\n';
  } else if (opts.edges_only) {
    write_samples(out);
  } else {
    write_table(out);
  }
  for (const auto& f : rep.flags) err << f << '\n';
  outs.manifest("study", path, c.seed, clock.seconds());
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidVertex:
    case ErrorCode::InvalidSubset:
    case ErrorCode::NotBaseGraph:
    case ErrorCode::DimensionMismatch:
      return kExitUsage;
    default:
      return kExitDomain;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resilient consensus on Voronoi communication graphs", "resvor"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common c;
  bool seed_given = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
           "--seed", [&](std::uint64_t s) { c.seed = s; seed_given = true; }, "Master seed");
    sub->add_option("--out-dir", c.out_dir, "Directory for output files and manifest");
    sub->add_option("--cap", c.cap, "Largest n the exhaustive robustness check accepts")
        ->check(CLI::Range(1, kMaxSizeCap));
    sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1, 256));
    sub->add_option("--format", c.format, "Stdout format")->check(CLI::IsMember({"csv", "json"}));
  };

  std::string input;
  int K = 1;
  auto* graph = app.add_subcommand("graph", "Build G_K from a positions file");
  graph->add_option("positions", input, "id,x,y records")->required()->check(CLI::ExistingFile);
  graph->add_option("-k,--k", K, "Hop level")->required()->check(CLI::Range(1, 1 << 20));
  add_common(graph);

  std::optional<int> r;
  std::optional<int> s;
  bool max = false;
  bool audit = false;
  auto* check = app.add_subcommand("check", "Check (r,s)-robustness of an edge list");
  check->add_option("edges", input, "Edge list")->required()->check(CLI::ExistingFile);
  check->add_option("--r", r, "r")->check(CLI::PositiveNumber);
  check->add_option("--s", s, "s")->check(CLI::PositiveNumber);
  check->add_flag("--max", max, "Largest r = s the graph satisfies");
  check->add_flag("--audit", audit, "Visit every subset pair");
  add_common(check);

  auto* simulate = app.add_subcommand("simulate", "Run a scenario config");
  simulate->add_option("config", input, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
  add_common(simulate);

  auto* study = app.add_subcommand("study", "Run a robustness study config");
  study->add_option("config", input, "Study config (JSON)")->required()->check(CLI::ExistingFile);
  add_common(study);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*graph) return cmd_graph(input, K, c, out);
    if (*check) return cmd_check(input, r, s, max, audit, c, out, err);
    if (*simulate) return cmd_simulate(input, seed_given, c, out);
    if (*study) return cmd_study(input, seed_given, c, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::GraphTooLarge) {
      err << "hint: exhaustive checking costs 3^n; raise --cap (at most " << kMaxSizeCap
          << ") or use edges_only for studies\n";
    }
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << "error: config: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace resvor
