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

#include "resvor/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "resvor/error.hpp"

namespace resvor {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(trim(field));
  return out;
}

[[noreturn]] void parse_fail(int line_no, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
}

double parse_double(const std::string& s, int line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) parse_fail(line_no, "bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s, int line_no) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) parse_fail(line_no, "bad integer '" + s + "'");
  return v;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

PositionTable read_positions(std::istream& in) {
  PositionTable table;
  std::unordered_set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split(t, ',');
    if (fields.size() != 3) parse_fail(line_no, "expected id,x,y");
    if (table.ids.empty() && fields[0] == "id" && fields[1] == "x" && fields[2] == "y") continue;
    if (fields[0].empty()) parse_fail(line_no, "empty id");
    if (!seen.insert(fields[0]).second) parse_fail(line_no, "duplicate id '" + fields[0] + "'");
    table.ids.push_back(fields[0]);
    table.points.emplace_back(parse_double(fields[1], line_no), parse_double(fields[2], line_no));
  }
  return table;
}

PositionTable read_positions_file(const std::string& path) {
  auto in = open(path);
  return read_positions(in);
}

void write_positions(std::ostream& out, const PositionTable& table) {
  out << "id,x,y\n";
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    const std::string id = i < table.ids.size() ? table.ids[i] : std::to_string(i);
    out << id << ',' << format_double(table.points[i].x()) << ','
        << format_double(table.points[i].y()) << '\n';
  }
}

void write_triangles(std::ostream& out, const Triangulation& tri) {
  out << "triangle,v0,v1,v2\n";
  for (std::size_t t = 0; t < tri.triangles.size(); ++t) {
    const auto& f = tri.triangles[t];
    out << t << ',' << f[0] << ',' << f[1] << ',' << f[2] << '\n';
  }
}

void write_edge_list(std::ostream& out, const CommGraph& g) {
  out << "n " << g.n() << " k " << g.k() << '\n';
  for (const auto& [u, v] : g.delta_edges()) out << u << ' ' << v << " delta\n";
  for (const auto& [u, v] : g.ext_edges()) out << u << ' ' << v << " ext\n";
}

CommGraph read_edge_list(std::istream& in) {
  std::string line;
  int line_no = 0;
  int n = -1;
  int k = 1;
  std::vector<Edge> delta;
  std::vector<Edge> ext;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream ss(t);
    std::vector<std::string> tok;
    for (std::string w; ss >> w;) tok.push_back(w);
    if (n < 0) {
      if (tok.size() != 4 || tok[0] != "n" || tok[2] != "k") parse_fail(line_no, "expected 'n <n> k <k>'");
      n = parse_int(tok[1], line_no);
      k = parse_int(tok[3], line_no);
      if (n < 0 || k < 1) parse_fail(line_no, "n must be >= 0 and k >= 1");
      continue;
    }
    if (tok.size() != 3) parse_fail(line_no, "expected 'u v delta|ext'");
    const Edge e{parse_int(tok[0], line_no), parse_int(tok[1], line_no)};
    if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n) {
      parse_fail(line_no, "vertex out of range");
    }
    if (tok[2] == "delta") {
      delta.push_back(e);
    } else if (tok[2] == "ext") {
      ext.push_back(e);
    } else {
      parse_fail(line_no, "edge flag must be delta or ext");
    }
  }
  if (n < 0) throw Error(ErrorCode::ParseError, "missing 'n <n> k <k>' header");
  try {
    return CommGraph(n, std::move(delta), std::move(ext), k);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

CommGraph read_edge_list_file(const std::string& path) {
  auto in = open(path);
  return read_edge_list(in);
}

void write_trajectory_csv(std::ostream& out, std::span<const ConsensusState<double>> trajectory,
                          std::span<const AgentBehavior<double>> behaviors) {
  out << "step,agent,component,value,behavior\n";
  for (const auto& st : trajectory) {
    for (int i = 0; i < st.agents(); ++i) {
      for (int c = 0; c < st.dim(); ++c) {
        out << st.step << ',' << i << ',' << c << ',' << format_double(st.values(i, c)) << ','
            << behavior_tag(behaviors[i]) << '\n';
      }
    }
  }
}

}  // namespace resvor
