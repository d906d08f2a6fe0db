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

#ifndef RESVOR_IO_HPP
#define RESVOR_IO_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "resvor/consensus.hpp"
#include "resvor/geometry.hpp"
#include "resvor/graph.hpp"

namespace resvor {

/// Agent positions with their external ids; row order defines the dense
/// vertex index.
struct PositionTable {
  std::vector<std::string> ids;
  std::vector<Point2> points;
};

/// Records are `id,x,y`. An optional `id,x,y` header, blank lines and `#`
/// comments are allowed. Errors carry the offending line number.
PositionTable read_positions(std::istream& in);
PositionTable read_positions_file(const std::string& path);
void write_positions(std::ostream& out, const PositionTable& table);

/// `triangle,v0,v1,v2` records, CCW.
void write_triangles(std::ostream& out, const Triangulation& tri);

/// Header `n <n> k <k>` followed by `u v delta|ext` lines.
void write_edge_list(std::ostream& out, const CommGraph& g);
CommGraph read_edge_list(std::istream& in);
CommGraph read_edge_list_file(const std::string& path);

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// `step,agent,component,value,behavior` records.
void write_trajectory_csv(std::ostream& out, std::span<const ConsensusState<double>> trajectory,
                          std::span<const AgentBehavior<double>> behaviors);

}  // namespace resvor

#endif  // RESVOR_IO_HPP
