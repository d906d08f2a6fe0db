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

#ifndef RESVOR_ROBUSTNESS_HPP
#define RESVOR_ROBUSTNESS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "resvor/graph.hpp"

namespace resvor {

inline constexpr int kDefaultSizeCap = 16;
/// Hard ceiling for the enumeration tables (2^n entries).
inline constexpr int kMaxSizeCap = 24;

struct SubsetPair {
  std::vector<int> s1;
  std::vector<int> s2;
};

struct RobustnessReport {
  int r = 1;
  int s = 1;
  bool robust = true;
  std::optional<SubsetPair> witness;  // first violating pair, present iff !robust
  std::uint64_t pairs_checked = 0;
};

struct RobustnessOptions {
  int cap = kDefaultSizeCap;
  int threads = 1;
  /// Count every unordered pair even after a witness has been found.
  bool audit = false;
};

/// Members of `subset` with at least r neighbors outside it. Throws
/// InvalidSubset on out-of-range or repeated vertices.
std::vector<int> x_set(const CommGraph& g, std::span<const int> subset, int r);

/// Exact (r,s)-robustness by enumerating ternary labelings (out / S1 / S2)
/// of the vertices in increasing base-3 order, vertex 0 least significant.
/// Each unordered pair is visited once: the lowest labeled vertex is in S1.
RobustnessReport is_rs_robust(const CommGraph& g, int r, int s, const RobustnessOptions& opts = {});

/// Largest r with (r,r)-robustness, searched downward from ceil(n/2);
/// 0 when the graph is not even (1,1)-robust.
int max_equal_rs(const CommGraph& g, const RobustnessOptions& opts = {});

bool is_r_robust(const CommGraph& g, int r, const RobustnessOptions& opts = {});

/// Number of unordered non-empty disjoint subset pairs on n vertices.
std::uint64_t total_subset_pairs(int n);

}  // namespace resvor

#endif  // RESVOR_ROBUSTNESS_HPP
