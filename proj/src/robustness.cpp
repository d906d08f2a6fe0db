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

#include "resvor/robustness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <string>
#include <thread>

#include "resvor/error.hpp"

namespace resvor {

namespace {

using Mask = std::uint32_t;

struct ChunkResult {
  bool violated = false;
  std::uint64_t low_index = 0;
  Mask s1 = 0;
  Mask s2 = 0;
  std::uint64_t pairs = 0;
};

std::vector<int> to_vertices(Mask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

std::uint64_t pow3(int e) {
  std::uint64_t p = 1;
  for (int i = 0; i < e; ++i) p *= 3;
  return p;
}

class Enumerator {
 public:
  Enumerator(const CommGraph& g, int r, int s) : n_(g.n()), s_(s) {
    std::vector<Mask> nbr(n_, 0);
    for (int v = 0; v < n_; ++v) {
      for (int w : g.neighbors(v)) nbr[v] |= Mask{1} << w;
    }
    const std::size_t size = std::size_t{1} << n_;
    count_.resize(size);
    full_.resize(size);
    for (std::size_t m = 0; m < size; ++m) {
      const auto mask = static_cast<Mask>(m);
      int c = 0;
      for (Mask rest = mask; rest != 0; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        if (std::popcount(nbr[v] & ~mask) >= r) ++c;
      }
      count_[m] = static_cast<std::uint8_t>(c);
      full_[m] = c == std::popcount(mask);
    }
  }

  int n() const { return n_; }

  bool violates(Mask s1, Mask s2) const {
    return !full_[s1] && !full_[s2] && count_[s1] + count_[s2] < s_;
  }

  // Scans every labeling whose top `high_digits` digits encode `chunk`.
  ChunkResult scan(std::uint64_t chunk, int high_digits, bool audit) const {
    const int low = n_ - high_digits;
    Mask s1 = 0, s2 = 0;
    std::uint64_t c = chunk;
    for (int i = low; i < n_; ++i) {
      const auto d = c % 3;
      c /= 3;
      if (d == 1) s1 |= Mask{1} << i;
      if (d == 2) s2 |= Mask{1} << i;
    }
    ChunkResult res;
    std::vector<std::uint8_t> digit(low, 0);
    std::uint64_t index = 0;
    while (true) {
      if (s1 != 0 && s2 != 0) {
        const Mask all = s1 | s2;
        if ((all & (~all + 1)) & s1) {
          ++res.pairs;
          if (!res.violated && violates(s1, s2)) {
            res.violated = true;
            res.low_index = index;
            res.s1 = s1;
            res.s2 = s2;
            if (!audit) return res;
          }
        }
      }
      int i = 0;
      for (; i < low; ++i) {
        const Mask bit = Mask{1} << i;
        if (++digit[i] == 1) {
          s1 |= bit;
          break;
        }
        if (digit[i] == 2) {
          s1 &= ~bit;
          s2 |= bit;
          break;
        }
        digit[i] = 0;
        s2 &= ~bit;
      }
      if (i == low) break;
      ++index;
    }
    return res;
  }

 private:
  int n_;
  int s_;
  std::vector<std::uint8_t> count_;
  std::vector<bool> full_;
};

void check_size(const CommGraph& g, const RobustnessOptions& opts) {
  const int cap = std::min(opts.cap, kMaxSizeCap);
  if (g.n() > cap) {
    throw Error(ErrorCode::GraphTooLarge,
                "graph has " + std::to_string(g.n()) + " vertices, cap is " + std::to_string(cap) +
                    "; exact checking enumerates 3^n labelings");
  }
}

}  // namespace

std::uint64_t total_subset_pairs(int n) {
  // (3^n - 2^(n+1) + 1) / 2
  return (pow3(n) - (std::uint64_t{1} << (n + 1)) + 1) / 2;
}

std::vector<int> x_set(const CommGraph& g, std::span<const int> subset, int r) {
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "r must be >= 0");
  std::vector<char> in(g.n(), 0);
  for (int v : subset) {
    if (v < 0 || v >= g.n() || in[v]) {
      throw Error(ErrorCode::InvalidSubset, "vertex " + std::to_string(v) + " invalid or repeated");
    }
    in[v] = 1;
  }
  std::vector<int> out;
  for (int v : subset) {
    const auto& nb = g.neighbors(v);
    const auto outside = std::count_if(nb.begin(), nb.end(), [&](int w) { return !in[w]; });
    if (outside >= r) out.push_back(v);
  }
  return out;
}

RobustnessReport is_rs_robust(const CommGraph& g, int r, int s, const RobustnessOptions& opts) {
  if (r < 1 || s < 1) throw Error(ErrorCode::InvalidArgument, "r and s must be >= 1");
  if (g.n() < 1) throw Error(ErrorCode::InvalidArgument, "empty graph");
  check_size(g, opts);

  RobustnessReport report;
  report.r = r;
  report.s = s;
  const Enumerator en(g, r, s);
  const int n = g.n();
  const int high = std::min(n - 1, 3);
  const std::uint64_t chunks = pow3(high);
  std::vector<ChunkResult> results(chunks);
  std::vector<char> done(chunks, 0);

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  auto worker = [&] {
    while (true) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      if (!opts.audit && c > best.load()) continue;
      results[c] = en.scan(c, high, opts.audit);
      done[c] = 1;
      if (results[c].violated) {
        std::uint64_t cur = best.load();
        while (c < cur && !best.compare_exchange_weak(cur, c)) {
        }
      }
    }
  };
  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (std::uint64_t c = 0; c < chunks; ++c) {
    if (!done[c]) continue;
    report.pairs_checked += results[c].pairs;
    if (results[c].violated && report.robust) {
      report.robust = false;
      report.witness = SubsetPair{to_vertices(results[c].s1), to_vertices(results[c].s2)};
      if (!opts.audit) break;
    }
  }
  return report;
}

int max_equal_rs(const CommGraph& g, const RobustnessOptions& opts) {
  check_size(g, opts);
  for (int r = (g.n() + 1) / 2; r >= 1; --r) {
    if (is_rs_robust(g, r, r, opts).robust) return r;
  }
  return 0;
}

bool is_r_robust(const CommGraph& g, int r, const RobustnessOptions& opts) {
  return is_rs_robust(g, r, 1, opts).robust;
}

}  // namespace resvor
