/* Copyright 2026 The fibtree authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fibtree/bigint.hpp"
#include "fibtree/shift.hpp"

namespace fibtree {

// A node of the Fibonacci-Cayley tree, addressed by its path from the root:
// a word over {'1','2'} with no "22" factor.  The empty word is the root.
using NodeWord = std::string;

// Slice root configuration.  Epsilon: the root has both children (the tree
// under the empty word).  TwoRooted: the root sits where a direction-2 step
// just happened, so it has only a direction-1 child.
enum class RootType { Epsilon, TwoRooted };

// Explicit caps for materialization and brute-force enumeration.
struct LatticeLimits {
  int depth_cap = 30;
  std::uint64_t work_cap = std::uint64_t(1) << 24;
};

// A materialized finite slice: all nodes of the given root configuration
// with path length at most height-1, sorted (by length, then lexicographic),
// prefix-closed.
struct LatticeSlice {
  RootType root_type = RootType::Epsilon;
  int height = 0;
  std::vector<NodeWord> nodes;
};

// True when w is a path in the tree.  Throws InvalidLetter on characters
// outside {'1','2'}.
bool is_valid_node(const NodeWord& w);

// All valid words of length exactly n, lexicographically ordered.  Their
// number follows the Fibonacci recursion 1, 2, 3, 5, 8, ...
std::vector<NodeWord> level_nodes(int n, const LatticeLimits& limits = {});

// The height-n slice of the given root configuration.
LatticeSlice support(RootType root_type, int n, const LatticeLimits& limits = {});

// Brute-force coloring count over a materialized slice: fixes the root
// color, tries every assignment of the remaining nodes, and keeps those
// satisfying the triple rule at full-degree nodes and the pair rule at
// restricted nodes.  Deliberately closed-recursion-free; this is the ground
// truth the count recursion is checked against.
BigInt enumerate_colorings_naive(const MarkovFibSpec& spec, RootType root_type, int height,
                                 int root_color, const LatticeLimits& limits = {});

// Bottom-up dynamic program over the same materialized slice; independent of
// the closed recursion, feasible to much larger heights than the naive scan.
BigInt count_colorings_dp(const MarkovFibSpec& spec, RootType root_type, int height,
                          int root_color, const LatticeLimits& limits = {});

// One comparison cell of an oracle run: the closed-recursion value for
// (root_type, symbol, height) next to what the brute-force scan and the slice
// DP produced.  naive is "-" when the height exceeds naive_depth and
// "SKIP(workcap)" when the scan refused; dp is "-" beyond dp_depth.
struct OracleCell {
  RootType root_type = RootType::Epsilon;
  int symbol = 0;
  int height = 0;
  std::string expected;
  std::string naive;
  std::string dp;
  bool pass = true;
};

struct OracleReport {
  std::vector<OracleCell> cells;
  bool all_pass = true;
};

// Cross-check the closed counting recursion against both slice oracles for
// every symbol, both root configurations, heights 1..max(naive_depth,
// dp_depth).  When substitute is non-null its table is compared instead of a
// freshly computed one, so callers can audit a table produced elsewhere (and
// the mismatch path itself can be exercised).
OracleReport verify_against_oracles(const MarkovFibSpec& spec, int naive_depth, int dp_depth,
                                    const GammaTable* substitute = nullptr,
                                    const LatticeLimits& limits = {});

}  // namespace fibtree
