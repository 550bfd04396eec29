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
#include "fibtree/lattice.hpp"

#include <algorithm>
#include <unordered_map>

namespace fibtree {

namespace {

void check_height(int n, const LatticeLimits& limits, const char* what) {
  if (n < 0) throw Error(std::string(what) + ": negative height");
  if (n > limits.depth_cap)
    throw DepthCap(std::string(what) + ": height " + std::to_string(n) +
                   " exceeds depth cap " + std::to_string(limits.depth_cap));
}

// Child indices for every node of a slice: children[i] = {c1, c2}, -1 when
// the child is not part of the slice.  Nodes are assumed sorted by length
// then lexicographic, so a lookup table keyed by word works.
struct SliceTopology {
  std::vector<std::array<int, 2>> children;
  int root = 0;
};

SliceTopology topology(const LatticeSlice& slice) {
  std::unordered_map<std::string_view, int> index;
  index.reserve(slice.nodes.size());
  for (std::size_t i = 0; i < slice.nodes.size(); ++i)
    index.emplace(slice.nodes[i], static_cast<int>(i));
  SliceTopology topo;
  topo.children.resize(slice.nodes.size(), {-1, -1});
  NodeWord buf;
  for (std::size_t i = 0; i < slice.nodes.size(); ++i) {
    for (int dir = 0; dir < 2; ++dir) {
      buf = slice.nodes[i];
      buf.push_back(dir == 0 ? '1' : '2');
      auto it = index.find(std::string_view(buf));
      if (it != index.end()) topo.children[i][static_cast<std::size_t>(dir)] = it->second;
    }
  }
  auto root_it = index.find(std::string_view(""));
  topo.root = root_it == index.end() ? -1 : root_it->second;
  return topo;
}

}  // namespace

bool is_valid_node(const NodeWord& w) {
  char prev = '\0';
  for (char ch : w) {
    if (ch != '1' && ch != '2')
      throw InvalidLetter(std::string("invalid letter '") + ch + "' in node word");
    if (prev == '2' && ch == '2') return false;
    prev = ch;
  }
  return true;
}

std::vector<NodeWord> level_nodes(int n, const LatticeLimits& limits) {
  check_height(n, limits, "level_nodes");
  std::vector<NodeWord> cur{NodeWord()};
  for (int len = 0; len < n; ++len) {
    std::vector<NodeWord> next;
    next.reserve(cur.size() * 2);
    for (const NodeWord& w : cur) {
      next.push_back(w + '1');
      if (w.empty() || w.back() != '2') next.push_back(w + '2');
    }
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

LatticeSlice support(RootType root_type, int n, const LatticeLimits& limits) {
  if (n < 1) throw Error("support: height must be >= 1");
  check_height(n, limits, "support");
  LatticeSlice slice;
  slice.root_type = root_type;
  slice.height = n;
  if (root_type == RootType::Epsilon) {
    for (int len = 0; len <= n - 1; ++len)
      for (NodeWord& w : level_nodes(len, limits)) slice.nodes.push_back(std::move(w));
  } else {
    // Relative support of a node reached by a direction-2 step: the empty
    // word plus words starting with '1'.
    slice.nodes.emplace_back();
    for (int len = 0; len <= n - 2; ++len)
      for (NodeWord& w : level_nodes(len, limits)) slice.nodes.push_back('1' + std::move(w));
  }
  std::sort(slice.nodes.begin(), slice.nodes.end(),
            [](const NodeWord& a, const NodeWord& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  return slice;
}

BigInt enumerate_colorings_naive(const MarkovFibSpec& spec, RootType root_type, int height,
                                 int root_color, const LatticeLimits& limits) {
  const int k = spec.alphabet.size();
  if (root_color < 0 || root_color >= k) throw Error("root color out of range");
  LatticeSlice slice = support(root_type, height, limits);
  const std::size_t m = slice.nodes.size();

  // Candidate count is k^|slice|; refuse anything above the work cap.
  BigInt candidates = 1;
  for (std::size_t i = 0; i < m; ++i) candidates *= k;
  if (candidates > BigInt(static_cast<unsigned long>(limits.work_cap)))
    throw WorkCap("naive enumeration would try " + to_string(candidates) +
                  " candidates (cap " + std::to_string(limits.work_cap) + ")");

  SliceTopology topo = topology(slice);

  // Flat membership masks for O(1) constraint checks.
  std::vector<char> triple_ok(static_cast<std::size_t>(k) * static_cast<std::size_t>(k) *
                                  static_cast<std::size_t>(k),
                              0);
  std::vector<char> pair_ok(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0);
  for (const Triple& t : spec.triples)
    triple_ok[(static_cast<std::size_t>(t[0]) * static_cast<std::size_t>(k) +
               static_cast<std::size_t>(t[1])) *
                  static_cast<std::size_t>(k) +
              static_cast<std::size_t>(t[2])] = 1;
  for (const Pair& p : spec.pairs)
    pair_ok[static_cast<std::size_t>(p[0]) * static_cast<std::size_t>(k) +
            static_cast<std::size_t>(p[1])] = 1;

  std::vector<int> color(m, 0);
  color[static_cast<std::size_t>(topo.root)] = root_color;
  std::vector<std::size_t> free_nodes;
  for (std::size_t i = 0; i < m; ++i)
    if (static_cast<int>(i) != topo.root) free_nodes.push_back(i);

  BigInt total = 0;
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      const auto [c1, c2] = topo.children[i];
      if (c1 >= 0 && c2 >= 0) {
        ok = triple_ok[(static_cast<std::size_t>(color[i]) * static_cast<std::size_t>(k) +
                        static_cast<std::size_t>(color[static_cast<std::size_t>(c1)])) *
                           static_cast<std::size_t>(k) +
                       static_cast<std::size_t>(color[static_cast<std::size_t>(c2)])] != 0;
      } else if (c1 >= 0) {
        ok = pair_ok[static_cast<std::size_t>(color[i]) * static_cast<std::size_t>(k) +
                     static_cast<std::size_t>(color[static_cast<std::size_t>(c1)])] != 0;
      }
    }
    if (ok) total += 1;

    // Odometer step over the non-root nodes.
    std::size_t pos = 0;
    while (pos < free_nodes.size()) {
      int& c = color[free_nodes[pos]];
      if (++c < k) break;
      c = 0;
      ++pos;
    }
    if (pos == free_nodes.size()) break;
  }
  return total;
}

BigInt count_colorings_dp(const MarkovFibSpec& spec, RootType root_type, int height,
                          int root_color, const LatticeLimits& limits) {
  const int k = spec.alphabet.size();
  if (root_color < 0 || root_color >= k) throw Error("root color out of range");
  LatticeSlice slice = support(root_type, height, limits);
  SliceTopology topo = topology(slice);
  const std::size_t m = slice.nodes.size();

  // Nodes are sorted shortest-first, so a reverse sweep sees children before
  // parents.  count[i][c] = colorings of the subtree below node i with i
  // colored c.
  std::vector<std::vector<BigInt>> count(m,
                                         std::vector<BigInt>(static_cast<std::size_t>(k)));
  for (std::size_t ri = m; ri-- > 0;) {
    const auto [c1, c2] = topo.children[ri];
    for (int c = 0; c < k; ++c) {
      BigInt acc = 0;
      if (c1 >= 0 && c2 >= 0) {
        for (const Triple& t : spec.triples)
          if (t[0] == c)
            acc += count[static_cast<std::size_t>(c1)][static_cast<std::size_t>(t[1])] *
                   count[static_cast<std::size_t>(c2)][static_cast<std::size_t>(t[2])];
      } else if (c1 >= 0) {
        for (const Pair& p : spec.pairs)
          if (p[0] == c) acc += count[static_cast<std::size_t>(c1)][static_cast<std::size_t>(p[1])];
      } else {
        acc = 1;
      }
      count[ri][static_cast<std::size_t>(c)] = std::move(acc);
    }
  }
  return count[static_cast<std::size_t>(topo.root)][static_cast<std::size_t>(root_color)];
}

OracleReport verify_against_oracles(const MarkovFibSpec& spec, int naive_depth, int dp_depth,
                                    const GammaTable* substitute,
                                    const LatticeLimits& limits) {
  const int max_depth = std::max(naive_depth, dp_depth);
  GammaTable computed;
  if (substitute == nullptr) computed = gamma_sequence(spec, max_depth);
  const GammaTable& table = substitute != nullptr ? *substitute : computed;
  if (table.max_height < max_depth)
    throw Error("oracle table too shallow: has " + std::to_string(table.max_height) +
                " heights, need " + std::to_string(max_depth));

  OracleReport report;
  const int k = spec.alphabet.size();
  for (int m = 1; m <= max_depth; ++m) {
    for (RootType rt : {RootType::Epsilon, RootType::TwoRooted}) {
      for (int i = 0; i < k; ++i) {
        OracleCell cell;
        cell.root_type = rt;
        cell.symbol = i;
        cell.height = m;
        cell.expected =
            to_string(rt == RootType::Epsilon ? table.eps_at(i, m) : table.two_at(i, m));
        cell.naive = "-";
        cell.dp = "-";
        if (m <= naive_depth) {
          try {
            cell.naive = to_string(enumerate_colorings_naive(spec, rt, m, i, limits));
            cell.pass = cell.pass && cell.naive == cell.expected;
          } catch (const WorkCap&) {
            cell.naive = "SKIP(workcap)";
          }
        }
        if (m <= dp_depth) {
          cell.dp = to_string(count_colorings_dp(spec, rt, m, i, limits));
          cell.pass = cell.pass && cell.dp == cell.expected;
        }
        report.all_pass = report.all_pass && cell.pass;
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

}  // namespace fibtree
