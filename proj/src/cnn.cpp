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
#include "fibtree/cnn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>
#include <unordered_map>

namespace fibtree {

namespace {

// Fixed traversal order of {-1,+1}^2.
constexpr std::array<Vertex2, 4> kVertices = {
    Vertex2{-1, -1}, Vertex2{-1, +1}, Vertex2{+1, -1}, Vertex2{+1, +1}};

int vertex_slot(const Vertex2& v) { return (v.v1 > 0 ? 2 : 0) + (v.v2 > 0 ? 1 : 0); }

std::string vertex_str(const Vertex2& v) {
  return std::string("(v1,v2)=(") + (v.v1 > 0 ? "+1" : "-1") + "," +
         (v.v2 > 0 ? "+1" : "-1") + ")";
}

std::array<bool, 4> mask_of(const std::vector<Vertex2>& vs) {
  std::array<bool, 4> m{};
  for (const Vertex2& v : vs) m[static_cast<std::size_t>(vertex_slot(v))] = true;
  return m;
}

int popcount4(const std::array<bool, 4>& m) {
  int n = 0;
  for (bool b : m) n += b ? 1 : 0;
  return n;
}

// Sort patterns by the feedback level at which they become admissible,
// breaking exact ties by vertex order.
std::vector<Vertex2> threshold_sorted(std::vector<std::pair<double, Vertex2>> admitted) {
  std::stable_sort(admitted.begin(), admitted.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return vertex_slot(x.second) < vertex_slot(y.second);
  });
  std::vector<Vertex2> out;
  out.reserve(admitted.size());
  for (auto& [th, v] : admitted) out.push_back(v);
  return out;
}

}  // namespace

double output_function(double s) {
  return 0.5 * (std::abs(s + 1.0) - std::abs(s - 1.0));
}

LocalPatternSet admissible_patterns(const CnnTemplate& t, double tol) {
  const double lhs_plus = t.a - 1.0 + t.z;
  const double lhs_minus = t.a - 1.0 - t.z;

  // A pattern with parent output +1 needs a - 1 + z > -(a1 v1 + a2 v2);
  // with parent -1 it needs a - 1 - z > a1 v1 + a2 v2.  Within tol of
  // either threshold the sign of the parent state is not determined.
  for (const Vertex2& v : kVertices) {
    const double coupling = t.a1 * v.v1 + t.a2 * v.v2;
    if (std::abs(lhs_plus + coupling) <= tol)
      throw OnBoundary("template on decision boundary: a-1+z == -(a1*v1+a2*v2) at " +
                       vertex_str(v));
    if (std::abs(lhs_minus - coupling) <= tol)
      throw OnBoundary("template on decision boundary: a-1-z == a1*v1+a2*v2 at " +
                       vertex_str(v));
  }

  std::vector<std::pair<double, Vertex2>> plus, minus;
  for (const Vertex2& v : kVertices) {
    const double coupling = t.a1 * v.v1 + t.a2 * v.v2;
    if (lhs_plus > -coupling) plus.emplace_back(-coupling, v);
    if (lhs_minus > coupling) minus.emplace_back(coupling, v);
  }
  LocalPatternSet set;
  set.plus = threshold_sorted(std::move(plus));
  set.minus = threshold_sorted(std::move(minus));
  return set;
}

RegionIndex region_index(const LocalPatternSet& patterns) {
  return {static_cast<int>(patterns.plus.size()), static_cast<int>(patterns.minus.size())};
}

SeparabilityResult is_linearly_separable(const std::vector<Vertex2>& subset) {
  const std::array<bool, 4> in = mask_of(subset);
  const int n = popcount4(in);
  if (n == 0 || n == 4) return {false, std::nullopt};

  static constexpr std::array<std::pair<int, int>, 16> kDirections = {{{1, 0},
                                                                       {-1, 0},
                                                                       {0, 1},
                                                                       {0, -1},
                                                                       {1, 1},
                                                                       {1, -1},
                                                                       {-1, 1},
                                                                       {-1, -1},
                                                                       {1, 2},
                                                                       {1, -2},
                                                                       {-1, 2},
                                                                       {-1, -2},
                                                                       {2, 1},
                                                                       {2, -1},
                                                                       {-2, 1},
                                                                       {-2, -1}}};
  for (const auto& [c1, c2] : kDirections) {
    int min_in = 100, max_out = -100;
    for (const Vertex2& v : kVertices) {
      const int val = c1 * v.v1 + c2 * v.v2;
      if (in[static_cast<std::size_t>(vertex_slot(v))])
        min_in = std::min(min_in, val);
      else
        max_out = std::max(max_out, val);
    }
    if (min_in > max_out) return {true, std::make_pair(c1, c2)};
  }
  return {false, std::nullopt};
}

RealizabilityResult realizable(const LocalPatternSet& patterns) {
  const std::array<bool, 4> plus = mask_of(patterns.plus);
  const std::array<bool, 4> minus = mask_of(patterns.minus);

  auto negated_subset_of = [](const std::array<bool, 4>& a, const std::array<bool, 4>& b) {
    for (const Vertex2& v : kVertices) {
      if (!a[static_cast<std::size_t>(vertex_slot(v))]) continue;
      const Vertex2 neg{-v.v1, -v.v2};
      if (!b[static_cast<std::size_t>(vertex_slot(neg))]) return false;
    }
    return true;
  };

  if (negated_subset_of(plus, minus) && is_linearly_separable(patterns.minus).separable)
    return {true, RealizableBranch::Inv1};
  if (negated_subset_of(minus, plus) && is_linearly_separable(patterns.plus).separable)
    return {true, RealizableBranch::Inv2};
  return {false, RealizableBranch::None};
}

MarkovFibSpec spec_from_patterns(const LocalPatternSet& patterns) {
  Alphabet alphabet;
  alphabet.labels = {"+1", "-1"};
  auto idx = [](int sign) { return sign > 0 ? 0 : 1; };
  std::vector<Triple> triples;
  for (const Vertex2& v : patterns.plus) triples.push_back({0, idx(v.v1), idx(v.v2)});
  for (const Vertex2& v : patterns.minus) triples.push_back({1, idx(v.v1), idx(v.v2)});
  return spec_from_triples(alphabet, std::move(triples), Provenance::PatternSet);
}

CnnEntropyResult cnn_entropy(const CnnTemplate& t, double tol) {
  const LocalPatternSet patterns = admissible_patterns(t, tol);
  CnnEntropyResult result;
  result.region = region_index(patterns);

  const int lo = std::min(result.region.p, result.region.q);
  const int hi = std::max(result.region.p, result.region.q);
  result.closed_form = (lo == 0 || hi == 1) ? 0.0 : kLogGoldenMean;

  // Machinery route: an empty pruned rule means the output space stores
  // nothing at all, which the closed form reports as entropy 0.
  double machinery = 0.0;
  try {
    machinery = entropy(spec_from_patterns(patterns)).value;
  } catch (const EmptyShift&) {
    machinery = 0.0;
  }
  result.value = machinery;

  if (std::abs(result.value - result.closed_form) > 1e-10)
    throw RouteDisagreement(
        "entropy routes disagree at region (" + std::to_string(result.region.p) + "," +
        std::to_string(result.region.q) + "): machinery " + std::to_string(result.value) +
        " vs closed form " + std::to_string(result.closed_form));
  return result;
}

double critical_a(double a1, double a2, double z) {
  if (a1 == 0.0 || a2 == 0.0) throw Error("critical_a: weights must be nonzero");
  const double lo = std::min(std::abs(a1), std::abs(a2));
  const double hi = std::max(std::abs(a1), std::abs(a2));
  return 1.0 + std::abs(std::abs(z) - lo) - hi;
}

PhaseDiagram phase_diagram(double a1, double a2, double a_min, double a_max, double z_min,
                           double z_max, double step, double tol) {
  if (step <= 0.0) throw Error("phase_diagram: step must be positive");
  PhaseDiagram diagram;
  // Index-based grid walk: no accumulated floating drift, inclusive ends.
  const double slack = step * 1e-9;
  for (int zi = 0;; ++zi) {
    const double z = z_min + zi * step;
    if (z > z_max + slack) break;
    for (int ai = 0;; ++ai) {
      const double a = a_min + ai * step;
      if (a > a_max + slack) break;
      CnnTemplate t{a, a1, a2, z};
      CnnEntropyResult cell;
      try {
        cell = cnn_entropy(t, tol);
      } catch (const OnBoundary&) {
        ++diagram.boundary_skips;
        continue;
      }
      diagram.rows.push_back({a, z, cell.region.p, cell.region.q, cell.value,
                              a - critical_a(a1, a2, z)});
    }
  }
  return diagram;
}

VerifyResult verify_mosaic_pattern(const CnnTemplate& t, const LatticeSlice& slice,
                                   const std::vector<int>& colors, double tol) {
  if (colors.size() != slice.nodes.size())
    throw Error("verify_mosaic_pattern: one color per slice node required");
  for (int c : colors)
    if (c != 1 && c != -1) throw Error("verify_mosaic_pattern: colors must be +1 or -1");

  const LocalPatternSet patterns = admissible_patterns(t, tol);
  const std::array<bool, 4> plus = mask_of(patterns.plus);
  const std::array<bool, 4> minus = mask_of(patterns.minus);

  // Degree-1 admissibility by restriction: pairs of the derived rule.
  // An empty pruned rule admits no pairs at all.
  std::array<std::array<bool, 2>, 2> pair_ok{};  // [parent sign>0?0:1][child]
  try {
    const MarkovFibSpec spec = spec_from_patterns(patterns);
    auto sign_of_label = [&](int idx) {
      return spec.alphabet.labels[static_cast<std::size_t>(idx)] == "+1" ? 0 : 1;
    };
    for (const Pair& p : spec.pairs)
      pair_ok[static_cast<std::size_t>(sign_of_label(p[0]))]
             [static_cast<std::size_t>(sign_of_label(p[1]))] = true;
  } catch (const EmptyShift&) {
  }

  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < slice.nodes.size(); ++i) index.emplace(slice.nodes[i], i);

  VerifyResult result;
  NodeWord buf;
  for (std::size_t i = 0; i < slice.nodes.size(); ++i) {
    const NodeWord& w = slice.nodes[i];
    buf = w;
    buf.push_back('1');
    auto it1 = index.find(std::string_view(buf));
    const bool restricted = !w.empty() && w.back() == '2';
    bool violated = false;
    if (restricted) {
      if (it1 == index.end()) continue;  // child outside the slice: unchecked
      violated = !pair_ok[colors[i] > 0 ? 0u : 1u]
                         [colors[it1->second] > 0 ? 0u : 1u];
    } else {
      buf.back() = '2';
      auto it2 = index.find(std::string_view(buf));
      if (it1 == index.end() || it2 == index.end()) continue;
      const Vertex2 v{colors[it1->second], colors[it2->second]};
      const auto& mask = colors[i] > 0 ? plus : minus;
      violated = !mask[static_cast<std::size_t>(vertex_slot(v))];
    }
    if (violated) {
      result.ok = false;
      result.violations.push_back(w);
    }
  }
  return result;
}

Degree1Report degree1_report(const CnnTemplate& t, double tol) {
  Degree1Report report;

  try {
    const MarkovFibSpec spec = spec_from_patterns(admissible_patterns(t, tol));
    for (const Pair& p : spec.pairs) {
      auto sign = [&](int idx) {
        return spec.alphabet.labels[static_cast<std::size_t>(idx)] == "+1" ? +1 : -1;
      };
      report.restriction.emplace_back(sign(p[0]), sign(p[1]));
    }
  } catch (const EmptyShift&) {
    report.notes.push_back("restriction semantics: rule prunes to the empty shift");
  }

  // Intrinsic inequality at a restricted node: the absent direction-2 child
  // contributes nothing, so only the a1 term appears.
  for (int parent : {+1, -1}) {
    for (int child : {+1, -1}) {
      const double lhs = parent > 0 ? t.a - 1.0 + t.z : t.a - 1.0 - t.z;
      const double rhs = parent > 0 ? -t.a1 * child : t.a1 * child;
      if (std::abs(lhs - rhs) <= tol)
        report.notes.push_back(std::string("intrinsic threshold within tolerance at (") +
                               (parent > 0 ? "+1" : "-1") + "," + (child > 0 ? "+1" : "-1") +
                               ")");
      if (lhs > rhs) report.intrinsic.emplace_back(parent, child);
    }
  }

  auto order = [](const std::pair<int, int>& x) {
    return (x.first > 0 ? 0 : 2) + (x.second > 0 ? 0 : 1);
  };
  auto sorter = [&](std::vector<std::pair<int, int>>& v) {
    std::sort(v.begin(), v.end(),
              [&](const auto& x, const auto& y) { return order(x) < order(y); });
  };
  sorter(report.restriction);
  sorter(report.intrinsic);
  for (const auto& p : report.restriction)
    if (std::find(report.intrinsic.begin(), report.intrinsic.end(), p) ==
        report.intrinsic.end())
      report.only_restriction.push_back(p);
  for (const auto& p : report.intrinsic)
    if (std::find(report.restriction.begin(), report.restriction.end(), p) ==
        report.restriction.end())
      report.only_intrinsic.push_back(p);
  return report;
}

}  // namespace fibtree
