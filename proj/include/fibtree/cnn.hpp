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

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibtree/entropy.hpp"
#include "fibtree/lattice.hpp"
#include "fibtree/shift.hpp"

namespace fibtree {

// ln of the golden mean: the only nonzero entropy value this machinery
// produces for two-symbol rules on the Fibonacci-Cayley tree.
inline const double kLogGoldenMean = std::log((1.0 + std::sqrt(5.0)) / 2.0);

// One cell template: self-feedback a, neighbor weights a1 (direction-1
// child) and a2 (direction-2 child), threshold z.
struct CnnTemplate {
  double a = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double z = 0.0;
};

// A saturated child-output pair, each coordinate +1 or -1.
struct Vertex2 {
  int v1 = 0;
  int v2 = 0;
  bool operator==(const Vertex2&) const = default;
};

// Admissible local output patterns, split by the parent's output sign.
// Both lists are kept in threshold-admission order: the order in which the
// patterns appear as the feedback weight a grows.
struct LocalPatternSet {
  std::vector<Vertex2> plus;   // parent output +1
  std::vector<Vertex2> minus;  // parent output -1
};

struct RegionIndex {
  int p = 0;  // |plus|
  int q = 0;  // |minus|
  bool operator==(const RegionIndex&) const = default;
};

struct SeparabilityResult {
  bool separable = false;
  // Direction (c1, c2) whose linear functional separates the subset from
  // its complement by a threshold.
  std::optional<std::pair<int, int>> witness;
};

enum class RealizableBranch { None, Inv1, Inv2 };

struct RealizabilityResult {
  bool realizable = false;
  RealizableBranch branch = RealizableBranch::None;
};

struct CnnEntropyResult {
  double value = 0.0;        // nats, from the pattern machinery
  double closed_form = 0.0;  // nats, from the region dichotomy
  RegionIndex region;
};

struct PhaseDiagramRow {
  double a = 0.0;
  double z = 0.0;
  int p = 0;
  int q = 0;
  double entropy_nats = 0.0;
  double critical_distance = 0.0;
};

struct PhaseDiagram {
  std::vector<PhaseDiagramRow> rows;  // row-major: z outer, a inner
  int boundary_skips = 0;
};

struct VerifyResult {
  bool ok = true;
  std::vector<NodeWord> violations;
};

// Degree-1 admissibility computed two ways: by restricting full-degree
// patterns (the semantics counting and entropy use) and by the intrinsic
// one-child threshold inequality.  Exposed side by side, never reconciled.
struct Degree1Report {
  std::vector<std::pair<int, int>> restriction;       // (parent sign, child sign)
  std::vector<std::pair<int, int>> intrinsic;
  std::vector<std::pair<int, int>> only_restriction;  // restriction minus intrinsic
  std::vector<std::pair<int, int>> only_intrinsic;    // intrinsic minus restriction
  std::vector<std::string> notes;
};

// Piecewise-linear saturation: -1 for s <= -1, s on [-1,1], +1 for s >= 1.
double output_function(double s);

// The local output patterns a template admits at full-degree nodes.  Throws
// OnBoundary when the template sits within tol of any decision threshold,
// naming the violated line.
LocalPatternSet admissible_patterns(const CnnTemplate& t, double tol = 1e-9);

RegionIndex region_index(const LocalPatternSet& patterns);

// Whether a subset of {-1,+1}^2 can be cut from its complement by a line.
// The empty set and the full set are reported non-separable.
SeparabilityResult is_linearly_separable(const std::vector<Vertex2>& subset);

// Whether some template realizes exactly this pattern set, via the two
// inclusion-plus-separability conditions on the child projections.
RealizabilityResult realizable(const LocalPatternSet& patterns);

// The Markov rule whose triples are the admissible patterns, alphabet
// {+1, -1}.  Derives degree-1 pairs and prunes; throws EmptyShift when
// nothing survives.
MarkovFibSpec spec_from_patterns(const LocalPatternSet& patterns);

// Entropy of the template's output space, computed independently by the
// region dichotomy (zero iff min{p,q} = 0 or max{p,q} = 1, else ln golden
// mean) and by the full pattern machinery.  Throws RouteDisagreement if the
// two differ beyond 1e-10; returns the machinery value.
CnnEntropyResult cnn_entropy(const CnnTemplate& t, double tol = 1e-9);

// Feedback weight at which the entropy flips for the given (a1, a2, z):
// 1 + ||z| - min| - max over the weight magnitudes.  Weights must be
// nonzero.
double critical_a(double a1, double a2, double z);

// Sweeps (a, z) over an inclusive step grid at fixed weights.  Cells within
// tol of a decision boundary are skipped and counted.
PhaseDiagram phase_diagram(double a1, double a2, double a_min, double a_max, double z_min,
                           double z_max, double step, double tol = 1e-9);

// Checks a finite +/-1 coloring (aligned with slice.nodes) against the
// template's admissibility rules.  A node is checked only when its full
// child set lies in the slice: both children for full-degree nodes, the
// direction-1 child for restricted nodes.
VerifyResult verify_mosaic_pattern(const CnnTemplate& t, const LatticeSlice& slice,
                                   const std::vector<int>& colors, double tol = 1e-9);

Degree1Report degree1_report(const CnnTemplate& t, double tol = 1e-9);

}  // namespace fibtree
