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

#include <Eigen/Core>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fibtree/bigint.hpp"
#include "fibtree/errors.hpp"

namespace fibtree {

// Finite symbol set.  Labels are what the CLI and spec files speak; the
// library works with indices 0..size()-1 throughout.
struct Alphabet {
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(labels.size()); }
  // Index of a label, or -1 when absent.
  int index_of(const std::string& label) const;
  bool operator==(const Alphabet&) const = default;
};

// Local rule at a node with both children present: (parent; child1, child2).
using Triple = std::array<int, 3>;
// Local rule at a node whose direction-2 child falls outside the tree:
// (parent, child1).
using Pair = std::array<int, 2>;

enum class Provenance { VertexMatrices, PatternSet, Raw };

// A Markov rule on the Fibonacci-Cayley tree: which colors may sit below
// which at full-degree nodes (triples) and at restricted nodes (pairs).
// The triple set is canonical; the pair set is always derived from it by
// projecting onto (parent, child1) over viable direction-2 fillers.
struct MarkovFibSpec {
  Alphabet alphabet;
  std::vector<Triple> triples;  // sorted, unique
  std::vector<Pair> pairs;      // sorted, unique, derived from triples
  Provenance provenance = Provenance::Raw;
  // For VertexMatrices provenance: the defining 0/1 matrices, restricted to
  // surviving symbols.  A1 governs direction-1 children, A2 direction-2.
  std::optional<Eigen::MatrixXi> a1;
  std::optional<Eigen::MatrixXi> a2;
  // Labels removed by viability pruning, in original alphabet order.
  std::vector<std::string> removed_symbols;
  bool pruned = false;

  bool operator==(const MarkovFibSpec& o) const {
    return alphabet == o.alphabet && triples == o.triples && pairs == o.pairs &&
           provenance == o.provenance && pruned == o.pruned;
  }
};

// Exact pattern counts per symbol and height, for both root configurations.
// eps[i][n-1] counts colorings of the full (epsilon-rooted) height-n slice
// with root color i; two[i][n-1] the same for the restricted root.
struct GammaTable {
  int max_height = 0;
  std::vector<std::vector<BigInt>> eps;
  std::vector<std::vector<BigInt>> two;

  const BigInt& eps_at(int symbol, int height) const {
    return eps[static_cast<std::size_t>(symbol)][static_cast<std::size_t>(height - 1)];
  }
  const BigInt& two_at(int symbol, int height) const {
    return two[static_cast<std::size_t>(symbol)][static_cast<std::size_t>(height - 1)];
  }
};

struct PruneReport {
  std::vector<std::string> removed;  // labels, original order
};

// Symbols that can root an infinite legal coloring of the *full binary*
// tree under the triple set alone (greatest fixed point).  These are the
// admissible fillers for the absent direction-2 child of restricted nodes.
std::vector<bool> binary_viable_symbols(int k, const std::vector<Triple>& triples);

// Projection of the triple set onto (parent, child1), keeping a pair only
// when some viable filler witnesses it.
std::vector<Pair> derive_degree1(int k, const std::vector<Triple>& triples,
                                 const std::vector<bool>& viable_fillers);
std::vector<Pair> derive_degree1(int k, const std::vector<Triple>& triples);

// Removes symbols that cannot root arbitrarily tall slices of both root
// configurations, re-deriving the pair set as symbols disappear, until the
// rule is stable.  Throws EmptyShift when nothing survives.  Idempotent.
std::pair<MarkovFibSpec, PruneReport> viability_prune(const MarkovFibSpec& spec);

// Builds the rule whose triples are the product of two 0/1 vertex matrices:
// (i; j1, j2) allowed iff A1(i,j1) = 1 and A2(i,j2) = 1.  Prunes.
MarkovFibSpec spec_from_vertex_matrices(const Alphabet& alphabet,
                                        const Eigen::MatrixXi& a1,
                                        const Eigen::MatrixXi& a2);

// Builds a rule from an explicit triple set (indices into the alphabet).
// Derives the pair set and prunes.
MarkovFibSpec spec_from_triples(const Alphabet& alphabet, std::vector<Triple> triples,
                                Provenance provenance = Provenance::Raw);

// Exact count table for heights 1..max_height via the two-table recursion
//   eps[i][n] = sum over (i;j1,j2) of eps[j1][n-1] * two[j2][n-1]
//   two[i][n] = sum over (i,j)    of eps[j][n-1]
// with every height-1 count equal to 1.  Requires a pruned spec.
GammaTable gamma_sequence(const MarkovFibSpec& spec, int max_height);

// Coefficient tensor of the closed two-step recursion on epsilon-rooted
// counts, valid from height 3 on:
//   eps[i][n] = sum over (j1,j3) of c[i](j1,j3) * eps[j1][n-1] * eps[j3][n-2]
// where c[i](j1,j3) counts fillers j2 with (i;j1,j2) in T and (j2,j3) in D.
std::vector<Eigen::MatrixXi> recurrence_coefficients(const MarkovFibSpec& spec);

}  // namespace fibtree
