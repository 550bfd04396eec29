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
#include "fibtree/shift.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace fibtree {

namespace {

void sort_unique(std::vector<Triple>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void validate_triples(int k, const std::vector<Triple>& triples) {
  for (const Triple& t : triples) {
    for (int s : t) {
      if (s < 0 || s >= k) throw BadMatrix("triple symbol index out of range");
    }
  }
}

void validate_binary_square(const Eigen::MatrixXi& m, int k, const char* name) {
  if (m.rows() != k || m.cols() != k) {
    throw BadMatrix(std::string(name) + ": expected " + std::to_string(k) + "x" +
                    std::to_string(k) + ", got " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (m(i, j) != 0 && m(i, j) != 1)
        throw BadMatrix(std::string(name) + ": entries must be 0 or 1");
}

}  // namespace

int Alphabet::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

std::vector<bool> binary_viable_symbols(int k, const std::vector<Triple>& triples) {
  // Greatest fixed point: start from everything viable, peel off symbols
  // with no triple whose children both remain viable.
  std::vector<bool> viable(static_cast<std::size_t>(k), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < k; ++i) {
      if (!viable[static_cast<std::size_t>(i)]) continue;
      bool witnessed = false;
      for (const Triple& t : triples) {
        if (t[0] == i && viable[static_cast<std::size_t>(t[1])] &&
            viable[static_cast<std::size_t>(t[2])]) {
          witnessed = true;
          break;
        }
      }
      if (!witnessed) {
        viable[static_cast<std::size_t>(i)] = false;
        changed = true;
      }
    }
  }
  return viable;
}

std::vector<Pair> derive_degree1(int k, const std::vector<Triple>& triples,
                                 const std::vector<bool>& viable_fillers) {
  validate_triples(k, triples);
  std::set<Pair> pairs;
  for (const Triple& t : triples)
    if (viable_fillers[static_cast<std::size_t>(t[2])]) pairs.insert({t[0], t[1]});
  return {pairs.begin(), pairs.end()};
}

std::vector<Pair> derive_degree1(int k, const std::vector<Triple>& triples) {
  return derive_degree1(k, triples, binary_viable_symbols(k, triples));
}

namespace {

// One pruning pass over a fixed symbol set.  Returns the per-symbol survival
// mask: a symbol survives when it can root arbitrarily tall slices in both
// root configurations (greatest fixed point over triples and derived pairs).
std::vector<bool> survival_mask(int k, const std::vector<Triple>& triples,
                                const std::vector<Pair>& pairs) {
  std::vector<bool> full(static_cast<std::size_t>(k), true);  // roots full slices
  std::vector<bool> rest(static_cast<std::size_t>(k), true);  // roots restricted slices
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < k; ++i) {
      if (full[static_cast<std::size_t>(i)]) {
        bool ok = false;
        for (const Triple& t : triples)
          if (t[0] == i && full[static_cast<std::size_t>(t[1])] &&
              rest[static_cast<std::size_t>(t[2])]) {
            ok = true;
            break;
          }
        if (!ok) {
          full[static_cast<std::size_t>(i)] = false;
          changed = true;
        }
      }
      if (rest[static_cast<std::size_t>(i)]) {
        bool ok = false;
        for (const Pair& p : pairs)
          if (p[0] == i && full[static_cast<std::size_t>(p[1])]) {
            ok = true;
            break;
          }
        if (!ok) {
          rest[static_cast<std::size_t>(i)] = false;
          changed = true;
        }
      }
    }
  }
  std::vector<bool> alive(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    alive[static_cast<std::size_t>(i)] =
        full[static_cast<std::size_t>(i)] && rest[static_cast<std::size_t>(i)];
  return alive;
}

}  // namespace

std::pair<MarkovFibSpec, PruneReport> viability_prune(const MarkovFibSpec& spec) {
  const int k0 = spec.alphabet.size();
  validate_triples(k0, spec.triples);

  // Work in the original index space with a liveness mask; compact at the end.
  std::vector<bool> alive(static_cast<std::size_t>(k0), true);
  std::vector<Triple> triples = spec.triples;
  sort_unique(triples);
  std::vector<Pair> pairs;

  for (;;) {
    // Re-derive pairs from the current triples so the projection invariant
    // survives symbol removal (a pair must keep a live viable filler).
    std::vector<bool> fillers = binary_viable_symbols(k0, triples);
    pairs = derive_degree1(k0, triples, fillers);

    std::vector<bool> next = survival_mask(k0, triples, pairs);
    for (int i = 0; i < k0; ++i)
      next[static_cast<std::size_t>(i)] =
          next[static_cast<std::size_t>(i)] && alive[static_cast<std::size_t>(i)];
    if (next == alive) break;
    alive = next;

    std::vector<Triple> kept;
    for (const Triple& t : triples)
      if (alive[static_cast<std::size_t>(t[0])] && alive[static_cast<std::size_t>(t[1])] &&
          alive[static_cast<std::size_t>(t[2])])
        kept.push_back(t);
    triples = std::move(kept);
  }

  PruneReport report;
  std::vector<int> remap(static_cast<std::size_t>(k0), -1);
  Alphabet surviving;
  for (int i = 0; i < k0; ++i) {
    if (alive[static_cast<std::size_t>(i)]) {
      remap[static_cast<std::size_t>(i)] = surviving.size();
      surviving.labels.push_back(spec.alphabet.labels[static_cast<std::size_t>(i)]);
    } else {
      report.removed.push_back(spec.alphabet.labels[static_cast<std::size_t>(i)]);
    }
  }
  if (surviving.size() == 0) throw EmptyShift("viability pruning removed every symbol");

  MarkovFibSpec out;
  out.alphabet = std::move(surviving);
  for (const Triple& t : triples)
    out.triples.push_back({remap[static_cast<std::size_t>(t[0])],
                           remap[static_cast<std::size_t>(t[1])],
                           remap[static_cast<std::size_t>(t[2])]});
  sort_unique(out.triples);
  for (const Pair& p : pairs)
    out.pairs.push_back(
        {remap[static_cast<std::size_t>(p[0])], remap[static_cast<std::size_t>(p[1])]});
  std::sort(out.pairs.begin(), out.pairs.end());
  out.provenance = spec.provenance;
  if (spec.a1 && spec.a2) {
    const int k1 = out.alphabet.size();
    Eigen::MatrixXi a1(k1, k1), a2(k1, k1);
    std::vector<int> keep;
    for (int i = 0; i < k0; ++i)
      if (alive[static_cast<std::size_t>(i)]) keep.push_back(i);
    for (int r = 0; r < k1; ++r)
      for (int c = 0; c < k1; ++c) {
        a1(r, c) = (*spec.a1)(keep[static_cast<std::size_t>(r)],
                              keep[static_cast<std::size_t>(c)]);
        a2(r, c) = (*spec.a2)(keep[static_cast<std::size_t>(r)],
                              keep[static_cast<std::size_t>(c)]);
      }
    out.a1 = std::move(a1);
    out.a2 = std::move(a2);
  }
  out.removed_symbols = spec.removed_symbols;
  out.removed_symbols.insert(out.removed_symbols.end(), report.removed.begin(),
                             report.removed.end());
  out.pruned = true;
  return {std::move(out), std::move(report)};
}

MarkovFibSpec spec_from_vertex_matrices(const Alphabet& alphabet, const Eigen::MatrixXi& a1,
                                        const Eigen::MatrixXi& a2) {
  const int k = alphabet.size();
  if (k < 1) throw BadMatrix("alphabet must be nonempty");
  validate_binary_square(a1, k, "A1");
  validate_binary_square(a2, k, "A2");

  MarkovFibSpec raw;
  raw.alphabet = alphabet;
  for (int i = 0; i < k; ++i)
    for (int j1 = 0; j1 < k; ++j1)
      for (int j2 = 0; j2 < k; ++j2)
        if (a1(i, j1) == 1 && a2(i, j2) == 1) raw.triples.push_back({i, j1, j2});
  raw.provenance = Provenance::VertexMatrices;
  raw.a1 = a1;
  raw.a2 = a2;
  return viability_prune(raw).first;
}

MarkovFibSpec spec_from_triples(const Alphabet& alphabet, std::vector<Triple> triples,
                                Provenance provenance) {
  if (alphabet.size() < 1) throw BadMatrix("alphabet must be nonempty");
  MarkovFibSpec raw;
  raw.alphabet = alphabet;
  raw.triples = std::move(triples);
  sort_unique(raw.triples);
  raw.provenance = provenance;
  return viability_prune(raw).first;
}

GammaTable gamma_sequence(const MarkovFibSpec& spec, int max_height) {
  if (!spec.pruned) throw Error("gamma_sequence requires a pruned spec");
  if (max_height < 1) throw Error("gamma_sequence: height must be >= 1");
  const std::size_t k = static_cast<std::size_t>(spec.alphabet.size());

  GammaTable g;
  g.max_height = max_height;
  g.eps.assign(k, std::vector<BigInt>(static_cast<std::size_t>(max_height), BigInt(0)));
  g.two = g.eps;
  for (std::size_t i = 0; i < k; ++i) g.eps[i][0] = g.two[i][0] = 1;

  for (int n = 2; n <= max_height; ++n) {
    const std::size_t c = static_cast<std::size_t>(n - 1);
    for (const Triple& t : spec.triples)
      g.eps[static_cast<std::size_t>(t[0])][c] +=
          g.eps[static_cast<std::size_t>(t[1])][c - 1] *
          g.two[static_cast<std::size_t>(t[2])][c - 1];
    for (const Pair& p : spec.pairs)
      g.two[static_cast<std::size_t>(p[0])][c] += g.eps[static_cast<std::size_t>(p[1])][c - 1];
  }
  return g;
}

std::vector<Eigen::MatrixXi> recurrence_coefficients(const MarkovFibSpec& spec) {
  if (!spec.pruned) throw Error("recurrence_coefficients requires a pruned spec");
  const int k = spec.alphabet.size();
  std::vector<Eigen::MatrixXi> c(static_cast<std::size_t>(k),
                                 Eigen::MatrixXi::Zero(k, k));
  // c[i](j1,j3) = #{j2 : (i;j1,j2) in T and (j2,j3) in D}.
  std::vector<std::vector<bool>> pair_set(
      static_cast<std::size_t>(k), std::vector<bool>(static_cast<std::size_t>(k), false));
  for (const Pair& p : spec.pairs)
    pair_set[static_cast<std::size_t>(p[0])][static_cast<std::size_t>(p[1])] = true;
  for (const Triple& t : spec.triples)
    for (int j3 = 0; j3 < k; ++j3)
      if (pair_set[static_cast<std::size_t>(t[2])][static_cast<std::size_t>(j3)])
        c[static_cast<std::size_t>(t[0])](t[1], j3) += 1;
  return c;
}

}  // namespace fibtree
