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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "fibtree/lattice.hpp"
#include "fibtree/shift.hpp"
#include "test_helpers.hpp"

using namespace fibtree;
using namespace fibtree::testing;

TEST_CASE("vertex construction: golden mean rule") {
  const MarkovFibSpec gm = golden_mean_spec();
  CHECK(gm.alphabet.labels == std::vector<std::string>{"c1", "c2"});
  CHECK(gm.triples == std::vector<Triple>{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}});
  CHECK(gm.pairs == std::vector<Pair>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(gm.provenance == Provenance::VertexMatrices);
  CHECK(gm.pruned);
  CHECK(gm.removed_symbols.empty());
  REQUIRE(gm.a1.has_value());
  CHECK((*gm.a1)(1, 1) == 0);
}

TEST_CASE("vertex construction: identity rule") {
  const MarkovFibSpec id = identity_spec_k2();
  CHECK(id.triples == std::vector<Triple>{{0, 0, 0}, {1, 1, 1}});
  CHECK(id.pairs == std::vector<Pair>{{0, 0}, {1, 1}});
  CHECK(id.removed_symbols.empty());
}

TEST_CASE("bad matrices are rejected") {
  const Alphabet ab = letters(2);
  Eigen::MatrixXi ok = Eigen::MatrixXi::Ones(2, 2);
  Eigen::MatrixXi wrong_dims = Eigen::MatrixXi::Ones(2, 3);
  CHECK_THROWS_AS((void)spec_from_vertex_matrices(ab, wrong_dims, ok), BadMatrix);
  CHECK_THROWS_AS((void)spec_from_vertex_matrices(ab, ok, wrong_dims), BadMatrix);
  Eigen::MatrixXi wrong_size = Eigen::MatrixXi::Ones(3, 3);
  CHECK_THROWS_AS((void)spec_from_vertex_matrices(ab, wrong_size, wrong_size), BadMatrix);
  Eigen::MatrixXi bad_entry = ok;
  bad_entry(0, 1) = 2;
  CHECK_THROWS_AS((void)spec_from_vertex_matrices(ab, bad_entry, ok), BadMatrix);
  bad_entry(0, 1) = -1;
  CHECK_THROWS_AS((void)spec_from_vertex_matrices(ab, ok, bad_entry), BadMatrix);
}

TEST_CASE("binary viability greatest fixed point") {
  // Symbol 0 needs a (0; ., .) triple to persist in the full binary tree.
  std::vector<Triple> t{{0, 0, 0}};
  CHECK(binary_viable_symbols(2, t) == std::vector<bool>{true, false});
  t = {{0, 1, 1}, {1, 0, 0}};  // mutual recursion keeps both alive
  CHECK(binary_viable_symbols(2, t) == std::vector<bool>{true, true});
  t = {{0, 1, 1}};  // symbol 1 dies, then 0 loses its only witness
  CHECK(binary_viable_symbols(2, t) == std::vector<bool>{false, false});
  CHECK(binary_viable_symbols(2, {}) == std::vector<bool>{false, false});
}

TEST_CASE("degree-1 projection keeps only viably filled pairs") {
  const std::vector<Triple> t{{0, 0, 0}, {0, 1, 1}, {1, 0, 0}};
  // All symbols binary-viable here, so every (parent, child1) survives.
  CHECK(derive_degree1(2, t) == std::vector<Pair>{{0, 0}, {0, 1}, {1, 0}});
  // With symbol 1 not viable, the pair (0, 1) loses its only filler-witness
  // (0; 1, 1) and disappears.
  const std::vector<bool> only0{true, false};
  CHECK(derive_degree1(2, t, only0) == std::vector<Pair>{{0, 0}, {1, 0}});
  CHECK(derive_degree1(2, {{0, 0, 1}}).empty());
}

TEST_CASE("pruning removes silent symbols and re-derives pairs") {
  // Second symbol has no triples of its own: it can head nothing tall.
  Eigen::MatrixXi a1(2, 2), a2(2, 2);
  a1 << 1, 1, 0, 0;
  a2 << 1, 1, 1, 1;
  const MarkovFibSpec s = spec_from_vertex_matrices(letters(2), a1, a2);
  CHECK(s.alphabet.labels == std::vector<std::string>{"c1"});
  CHECK(s.removed_symbols == std::vector<std::string>{"c2"});
  CHECK(s.triples == std::vector<Triple>{{0, 0, 0}});
  CHECK(s.pairs == std::vector<Pair>{{0, 0}});
  REQUIRE(s.a1.has_value());
  CHECK(s.a1->rows() == 1);
  CHECK((*s.a1)(0, 0) == 1);
}

TEST_CASE("pruning can empty the rule entirely") {
  CHECK_THROWS_AS((void)spec_from_triples(letters(2), {{0, 0, 1}}), EmptyShift);
  CHECK_THROWS_AS((void)spec_from_triples(letters(2), {}), EmptyShift);
  Eigen::MatrixXi a1 = Eigen::MatrixXi::Ones(2, 2);
  Eigen::MatrixXi a2 = Eigen::MatrixXi::Zero(2, 2);
  CHECK_THROWS_AS((void)spec_from_vertex_matrices(letters(2), a1, a2), EmptyShift);
}

TEST_CASE("pruning is idempotent") {
  std::mt19937_64 rng(0x5eed0002);
  int tried = 0;
  while (tried < 100) {
    auto spec = random_spec(rng, 3, 0.4);
    if (!spec) continue;
    ++tried;
    auto [again, report] = viability_prune(*spec);
    CHECK(report.removed.empty());
    CHECK(again == *spec);
  }
}

TEST_CASE("count recursion fixtures") {
  const GammaTable g = gamma_sequence(golden_mean_spec(), 4);
  CHECK(g.eps_at(0, 1) == 1);
  CHECK(g.eps_at(1, 1) == 1);
  CHECK(g.eps_at(0, 2) == 4);
  CHECK(g.eps_at(1, 2) == 1);
  CHECK(g.eps_at(0, 3) == 15);
  CHECK(g.eps_at(1, 3) == 8);
  CHECK(g.eps_at(0, 4) == 207);
  CHECK(g.eps_at(1, 4) == 75);
  CHECK(g.two_at(0, 2) == 2);
  CHECK(g.two_at(1, 2) == 1);
  CHECK(g.two_at(0, 4) == 23);

  const GammaTable id = gamma_sequence(identity_spec_k2(), 8);
  for (int n = 1; n <= 8; ++n)
    for (int c = 0; c < 2; ++c) {
      CHECK(id.eps_at(c, n) == 1);
      CHECK(id.two_at(c, n) == 1);
    }

  const GammaTable full = gamma_sequence(full_spec_k2(), 3);
  // Every {1,2}-coloring is legal: counts are 2^(slice size - 1).
  CHECK(full.eps_at(0, 2) == 4);
  CHECK(full.eps_at(0, 3) == 32);
  CHECK(full.two_at(0, 3) == 8);
}

TEST_CASE("count recursion matches the slice dp for every two-symbol vertex rule") {
  for (int idx = 0; idx < 256; ++idx) {
    auto spec = try_vertex_spec_k2(idx);
    if (!spec) continue;
    const GammaTable g = gamma_sequence(*spec, 8);
    for (int n = 1; n <= 8; ++n)
      for (int c = 0; c < spec->alphabet.size(); ++c) {
        CHECK(g.eps_at(c, n) == count_colorings_dp(*spec, RootType::Epsilon, n, c));
        CHECK(g.two_at(c, n) == count_colorings_dp(*spec, RootType::TwoRooted, n, c));
      }
  }
}

TEST_CASE("counts never shrink with height") {
  std::mt19937_64 rng(0x5eed0003);
  int tried = 0;
  while (tried < 100) {
    auto spec = random_spec(rng, 3, 0.5);
    if (!spec) continue;
    ++tried;
    const GammaTable g = gamma_sequence(*spec, 10);
    for (int c = 0; c < spec->alphabet.size(); ++c)
      for (int n = 1; n < 10; ++n) {
        CHECK(g.eps_at(c, n + 1) >= g.eps_at(c, n));
        CHECK(g.two_at(c, n + 1) >= g.two_at(c, n));
        CHECK(g.eps_at(c, n) >= g.two_at(c, n));
      }
  }
}

TEST_CASE("gamma requires a pruned rule and is deterministic") {
  MarkovFibSpec raw;
  raw.alphabet = letters(2);
  raw.triples = {{0, 0, 0}};
  raw.pairs = {{0, 0}};
  CHECK_THROWS_AS((void)gamma_sequence(raw, 3), Error);

  const MarkovFibSpec gm = golden_mean_spec();
  const GammaTable a = gamma_sequence(gm, 12);
  const GammaTable b = gamma_sequence(gm, 12);
  for (int n = 1; n <= 12; ++n)
    for (int c = 0; c < 2; ++c) CHECK(a.eps_at(c, n) == b.eps_at(c, n));
}

TEST_CASE("closed recurrence coefficient fixtures") {
  const auto c = recurrence_coefficients(golden_mean_spec());
  REQUIRE(c.size() == 2);
  Eigen::MatrixXi c0(2, 2), c1(2, 2);
  c0 << 2, 1, 2, 1;
  c1 << 1, 1, 0, 0;
  CHECK(c[0] == c0);
  CHECK(c[1] == c1);

  const auto id = recurrence_coefficients(identity_spec_k2());
  Eigen::MatrixXi e00 = Eigen::MatrixXi::Zero(2, 2);
  e00(0, 0) = 1;
  Eigen::MatrixXi e11 = Eigen::MatrixXi::Zero(2, 2);
  e11(1, 1) = 1;
  CHECK(id[0] == e00);
  CHECK(id[1] == e11);

  const auto full = recurrence_coefficients(full_spec_k2());
  CHECK(full[0] == Eigen::MatrixXi::Constant(2, 2, 2));
  CHECK(full[1] == Eigen::MatrixXi::Constant(2, 2, 2));
}

TEST_CASE("closed recurrence reproduces the two-table counts") {
  for (int idx = 0; idx < 256; ++idx) {
    auto spec = try_vertex_spec_k2(idx);
    if (!spec) continue;
    const int k = spec->alphabet.size();
    const GammaTable g = gamma_sequence(*spec, 8);
    const auto coeff = recurrence_coefficients(*spec);
    for (int n = 3; n <= 8; ++n)
      for (int i = 0; i < k; ++i) {
        BigInt acc = 0;
        for (int j1 = 0; j1 < k; ++j1)
          for (int j3 = 0; j3 < k; ++j3)
            acc += BigInt(coeff[static_cast<std::size_t>(i)](j1, j3)) * g.eps_at(j1, n - 1) *
                   g.eps_at(j3, n - 2);
        CHECK(acc == g.eps_at(i, n));
      }
  }
}

TEST_CASE("vertex-matrix coefficients factor through the pair matrix") {
  // For vertex rules the filler count c[i](j1, j3) is A1(i, j1) times the
  // number of j2 with A2(i, j2) = 1 and (j2, j3) a derived pair.
  const MarkovFibSpec gm = golden_mean_spec();
  const auto coeff = recurrence_coefficients(gm);
  const int k = gm.alphabet.size();
  for (int i = 0; i < k; ++i)
    for (int j1 = 0; j1 < k; ++j1)
      for (int j3 = 0; j3 < k; ++j3) {
        int fillers = 0;
        for (int j2 = 0; j2 < k; ++j2) {
          bool in_t = false, in_d = false;
          for (const Triple& t : gm.triples) in_t = in_t || (t == Triple{i, j1, j2});
          for (const Pair& p : gm.pairs) in_d = in_d || (p == Pair{j2, j3});
          if (in_t && in_d) ++fillers;
        }
        CHECK(coeff[static_cast<std::size_t>(i)](j1, j3) == fillers);
      }
}
