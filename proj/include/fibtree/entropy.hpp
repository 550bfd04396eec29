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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibtree/shift.hpp"

namespace fibtree {

// Essential: the symbol's epsilon-rooted count eventually exceeds 1 (and
// then grows without bound).  Inessential: the count is 1 at every height.
// Dead: removed by viability pruning.
enum class SymbolClass { Dead, Inessential, Essential };

struct SymbolClassification {
  // Surviving symbols first (spec alphabet order), then pruned ones.
  std::vector<std::pair<std::string, SymbolClass>> entries;
  // Indices into the spec alphabet, ascending.
  std::vector<int> essential;
  // Height at which the inessential set stopped changing.
  int stabilized_at = 0;
};

// One choice, per essential symbol, of a (one-step, two-step) child pair
// from the closed recurrence with a nonzero coefficient; both children
// essential.  These are the irreducible pieces whose growth rates the
// entropy maximizes over.
struct SimpleSubsystem {
  std::vector<int> essential;                  // spec alphabet indices
  std::vector<std::pair<int, int>> choice;     // aligned with essential
};

struct EntropyOptions {
  std::uint64_t enumeration_cap = 1'000'000;
  double power_tol = 1e-12;
};

struct EntropyResult {
  double value = 0.0;              // nats
  std::optional<SimpleSubsystem> witness;
  double spectral_radius = 1.0;    // of the witness; 1 when there is none
  SymbolClassification classification;
};

struct EmpiricalEstimates {
  double first = 0.0;   // ln ln (sum of counts) / n
  double second = 0.0;  // ln (sum of log-counts) / n
};

// Splits surviving symbols into essential/inessential by running the count
// recursion (in saturating arithmetic: only "1" vs ">= 2" matters) until
// the inessential set repeats across a three-height window, which pins it
// forever.
SymbolClassification classify_symbols(const MarkovFibSpec& spec);

// All simple subsystems over the essential symbols, in deterministic
// odometer order (last symbol varies fastest; options sorted).  Empty when
// there are no essential symbols or some essential symbol has no option.
std::vector<SimpleSubsystem> enumerate_simple_subsystems(
    const MarkovFibSpec& spec, const SymbolClassification& classification,
    std::uint64_t enumeration_cap = 1'000'000);

// Linearized one-step matrix of a subsystem acting on the interleaved state
// (log count at height n, log count at height n-1) per essential symbol:
// row 2e accumulates its choice's height-(n-1) and height-(n-2) coordinates,
// row 2e+1 is the shift (height n becomes height n-1).
Eigen::MatrixXi adjacency_matrix(const SimpleSubsystem& subsystem);

// Largest-modulus eigenvalue of a nonnegative square matrix via power
// iteration on M + I (the shift kills period-2 oscillation), max-norm
// normalization, Rayleigh-quotient convergence.  Throws NonConvergence
// after the iteration cap.
double spectral_radius_dense(Eigen::MatrixXd m, double tol = 1e-12,
                             int max_iterations = 100000);

template <typename Derived>
double spectral_radius(const Eigen::MatrixBase<Derived>& m, double tol = 1e-12,
                       int max_iterations = 100000) {
  return spectral_radius_dense(m.derived().template cast<double>(), tol, max_iterations);
}

// Topological entropy: ln of the largest subsystem spectral radius, 0 when
// no subsystem exists.  Ties keep the first subsystem in enumeration order.
EntropyResult entropy(const MarkovFibSpec& spec, const EntropyOptions& options = {});

// The two height-n estimators of the entropy from exact counts.  Throws
// DegenerateLogs when every count at height n is 0 or 1.
EmpiricalEstimates entropy_empirical(const MarkovFibSpec& spec, int n);

}  // namespace fibtree
