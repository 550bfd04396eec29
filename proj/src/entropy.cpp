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
#include "fibtree/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fibtree {

SymbolClassification classify_symbols(const MarkovFibSpec& spec) {
  if (!spec.pruned) throw Error("classify_symbols requires a pruned spec");
  const int k = spec.alphabet.size();
  const std::size_t ks = static_cast<std::size_t>(k);

  // Saturating recursion: values live in {1, 2}, 2 standing for ">= 2".
  // Sound because pruning guarantees every true count is >= 1, so a single
  // factor >= 2 or a second term already pushes the sum past 1.
  std::vector<int> eps_prev(ks, 1), two_prev(ks, 1);
  std::vector<std::vector<int>> inessential_history;  // as sorted index lists

  auto inessential_of = [&](const std::vector<int>& eps) {
    std::vector<int> s;
    for (int i = 0; i < k; ++i)
      if (eps[static_cast<std::size_t>(i)] == 1) s.push_back(i);
    return s;
  };
  inessential_history.push_back(inessential_of(eps_prev));

  // The inessential set only shrinks with height and the next set is a
  // function of the previous two, so a window of three equal sets repeats
  // forever.  Each shrink happens within three heights of the previous one,
  // bounding the search.
  const int max_n = 3 * k + 6;
  int stabilized_at = -1;
  for (int n = 2; n <= max_n; ++n) {
    std::vector<int> eps(ks, 0), two(ks, 0);
    for (const Triple& t : spec.triples) {
      int& acc = eps[static_cast<std::size_t>(t[0])];
      acc = std::min(2, acc + eps_prev[static_cast<std::size_t>(t[1])] *
                              two_prev[static_cast<std::size_t>(t[2])]);
    }
    for (const Pair& p : spec.pairs) {
      int& acc = two[static_cast<std::size_t>(p[0])];
      acc = std::min(2, acc + eps_prev[static_cast<std::size_t>(p[1])]);
    }
    eps_prev = std::move(eps);
    two_prev = std::move(two);
    inessential_history.push_back(inessential_of(eps_prev));
    const std::size_t h = inessential_history.size();
    if (h >= 3 && inessential_history[h - 1] == inessential_history[h - 2] &&
        inessential_history[h - 2] == inessential_history[h - 3]) {
      stabilized_at = n;
      break;
    }
  }
  if (stabilized_at < 0) throw Error("classification failed to stabilize");

  SymbolClassification out;
  out.stabilized_at = stabilized_at;
  const std::vector<int>& iness = inessential_history.back();
  for (int i = 0; i < k; ++i) {
    const bool is_iness = std::binary_search(iness.begin(), iness.end(), i);
    out.entries.emplace_back(spec.alphabet.labels[static_cast<std::size_t>(i)],
                             is_iness ? SymbolClass::Inessential : SymbolClass::Essential);
    if (!is_iness) out.essential.push_back(i);
  }
  for (const std::string& label : spec.removed_symbols)
    out.entries.emplace_back(label, SymbolClass::Dead);
  return out;
}

std::vector<SimpleSubsystem> enumerate_simple_subsystems(
    const MarkovFibSpec& spec, const SymbolClassification& classification,
    std::uint64_t enumeration_cap) {
  const std::vector<int>& ess = classification.essential;
  if (ess.empty()) return {};
  std::vector<char> is_ess(static_cast<std::size_t>(spec.alphabet.size()), 0);
  for (int i : ess) is_ess[static_cast<std::size_t>(i)] = 1;

  std::vector<Eigen::MatrixXi> coeff = recurrence_coefficients(spec);
  std::vector<std::vector<std::pair<int, int>>> options(ess.size());
  for (std::size_t e = 0; e < ess.size(); ++e) {
    const Eigen::MatrixXi& c = coeff[static_cast<std::size_t>(ess[e])];
    for (int j1 : ess)
      for (int j3 : ess)
        if (c(j1, j3) >= 1) options[e].emplace_back(j1, j3);
    if (options[e].empty()) return {};
  }

  BigInt total = 1;
  for (const auto& opts : options) total *= static_cast<unsigned long>(opts.size());
  if (total > BigInt(static_cast<unsigned long>(enumeration_cap))) {
    std::uint64_t approx = total.fits_ulong_p() ? static_cast<std::uint64_t>(total.get_ui())
                                                : std::numeric_limits<std::uint64_t>::max();
    throw EnumerationCap("simple subsystem enumeration would produce " + to_string(total) +
                             " subsystems (cap " + std::to_string(enumeration_cap) + ")",
                         approx);
  }

  std::vector<SimpleSubsystem> out;
  std::vector<std::size_t> pick(ess.size(), 0);
  for (;;) {
    SimpleSubsystem sub;
    sub.essential = ess;
    for (std::size_t e = 0; e < ess.size(); ++e) sub.choice.push_back(options[e][pick[e]]);
    out.push_back(std::move(sub));
    // Odometer: last symbol varies fastest.
    std::size_t pos = ess.size();
    while (pos-- > 0) {
      if (++pick[pos] < options[pos].size()) break;
      pick[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

Eigen::MatrixXi adjacency_matrix(const SimpleSubsystem& subsystem) {
  const int kp = static_cast<int>(subsystem.essential.size());
  if (kp == 0) throw Error("adjacency_matrix: empty subsystem");
  // Essential symbol index -> position in the interleaved state vector.
  int max_sym = 0;
  for (int s : subsystem.essential) max_sym = std::max(max_sym, s);
  std::vector<int> pos(static_cast<std::size_t>(max_sym) + 1, -1);
  for (int e = 0; e < kp; ++e) pos[static_cast<std::size_t>(subsystem.essential[static_cast<std::size_t>(e)])] = e;

  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(2 * kp, 2 * kp);
  for (int e = 0; e < kp; ++e) {
    const auto [j1, j3] = subsystem.choice[static_cast<std::size_t>(e)];
    m(2 * e, 2 * pos[static_cast<std::size_t>(j1)]) += 1;
    m(2 * e, 2 * pos[static_cast<std::size_t>(j3)] + 1) += 1;
    m(2 * e + 1, 2 * e) = 1;
  }
  return m;
}

double spectral_radius_dense(Eigen::MatrixXd m, double tol, int max_iterations) {
  if (m.rows() != m.cols()) throw Error("spectral_radius: matrix must be square");
  const Eigen::Index n = m.rows();
  if (n == 0) return 0.0;

  // Power iteration on M + I: same eigenvectors, spectrum shifted by one,
  // and the shift separates eigenvalues that tie in modulus around zero.
  Eigen::MatrixXd a = m + Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  double rayleigh_prev = std::numeric_limits<double>::quiet_NaN();
  const double floor = 4.0 * std::numeric_limits<double>::epsilon();
  double rayleigh = 1.0, delta = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::VectorXd y = a * x;
    rayleigh = x.dot(y) / x.dot(x);
    delta = std::abs(rayleigh - rayleigh_prev);
    if (delta <= std::max(0.01 * tol, floor * (1.0 + std::abs(rayleigh))))
      return std::max(0.0, rayleigh - 1.0);
    rayleigh_prev = rayleigh;
    const double scale = y.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;  // nilpotent direction collapsed
    x = y / scale;
  }
  throw NonConvergence("power iteration did not converge: last estimate " +
                       std::to_string(rayleigh - 1.0) + ", last delta " +
                       std::to_string(delta));
}

EntropyResult entropy(const MarkovFibSpec& spec, const EntropyOptions& options) {
  EntropyResult result;
  result.classification = classify_symbols(spec);
  std::vector<SimpleSubsystem> subs =
      enumerate_simple_subsystems(spec, result.classification, options.enumeration_cap);
  if (subs.empty()) return result;  // bounded growth everywhere: entropy 0

  double best = -std::numeric_limits<double>::infinity();
  std::optional<SimpleSubsystem> witness;
  for (const SimpleSubsystem& sub : subs) {
    const double rho = spectral_radius(adjacency_matrix(sub), options.power_tol);
    if (rho > best) {
      best = rho;
      witness = sub;
    }
  }
  result.value = std::log(best);
  result.witness = std::move(witness);
  result.spectral_radius = best;
  return result;
}

EmpiricalEstimates entropy_empirical(const MarkovFibSpec& spec, int n) {
  if (n < 3) throw Error("entropy_empirical: height must be >= 3");
  GammaTable g = gamma_sequence(spec, n);
  const int k = spec.alphabet.size();

  BigInt sum = 0;
  double log_sum = 0.0;
  bool any_growth = false;
  for (int i = 0; i < k; ++i) {
    const BigInt& v = g.eps_at(i, n);
    sum += v;
    if (v > 1) {
      any_growth = true;
      log_sum += log_big(v);
    }
  }
  if (!any_growth)
    throw DegenerateLogs("all height-" + std::to_string(n) + " counts are 0 or 1");

  EmpiricalEstimates est;
  est.first = std::log(log_big(sum)) / n;
  est.second = std::log(log_sum) / n;
  return est;
}

}  // namespace fibtree
