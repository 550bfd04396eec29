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
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fibtree/cnn.hpp"
#include "fibtree/entropy.hpp"
#include "fibtree/lattice.hpp"
#include "fibtree/spec_io.hpp"
#include "fibtree/version.hpp"

namespace {

using namespace fibtree;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitVerification = 3;
constexpr int kExitResource = 4;

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string fnv_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void report_header(const std::string& command, const std::string& digest) {
  std::cout << "# fibtree v" << kVersion << "\n";
  std::cout << "# command: " << command << "\n";
  std::cout << "# spec-digest: " << digest << "\n";
}

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

void report_footer(const Stopwatch& watch) {
  std::cout << "# elapsed-ms: " << watch.elapsed_ms() << "\n";
}

std::uint64_t subsystem_cap_from_env() {
  const char* raw = std::getenv("FIBTREE_MAX_SUBSYSTEMS");
  if (raw == nullptr || *raw == '\0') return EntropyOptions{}.enumeration_cap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0')
    throw ParseError(std::string("FIBTREE_MAX_SUBSYSTEMS: not a number: '") + raw + "'");
  return v;
}

std::string class_name(SymbolClass c) {
  switch (c) {
    case SymbolClass::Dead:
      return "dead";
    case SymbolClass::Inessential:
      return "inessential";
    case SymbolClass::Essential:
      return "essential";
  }
  return "?";
}

std::string subsystem_str(const MarkovFibSpec& spec, const SimpleSubsystem& sub) {
  std::string out;
  for (std::size_t e = 0; e < sub.essential.size(); ++e) {
    if (e > 0) out += "; ";
    const auto [j1, j3] = sub.choice[e];
    out += spec.alphabet.labels[static_cast<std::size_t>(sub.essential[e])] + " -> (" +
           spec.alphabet.labels[static_cast<std::size_t>(j1)] + ", " +
           spec.alphabet.labels[static_cast<std::size_t>(j3)] + ")";
  }
  return out;
}

// Estimators at height m from an existing count table; nullopt while
// every count is still 0 or 1.
std::optional<EmpiricalEstimates> estimators_at(const GammaTable& g, int k, int m) {
  if (m < 3) return std::nullopt;
  BigInt sum = 0;
  double log_sum = 0.0;
  bool any_growth = false;
  for (int i = 0; i < k; ++i) {
    const BigInt& v = g.eps_at(i, m);
    sum += v;
    if (v > 1) {
      any_growth = true;
      log_sum += log_big(v);
    }
  }
  if (!any_growth) return std::nullopt;
  EmpiricalEstimates est;
  est.first = std::log(log_big(sum)) / m;
  est.second = std::log(log_sum) / m;
  return est;
}

std::string pattern_str(int parent, const Vertex2& v) {
  auto sign = [](int s) { return s > 0 ? "+" : "-"; };
  return std::string("(") + sign(parent) + "; " + sign(v.v1) + ", " + sign(v.v2) + ")";
}

std::string pattern_list(int parent, const std::vector<Vertex2>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i > 0) out += ", ";
    out += pattern_str(parent, vs[i]);
  }
  return out;
}

int cmd_count(const std::string& spec_path, int depth, const std::string& root) {
  Stopwatch watch;
  const SpecDocument doc = load_spec_document(spec_path);
  report_header("count --spec " + spec_path + " --depth " + std::to_string(depth) +
                    " --root " + root,
                spec_digest_hex(doc));
  const MarkovFibSpec spec = to_spec(doc);
  if (!spec.removed_symbols.empty()) {
    std::cout << "# pruned:";
    for (const std::string& s : spec.removed_symbols) std::cout << " " << s;
    std::cout << "\n";
  }
  const GammaTable g = gamma_sequence(spec, depth);
  const int k = spec.alphabet.size();
  const bool eps_root = root == "eps";

  std::cout << "n";
  for (const std::string& label : spec.alphabet.labels) std::cout << "\t" << label;
  std::cout << "\th1\th2\n";
  for (int m = 1; m <= depth; ++m) {
    std::cout << m;
    for (int i = 0; i < k; ++i)
      std::cout << "\t" << to_string(eps_root ? g.eps_at(i, m) : g.two_at(i, m));
    if (auto est = estimators_at(g, k, m)) {
      std::cout << "\t" << fmt("%.10f", est->first) << "\t" << fmt("%.10f", est->second);
    } else {
      std::cout << "\t-\t-";
    }
    std::cout << "\n";
  }
  std::cout << "# estimator columns h1, h2 are computed from the epsilon-rooted counts\n";
  report_footer(watch);
  return kExitOk;
}

int cmd_entropy(const std::string& spec_path, bool list_subsystems, bool log2_display) {
  Stopwatch watch;
  const SpecDocument doc = load_spec_document(spec_path);
  std::string cmd = "entropy --spec " + spec_path;
  if (list_subsystems) cmd += " --list-subsystems";
  if (log2_display) cmd += " --log2";
  report_header(cmd, spec_digest_hex(doc));
  const MarkovFibSpec spec = to_spec(doc);

  EntropyOptions options;
  options.enumeration_cap = subsystem_cap_from_env();
  const EntropyResult result = entropy(spec, options);

  for (const auto& [label, cls] : result.classification.entries)
    std::cout << "symbol " << label << ": " << class_name(cls) << "\n";
  if (list_subsystems) {
    const std::vector<SimpleSubsystem> subs = enumerate_simple_subsystems(
        spec, result.classification, options.enumeration_cap);
    std::cout << "subsystems: " << subs.size() << "\n";
    for (std::size_t i = 0; i < subs.size(); ++i)
      std::cout << "subsystem " << (i + 1) << ": " << subsystem_str(spec, subs[i])
                << "  rho=" << fmt("%.10f", spectral_radius(adjacency_matrix(subs[i])))
                << "\n";
  }
  const double display = log2_display ? result.value / M_LN2 : result.value;
  std::cout << "entropy: " << fmt("%.10f", display) << (log2_display ? " bits" : " nats")
            << "\n";
  std::cout << "spectral-radius: " << fmt("%.10f", result.spectral_radius) << "\n";
  if (result.witness)
    std::cout << "witness: " << subsystem_str(spec, *result.witness) << "\n";
  else
    std::cout << "witness: none (no simple subsystem)\n";
  report_footer(watch);
  return kExitOk;
}

int cmd_verify(const std::string& spec_path, int naive_depth, int dp_depth) {
  Stopwatch watch;
  const SpecDocument doc = load_spec_document(spec_path);
  report_header("verify --spec " + spec_path + " --naive-depth " +
                    std::to_string(naive_depth) + " --dp-depth " + std::to_string(dp_depth),
                spec_digest_hex(doc));
  MarkovFibSpec spec;
  try {
    spec = to_spec(doc);
  } catch (const EmptyShift&) {
    std::cout << "empty shift: every symbol pruned; nothing to compare, vacuously PASS\n";
    report_footer(watch);
    return kExitOk;
  }

  const OracleReport report = verify_against_oracles(spec, naive_depth, dp_depth);
  for (const OracleCell& cell : report.cells) {
    std::cout << (cell.pass ? "PASS" : "FAIL") << " "
              << (cell.root_type == RootType::Epsilon ? "eps" : "two") << " "
              << spec.alphabet.labels[static_cast<std::size_t>(cell.symbol)]
              << " n=" << cell.height << " gamma=" << cell.expected << " naive=" << cell.naive
              << " dp=" << cell.dp << "\n";
  }
  std::cout << (report.all_pass ? "verification passed\n" : "verification FAILED\n");
  report_footer(watch);
  return report.all_pass ? kExitOk : kExitVerification;
}

int cmd_cnn_classify(double a, double a1, double a2, double z, bool degree1_diag,
                     bool log2_display) {
  Stopwatch watch;
  const std::string params = "a=" + fmt("%.12g", a) + " a1=" + fmt("%.12g", a1) +
                             " a2=" + fmt("%.12g", a2) + " z=" + fmt("%.12g", z);
  report_header("cnn-classify " + params, fnv_hex(params));

  const CnnTemplate t{a, a1, a2, z};
  const LocalPatternSet patterns = admissible_patterns(t);
  const RegionIndex region = region_index(patterns);
  std::cout << "template: " << params << "\n";
  std::cout << "B+ (" << region.p << "): " << pattern_list(+1, patterns.plus) << "\n";
  std::cout << "B- (" << region.q << "): " << pattern_list(-1, patterns.minus) << "\n";
  std::cout << "region: [" << region.p << ", " << region.q << "]\n";

  const RealizabilityResult real = realizable(patterns);
  std::cout << "realizable: " << (real.realizable ? "yes" : "no");
  if (real.branch == RealizableBranch::Inv1) std::cout << " (inclusion branch 1)";
  if (real.branch == RealizableBranch::Inv2) std::cout << " (inclusion branch 2)";
  std::cout << "\n";

  const CnnEntropyResult ent = cnn_entropy(t);
  const double display = log2_display ? ent.value / M_LN2 : ent.value;
  std::cout << "entropy: " << fmt("%.10f", display) << (log2_display ? " bits" : " nats")
            << " (closed form " << fmt("%.10f", log2_display ? ent.closed_form / M_LN2
                                                             : ent.closed_form)
            << ", routes agree)\n";
  const double crit = critical_a(a1, a2, z);
  std::cout << "critical-a: " << fmt("%.10f", crit) << "\n";
  std::cout << "critical-distance: " << fmt("%.10f", a - crit) << "\n";

  if (degree1_diag) {
    const Degree1Report rep = degree1_report(t);
    auto list = [](const std::vector<std::pair<int, int>>& ps) {
      std::string out;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i > 0) out += ", ";
        out += std::string("(") + (ps[i].first > 0 ? "+" : "-") + "; " +
               (ps[i].second > 0 ? "+" : "-") + ")";
      }
      return out.empty() ? std::string("none") : out;
    };
    std::cout << "degree1 restriction: " << list(rep.restriction) << "\n";
    std::cout << "degree1 intrinsic:   " << list(rep.intrinsic) << "\n";
    std::cout << "degree1 only-restriction: " << list(rep.only_restriction) << "\n";
    std::cout << "degree1 only-intrinsic:   " << list(rep.only_intrinsic) << "\n";
    for (const std::string& note : rep.notes) std::cout << "degree1 note: " << note << "\n";
  }
  report_footer(watch);
  return kExitOk;
}

int cmd_phase_diagram(double a1, double a2, double a_min, double a_max, double z_min,
                      double z_max, double step, const std::string& out_path) {
  Stopwatch watch;
  const std::string params = "a1=" + fmt("%.12g", a1) + " a2=" + fmt("%.12g", a2) +
                             " a-min=" + fmt("%.12g", a_min) + " a-max=" + fmt("%.12g", a_max) +
                             " z-min=" + fmt("%.12g", z_min) + " z-max=" + fmt("%.12g", z_max) +
                             " step=" + fmt("%.12g", step);
  report_header("phase-diagram " + params + " --out " + out_path, fnv_hex(params));

  const PhaseDiagram diagram = phase_diagram(a1, a2, a_min, a_max, z_min, z_max, step);

  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot open output file '" + out_path + "'");
  out << "a, z, p, q, entropy_nats, critical_distance\n";
  for (const PhaseDiagramRow& row : diagram.rows)
    out << fmt("%.12g", row.a) << ", " << fmt("%.12g", row.z) << ", " << row.p << ", "
        << row.q << ", " << fmt("%.12g", row.entropy_nats) << ", "
        << fmt("%.12g", row.critical_distance) << "\n";
  out.close();
  if (!out) throw ParseError("write failed for '" + out_path + "'");

  std::set<std::pair<int, int>> regions;
  int zero_rows = 0, golden_rows = 0, other_rows = 0;
  for (const PhaseDiagramRow& row : diagram.rows) {
    regions.insert({row.p, row.q});
    if (std::abs(row.entropy_nats) <= 1e-10)
      ++zero_rows;
    else if (std::abs(row.entropy_nats - kLogGoldenMean) <= 1e-10)
      ++golden_rows;
    else
      ++other_rows;
  }
  std::cout << "rows: " << diagram.rows.size() << "\n";
  std::cout << "distinct-regions: " << regions.size() << "\n";
  std::cout << "entropy-zero rows: " << zero_rows << "\n";
  std::cout << "entropy-golden rows: " << golden_rows << "\n";
  std::cout << "boundary-skips: " << diagram.boundary_skips << "\n";
  if (other_rows > 0) {
    std::cerr << "dichotomy violated on " << other_rows << " rows\n";
    report_footer(watch);
    return kExitVerification;
  }
  std::cout << "dichotomy: every entropy is 0 or ln((1+sqrt(5))/2)\n";
  report_footer(watch);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact pattern counts and entropy for Markov rules on the Fibonacci-Cayley "
               "tree, with cellular-network template classification"};
  app.require_subcommand(1);

  std::string spec_path, root = "eps", out_path;
  int depth = 8, naive_depth = 4, dp_depth = 8;
  bool list_subsystems = false, log2_display = false, degree1_diag = false;
  double a = 0, a1 = 0, a2 = 0, z = 0;
  double a_min = 0, a_max = 0, z_min = 0, z_max = 0, step = 0.25;

  CLI::App* count = app.add_subcommand("count", "Exact count table per symbol and height");
  count->add_option("--spec", spec_path, "Rule file (JSON)")->required();
  count->add_option("--depth", depth, "Maximum height (default 8)");
  count->add_option("--root", root, "Root configuration: eps or two")
      ->check(CLI::IsMember({"eps", "two"}));

  CLI::App* ent = app.add_subcommand("entropy", "Topological entropy with witness");
  ent->add_option("--spec", spec_path, "Rule file (JSON)")->required();
  ent->add_flag("--list-subsystems", list_subsystems, "List every simple subsystem");
  ent->add_flag("--log2", log2_display, "Display in bits instead of nats");

  CLI::App* verify = app.add_subcommand(
      "verify", "Cross-check the count recursion against both oracles");
  verify->add_option("--spec", spec_path, "Rule file (JSON)")->required();
  verify->add_option("--naive-depth", naive_depth, "Max height for the naive oracle");
  verify->add_option("--dp-depth", dp_depth, "Max height for the DP oracle");

  CLI::App* classify = app.add_subcommand("cnn-classify",
                                          "Classify one cell template (a, a1, a2, z)");
  classify->add_option("--a", a, "Feedback weight")->required();
  classify->add_option("--a1", a1, "Direction-1 weight")->required();
  classify->add_option("--a2", a2, "Direction-2 weight")->required();
  classify->add_option("--z", z, "Threshold")->required();
  classify->add_flag("--degree1-diagnostic", degree1_diag,
                     "Also print both degree-1 admissibility semantics");
  classify->add_flag("--log2", log2_display, "Display in bits instead of nats");

  CLI::App* sweep = app.add_subcommand("phase-diagram",
                                       "Sweep (a, z) at fixed weights; write CSV");
  sweep->add_option("--a1", a1, "Direction-1 weight")->required();
  sweep->add_option("--a2", a2, "Direction-2 weight")->required();
  sweep->add_option("--a-min", a_min, "Feedback sweep start")->required();
  sweep->add_option("--a-max", a_max, "Feedback sweep end")->required();
  sweep->add_option("--z-min", z_min, "Threshold sweep start")->required();
  sweep->add_option("--z-max", z_max, "Threshold sweep end")->required();
  sweep->add_option("--step", step, "Grid step (default 0.25)");
  sweep->add_option("--out", out_path, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (count->parsed()) return cmd_count(spec_path, depth, root);
    if (ent->parsed()) return cmd_entropy(spec_path, list_subsystems, log2_display);
    if (verify->parsed()) return cmd_verify(spec_path, naive_depth, dp_depth);
    if (classify->parsed()) return cmd_cnn_classify(a, a1, a2, z, degree1_diag, log2_display);
    if (sweep->parsed())
      return cmd_phase_diagram(a1, a2, a_min, a_max, z_min, z_max, step, out_path);
  } catch (const WorkCap& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResource;
  } catch (const DepthCap& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResource;
  } catch (const EnumerationCap& e) {
    std::cerr << "resource cap: " << e.what()
              << "\nraise FIBTREE_MAX_SUBSYSTEMS to override\n";
    return kExitResource;
  } catch (const RouteDisagreement& e) {
    std::cerr << "internal verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const NonConvergence& e) {
    std::cerr << "internal verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const Error& e) {
    // Remaining library errors describe problems with the input.
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
