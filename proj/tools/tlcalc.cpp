// Copyright 2026 The tlcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tlcalc/dsl.hpp"
#include "tlcalc/registry_io.hpp"
#include "tlcalc/tlcalc.hpp"

namespace {

using json = nlohmann::json;
using namespace tlcalc;

// Exit codes: 0 all checks pass, 1 failed verification, 2 parse/elaboration
// error, 3 problem too large.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitTooLarge = 3;

double tolerance_from_env() {
  if (const char* env = std::getenv("TLCALC_TOLERANCE")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env) return v;
  }
  return kDefaultTolerance;
}

double round_sig(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

json matrix_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (const auto& e : m.entries())
    entries.push_back({round_sig(e.real()), round_sig(e.imag())});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

json report_json(const IdentityReport& r) {
  return json{{"identity_id", r.identity_id}, {"d", r.d},     {"seed", r.seed},
              {"residual", r.residual},       {"passed", r.passed},
              {"params", r.params}};
}

json word_json(const std::vector<Decoration>& word) {
  json out = json::array();
  for (const auto& dec : word)
    out.push_back({{"label", dec.label}, {"flavor", flavor_name(dec.flavor)}});
  return out;
}

json diagram_json(const Diagram& d) {
  json strands = json::array();
  for (const auto& s : d.strands)
    strands.push_back({{"start", to_string(s.start)},
                       {"end", to_string(s.end)},
                       {"word", word_json(s.word)},
                       {"apex", s.apex},
                       {"norm_weight", s.norm_weight}});
  json loops = json::array();
  for (const auto& l : d.loops)
    loops.push_back({{"word", word_json(l.word)}, {"norm_weight", l.norm_weight}});
  return json{{"upper", d.upper_arity},
              {"lower", d.lower_arity},
              {"scalar", {round_sig(d.scalar.real()), round_sig(d.scalar.imag())}},
              {"strands", std::move(strands)},
              {"loops", std::move(loops)}};
}

std::string read_input(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return arg;
}

Registry build_registry(int dim, const std::string& registry_path) {
  Registry reg = Registry::standard(dim);
  if (!registry_path.empty()) {
    Registry file_reg = load_registry_file(registry_path);
    if (file_reg.dimension() != dim)
      fail(ErrorCode::dimension_mismatch,
           "registry file has d = " + std::to_string(file_reg.dimension()) +
               " but --dim is " + std::to_string(dim));
    for (const auto& [label, m] : file_reg.matrices()) reg.add_matrix(label, m);
    for (const auto& [label, v] : file_reg.vectors()) reg.add_vector(label, v);
  }
  return reg;
}

int run_eval(const std::string& input, int dim, const std::string& registry_path) {
  const Registry reg = build_registry(dim, registry_path);
  const Diagram d = elaborate(parse(read_input(input)));
  const EvalResult r = evaluate(d, dim, reg);
  std::cout << matrix_json(r.matrix).dump(2) << "\n";
  return kExitOk;
}

int run_normalize(const std::string& input, int dim, const std::string& registry_path) {
  Registry reg = build_registry(dim, registry_path);
  const Diagram d = elaborate(parse(read_input(input)));
  const NormalizeResult nr = normalize(d, reg, dim);
  json steps = json::array();
  for (const auto& step : nr.trace.steps) {
    char before[32], after[32];
    std::snprintf(before, sizeof before, "%016llx",
                  static_cast<unsigned long long>(step.before_hash));
    std::snprintf(after, sizeof after, "%016llx",
                  static_cast<unsigned long long>(step.after_hash));
    steps.push_back({{"rule", rule_name(step.rule)},
                     {"target", {{"kind", step.target.loop ? "loop" : "strand"},
                                 {"index", step.target.index},
                                 {"pos", step.target.pos}}},
                     {"before", before},
                     {"after", after}});
  }
  std::cout << json{{"normal_form", diagram_json(nr.diagram)}, {"trace", steps}}.dump(2)
            << "\n";
  return kExitOk;
}

int run_verify(const std::string& which, int dim, std::uint64_t seed) {
  const double tol = tolerance_from_env();
  std::vector<IdentityReport> reports;
  if (which == "all") {
    reports = run_catalog(dim, seed, tol);
  } else {
    reports.push_back(verify_identity(which, dim, seed, tol));
  }
  std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return std::tie(a.identity_id, a.d, a.seed) < std::tie(b.identity_id, b.d, b.seed);
  });
  json out = json::array();
  bool all_passed = true;
  for (const auto& r : reports) {
    out.push_back(report_json(r));
    all_passed = all_passed && r.passed;
  }
  std::cout << out.dump(2) << "\n";
  return all_passed ? kExitOk : kExitVerifyFailed;
}

int run_demo(const std::string& which, int dim) {
  const double tol = tolerance_from_env();
  std::vector<IdentityReport> reports;
  auto narrate = [](const std::string& line) { std::cerr << line << "\n"; };

  if (which == "teleport") {
    narrate("teleportation at d = " + std::to_string(dim) + ": Charlie holds |psi>,");
    narrate("Alice and Bob share |Omega>; Alice measures |Omega_n><Omega_n| on");
    narrate("Charlie+Alice, Bob corrects with U_n. One check per outcome n:");
    for (int n = 1; n <= dim * dim; ++n) {
      reports.push_back(teleport_verify(dim, n, static_cast<std::uint64_t>(n), tol));
      narrate("  n = " + std::to_string(n) +
              ": residual = " + std::to_string(reports.back().residual));
    }
    reports.push_back(tight_teleport_verify(dim, 7, tol));
    narrate("tight scheme (closed diagram, summed over all d^2 outcomes): residual = " +
            std::to_string(reports.back().residual));
  } else if (which == "densecode") {
    narrate("dense coding at d = " + std::to_string(dim) + ": Alice encodes n by");
    narrate("applying the channel T_n to her half of |Omega>, Bob measures omega_m.");
    reports.push_back(tight_densecode_verify(dim, tol));
    narrate("P[n,m] = delta_nm residual = " + std::to_string(reports.back().residual));
  } else if (which == "swap") {
    narrate("entanglement swapping at d = " + std::to_string(dim) + ": measuring the");
    narrate("middle pair of |Omega_l>(x)|Omega_m> entangles the outer particles:");
    const int d2 = dim * dim;
    for (int l = 1; l <= d2; l += std::max(1, d2 / 2))
      for (int n = 1; n <= d2; n += std::max(1, d2 / 2))
        for (int m = 1; m <= d2; m += std::max(1, d2 / 2)) {
          reports.push_back(swap_verify(dim, l, n, m, tol));
          narrate("  (l,n,m) = (" + std::to_string(l) + "," + std::to_string(n) + "," +
                  std::to_string(m) +
                  "): residual = " + std::to_string(reports.back().residual));
        }
    reports.push_back(tight_swap_verify(dim, 3, tol));
    narrate("tight scheme (closed diagram): residual = " +
            std::to_string(reports.back().residual));
  } else {
    fail(ErrorCode::invalid_argument,
         "unknown demo '" + which + "' (expected teleport, densecode or swap)");
  }

  json out = json::array();
  bool all_passed = true;
  for (const auto& r : reports) {
    out.push_back(report_json(r));
    all_passed = all_passed && r.passed;
  }
  std::cout << out.dump(2) << "\n";
  narrate(all_passed ? "all checks passed" : "CHECKS FAILED");
  return all_passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tlcalc: extended Temperley-Lieb diagram calculus for entanglement circuits"};
  app.require_subcommand(1);

  std::string eval_input, eval_registry;
  int eval_dim = 2;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression (or file) to a matrix");
  eval_cmd->add_option("input", eval_input, "DSL expression or path to a file holding one")
      ->required();
  eval_cmd->add_option("--dim", eval_dim, "Hilbert space dimension d")->default_val(2);
  eval_cmd->add_option("--registry", eval_registry, "JSON registry file");

  std::string norm_input, norm_registry;
  int norm_dim = 2;
  auto* norm_cmd =
      app.add_subcommand("normalize", "print the canonical form and rewrite trace");
  norm_cmd->add_option("input", norm_input, "DSL expression or file")->required();
  norm_cmd->add_option("--dim", norm_dim, "Hilbert space dimension d")->default_val(2);
  norm_cmd->add_option("--registry", norm_registry, "JSON registry file");

  std::string verify_id = "all";
  int verify_dim = 2;
  std::uint64_t verify_seed = 0;
  auto* verify_cmd = app.add_subcommand("verify", "check identities from the catalog");
  verify_cmd->add_option("identity", verify_id, "identity id or 'all'")->required();
  verify_cmd->add_option("--dim", verify_dim, "Hilbert space dimension d")->default_val(2);
  verify_cmd->add_option("--seed", verify_seed, "seed for operator-quantified identities")
      ->default_val(0);

  std::string demo_which;
  int demo_dim = 2;
  auto* demo_cmd = app.add_subcommand("demo", "narrated protocol run with residuals");
  demo_cmd->add_option("protocol", demo_which, "teleport | densecode | swap")->required();
  demo_cmd->add_option("--dim", demo_dim, "Hilbert space dimension d")->default_val(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (eval_cmd->parsed()) return run_eval(eval_input, eval_dim, eval_registry);
    if (norm_cmd->parsed()) return run_normalize(norm_input, norm_dim, norm_registry);
    if (verify_cmd->parsed()) return run_verify(verify_id, verify_dim, verify_seed);
    if (demo_cmd->parsed()) return run_demo(demo_which, demo_dim);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::problem_too_large ? kExitTooLarge : kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
