// Copyright 2026 The ckc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ckc/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "ckc/approx.hpp"
#include "ckc/gap_lab.hpp"
#include "ckc/io.hpp"
#include "ckc/multicolor.hpp"
#include "ckc/oracle.hpp"

namespace ckc {

namespace {

using nlohmann::json;

struct SolveFlags {
  std::string path;
  bool pseudo = false;
  bool compare_oracle = false;
  std::string radius;
  bool trace = false;
  bool timing = false;
  int jobs = 1;
  bool omega = false;
  int64_t omega_budget = 0;
  int full_class = -1;
};

struct GenFlags {
  int64_t n = 1;
  std::string far = "100";
  std::vector<int64_t> values;
  int64_t k = 1;
  std::string out;
  std::string certificate_out;
};

Instance load_checked(const std::string& path, std::ostream& err) {
  Instance inst = load_instance(path);
  const std::string warning = triangle_warning(inst);
  if (!warning.empty()) err << "warning: " << path << " is " << warning << "\n";
  return inst;
}

json digest(const Instance& inst) {
  return {{"n", inst.size()}, {"k", inst.k()}, {"req", inst.requirements()},
          {"omega", inst.num_classes()}};
}

json trace_to_json(const SolveTrace& t) {
  return {{"radii_tried", t.radii_tried.load()},
          {"radii_pruned", t.radii_pruned.load()},
          {"outer_points", t.outer_points.load()},
          {"guesses", t.guesses.load()},
          {"dp_tables", t.dp_tables.load()},
          {"dp_cache_hits", t.dp_cache_hits.load()},
          {"sparse_calls", t.sparse_calls.load()},
          {"sparse_cache_hits", t.sparse_cache_hits.load()},
          {"candidates", t.candidates.load()}};
}

Rational parse_number(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

// Recounts coverage before a solution is reported; a center budget of
// `budget` judges feasibility.
Solution reverified(const Instance& inst, const Solution& sol, int64_t budget) {
  Solution again = verify(inst, sol.centers, sol.radius);
  if (again.centers != sol.centers || again.covered != sol.covered) {
    throw ContractViolation("reported solution does not match its recount");
  }
  bool met = static_cast<int64_t>(again.centers.size()) <= budget;
  for (int c = 0; c < inst.num_classes(); ++c) met = met && again.covered[c] >= inst.req(c);
  again.feasible = met;
  return again;
}

std::optional<Solution> pseudo_omega_search(const Instance& inst, const std::optional<Radius>& pin,
                                            int full_class) {
  std::vector<Radius> radii = pin ? std::vector<Radius>{*pin} : radius_candidates(inst);
  for (const Radius& radius : radii) {
    if (auto centers = pseudo_approx_omega(inst, radius, full_class)) {
      return verify(inst, std::move(*centers), radius.scaled(2));
    }
  }
  return std::nullopt;
}

int cmd_solve(const SolveFlags& flags, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = load_checked(flags.path, err);
  std::optional<Radius> pin;
  if (!flags.radius.empty()) {
    try {
      pin = Radius::parse(flags.radius);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("--radius: ") + e.what());
    }
  }
  SolveTrace trace;
  SolverOptions solver;
  solver.jobs = flags.jobs;
  solver.execution = flags.jobs > 1 ? Execution::kParallel : Execution::kSerial;
  solver.trace = &trace;
  const bool multicolor = flags.omega || inst.num_classes() != 2;

  json report{{"command", "solve"}, {"instance", digest(inst)}};
  std::optional<Solution> sol;
  int64_t budget = inst.k();
  if (flags.pseudo) {
    report["mode"] = "pseudo";
    if (multicolor) {
      sol = pseudo_omega_search(inst, pin, flags.full_class);
    } else {
      budget = inst.k() + 1;
      sol = pin ? pseudo_approx(inst, *pin) : pseudo_solve(inst);
    }
  } else if (multicolor) {
    if (pin) throw ParseError("--radius is only supported for two-color solving");
    report["mode"] = "omega";
    OmegaOptions options;
    options.solver = solver;
    options.full_class = flags.full_class;
    options.guess_budget = flags.omega_budget > 0 ? flags.omega_budget : guess_budget_from_env();
    const OmegaResult result = solve_omega(inst, options);
    sol = result.solution;
    report["branch"] = branch_name(result.branch);
    report["guess_radius"] = radius_to_json(result.guess);
    report["budget_hit"] = result.budget_hit;
    report["tuples_tried"] = result.tuples_tried;
  } else {
    report["mode"] = "approx";
    std::optional<SolveResult> result =
        pin ? solve_at(inst, *pin, solver) : std::optional<SolveResult>(solve_detailed(inst, solver));
    if (result) {
      sol = result->solution;
      report["branch"] = branch_name(result->branch);
      report["guess_radius"] = radius_to_json(result->guess);
    }
  }
  if (sol) {
    *sol = reverified(inst, *sol, budget);
    report["solution"] = solution_to_json(*sol);
  } else {
    report["solution"] = nullptr;
  }
  if (flags.compare_oracle) {
    const OracleResult opt = exact_opt(inst);
    report["oracle"] = oracle_to_json(opt);
    if (sol && opt.radius.squared() > 0) {
      const Rational ratio_squared = sol->radius.squared() / opt.radius.squared();
      report["ratio"] = Radius::from_squared(ratio_squared).to_string();
    } else if (sol) {
      report["ratio"] = sol->radius.squared() == 0 ? json("1") : json(nullptr);
    }
    if (sol) report["within_three"] = sol->radius.at_most_times(opt.radius, 3);
  }
  if (flags.trace) report["trace"] = trace_to_json(trace);
  if (flags.timing) {
    report["wall_ms"] = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  }
  out << report.dump(2) << "\n";
  if (sol) {
    err << "solve: " << sol->centers.size() << " centers at radius " << sol->radius.to_string()
        << (sol->feasible ? " (feasible)" : " (requirements not met)") << "\n";
  } else {
    err << "solve: no solution at the given radius\n";
  }
  return kExitOk;
}

int cmd_oracle(const std::string& path, std::ostream& out, std::ostream& err) {
  const Instance inst = load_checked(path, err);
  const OracleResult opt = exact_opt(inst);
  const Solution check = verify(inst, opt.centers, opt.radius);
  if (!check.feasible) throw ContractViolation("oracle centers fail verification");
  json report{{"command", "oracle"}, {"instance", digest(inst)}, {"oracle", oracle_to_json(opt)}};
  out << report.dump(2) << "\n";
  err << "oracle: optimal radius " << opt.radius.to_string() << "\n";
  return kExitOk;
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << doc.dump(2) << "\n";
    return;
  }
  std::ofstream file(path);
  if (!file) throw ParseError("cannot write " + path);
  file << doc.dump(2) << "\n";
}

int cmd_gen(const std::string& family, const GenFlags& flags, std::ostream& out,
            std::ostream& err) {
  if (family == "sos-gap") {
    const Instance inst = gen_sos_gap_instance(flags.n, parse_number(flags.far, "--M"));
    emit(instance_to_json(inst), flags.out, out);
    err << "gen: sos-gap instance with " << inst.size() << " points\n";
  } else if (family == "subset-sum") {
    const Instance inst = gen_subset_sum_instance(flags.values, flags.k);
    emit(instance_to_json(inst), flags.out, out);
    err << "gen: subset-sum instance with " << inst.size() << " points\n";
  } else {
    const FlowGapInstance gap = gen_flow_gap_instance(parse_number(flags.far, "--M"));
    const CertificateFile cert{Radius::from_value(Rational(1)), gap.items, gap.certificate};
    if (flags.out.empty() != flags.certificate_out.empty()) {
      throw ParseError("--out and --certificate-out go together for flow-gap");
    }
    if (flags.out.empty()) {
      out << json{{"instance", instance_to_json(gap.instance)},
                  {"certificate", certificate_to_json(cert)}}
                 .dump(2)
          << "\n";
    } else {
      emit(instance_to_json(gap.instance), flags.out, out);
      emit(certificate_to_json(cert), flags.certificate_out, out);
    }
    err << "gen: flow-gap instance with " << gap.instance.size() << " points\n";
  }
  return kExitOk;
}

int cmd_check_flow(const std::string& instance_path, const std::string& certificate_path,
                   std::ostream& out, std::ostream& err) {
  const Instance inst = load_checked(instance_path, err);
  const CertificateFile cert = certificate_from_json(read_json_file(certificate_path), inst.size());
  const FlowNetworkLP lp3 = build_flow_lp(inst, cert.items, cert.radius);
  const CertificateCheck check =
      check_certificate(lp3, certificate_assignment(lp3, cert.certificate));
  json report{{"command", "check-flow"},
              {"instance", digest(inst)},
              {"ok", check.ok},
              {"violated", check.violated},
              {"variables", lp3.lp.num_variables()},
              {"rows", lp3.lp.constraints().size()}};
  out << report.dump(2) << "\n";
  err << "check-flow: " << (check.ok ? "certificate holds" : "certificate fails");
  if (!check.ok) err << " at " << check.violated.front();
  err << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Colorful k-center: approximation, exact oracle and gap instances", "ckc"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Approximate a colorful k-center instance");
  solve_cmd->add_option("instance", solve.path, "Instance JSON file")->required();
  solve_cmd->add_flag("--pseudo", solve.pseudo, "Relaxation and rounding with one extra center");
  solve_cmd->add_flag("--compare-oracle", solve.compare_oracle, "Also run the exact oracle");
  solve_cmd->add_option("--radius", solve.radius, "Try only this radius (p/q or sqrt(p/q))");
  solve_cmd->add_flag("--trace", solve.trace, "Include search counters");
  solve_cmd->add_flag("--timing", solve.timing, "Include wall time");
  solve_cmd->add_option("--jobs", solve.jobs, "Worker threads")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--omega", solve.omega, "Use the any-number-of-classes pipeline");
  solve_cmd->add_option("--omega-guess-budget", solve.omega_budget,
                        "Guess tuples per radius with three or more classes")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--full-class", solve.full_class,
                        "Class covered in full by the rounding (default: last)");

  std::string oracle_path;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum by exhaustive search");
  oracle_cmd->add_option("instance", oracle_path, "Instance JSON file")->required();

  GenFlags gen;
  std::string family;
  auto* gen_cmd = app.add_subcommand("gen", "Generate gap and reduction instances");
  gen_cmd->require_subcommand(1);
  auto* sos = gen_cmd->add_subcommand("sos-gap", "Clusters with an unbounded relaxation gap");
  sos->add_option("--n", gen.n, "Odd number of cluster pairs")->required();
  sos->add_option("--M", gen.far, "Cluster separation (p/q)");
  sos->add_option("--out", gen.out, "Write the instance here instead of stdout");
  auto* subset = gen_cmd->add_subcommand("subset-sum", "Instance encoding a subset-sum question");
  subset->add_option("--values", gen.values, "Positive integers")->required()->delimiter(',');
  subset->add_option("--k", gen.k, "Subset size")->required();
  subset->add_option("--out", gen.out, "Write the instance here instead of stdout");
  auto* flow = gen_cmd->add_subcommand("flow-gap", "Overlapping balls with a flow certificate");
  flow->add_option("--M", gen.far, "Cluster separation (p/q)");
  flow->add_option("--out", gen.out, "Write the instance here");
  flow->add_option("--certificate-out", gen.certificate_out, "Write the certificate here");

  std::string flow_instance, flow_certificate;
  auto* check_cmd = app.add_subcommand("check-flow", "Check a flow certificate exactly");
  check_cmd->add_option("instance", flow_instance, "Instance JSON file")->required();
  check_cmd->add_option("certificate", flow_certificate, "Certificate JSON file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve, out, err);
    if (oracle_cmd->parsed()) return cmd_oracle(oracle_path, out, err);
    if (gen_cmd->parsed()) {
      family = sos->parsed() ? "sos-gap" : subset->parsed() ? "subset-sum" : "flow-gap";
      return cmd_gen(family, gen, out, err);
    }
    return cmd_check_flow(flow_instance, flow_certificate, out, err);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const TractabilityError& e) {
    err << "too large for exhaustive search: " << e.what() << "\n";
    return kExitTractability;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitContract;
  }
}

}  // namespace ckc
