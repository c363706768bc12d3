#include "qapbound/cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <variant>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qapbound/batch.hpp"
#include "qapbound/bound_solver.hpp"
#include "qapbound/ilap_reduction.hpp"
#include "qapbound/io.hpp"
#include "qapbound/lap_solver.hpp"
#include "qapbound/oracle.hpp"
#include "qapbound/relative_interior.hpp"
#include "qapbound/results.hpp"

namespace qapbound {

namespace {

using nlohmann::json;

struct LoadOptions {
  std::string input;
  bool qaplib = false;
  bool augment = false;
  double dummy_cost = 0.0;
};

struct LoadedInstance {
  IqapInstance instance;
  double offset = 0.0;
};

LoadedInstance load_iqap(const LoadOptions& opt) {
  const auto text = read_file(opt.input);
  LoadedInstance out;
  if (opt.qaplib) {
    auto conv = convert_qaplib_to_iqap(parse_qaplib(text));
    out.instance = std::move(conv.instance);
    out.offset = conv.offset;
  } else {
    out.instance = parse_dd(text, opt.dummy_cost);
  }
  if (opt.augment) out.instance = augment_instance(out.instance);
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

json assignment_json(const Assignment& x, Index dummy) {
  json a = json::array();
  for (Index l : x) {
    if (l == dummy)
      a.push_back(nullptr);
    else
      a.push_back(l);
  }
  return a;
}

struct SolveOptions {
  LoadOptions load;
  std::string method = "hung-ri";
  double time_limit = 0.0;
  int max_iters = 0;
  double tolerance = kDefaultTau;
  double epsilon = 0.0;
  std::string output = "json";
  bool trajectory = false;
  bool no_early_stop = false;
  bool backward = false;
};

int cmd_solve(const SolveOptions& opt, std::ostream& out) {
  SolverConfig config;
  config.method = parse_method(opt.method);
  config.time_limit = opt.time_limit;
  config.max_iterations = opt.max_iters;
  if (config.time_limit <= 0 && config.max_iterations <= 0) config.max_iterations = 100;
  config.tau = opt.tolerance;
  config.bound_improvement_epsilon = opt.epsilon;
  config.early_stop = !opt.no_early_stop;
  config.backward_mplp_pass = opt.backward;

  const auto loaded = load_iqap(opt.load);
  const auto report = compute_lower_bound(loaded.instance, config, opt.load.input);
  if (opt.output == "csv")
    out << report_to_csv(report, opt.trajectory, loaded.offset);
  else
    out << report_to_json(report, opt.trajectory, loaded.offset);
  return kExitOk;
}

int cmd_lap(const std::string& input, bool no_ri, std::ostream& out, std::ostream& err) {
  const auto problem = parse_assignment_problem(read_file(input));
  json j;
  if (const auto* lap = std::get_if<LapInstance>(&problem)) {
    auto sol = solve_lap(*lap);
    if (!sol) {
      err << "error: the allowed pairs admit no perfect matching\n";
      return kExitInputError;
    }
    LapDual dual = sol->dual;
    if (!no_ri) dual = shift_to_relative_interior(*lap, dual, sol->assignment, lap->tolerance());
    j = {{"kind", "lap"},
         {"assignment", sol->assignment},
         {"value", sol->value},
         {"alpha", dual.alpha},
         {"beta", dual.beta},
         {"dual_objective", dual_objective(*lap, dual)},
         {"relative_interior", !no_ri}};
  } else {
    const auto& ilap = std::get<IlapInstance>(problem);
    const auto sol = solve_ilap(ilap, no_ri ? DualMode::optimal : DualMode::relative_interior);
    j = {{"kind", "ilap"},
         {"assignment", assignment_json(sol.assignment, ilap.dummy())},
         {"value", sol.value},
         {"alpha", sol.dual.alpha},
         {"beta", sol.dual.beta},
         {"dual_objective", dual_objective(ilap, sol.dual)},
         {"relative_interior", !no_ri}};
  }
  out << j.dump(2) << "\n";
  return kExitOk;
}

class Checks {
 public:
  explicit Checks(std::ostream& out) : out_(out) {}
  void check(bool ok, const std::string& what) {
    out_ << (ok ? "ok    " : "FAIL  ") << what << "\n";
    if (!ok) ++failures_;
  }
  int exit_code() const { return failures_ == 0 ? kExitOk : kExitInvariant; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

int verify_lap(const LapInstance& lap, std::ostream& out) {
  Checks checks(out);
  const auto best = oracle::brute_force_optimum(lap);
  const auto sol = solve_lap(lap);
  checks.check(sol.has_value(), "solver finds a perfect matching");
  if (!sol) return checks.exit_code();
  const double tol = lap.tolerance();
  checks.check(std::abs(sol->value - best.value) <= tol, "solver value equals the enumerated optimum");
  checks.check(std::abs(dual_objective(lap, sol->dual) - best.value) <= tol * (1 + lap.size()),
               "dual objective equals the optimum");
  const auto ri = shift_to_relative_interior(lap, sol->dual, sol->assignment, tol);
  checks.check(std::abs(dual_objective(lap, ri) - best.value) <= tol * (1 + lap.size()),
               "shift preserves the dual objective");
  checks.check(oracle::check_dual_relative_interior(lap, ri), "shifted dual is in the relative interior");
  return checks.exit_code();
}

int verify_ilap(const IlapInstance& ilap, std::ostream& out) {
  Checks checks(out);
  const auto best = oracle::brute_force_optimum(ilap);
  const double tol = ilap.tolerance();
  for (DualMode mode : {DualMode::optimal, DualMode::relative_interior}) {
    const auto sol = solve_ilap(ilap, mode);
    const std::string tag = mode == DualMode::optimal ? "optimal mode" : "relative-interior mode";
    checks.check(std::abs(sol.value - best.value) <= tol, tag + ": value equals the enumerated optimum");
    checks.check(!dual_feasible(ilap, sol.dual, tol).has_value(), tag + ": dual is feasible");
    checks.check(std::abs(dual_objective(ilap, sol.dual) - best.value) <= tol * (1 + ilap.num_vertices()),
                 tag + ": dual objective equals the optimum");
    if (mode == DualMode::relative_interior)
      checks.check(oracle::check_dual_relative_interior(ilap, sol.dual), tag + ": dual is in the relative interior");
  }
  return checks.exit_code();
}

int verify_iqap(const LoadedInstance& loaded, std::ostream& out) {
  const auto& inst = loaded.instance;
  Checks checks(out);
  const auto best = oracle::brute_force_optimum(inst);
  const double slack = 1e-8 * (1.0 + inst.max_abs_cost());
  out << "optimum " << format_double(best.value) << "\n";
  for (Method m : {Method::bca, Method::hung, Method::hung_ri}) {
    SolverConfig config;
    config.method = m;
    config.max_iterations = 20;
    config.early_stop = false;
    const auto report = compute_lower_bound(inst, config);
    bool monotone = report.trajectory.empty() || report.trajectory.front() >= report.initial_bound - slack;
    for (std::size_t i = 1; i < report.trajectory.size(); ++i)
      monotone = monotone && report.trajectory[i] >= report.trajectory[i - 1] - slack;
    checks.check(monotone, method_name(m) + ": bound trajectory is non-decreasing");
    checks.check(report.final_bound <= best.value + slack,
                 method_name(m) + ": bound " + format_double(report.final_bound) + " does not exceed the optimum");
  }
  return checks.exit_code();
}

int cmd_verify(const LoadOptions& opt, std::ostream& out) {
  try {
    if (!opt.qaplib && ends_with(opt.input, ".lap")) {
      const auto problem = parse_assignment_problem(read_file(opt.input));
      if (const auto* lap = std::get_if<LapInstance>(&problem)) return verify_lap(*lap, out);
      return verify_ilap(std::get<IlapInstance>(problem), out);
    }
    return verify_iqap(load_iqap(opt), out);
  } catch (const oracle::GuardExceeded& e) {
    out << "skipped: " << e.what() << "\n";
    return kExitOk;
  }
}

int cmd_batch(const std::string& manifest_path, int workers, const std::string& output, std::ostream& out) {
  const auto manifest = load_manifest(manifest_path);
  const auto table = run_batch(manifest, workers);
  if (output == "json")
    out << table.to_json();
  else if (output == "csv")
    out << table.to_csv();
  else
    out << table.to_text();
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower bounds for incomplete quadratic assignment problems", "qapbound"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a dual lower bound for an instance");
  solve_cmd->add_option("--method", solve.method, "bca, hung or hung-ri")
      ->check(CLI::IsMember({"bca", "hung", "hung-ri"}))
      ->capture_default_str();
  solve_cmd->add_option("--input", solve.load.input, "Instance file (.dd, or QAPLIB with --qaplib)")->required();
  solve_cmd->add_flag("--qaplib", solve.load.qaplib, "Read the input as QAPLIB data");
  solve_cmd->add_flag("--augment", solve.load.augment, "Penalize shared labels on every edge");
  solve_cmd->add_option("--time-limit", solve.time_limit, "Wall-clock limit in seconds")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--max-iters", solve.max_iters, "Iteration cap (100 when no limit is given)")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--tolerance", solve.tolerance, "Relative tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve_cmd->add_option("--epsilon", solve.epsilon, "Early-stop improvement threshold")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_flag("--no-early-stop", solve.no_early_stop, "Run until a limit is reached");
  solve_cmd->add_flag("--backward-pass", solve.backward, "Add a reverse edge pass each iteration");
  solve_cmd->add_option("--output", solve.output, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  solve_cmd->add_flag("--trajectory", solve.trajectory, "Include the per-iteration bounds");
  solve_cmd->add_option("--dummy-cost", solve.load.dummy_cost, "Cost of leaving a vertex unassigned (.dd input)");

  std::string lap_input;
  bool no_ri = false;
  auto* lap_cmd = app.add_subcommand("lap", "Solve a single LAP or ILAP");
  lap_cmd->add_option("--input", lap_input, "Problem file (p lap / p ilap format)")->required();
  lap_cmd->add_flag("--no-ri", no_ri, "Report the solver dual without the relative-interior shift");

  LoadOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check solvers against exhaustive enumeration");
  verify_cmd->add_option("--input", verify.input, "Instance file (.lap, .dd, or QAPLIB with --qaplib)")->required();
  verify_cmd->add_flag("--qaplib", verify.qaplib, "Read the input as QAPLIB data");
  verify_cmd->add_flag("--augment", verify.augment, "Penalize shared labels on every edge");
  verify_cmd->add_option("--dummy-cost", verify.dummy_cost, "Cost of leaving a vertex unassigned (.dd input)");

  std::string manifest;
  int workers = 0;
  std::string batch_output = "text";
  auto* batch_cmd = app.add_subcommand("batch", "Run every method on every instance of a manifest");
  batch_cmd->add_option("--manifest", manifest, "JSON manifest")->required();
  batch_cmd->add_option("--workers", workers, "Concurrent runs (default: manifest, then QAPBOUND_WORKERS)")
      ->check(CLI::NonNegativeNumber);
  batch_cmd->add_option("--output", batch_output, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, out);
    if (*lap_cmd) return cmd_lap(lap_input, no_ri, out, err);
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*batch_cmd) return cmd_batch(manifest, workers, batch_output, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitInputError;
}

}  // namespace qapbound
