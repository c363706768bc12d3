// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include "qapbound/batch.hpp"
#include "qapbound/bound_solver.hpp"
#include "qapbound/cli.hpp"
#include "qapbound/ilap_reduction.hpp"
#include "qapbound/ilap_updates.hpp"
#include "qapbound/io.hpp"
#include "qapbound/lap_solver.hpp"
#include "qapbound/oracle.hpp"
#include "qapbound/relative_interior.hpp"
#include "qapbound/results.hpp"
#include "test_support.hpp"

using namespace qapbound;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

oracle::PairSet active_lap(const LapInstance& inst, const LapDual& dual) {
  return oracle::active_pairs(inst, dual, inst.tolerance());
}

Outcome degenerate5_golden() {
  Outcome o;
  const auto inst = gen::degenerate5();
  const LapDual initial{{2, 2, 3, 3, 3}, {1, 1, 1, 4, 4}};
  const Assignment x{4, 0, 3, 1, 2};
  ShiftTrace trace;
  const auto t0 = Clock::now();
  const auto out = shift_to_relative_interior(inst, initial, x, inst.tolerance(), &trace);
  const double elapsed = seconds_since(t0);
  if (out.alpha != std::vector<double>{2, 3, 5, 4, 5}) o.fail("alpha differs");
  if (out.beta != std::vector<double>{0, 0, -1, 2, 4}) o.fail("beta differs");
  if (trace.steps.size() != 2 || trace.steps[0].delta != 4.0 || trace.steps[1].delta != 2.0)
    o.fail("step deltas differ from 4, 2");
  if (dual_objective(inst, out) != 24.0 || dual_objective(inst, initial) != 24.0) o.fail("objective not 24");
  if (elapsed >= 1e-3) o.fail("took " + std::to_string(elapsed) + " s");
  if (o.pass) o.detail = "alpha=(2,3,5,4,5) beta=(0,0,-1,2,4) deltas 4,2 objective 24";
  return o;
}

Outcome lap_characterization() {
  Outcome o;
  gen::Rng rng(1001);
  const auto t0 = Clock::now();
  int done = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = gen::uniform_int(rng, 2, 7);
    const auto inst = gen::random_lap(rng, n, gen::uniform_real(rng, 0.2, 1.0));
    const auto sol = solve_lap(inst);
    const double tol = inst.tolerance();
    const auto ri = shift_to_relative_interior(inst, sol->dual, sol->assignment, tol);
    const auto active = active_lap(inst, ri);
    if (active != oracle::minimally_assignable_pairs(inst)) o.fail("active set mismatch, trial " + std::to_string(trial));
    if (dual_objective(inst, ri) != dual_objective(inst, sol->dual))
      o.fail("objective changed, trial " + std::to_string(trial));
    if (active_lap(inst, shift_to_relative_interior(inst, ri, sol->assignment, tol)) != active)
      o.fail("second shift changed the active set, trial " + std::to_string(trial));
    ++done;
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 60) o.fail("took " + std::to_string(elapsed) + " s");
  if (o.pass) o.detail = std::to_string(done) + " instances in " + std::to_string(elapsed) + " s";
  return o;
}

Outcome reduction_suite() {
  Outcome o;
  gen::Rng rng(1002);
  for (int trial = 0; trial < 1000 && o.pass; ++trial) {
    const auto inst = gen::random_ilap(rng, {});
    const auto red = reduce_ilap_to_lap(inst);
    const double best = oracle::brute_force_optimum(inst).value;
    const auto sol = solve_lap(red.lap);
    const auto ilap = solve_ilap(inst, DualMode::optimal);
    if (!sol || sol->value != best || ilap.value != best)
      o.fail("value mismatch, trial " + std::to_string(trial));
    const auto& c = red.lap.costs();
    for (int k = 0; k < 100; ++k) {
      // Random feasible reduced assignment: optimum of random costs on the same pattern.
      std::vector<std::vector<UnaryInput>> rows(red.lap.size());
      for (Index i = 0; i < red.lap.size(); ++i)
        for (std::size_t e = c.row_begin(i); e < c.row_end(i); ++e)
          rows[i].push_back({c.entry_label(e), static_cast<double>(gen::uniform_int(rng, 0, 50))});
      const auto xr = solve_lap(LapInstance(red.lap.size(), rows))->assignment;
      const auto [x1, x2] = decompose_assignment(inst, xr);
      if (2 * lap_objective(red.lap, xr) != ilap_objective(inst, x1) + ilap_objective(inst, x2))
        o.fail("decomposition identity, trial " + std::to_string(trial));
    }
    const double tol = red.lap.tolerance();
    const auto ri = shift_to_relative_interior(red.lap, sol->dual, sol->assignment, tol);
    if (!oracle::check_dual_relative_interior(inst, map_dual(inst, ri, tol)))
      o.fail("mapped dual not in the relative interior, trial " + std::to_string(trial));
  }
  if (o.pass) o.detail = "1000 instances, 100 decompositions each";
  return o;
}

Outcome primal_suite() {
  Outcome o;
  gen::Rng rng(1003);
  gen::IlapShape shape;
  shape.max_vertices = 4;
  shape.max_labels = 4;
  int done = 0;
  while (done < 200 && o.pass) {
    const auto inst = gen::random_ilap(rng, shape);
    const auto red = reduce_ilap_to_lap(inst);
    if (oracle::search_space(red.lap.costs()) > oracle::kSearchGuard) continue;
    const auto optima = oracle::brute_force_optimum(red.lap).optima;
    const auto mixture = oracle::uniform_mixture(red.lap.costs(), optima);
    const auto& c = red.lap.costs();
    for (std::size_t e = 0; e < c.num_entries(); ++e) {
      const auto mirror = c.find(c.entry_label(e), c.entry_vertex(e));
      const bool here = mixture.value[e] > 0;
      const bool there = mirror && mixture.value[*mirror] > 0;
      if (here != there) o.fail("support not symmetric, instance " + std::to_string(done));
    }
    const auto mu = map_primal(inst, mixture, red.lap.tolerance());
    if (!oracle::check_primal_relative_interior(inst, mu)) o.fail("mapped mixture rejected, instance " + std::to_string(done));
    ++done;
  }
  if (o.pass) o.detail = std::to_string(done) + " instances";
  return o;
}

std::vector<IqapInstance> iqap_corpus() {
  gen::Rng rng(1005);
  std::vector<IqapInstance> out;
  for (int i = 0; i < 500; ++i) {
    gen::IqapShape shape;
    shape.integral = i % 2 == 0;
    out.push_back(gen::random_iqap(rng, shape));
  }
  return out;
}

Outcome bound_soundness(const std::vector<IqapInstance>& corpus) {
  Outcome o;
  const auto t0 = Clock::now();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& inst = corpus[i];
    const double slack = 1e-8 * (1 + inst.max_abs_cost());
    const double best = oracle::brute_force_optimum(inst).value;
    for (Method m : {Method::bca, Method::hung, Method::hung_ri}) {
      SolverConfig config;
      config.method = m;
      config.max_iterations = 20;
      config.early_stop = false;
      const auto r = compute_lower_bound(inst, config);
      const std::string tag = method_name(m) + " instance " + std::to_string(i);
      if (r.trajectory.size() != 20) o.fail(tag + ": wrong trajectory length");
      double prev = r.initial_bound;
      for (double b : r.trajectory) {
        if (b < prev - slack) o.fail(tag + ": bound decreased");
        prev = b;
      }
      if (r.final_bound > best + slack) o.fail(tag + ": bound above the optimum");
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 300) o.fail("took " + std::to_string(elapsed) + " s");
  if (o.pass) o.detail = "500 instances x 3 methods x 20 iterations in " + std::to_string(elapsed) + " s";
  return o;
}

Outcome exact_dominance(const std::vector<IqapInstance>& corpus) {
  Outcome o;
  int pairs = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& inst = corpus[i];
    const double slack = 1e-8 * (1 + inst.max_abs_cost());
    IqapDualState state(inst);
    for (int it = 0; it < 5; ++it) {
      mplp_pp_pass(state);
      for (bool ri : {false, true}) {
        IqapDualState bca = state, exact = state;
        beta_bca_pass(bca);
        beta_exact_update(exact, ri);
        ++pairs;
        if (dual_bound(exact) < dual_bound(bca) - slack) o.fail("instance " + std::to_string(i));
      }
      beta_bca_pass(state);
    }
  }
  if (o.pass) o.detail = std::to_string(pairs) + " paired snapshots";
  return o;
}

Outcome augmentation(const std::vector<IqapInstance>& corpus) {
  Outcome o;
  int checked = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& inst = corpus[i];
    const double a = oracle::brute_force_optimum(inst).value;
    const double b = oracle::brute_force_optimum(augment_instance(inst)).value;
    const bool ok = inst.integral() ? a == b : std::abs(a - b) <= inst.tolerance();
    if (!ok) o.fail("instance " + std::to_string(i));
    ++checked;
  }
  if (o.pass) o.detail = std::to_string(checked) + " instances";
  return o;
}

Outcome batch_harness() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto manifest = load_manifest(QAPBOUND_FIXTURES "/synthetic.json");
  if (manifest.instances.size() != 5) o.fail("manifest does not list 5 instances");
  if (effective_time_limit(manifest, manifest.instances[0]) != 2 || effective_time_limit(manifest, manifest.instances[3]) != 3 ||
      effective_time_limit(manifest, manifest.instances[4]) != 1)
    o.fail("group time limits not applied");
  const auto table = run_batch(manifest);
  const auto& rows = table.rows();
  if (rows.size() != 15) o.fail("expected 15 rows");
  for (std::size_t i = 0; i + 2 < rows.size(); i += 3) {
    double max = rows[i].final_bound;
    for (std::size_t k = i; k < i + 3; ++k) max = std::max(max, rows[k].final_bound);
    for (std::size_t k = i; k < i + 3; ++k) {
      const double b = rows[k].final_bound;
      const bool best = max < 0 ? b >= (1 + 1e-10) * max : b >= max - 1e-10 * max;
      if (rows[k].best != best) o.fail("best flag on row " + std::to_string(k));
    }
  }
  const auto summary = table.summary();
  if (summary.size() != 2 || summary[0].instances != 3 || summary[1].instances != 2) o.fail("group summary");
  const auto text = table.to_text();
  if (text.find("#best") == std::string::npos || text.find("avg") == std::string::npos) o.fail("table layout");
  const double elapsed = seconds_since(t0);
  if (elapsed >= 60) o.fail("took " + std::to_string(elapsed) + " s");
  if (o.pass) o.detail = "5 instances x 3 methods in " + std::to_string(elapsed) + " s";
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::regex wall(R"("wall_time": [^\n]*)");
  for (const char* name : {"toy.dd", "toy2.dd", "toy3.dd"}) {
    const std::vector<std::string> args = {"solve", "--method", "hung-ri", "--input",
                                           std::string(QAPBOUND_FIXTURES) + "/" + name, "--max-iters", "25",
                                           "--trajectory"};
    std::string first;
    for (int rep = 0; rep < 10; ++rep) {
      std::ostringstream out, err;
      if (run_cli(args, out, err) != kExitOk) o.fail(std::string(name) + ": " + err.str());
      const auto stripped = std::regex_replace(out.str(), wall, "");
      if (rep == 0)
        first = stripped;
      else if (stripped != first)
        o.fail(std::string(name) + ": output differs on repetition " + std::to_string(rep));
    }
  }
  if (o.pass) o.detail = "3 fixtures x 10 repetitions";
  return o;
}

}  // namespace

int main() {
  const auto corpus = iqap_corpus();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"degenerate 5x5 golden shift", degenerate5_golden},
      {"relative-interior characterization", lap_characterization},
      {"ILAP reduction", reduction_suite},
      {"primal relative interior", primal_suite},
      {"bound soundness and monotonicity", [&] { return bound_soundness(corpus); }},
      {"exact beta dominance", [&] { return exact_dominance(corpus); }},
      {"augmentation preserves optimum", [&] { return augmentation(corpus); }},
      {"batch harness", batch_harness},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " (" << o.detail
              << ")" << std::endl;
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
