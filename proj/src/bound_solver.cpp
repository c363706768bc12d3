#include "qapbound/bound_solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

namespace qapbound {

std::string method_name(Method m) {
  switch (m) {
    case Method::bca:
      return "bca";
    case Method::hung:
      return "hung";
    case Method::hung_ri:
      return "hung-ri";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "bca") return Method::bca;
  if (name == "hung") return Method::hung;
  if (name == "hung-ri") return Method::hung_ri;
  throw std::invalid_argument("unknown method '" + name + "'");
}

std::string stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::iterations:
      return "iterations";
    case StopReason::time_limit:
      return "time_limit";
    case StopReason::converged:
      return "converged";
  }
  return "unknown";
}

double dual_bound(const IqapDualState& state, double tol) {
  const auto& inst = state.instance();
  const auto& u = inst.unary();
  const auto& c = u.costs();

  double bound = 0.0;
  for (Index l = 0; l < u.num_real_labels(); ++l) {
    const double b = state.beta(l);
    if (b > tol)
      throw PreconditionError("beta of label " + std::to_string(l) + " is positive (" + std::to_string(b) + ")");
    bound += b;
  }
  for (Index v = 0; v < u.num_vertices(); ++v) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t e = c.row_begin(v); e < c.row_end(v); ++e) m = std::min(m, state.reduced_unary(e));
    bound += m;
  }
  std::vector<double> neg_u, neg_v, rows;
  for (Index e = 0; e < inst.num_edges(); ++e) {
    const auto pu = state.phi(e, EdgeSide::u);
    const auto pv = state.phi(e, EdgeSide::v);
    neg_u.resize(pu.size());
    neg_v.resize(pv.size());
    for (std::size_t k = 0; k < pu.size(); ++k) neg_u[k] = -pu[k];
    for (std::size_t l = 0; l < pv.size(); ++l) neg_v[l] = -pv[l];
    pairwise_min_plus(inst.edge(e), EdgeSide::u, static_cast<Index>(pu.size()), neg_v, rows);
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pu.size(); ++k) m = std::min(m, neg_u[k] + rows[k]);
    bound += m;
  }
  return bound;
}

double dual_bound(const IqapDualState& state) {
  return dual_bound(state, state.instance().tolerance());
}

BoundReport compute_lower_bound(const IqapInstance& inst, const SolverConfig& config,
                                const std::string& instance_tag) {
  if (config.time_limit <= 0 && config.max_iterations <= 0)
    throw std::invalid_argument("a time limit or an iteration cap is required");
  if (config.bound_improvement_epsilon < 0) throw std::invalid_argument("epsilon must be nonnegative");
  if (config.time_limit < 0 || config.max_iterations < 0)
    throw std::invalid_argument("limits must be nonnegative");

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  const double tol = inst.tolerance(config.tau);
  IqapDualState state(inst);
  BoundReport report;
  report.instance = instance_tag;
  report.method = config.method;
  report.initial_bound = dual_bound(state, tol);

  double previous = report.initial_bound;
  report.stop_reason = StopReason::iterations;
  while (true) {
    if (config.max_iterations > 0 && report.iterations >= config.max_iterations) {
      report.stop_reason = StopReason::iterations;
      break;
    }
    if (config.time_limit > 0 && elapsed() >= config.time_limit) {
      report.stop_reason = StopReason::time_limit;
      break;
    }
    mplp_pp_pass(state, config.backward_mplp_pass);
    switch (config.method) {
      case Method::bca:
        beta_bca_pass(state);
        break;
      case Method::hung:
        beta_exact_update(state, false, config.tau);
        break;
      case Method::hung_ri:
        beta_exact_update(state, true, config.tau);
        break;
    }
    state.refresh_unaries();
    const double bound = dual_bound(state, tol);
    report.trajectory.push_back(bound);
    ++report.iterations;
    if (config.early_stop && bound - previous <= config.bound_improvement_epsilon + tol) {
      report.stop_reason = StopReason::converged;
      break;
    }
    previous = bound;
  }
  report.final_bound = report.trajectory.empty() ? report.initial_bound : report.trajectory.back();
  report.wall_time = elapsed();
  return report;
}

}  // namespace qapbound
