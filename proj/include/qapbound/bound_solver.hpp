#pragma once

#include <string>
#include <vector>

#include "qapbound/ilap_updates.hpp"
#include "qapbound/wcsp_updates.hpp"

namespace qapbound {

enum class Method { bca, hung, hung_ri };

/// "bca", "hung", "hung-ri".
std::string method_name(Method m);
/// Inverse of method_name; throws std::invalid_argument on unknown names.
Method parse_method(const std::string& name);

struct SolverConfig {
  Method method = Method::hung_ri;
  double time_limit = 0.0;  // seconds, 0 = none
  int max_iterations = 0;   // 0 = none
  double bound_improvement_epsilon = 0.0;
  bool early_stop = true;
  double tau = kDefaultTau;
  bool backward_mplp_pass = false;
};

enum class StopReason { iterations, time_limit, converged };
std::string stop_reason_name(StopReason r);

struct BoundReport {
  std::string instance;
  Method method = Method::hung_ri;
  double initial_bound = 0.0;
  double final_bound = 0.0;
  std::vector<double> trajectory;  // bound after each iteration
  int iterations = 0;
  double wall_time = 0.0;  // seconds
  StopReason stop_reason = StopReason::iterations;
};

/// Sum over vertices of the smallest reduced unary, plus the sum of beta,
/// plus the smallest reparametrized pairwise cost of every edge (unstored
/// pairs included). A lower bound on the IQAP optimum for any phi and any
/// beta <= 0. Throws PreconditionError if some beta exceeds tol.
double dual_bound(const IqapDualState& state, double tol);
double dual_bound(const IqapDualState& state);

/// Alternates an edge pass and a beta step of the configured kind from
/// phi = 0, beta = 0. Stops at the iteration cap, the time limit, or (with
/// early_stop) when one iteration improves the bound by at most
/// epsilon + tolerance. Throws std::invalid_argument on a config with neither
/// a time limit nor an iteration cap, or a negative epsilon.
BoundReport compute_lower_bound(const IqapInstance& inst, const SolverConfig& config,
                                const std::string& instance_tag = {});

}  // namespace qapbound
