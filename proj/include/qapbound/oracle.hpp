#pragma once

#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qapbound/instance.hpp"

// Exhaustive reference implementations for testing. Nothing here calls the
// solvers; only the instance types are shared.
namespace qapbound::oracle {

/// Largest number of candidate assignments (product of allowed-list sizes)
/// the oracle agrees to enumerate.
inline constexpr double kSearchGuard = 1e6;

class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BruteForceResult {
  double value = 0.0;
  std::vector<Assignment> optima;  // lexicographic order
};

/// Product of allowed-list sizes.
double search_space(const SparseCosts& costs);

/// Optimal value and every assignment within tau-scaled tolerance of it.
/// Throws GuardExceeded above kSearchGuard and FeasibilityError when the
/// LAP has no feasible assignment.
BruteForceResult brute_force_optimum(const LapInstance& inst, double tau = kDefaultTau);
BruteForceResult brute_force_optimum(const IlapInstance& inst, double tau = kDefaultTau);
BruteForceResult brute_force_optimum(const IqapInstance& inst, double tau = kDefaultTau);

using PairSet = std::set<std::pair<Index, Index>>;

/// (v, x_v) over all optimal x. For ILAP instances the dummy appears as its
/// label id.
PairSet minimally_assignable_pairs(const LapInstance& inst, double tau = kDefaultTau);
PairSet minimally_assignable_pairs(const IlapInstance& inst, double tau = kDefaultTau);

/// Pairs whose dual constraint is active within tol.
PairSet active_pairs(const LapInstance& inst, const LapDual& dual, double tol);
PairSet active_pairs(const IlapInstance& inst, const IlapDual& dual, double tol);

/// True iff the active set equals the minimally assignable set. For ILAP
/// duals this also requires beta_l to be zero exactly for the real labels
/// that some optimum leaves unused. Throws PreconditionError on an
/// infeasible dual.
bool check_dual_relative_interior(const LapInstance& inst, const LapDual& dual, double tau = kDefaultTau);
bool check_dual_relative_interior(const IlapInstance& inst, const IlapDual& dual, double tau = kDefaultTau);

/// True iff mu is optimal and its support equals the minimally assignable
/// set. Throws PreconditionError on an infeasible mu.
bool check_primal_relative_interior(const LapInstance& inst, const PrimalVector& mu, double tau = kDefaultTau);
bool check_primal_relative_interior(const IlapInstance& inst, const PrimalVector& mu, double tau = kDefaultTau);

/// Indicator vector of an assignment over the entries of costs.
PrimalVector indicator(const SparseCosts& costs, const Assignment& x);
/// Average of the indicator vectors.
PrimalVector uniform_mixture(const SparseCosts& costs, const std::vector<Assignment>& xs);

}  // namespace qapbound::oracle
