#include "qapbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace qapbound::oracle {

namespace {

using Visit = std::function<void(double, const Assignment&)>;

// Depth-first enumeration of all assignments with non-free labels used at
// most once. Pairwise costs are added when the second endpoint is fixed.
void enumerate(const SparseCosts& c, Index free_label, const IqapInstance* pairwise, const Visit& visit) {
  if (search_space(c) > kSearchGuard)
    throw GuardExceeded("search space of " + std::to_string(search_space(c)) + " assignments exceeds the guard");
  const Index n = c.num_vertices();
  Assignment x(n, kNone);
  std::vector<Index> pos(n, kNone);
  std::vector<char> used(c.num_labels(), 0);

  std::function<void(Index, double)> rec = [&](Index v, double acc) {
    if (v == n) {
      visit(acc, x);
      return;
    }
    for (std::size_t e = c.row_begin(v); e < c.row_end(v); ++e) {
      const Index l = c.entry_label(e);
      if (l != free_label && used[l]) continue;
      double value = acc + c.entry_cost(e);
      pos[v] = static_cast<Index>(e - c.row_begin(v));
      if (pairwise) {
        for (Index id : pairwise->incident_edges(v)) {
          const auto& term = pairwise->edge(id);
          if (term.v == v) value += term.cost(pos[term.u], pos[v]);
        }
      }
      x[v] = l;
      if (l != free_label) used[l] = 1;
      rec(v + 1, value);
      if (l != free_label) used[l] = 0;
    }
    x[v] = kNone;
  };
  rec(0, 0.0);
}

BruteForceResult collect(const SparseCosts& c, Index free_label, const IqapInstance* pairwise, double tol) {
  double best = std::numeric_limits<double>::infinity();
  enumerate(c, free_label, pairwise, [&](double value, const Assignment&) { best = std::min(best, value); });
  if (best == std::numeric_limits<double>::infinity())
    throw FeasibilityError("instance has no feasible assignment");
  BruteForceResult out;
  out.value = best;
  enumerate(c, free_label, pairwise, [&](double value, const Assignment& x) {
    if (value <= best + tol) out.optima.push_back(x);
  });
  return out;
}

PairSet pairs_of(const std::vector<Assignment>& xs) {
  PairSet out;
  for (const auto& x : xs)
    for (std::size_t v = 0; v < x.size(); ++v) out.emplace(static_cast<Index>(v), x[v]);
  return out;
}

struct Sums {
  std::vector<double> row, col;
  double objective = 0.0;
};

Sums check_primal_shape(const SparseCosts& c, const PrimalVector& mu, double tol) {
  if (mu.value.size() != c.num_entries())
    throw PreconditionError("primal vector has " + std::to_string(mu.value.size()) + " entries, expected " +
                            std::to_string(c.num_entries()));
  Sums s;
  s.row.assign(c.num_vertices(), 0.0);
  s.col.assign(c.num_labels(), 0.0);
  for (std::size_t e = 0; e < c.num_entries(); ++e) {
    const double m = mu.value[e];
    if (m < -tol) throw PreconditionError("primal vector has a negative entry");
    s.row[c.entry_vertex(e)] += m;
    s.col[c.entry_label(e)] += m;
    s.objective += m * c.entry_cost(e);
  }
  for (Index v = 0; v < c.num_vertices(); ++v)
    if (std::abs(s.row[v] - 1.0) > tol)
      throw PreconditionError("primal row of vertex " + std::to_string(v) + " does not sum to 1");
  return s;
}

PairSet support(const SparseCosts& c, const PrimalVector& mu, double tol) {
  PairSet out;
  for (std::size_t e = 0; e < c.num_entries(); ++e)
    if (mu.value[e] > tol) out.emplace(c.entry_vertex(e), c.entry_label(e));
  return out;
}

}  // namespace

double search_space(const SparseCosts& costs) {
  double total = 1.0;
  for (Index v = 0; v < costs.num_vertices(); ++v) total *= costs.row_size(v);
  return total;
}

BruteForceResult brute_force_optimum(const LapInstance& inst, double tau) {
  return collect(inst.costs(), kNone, nullptr, inst.tolerance(tau));
}

BruteForceResult brute_force_optimum(const IlapInstance& inst, double tau) {
  return collect(inst.costs(), inst.dummy(), nullptr, inst.tolerance(tau));
}

BruteForceResult brute_force_optimum(const IqapInstance& inst, double tau) {
  return collect(inst.unary().costs(), inst.unary().dummy(), &inst, inst.tolerance(tau));
}

PairSet minimally_assignable_pairs(const LapInstance& inst, double tau) {
  return pairs_of(brute_force_optimum(inst, tau).optima);
}

PairSet minimally_assignable_pairs(const IlapInstance& inst, double tau) {
  return pairs_of(brute_force_optimum(inst, tau).optima);
}

PairSet active_pairs(const LapInstance& inst, const LapDual& dual, double tol) {
  const auto& c = inst.costs();
  PairSet out;
  for (std::size_t e = 0; e < c.num_entries(); ++e) {
    const Index v = c.entry_vertex(e);
    const Index l = c.entry_label(e);
    if (std::abs(c.entry_cost(e) - dual.alpha[v] - dual.beta[l]) <= tol) out.emplace(v, l);
  }
  return out;
}

PairSet active_pairs(const IlapInstance& inst, const IlapDual& dual, double tol) {
  const auto& c = inst.costs();
  PairSet out;
  for (std::size_t e = 0; e < c.num_entries(); ++e) {
    const Index v = c.entry_vertex(e);
    const Index l = c.entry_label(e);
    const double b = inst.is_dummy(l) ? 0.0 : dual.beta[l];
    if (std::abs(c.entry_cost(e) - dual.alpha[v] - b) <= tol) out.emplace(v, l);
  }
  return out;
}

bool check_dual_relative_interior(const LapInstance& inst, const LapDual& dual, double tau) {
  const double tol = inst.tolerance(tau);
  if (auto viol = dual_feasible(inst, dual, tol)) throw PreconditionError("infeasible dual: " + viol->message());
  return active_pairs(inst, dual, tol) == minimally_assignable_pairs(inst, tau);
}

bool check_dual_relative_interior(const IlapInstance& inst, const IlapDual& dual, double tau) {
  const double tol = inst.tolerance(tau);
  if (auto viol = dual_feasible(inst, dual, tol)) throw PreconditionError("infeasible dual: " + viol->message());
  const auto best = brute_force_optimum(inst, tau);
  if (active_pairs(inst, dual, tol) != pairs_of(best.optima)) return false;
  std::vector<char> sometimes_free(inst.num_real_labels(), 0);
  for (const auto& x : best.optima) {
    std::vector<char> used(inst.num_real_labels(), 0);
    for (Index l : x)
      if (!inst.is_dummy(l)) used[l] = 1;
    for (Index l = 0; l < inst.num_real_labels(); ++l)
      if (!used[l]) sometimes_free[l] = 1;
  }
  for (Index l = 0; l < inst.num_real_labels(); ++l)
    if ((dual.beta[l] >= -tol) != static_cast<bool>(sometimes_free[l])) return false;
  return true;
}

bool check_primal_relative_interior(const LapInstance& inst, const PrimalVector& mu, double tau) {
  const auto& c = inst.costs();
  const double tol = inst.tolerance(tau);
  const auto sums = check_primal_shape(c, mu, tol);
  for (Index l = 0; l < c.num_labels(); ++l)
    if (std::abs(sums.col[l] - 1.0) > tol)
      throw PreconditionError("primal column of label " + std::to_string(l) + " does not sum to 1");
  const auto best = brute_force_optimum(inst, tau);
  if (std::abs(sums.objective - best.value) > tol * (1 + inst.size())) return false;
  return support(c, mu, tol) == pairs_of(best.optima);
}

bool check_primal_relative_interior(const IlapInstance& inst, const PrimalVector& mu, double tau) {
  const auto& c = inst.costs();
  const double tol = inst.tolerance(tau);
  const auto sums = check_primal_shape(c, mu, tol);
  for (Index l = 0; l < inst.num_real_labels(); ++l)
    if (sums.col[l] > 1.0 + tol)
      throw PreconditionError("primal column of label " + std::to_string(l) + " exceeds 1");
  const auto best = brute_force_optimum(inst, tau);
  if (std::abs(sums.objective - best.value) > tol * (1 + inst.num_vertices())) return false;
  return support(c, mu, tol) == pairs_of(best.optima);
}

PrimalVector indicator(const SparseCosts& costs, const Assignment& x) {
  PrimalVector mu;
  mu.value.assign(costs.num_entries(), 0.0);
  for (std::size_t v = 0; v < x.size(); ++v) {
    auto e = costs.find(static_cast<Index>(v), x[v]);
    if (!e) throw FeasibilityError("assignment uses a disallowed pair at vertex " + std::to_string(v));
    mu.value[*e] = 1.0;
  }
  return mu;
}

PrimalVector uniform_mixture(const SparseCosts& costs, const std::vector<Assignment>& xs) {
  if (xs.empty()) throw std::invalid_argument("mixture of no assignments");
  PrimalVector mu;
  mu.value.assign(costs.num_entries(), 0.0);
  const double w = 1.0 / static_cast<double>(xs.size());
  for (const auto& x : xs) {
    const auto ind = indicator(costs, x);
    for (std::size_t e = 0; e < ind.value.size(); ++e) mu.value[e] += w * ind.value[e];
  }
  return mu;
}

}  // namespace qapbound::oracle
