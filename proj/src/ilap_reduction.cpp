#include "qapbound/ilap_reduction.hpp"

#include <cmath>
#include <string>

#include "qapbound/relative_interior.hpp"

namespace qapbound {

ReducedLap reduce_ilap_to_lap(const IlapInstance& inst) {
  const auto& c = inst.costs();
  ReducedLap red;
  red.num_vertices = inst.num_vertices();
  red.num_real_labels = inst.num_real_labels();
  const Index size = red.num_vertices + red.num_real_labels;

  std::vector<std::vector<UnaryInput>> rows(size);
  for (Index v = 0; v < red.num_vertices; ++v) {
    auto& row = rows[v];
    row.reserve(c.row_size(v));
    for (std::size_t e = c.row_begin(v); e < c.row_end(v); ++e) {
      const Index l = c.entry_label(e);
      if (inst.is_dummy(l))
        row.push_back({v, c.entry_cost(e)});
      else
        row.push_back({red.label_node(l), c.entry_cost(e) / 2});
    }
  }
  for (Index l = 0; l < red.num_real_labels; ++l) {
    auto& row = rows[red.label_node(l)];
    for (std::size_t e : c.column(l)) row.push_back({c.entry_vertex(e), c.entry_cost(e) / 2});
    row.push_back({red.label_node(l), 0.0});
  }
  red.lap = LapInstance(size, std::move(rows));
  return red;
}

Assignment lift_assignment(const IlapInstance& inst, const Assignment& x) {
  if (auto viol = check_feasible(inst, x))
    throw FeasibilityError("cannot lift an infeasible assignment: " + viol->message());
  const Index nv = inst.num_vertices();
  const Index size = nv + inst.num_real_labels();
  Assignment lifted(size);
  for (Index i = 0; i < size; ++i) lifted[i] = i;
  for (Index v = 0; v < nv; ++v) {
    if (inst.is_dummy(x[v])) continue;
    lifted[v] = nv + x[v];
    lifted[nv + x[v]] = v;
  }
  return lifted;
}

namespace {

// Structural feasibility of an assignment of the reduced LAP, without
// materializing the reduced instance.
void check_reduced(const IlapInstance& inst, const Assignment& lifted) {
  const auto& c = inst.costs();
  const Index nv = inst.num_vertices();
  const Index size = nv + inst.num_real_labels();
  if (lifted.size() != static_cast<std::size_t>(size))
    throw FeasibilityError("reduced assignment has the wrong size");
  std::vector<char> used(size, 0);
  for (Index i = 0; i < size; ++i) {
    const Index j = lifted[i];
    if (j < 0 || j >= size || used[j])
      throw FeasibilityError("reduced assignment is not a bijection at node " + std::to_string(i));
    used[j] = 1;
    if (i == j) continue;
    const bool ok = i < nv ? (j >= nv && c.find(i, j - nv).has_value())
                           : (j < nv && c.find(j, i - nv).has_value());
    if (!ok) throw FeasibilityError("reduced assignment uses a disallowed pair at node " + std::to_string(i));
  }
}

}  // namespace

std::pair<Assignment, Assignment> decompose_assignment(const IlapInstance& inst, const Assignment& lifted) {
  check_reduced(inst, lifted);
  const Index nv = inst.num_vertices();
  Assignment inverse(lifted.size());
  for (std::size_t i = 0; i < lifted.size(); ++i) inverse[lifted[i]] = static_cast<Index>(i);
  Assignment first(nv), second(nv);
  for (Index v = 0; v < nv; ++v) {
    first[v] = lifted[v] >= nv ? lifted[v] - nv : inst.dummy();
    second[v] = inverse[v] >= nv ? inverse[v] - nv : inst.dummy();
  }
  return {first, second};
}

IlapDual map_dual(const IlapInstance& inst, const LapDual& reduced_dual, double tol) {
  const auto red = reduce_ilap_to_lap(inst);
  if (auto viol = dual_feasible(red.lap, reduced_dual, tol))
    throw PreconditionError("reduced dual is infeasible: " + viol->message());
  IlapDual dual;
  dual.alpha.resize(red.num_vertices);
  dual.beta.resize(red.num_real_labels);
  for (Index v = 0; v < red.num_vertices; ++v) dual.alpha[v] = reduced_dual.alpha[v] + reduced_dual.beta[v];
  for (Index l = 0; l < red.num_real_labels; ++l) {
    const Index node = red.label_node(l);
    dual.beta[l] = reduced_dual.alpha[node] + reduced_dual.beta[node];
  }
  return dual;
}

PrimalVector map_primal(const IlapInstance& inst, const PrimalVector& reduced_mu, double tol) {
  const auto red = reduce_ilap_to_lap(inst);
  const auto& rc = red.lap.costs();
  if (reduced_mu.value.size() != rc.num_entries())
    throw PreconditionError("reduced primal vector has the wrong size");
  const Index size = red.lap.size();
  std::vector<double> row(size, 0.0), col(size, 0.0);
  for (std::size_t e = 0; e < rc.num_entries(); ++e) {
    const double m = reduced_mu.value[e];
    if (m < -tol) throw PreconditionError("reduced primal vector has a negative entry");
    row[rc.entry_vertex(e)] += m;
    col[rc.entry_label(e)] += m;
  }
  for (Index i = 0; i < size; ++i)
    if (std::abs(row[i] - 1.0) > tol || std::abs(col[i] - 1.0) > tol)
      throw PreconditionError("reduced primal vector violates an assignment constraint at node " +
                              std::to_string(i));

  const auto& c = inst.costs();
  PrimalVector mu;
  mu.value.resize(c.num_entries());
  for (std::size_t e = 0; e < c.num_entries(); ++e) {
    const Index v = c.entry_vertex(e);
    const Index l = c.entry_label(e);
    if (inst.is_dummy(l)) {
      mu.value[e] = reduced_mu.value[*rc.find(v, v)];
    } else {
      const Index node = red.label_node(l);
      mu.value[e] = (reduced_mu.value[*rc.find(v, node)] + reduced_mu.value[*rc.find(node, v)]) / 2;
    }
  }
  return mu;
}

IlapSolution solve_ilap(const IlapInstance& inst, DualMode mode, double tau) {
  const bool exact = inst.costs().integral();
  const IlapInstance doubled = exact ? IlapInstance(inst.costs().scaled(2.0)) : IlapInstance{};
  const IlapInstance& work = exact ? doubled : inst;

  const auto red = reduce_ilap_to_lap(work);
  auto lap = solve_lap(red.lap);
  if (!lap) throw std::logic_error("reduced LAP has no perfect matching");
  const double tol = red.lap.tolerance(tau);
  LapDual reduced_dual = mode == DualMode::relative_interior
                             ? shift_to_relative_interior(red.lap, lap->dual, lap->assignment, tol)
                             : lap->dual;

  IlapSolution sol;
  sol.dual = map_dual(work, reduced_dual, tol);
  if (exact) {
    for (double& a : sol.dual.alpha) a /= 2;
    for (double& b : sol.dual.beta) b /= 2;
  }
  auto [first, second] = decompose_assignment(inst, lap->assignment);
  const double v1 = ilap_objective(inst, first);
  const double v2 = ilap_objective(inst, second);
  if (v2 < v1) {
    sol.assignment = std::move(second);
    sol.value = v2;
  } else {
    sol.assignment = std::move(first);
    sol.value = v1;
  }
  return sol;
}

}  // namespace qapbound
