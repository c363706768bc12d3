#pragma once

#include <utility>

#include "qapbound/instance.hpp"
#include "qapbound/lap_solver.hpp"

namespace qapbound {

/// LAP instance built from an ILAP. Its vertex set and label set are both
/// the ILAP vertices followed by the ILAP real labels:
///   node i <  num_vertices  -> ILAP vertex i
///   node i >= num_vertices  -> ILAP real label i - num_vertices
///
/// A vertex node may take its real labels (cost theta/2) or itself
/// (cost theta(#)); a label node may take the vertices allowing it (cost
/// theta/2) or itself (cost 0).
struct ReducedLap {
  LapInstance lap;
  Index num_vertices = 0;
  Index num_real_labels = 0;

  bool is_vertex(Index node) const { return node < num_vertices; }
  Index label_node(Index label) const { return num_vertices + label; }
  Index node_label(Index node) const { return node - num_vertices; }
};

ReducedLap reduce_ilap_to_lap(const IlapInstance& inst);

/// Involutive LAP assignment with the same cost as x. Throws
/// FeasibilityError if x is infeasible.
Assignment lift_assignment(const IlapInstance& inst, const Assignment& x);

/// Splits a reduced-LAP assignment into the ILAP assignment read off the
/// vertex rows and the one read off the label rows (through the inverse).
/// Twice the reduced cost equals the sum of both ILAP costs.
std::pair<Assignment, Assignment> decompose_assignment(const IlapInstance& inst, const Assignment& lifted);

/// alpha_v = alpha'_v + beta'_v, beta_l = alpha'_l + beta'_l. Feasibility,
/// optimality and relative-interior membership carry over. Throws
/// PreconditionError when dual' is infeasible for the reduced LAP beyond tol.
IlapDual map_dual(const IlapInstance& inst, const LapDual& reduced_dual, double tol);

/// mu_v(l) = (mu'_v(l) + mu'_l(v)) / 2 for real l, mu_v(#) = mu'_v(v).
/// Throws PreconditionError when mu' violates the reduced LAP's constraints
/// beyond tol.
PrimalVector map_primal(const IlapInstance& inst, const PrimalVector& reduced_mu, double tol);

enum class DualMode { optimal, relative_interior };

struct IlapSolution {
  Assignment assignment;
  IlapDual dual;
  double value = 0.0;
};

/// Exact ILAP solve through the reduction. The assignment is the cheaper of
/// the two decomposed assignments (the vertex-row one on ties). With
/// DualMode::relative_interior the reduced dual is shifted before mapping.
/// Integral instances are doubled before reduction so the LAP stays integral.
IlapSolution solve_ilap(const IlapInstance& inst, DualMode mode, double tau = kDefaultTau);

}  // namespace qapbound
