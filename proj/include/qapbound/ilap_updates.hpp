#pragma once

#include "qapbound/ilap_reduction.hpp"
#include "qapbound/wcsp_updates.hpp"

namespace qapbound {

/// The two smallest values of theta^phi_v(l) - Phi_v(l) over the vertices
/// allowing label l, where Phi_v(l) is the smallest reduced unary of v over
/// its other labels. A single vertex gives b2 = 0, no vertex gives b1 = b2 = 0,
/// and a minimum attained twice gives b1 = b2.
struct CoordinateBreakpoints {
  double b1 = 0.0;
  double b2 = 0.0;
};

/// Throws std::invalid_argument for the dummy label.
CoordinateBreakpoints coordinate_breakpoints(const IqapDualState& state, Index label);

/// Sets beta_l to the midpoint of its optimal interval,
/// (min(b1, 0) + min(b2, 0)) / 2.
void beta_coordinate_update(IqapDualState& state, Index label);

/// One coordinate update per real label, ascending.
void beta_bca_pass(IqapDualState& state);

/// ILAP over the current reparametrized unaries.
IlapInstance unary_subproblem(const IqapDualState& state);

/// Solves the unary subproblem exactly and installs its beta (clamped to
/// beta <= 0). With relative_interior the dual is taken from the relative
/// interior of the optimal set.
void beta_exact_update(IqapDualState& state, bool relative_interior, double tau = kDefaultTau);

}  // namespace qapbound
