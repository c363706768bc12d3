#include "qapbound/ilap_updates.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qapbound {

CoordinateBreakpoints coordinate_breakpoints(const IqapDualState& state, Index label) {
  const auto& u = state.instance().unary();
  if (label < 0 || label >= u.num_real_labels())
    throw std::invalid_argument("coordinate update needs a real label, got " + std::to_string(label));
  const auto& c = u.costs();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  double b1 = kInf, b2 = kInf;
  for (std::size_t entry : c.column(label)) {
    const Index v = c.entry_vertex(entry);
    double other = kInf;
    for (std::size_t f = c.row_begin(v); f < c.row_end(v); ++f)
      if (f != entry) other = std::min(other, state.reduced_unary(f));
    const double d = state.unary(entry) - other;
    if (d < b1) {
      b2 = b1;
      b1 = d;
    } else if (d < b2) {
      b2 = d;
    }
  }
  if (b1 == kInf) b1 = 0.0;
  if (b2 == kInf) b2 = 0.0;
  return {b1, b2};
}

void beta_coordinate_update(IqapDualState& state, Index label) {
  const auto [b1, b2] = coordinate_breakpoints(state, label);
  state.set_beta(label, (std::min(b1, 0.0) + std::min(b2, 0.0)) / 2);
}

void beta_bca_pass(IqapDualState& state) {
  const Index n = state.instance().unary().num_real_labels();
  for (Index l = 0; l < n; ++l) beta_coordinate_update(state, l);
}

IlapInstance unary_subproblem(const IqapDualState& state) {
  const auto& u = state.instance().unary();
  const auto& c = u.costs();
  std::vector<std::vector<UnaryInput>> rows(u.num_vertices());
  for (Index v = 0; v < u.num_vertices(); ++v) {
    rows[v].reserve(c.row_size(v));
    for (std::size_t e = c.row_begin(v); e < c.row_end(v); ++e)
      rows[v].push_back({c.entry_label(e), state.unary(e)});
  }
  return IlapInstance(SparseCosts(c.num_labels(), std::move(rows)));
}

void beta_exact_update(IqapDualState& state, bool relative_interior, double tau) {
  const auto sub = unary_subproblem(state);
  const auto sol =
      solve_ilap(sub, relative_interior ? DualMode::relative_interior : DualMode::optimal, tau);
  for (Index l = 0; l < sub.num_real_labels(); ++l) state.set_beta(l, std::min(sol.dual.beta[l], 0.0));
}

}  // namespace qapbound
