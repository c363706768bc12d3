#include "qapbound/wcsp_updates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qapbound {

IqapDualState::IqapDualState(const IqapInstance& inst) : inst_(&inst) {
  const auto& c = inst.unary().costs();
  phi_begin_.reserve(2 * static_cast<std::size_t>(inst.num_edges()) + 1);
  phi_begin_.push_back(0);
  for (const auto& term : inst.edges()) {
    phi_begin_.push_back(phi_begin_.back() + c.row_size(term.u));
    phi_begin_.push_back(phi_begin_.back() + c.row_size(term.v));
  }
  phi_.assign(phi_begin_.back(), 0.0);
  unary_.resize(c.num_entries());
  for (std::size_t e = 0; e < c.num_entries(); ++e) unary_[e] = c.entry_cost(e);
  beta_.assign(inst.unary().num_real_labels(), 0.0);
}

std::size_t IqapDualState::offset(Index e, EdgeSide side) const {
  if (e < 0 || e >= inst_->num_edges()) throw std::out_of_range("edge index " + std::to_string(e));
  return phi_begin_[2 * static_cast<std::size_t>(e) + (side == EdgeSide::v ? 1 : 0)];
}

std::span<const double> IqapDualState::phi(Index e, EdgeSide side) const {
  const std::size_t begin = offset(e, side);
  const std::size_t end = phi_begin_[2 * static_cast<std::size_t>(e) + (side == EdgeSide::v ? 2 : 1)];
  return {phi_.data() + begin, end - begin};
}

void IqapDualState::set_phi(Index e, EdgeSide side, Index pos, double value) {
  const auto& term = inst_->edge(e);
  const Index w = side == EdgeSide::u ? term.u : term.v;
  const auto& c = inst_->unary().costs();
  if (pos < 0 || pos >= c.row_size(w)) throw std::out_of_range("label position " + std::to_string(pos));
  double& slot = phi_[offset(e, side) + pos];
  unary_[c.row_begin(w) + pos] += value - slot;
  slot = value;
}

std::span<const double> IqapDualState::unaries(Index v) const {
  const auto& c = inst_->unary().costs();
  return {unary_.data() + c.row_begin(v), static_cast<std::size_t>(c.row_size(v))};
}

double IqapDualState::reduced_unary(std::size_t entry) const {
  const auto& u = inst_->unary();
  const Index l = u.costs().entry_label(entry);
  return u.is_dummy(l) ? unary_[entry] : unary_[entry] - beta_[l];
}

double IqapDualState::refresh_unaries() {
  const auto& c = inst_->unary().costs();
  std::vector<double> fresh(c.num_entries());
  for (std::size_t e = 0; e < fresh.size(); ++e) fresh[e] = c.entry_cost(e);
  for (Index e = 0; e < inst_->num_edges(); ++e) {
    const auto& term = inst_->edge(e);
    for (EdgeSide side : {EdgeSide::u, EdgeSide::v}) {
      const Index w = side == EdgeSide::u ? term.u : term.v;
      const auto p = phi(e, side);
      for (std::size_t i = 0; i < p.size(); ++i) fresh[c.row_begin(w) + i] += p[i];
    }
  }
  double drift = 0.0;
  for (std::size_t e = 0; e < fresh.size(); ++e) drift = std::max(drift, std::abs(fresh[e] - unary_[e]));
  unary_ = std::move(fresh);
  return drift;
}

double reparam_pairwise(const IqapDualState& state, Index e, Index k, Index l) {
  const auto& inst = state.instance();
  if (e < 0 || e >= inst.num_edges()) throw std::out_of_range("edge index " + std::to_string(e));
  const auto pu = state.phi(e, EdgeSide::u);
  const auto pv = state.phi(e, EdgeSide::v);
  if (k < 0 || static_cast<std::size_t>(k) >= pu.size() || l < 0 || static_cast<std::size_t>(l) >= pv.size())
    throw std::out_of_range("label position out of range on edge " + std::to_string(e));
  return inst.edge(e).cost(k, l) - pu[k] - pv[l];
}

void pairwise_min_plus(const PairwiseTerm& term, EdgeSide rows, Index num_rows,
                       std::span<const double> w, std::vector<double>& out) {
  const auto num_cols = static_cast<Index>(w.size());
  std::vector<Index> order(num_cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return w[a] < w[b]; });

  constexpr double kInf = std::numeric_limits<double>::infinity();
  out.assign(num_rows, kInf);
  std::vector<Index> mark(num_cols, kNone);

  const bool by_k = rows == EdgeSide::u;
  const std::size_t n = term.entries.size();
  std::size_t p = 0;
  for (Index i = 0; i < num_rows; ++i) {
    double best = kInf;
    Index stored = 0;
    for (; p < n; ++p) {
      const auto& entry = term.entries[by_k ? p : term.by_column[p]];
      const Index r = by_k ? entry.k : entry.l;
      if (r != i) break;
      const Index j = by_k ? entry.l : entry.k;
      best = std::min(best, w[j] + entry.cost);
      mark[j] = i;
      ++stored;
    }
    if (stored < num_cols) {
      for (Index j : order)
        if (mark[j] != i) {
          best = std::min(best, w[j]);
          break;
        }
    }
    out[i] = best;
  }
}

void mplp_pp_edge_update(IqapDualState& state, Index e) {
  const auto& inst = state.instance();
  if (e < 0 || e >= inst.num_edges()) throw std::out_of_range("edge index " + std::to_string(e));
  const auto& c = inst.unary().costs();
  const auto& term = inst.edge(e);
  const Index nu = c.row_size(term.u);
  const Index nv = c.row_size(term.v);

  // Reduced unaries with this edge's own offsets removed.
  std::vector<double> a(nu), b(nv);
  {
    const auto pu = state.phi(e, EdgeSide::u);
    const auto pv = state.phi(e, EdgeSide::v);
    for (Index k = 0; k < nu; ++k) a[k] = state.reduced_unary(c.row_begin(term.u) + k) - pu[k];
    for (Index l = 0; l < nv; ++l) b[l] = state.reduced_unary(c.row_begin(term.v) + l) - pv[l];
  }
  std::vector<double> mu, mv;
  pairwise_min_plus(term, EdgeSide::u, nu, b, mu);
  pairwise_min_plus(term, EdgeSide::v, nv, a, mv);
  for (Index k = 0; k < nu; ++k) state.set_phi(e, EdgeSide::u, k, (mu[k] - a[k]) / 2);
  for (Index l = 0; l < nv; ++l) state.set_phi(e, EdgeSide::v, l, (mv[l] - b[l]) / 2);
}

void mplp_pp_pass(IqapDualState& state, bool backward) {
  const Index m = state.instance().num_edges();
  for (Index e = 0; e < m; ++e) mplp_pp_edge_update(state, e);
  if (backward)
    for (Index e = m - 1; e >= 0; --e) mplp_pp_edge_update(state, e);
}

}  // namespace qapbound
