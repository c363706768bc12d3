#pragma once

#include <span>
#include <vector>

#include "qapbound/instance.hpp"

namespace qapbound {

enum class EdgeSide { u, v };

/// Dual variables of the IQAP relaxation: one phi offset per (edge, endpoint,
/// allowed label of that endpoint) and one beta per real label. The
/// reparametrized unaries theta^phi are cached and kept in sync by set_phi.
///
/// Labels are addressed by their position in the endpoint's allowed list, so
/// phi(e, EdgeSide::u) has costs().row_size(edge(e).u) entries.
///
/// The state keeps a reference to the instance, which must outlive it.
class IqapDualState {
 public:
  explicit IqapDualState(const IqapInstance& inst);

  const IqapInstance& instance() const { return *inst_; }

  std::span<const double> phi(Index e, EdgeSide side) const;
  /// Sets one phi value and updates the cached unary of that endpoint.
  void set_phi(Index e, EdgeSide side, Index pos, double value);

  /// theta^phi_v at the given entry id of the unary SparseCosts.
  double unary(std::size_t entry) const { return unary_[entry]; }
  std::span<const double> unaries(Index v) const;
  /// theta^phi_v(l) - beta_l, with no beta term for the dummy label.
  double reduced_unary(std::size_t entry) const;

  std::span<const double> beta() const { return beta_; }
  double beta(Index label) const { return beta_[label]; }
  void set_beta(Index label, double value) { beta_.at(label) = value; }

  /// Recomputes the cached unaries from phi and returns the largest
  /// deviation from the previous cache.
  double refresh_unaries();

 private:
  std::size_t offset(Index e, EdgeSide side) const;

  const IqapInstance* inst_;
  std::vector<std::size_t> phi_begin_;  // two slots per edge
  std::vector<double> phi_;
  std::vector<double> unary_;
  std::vector<double> beta_;
};

/// theta_uv(k, l) - phi_{u->v}(k) - phi_{v->u}(l) with k, l positions in the
/// allowed lists of u and v. Throws std::out_of_range on bad indices.
double reparam_pairwise(const IqapDualState& state, Index e, Index k, Index l);

/// One edge handshake. With g(k, l) the sum of both reduced unaries and the
/// reparametrized pairwise cost, phi is changed so the reduced unary of u
/// becomes half the row minima of g and that of v half the column minima.
void mplp_pp_edge_update(IqapDualState& state, Index e);

/// One edge update per edge in ascending edge order, followed by a pass in
/// descending order when backward is set.
void mplp_pp_pass(IqapDualState& state, bool backward = false);

/// out[i] = min over j of (w[j] + t(i, j)) for i < num_rows, where t is the
/// pairwise table seen from the given side (rows indexed by that side's
/// labels, columns by the other side's) and unstored pairs count as 0.
void pairwise_min_plus(const PairwiseTerm& term, EdgeSide rows, Index num_rows,
                       std::span<const double> w, std::vector<double>& out);

}  // namespace qapbound
