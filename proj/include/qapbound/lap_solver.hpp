#pragma once

#include <optional>
#include <vector>

#include "qapbound/instance.hpp"

namespace qapbound {

struct LapSolution {
  Assignment assignment;
  LapDual dual;
  double value = 0.0;
};

/// Exact sparse LAP solver (shortest augmenting paths with vertex and label
/// potentials). Returns an optimal assignment and an optimal dual satisfying
/// complementary slackness, or nullopt when the allowed-pair graph has no
/// perfect matching. Integral instances are solved in int64 arithmetic.
///
/// Potentials start at alpha_v = min_l theta_v(l), beta = 0. Vertices are
/// augmented in index order; ties in the shortest-path search go to the
/// lowest label index, so results are deterministic.
std::optional<LapSolution> solve_lap(const LapInstance& inst);

/// Bipartite subgraph of active dual constraints, per-vertex sorted labels.
struct EqualitySubgraph {
  Index num_labels = 0;
  std::vector<std::vector<Index>> adjacent;

  Index num_vertices() const { return static_cast<Index>(adjacent.size()); }
  std::size_t num_edges() const;
  bool contains(Index v, Index l) const;
  bool operator==(const EqualitySubgraph&) const = default;
};

/// Pairs with |theta_v(l) - alpha_v - beta_l| <= tol. Throws
/// PreconditionError if the dual is infeasible beyond tol.
EqualitySubgraph equality_subgraph(const LapInstance& inst, const LapDual& dual, double tol);

/// A perfect matching of the subgraph (Hopcroft-Karp), if one exists.
std::optional<Assignment> find_perfect_matching(const EqualitySubgraph& graph);

}  // namespace qapbound
