#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qapbound/instance.hpp"
#include "qapbound/lap_solver.hpp"

namespace qapbound {

/// Directed graph on vertices with an edge u -> v whenever u != v and
/// {u, x_v} is in the equality subgraph (u may take over the label of v),
/// together with its strongly connected components.
///
/// Components are numbered in a topological order of the condensation:
/// every edge between different components goes from a lower to a higher id.
struct ExchangeDigraph {
  std::vector<std::pair<Index, Index>> edges;
  std::vector<Index> component;           // per vertex
  std::vector<std::vector<Index>> members;  // per component, ascending vertices
  std::vector<char> has_incoming;         // per component, edge from another component

  Index num_components() const { return static_cast<Index>(members.size()); }
};

/// Throws PreconditionError unless x is a perfect matching inside subgraph.
ExchangeDigraph build_exchange_digraph(const EqualitySubgraph& subgraph, const Assignment& x);

/// Edges of the subgraph that belong to at least one perfect matching.
EqualitySubgraph perfectly_matchable_edges(const EqualitySubgraph& subgraph, const Assignment& x);

struct ShiftStep {
  std::vector<Index> vertices;  // the component that was shifted
  double delta = 0.0;
};

/// Optional record of a shift: the processed components in processing order
/// and a count of visited cost entries.
struct ShiftTrace {
  std::vector<ShiftStep> steps;
  std::size_t work = 0;
};

/// Moves an optimal LAP dual into the relative interior of the dual optimal
/// set without changing its objective, in time linear in the number of
/// allowed pairs.
///
/// Components of the exchange digraph are visited from the last to the first
/// in topological order. A component with incoming edges raises the alpha of
/// its vertices and lowers the beta of their matched labels by delta / 2,
/// where delta is the smallest current slack from the component to labels
/// matched outside it (1 if there is none). Edges entering the component's
/// labels from outside become strict; nothing else changes.
///
/// `dual` must be optimal and `x` an optimal assignment; a pair that does not
/// satisfy complementary slackness within tol raises PreconditionError.
LapDual shift_to_relative_interior(const LapInstance& inst, const LapDual& dual,
                                   const Assignment& x, double tol, ShiftTrace* trace = nullptr);

}  // namespace qapbound
