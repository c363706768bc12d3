#include "qapbound/relative_interior.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace qapbound {

namespace {

std::vector<Index> owners_of(const EqualitySubgraph& g, const Assignment& x) {
  const Index n = g.num_vertices();
  if (x.size() != static_cast<std::size_t>(n) || g.num_labels != n)
    throw PreconditionError("assignment is not a perfect matching of the subgraph");
  std::vector<Index> owner(n, kNone);
  for (Index v = 0; v < n; ++v) {
    const Index l = x[v];
    if (l < 0 || l >= n || owner[l] != kNone || !g.contains(v, l))
      throw PreconditionError("assignment is not a perfect matching inside the equality subgraph (vertex " +
                              std::to_string(v) + ")");
    owner[l] = v;
  }
  return owner;
}

struct Components {
  std::vector<Index> id;  // topological numbering
  Index count = 0;
};

// Iterative Tarjan over the implicit exchange digraph. Tarjan emits sink
// components first, so emission index k maps to topological id count-1-k.
Components strongly_connected(const EqualitySubgraph& g, const Assignment& x,
                              const std::vector<Index>& owner) {
  const Index n = g.num_vertices();
  std::vector<Index> index(n, kNone), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<Index> emitted(n, kNone);
  Index next_index = 0, emitted_count = 0;

  struct Frame {
    Index v;
    std::size_t cursor;
  };
  std::vector<Frame> call;

  for (Index root = 0; root < n; ++root) {
    if (index[root] != kNone) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const Index v = f.v;
      const auto& adj = g.adjacent[v];
      bool descended = false;
      while (f.cursor < adj.size()) {
        const Index l = adj[f.cursor++];
        if (l == x[v]) continue;
        const Index w = owner[l];
        if (index[w] == kNone) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          emitted[w] = emitted_count;
        } while (w != v);
        ++emitted_count;
      }
      call.pop_back();
      if (!call.empty()) {
        const Index parent = call.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }

  Components comps;
  comps.count = emitted_count;
  comps.id.resize(n);
  for (Index v = 0; v < n; ++v) comps.id[v] = emitted_count - 1 - emitted[v];
  return comps;
}

std::vector<char> incoming_flags(const EqualitySubgraph& g, const Assignment& x,
                                 const std::vector<Index>& owner, const Components& comps) {
  std::vector<char> incoming(comps.count, 0);
  for (Index u = 0; u < g.num_vertices(); ++u)
    for (Index l : g.adjacent[u]) {
      if (l == x[u]) continue;
      const Index w = owner[l];
      if (comps.id[w] != comps.id[u]) incoming[comps.id[w]] = 1;
    }
  return incoming;
}

}  // namespace

ExchangeDigraph build_exchange_digraph(const EqualitySubgraph& subgraph, const Assignment& x) {
  const auto owner = owners_of(subgraph, x);
  const auto comps = strongly_connected(subgraph, x, owner);
  ExchangeDigraph d;
  for (Index u = 0; u < subgraph.num_vertices(); ++u)
    for (Index l : subgraph.adjacent[u])
      if (l != x[u]) d.edges.emplace_back(u, owner[l]);
  d.component = comps.id;
  d.members.resize(comps.count);
  for (Index v = 0; v < subgraph.num_vertices(); ++v) d.members[comps.id[v]].push_back(v);
  d.has_incoming = incoming_flags(subgraph, x, owner, comps);
  return d;
}

EqualitySubgraph perfectly_matchable_edges(const EqualitySubgraph& subgraph, const Assignment& x) {
  const auto owner = owners_of(subgraph, x);
  const auto comps = strongly_connected(subgraph, x, owner);
  EqualitySubgraph out;
  out.num_labels = subgraph.num_labels;
  out.adjacent.resize(subgraph.num_vertices());
  for (Index v = 0; v < subgraph.num_vertices(); ++v)
    for (Index l : subgraph.adjacent[v])
      if (l == x[v] || comps.id[owner[l]] == comps.id[v]) out.adjacent[v].push_back(l);
  return out;
}

LapDual shift_to_relative_interior(const LapInstance& inst, const LapDual& dual,
                                   const Assignment& x, double tol, ShiftTrace* trace) {
  const auto subgraph = equality_subgraph(inst, dual, tol);
  const auto owner = owners_of(subgraph, x);
  const auto comps = strongly_connected(subgraph, x, owner);
  const auto incoming = incoming_flags(subgraph, x, owner, comps);
  const auto& c = inst.costs();
  const Index n = inst.size();

  // Vertices grouped by component so each component is visited once.
  std::vector<Index> begin(comps.count + 1, 0), order(n);
  for (Index v = 0; v < n; ++v) ++begin[comps.id[v] + 1];
  for (Index k = 0; k < comps.count; ++k) begin[k + 1] += begin[k];
  {
    std::vector<Index> fill(begin.begin(), begin.end() - 1);
    for (Index v = 0; v < n; ++v) order[fill[comps.id[v]]++] = v;
  }

  LapDual out = dual;
  // Below 3 tol a half step would leave removed edges inside the activity band.
  const double min_delta = 3.0 * tol;
  std::size_t work = 0;
  for (Index k = comps.count - 1; k >= 0; --k) {
    if (!incoming[k]) continue;
    double delta = std::numeric_limits<double>::infinity();
    for (Index i = begin[k]; i < begin[k + 1]; ++i) {
      const Index v = order[i];
      for (std::size_t e = c.row_begin(v); e < c.row_end(v); ++e) {
        ++work;
        const Index l = c.entry_label(e);
        if (comps.id[owner[l]] == k) continue;
        delta = std::min(delta, c.entry_cost(e) - out.alpha[v] - out.beta[l]);
      }
    }
    if (delta == std::numeric_limits<double>::infinity()) delta = 1.0;
    delta = std::max(delta, min_delta);
    for (Index i = begin[k]; i < begin[k + 1]; ++i) {
      const Index v = order[i];
      out.alpha[v] += delta / 2;
      out.beta[x[v]] -= delta / 2;
    }
    if (trace) {
      ShiftStep step;
      step.vertices.assign(order.begin() + begin[k], order.begin() + begin[k + 1]);
      step.delta = delta;
      trace->steps.push_back(std::move(step));
    }
  }
  if (trace) trace->work += work + c.num_entries();
  return out;
}

}  // namespace qapbound
