#include "qapbound/lap_solver.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

namespace qapbound {

namespace {

template <class T>
std::optional<LapSolution> solve_sap(const LapInstance& inst, const std::vector<T>& cost) {
  const auto& c = inst.costs();
  const Index n = inst.size();

  std::vector<T> alpha(n), beta(n, T{0});
  for (Index v = 0; v < n; ++v) {
    T m = cost[c.row_begin(v)];
    for (std::size_t e = c.row_begin(v); e < c.row_end(v); ++e) m = std::min(m, cost[e]);
    alpha[v] = m;
  }

  std::vector<Index> owner(n, kNone);  // label -> vertex
  std::vector<Index> match(n, kNone);  // vertex -> label
  std::vector<T> dist(n);
  std::vector<Index> pred(n, kNone);
  std::vector<Index> seen(n, kNone);  // stamp: source vertex of the last search touching the label
  std::vector<char> done(n, 0);
  std::vector<Index> finalized;
  finalized.reserve(n);

  using Item = std::pair<T, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;

  auto relax = [&](Index v, T base, Index src) {
    for (std::size_t e = c.row_begin(v); e < c.row_end(v); ++e) {
      const Index l = c.entry_label(e);
      if (seen[l] == src && done[l]) continue;
      T reduced = cost[e] - alpha[v] - beta[l];
      if constexpr (!std::is_integral_v<T>) reduced = std::max(reduced, T{0});
      const T d = base + reduced;
      if (seen[l] != src || d < dist[l]) {
        if (seen[l] != src) done[l] = 0;
        seen[l] = src;
        dist[l] = d;
        pred[l] = v;
        heap.push({d, l});
      }
    }
  };

  for (Index src = 0; src < n; ++src) {
    heap = {};
    finalized.clear();
    relax(src, T{0}, src);
    Index terminal = kNone;
    T total{};
    while (!heap.empty()) {
      const auto [d, l] = heap.top();
      heap.pop();
      if (done[l] || d > dist[l]) continue;
      done[l] = 1;
      finalized.push_back(l);
      if (owner[l] == kNone) {
        terminal = l;
        total = d;
        break;
      }
      relax(owner[l], d, src);
    }
    if (terminal == kNone) return std::nullopt;

    for (Index l : finalized) {
      const T shift = total - dist[l];
      beta[l] -= shift;
      if (owner[l] != kNone) alpha[owner[l]] += shift;
    }
    alpha[src] += total;

    for (Index l = terminal;;) {
      const Index v = pred[l];
      const Index prev = match[v];
      owner[l] = v;
      match[v] = l;
      if (v == src) break;
      l = prev;
    }
  }

  LapSolution sol;
  sol.assignment = match;
  sol.dual.alpha.assign(alpha.begin(), alpha.end());
  sol.dual.beta.assign(beta.begin(), beta.end());
  T value{0};
  for (Index v = 0; v < n; ++v) value += cost[*c.find(v, match[v])];
  sol.value = static_cast<double>(value);
  return sol;
}

}  // namespace

std::optional<LapSolution> solve_lap(const LapInstance& inst) {
  const auto& c = inst.costs();
  if (c.integral()) {
    std::vector<std::int64_t> cost(c.num_entries());
    for (std::size_t e = 0; e < cost.size(); ++e) cost[e] = static_cast<std::int64_t>(c.entry_cost(e));
    return solve_sap(inst, cost);
  }
  std::vector<double> cost(c.num_entries());
  for (std::size_t e = 0; e < cost.size(); ++e) cost[e] = c.entry_cost(e);
  return solve_sap(inst, cost);
}

std::size_t EqualitySubgraph::num_edges() const {
  std::size_t m = 0;
  for (const auto& a : adjacent) m += a.size();
  return m;
}

bool EqualitySubgraph::contains(Index v, Index l) const {
  const auto& a = adjacent[v];
  return std::binary_search(a.begin(), a.end(), l);
}

EqualitySubgraph equality_subgraph(const LapInstance& inst, const LapDual& dual, double tol) {
  if (auto viol = dual_feasible(inst, dual, tol))
    throw PreconditionError("equality subgraph of an infeasible dual: " + viol->message());
  const auto& c = inst.costs();
  EqualitySubgraph g;
  g.num_labels = c.num_labels();
  g.adjacent.resize(c.num_vertices());
  for (std::size_t e = 0; e < c.num_entries(); ++e)
    if (slack(inst, dual, e) <= tol) g.adjacent[c.entry_vertex(e)].push_back(c.entry_label(e));
  return g;
}

std::optional<Assignment> find_perfect_matching(const EqualitySubgraph& graph) {
  const Index n = graph.num_vertices();
  if (graph.num_labels != n) return std::nullopt;
  constexpr Index kInf = std::numeric_limits<Index>::max();
  std::vector<Index> match(n, kNone), owner(n, kNone), layer(n);
  std::vector<std::size_t> cursor(n);

  auto bfs = [&] {
    std::queue<Index> q;
    bool found = false;
    for (Index v = 0; v < n; ++v) {
      if (match[v] == kNone) {
        layer[v] = 0;
        q.push(v);
      } else {
        layer[v] = kInf;
      }
    }
    while (!q.empty()) {
      const Index v = q.front();
      q.pop();
      for (Index l : graph.adjacent[v]) {
        const Index w = owner[l];
        if (w == kNone) {
          found = true;
        } else if (layer[w] == kInf) {
          layer[w] = layer[v] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  // Iterative DFS along the BFS layering.
  auto augment = [&](Index root) {
    std::vector<Index> stack{root};
    while (!stack.empty()) {
      const Index v = stack.back();
      bool advanced = false;
      while (cursor[v] < graph.adjacent[v].size()) {
        const Index l = graph.adjacent[v][cursor[v]];
        const Index w = owner[l];
        if (w == kNone) {
          // Flip the path recorded on the stack.
          Index label = l;
          for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            const Index u = *it;
            const Index prev = match[u];
            match[u] = label;
            owner[label] = u;
            label = prev;
          }
          return true;
        }
        if (layer[w] == layer[v] + 1) {
          stack.push_back(w);
          advanced = true;
          break;
        }
        ++cursor[v];
      }
      if (!advanced) {
        layer[v] = kInf;
        stack.pop_back();
        if (!stack.empty()) ++cursor[stack.back()];
      }
    }
    return false;
  };

  Index matched = 0;
  while (bfs()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    for (Index v = 0; v < n; ++v)
      if (match[v] == kNone && augment(v)) ++matched;
  }
  if (matched != n) return std::nullopt;
  return match;
}

}  // namespace qapbound
