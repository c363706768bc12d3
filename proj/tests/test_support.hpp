#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "qapbound/instance.hpp"

namespace qapbound::gen {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}
inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// Degenerate 5x5 costs, rows a..e, columns A..E.
inline const std::vector<double> kDegenerate5 = {3, 3, 3, 7, 6,   //
                                              3, 3, 9, 9, 8,   //
                                              9, 10, 4, 7, 11,  //
                                              4, 4, 4, 8, 11,  //
                                              8, 9, 4, 7, 13};

inline LapInstance degenerate5() { return LapInstance::dense(5, kDegenerate5); }

/// Square instance with integer costs in [lo, hi]; a random permutation is
/// always allowed so a perfect matching exists, other pairs with
/// probability density.
inline LapInstance random_lap(Rng& rng, Index n, double density, int lo = 0, int hi = 9) {
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<UnaryInput>> rows(n);
  for (Index v = 0; v < n; ++v)
    for (Index l = 0; l < n; ++l)
      if (l == perm[v] || coin(rng, density)) rows[v].push_back({l, static_cast<double>(uniform_int(rng, lo, hi))});
  return LapInstance(n, std::move(rows));
}

struct IlapShape {
  Index max_vertices = 6;
  Index max_labels = 6;
  double density = 0.6;
  int lo = -5;
  int hi = 9;
  bool integral = true;
};

inline double draw_cost(Rng& rng, int lo, int hi, bool integral) {
  if (integral) return uniform_int(rng, lo, hi);
  return uniform_real(rng, lo, hi);
}

inline IlapInstance random_ilap(Rng& rng, const IlapShape& shape) {
  const Index nv = uniform_int(rng, 1, shape.max_vertices);
  const Index nl = uniform_int(rng, 0, shape.max_labels);
  std::vector<std::vector<UnaryInput>> rows(nv);
  std::vector<double> dummy(nv);
  for (Index v = 0; v < nv; ++v) {
    for (Index l = 0; l < nl; ++l)
      if (coin(rng, shape.density)) rows[v].push_back({l, draw_cost(rng, shape.lo, shape.hi, shape.integral)});
    dummy[v] = draw_cost(rng, shape.lo, shape.hi, shape.integral);
  }
  return IlapInstance(nl, std::move(rows), std::move(dummy));
}

struct IqapShape {
  Index max_vertices = 5;
  Index max_labels = 5;         // size of the real label pool
  Index max_labels_per_vertex = 4;
  Index max_edges = 6;
  double pair_density = 0.5;
  double lo = -5;
  double hi = 5;
  bool integral = true;
  bool dummy_pairs = true;  // allow pairwise costs involving the dummy
};

inline IqapInstance random_iqap(Rng& rng, const IqapShape& shape) {
  const Index n = uniform_int(rng, 1, shape.max_vertices);
  const Index nl = uniform_int(rng, 1, shape.max_labels);
  auto cost = [&] {
    return shape.integral ? static_cast<double>(uniform_int(rng, static_cast<int>(shape.lo), static_cast<int>(shape.hi)))
                          : uniform_real(rng, shape.lo, shape.hi);
  };
  std::vector<std::vector<UnaryInput>> rows(n);
  std::vector<double> dummy(n);
  for (Index v = 0; v < n; ++v) {
    std::vector<Index> labels(nl);
    std::iota(labels.begin(), labels.end(), 0);
    std::shuffle(labels.begin(), labels.end(), rng);
    const Index k = uniform_int(rng, 0, std::min(nl, shape.max_labels_per_vertex));
    for (Index i = 0; i < k; ++i) rows[v].push_back({labels[i], cost()});
    dummy[v] = cost();
  }
  IlapInstance unary(nl, rows, dummy);

  std::vector<std::pair<Index, Index>> candidates;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) candidates.emplace_back(u, v);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  const auto m = std::min<std::size_t>(candidates.size(), uniform_int(rng, 0, shape.max_edges));

  const auto& c = unary.costs();
  std::vector<PairwiseInput> pairwise;
  for (std::size_t i = 0; i < m; ++i) {
    const auto [u, v] = candidates[i];
    bool any = false;
    for (Index a : c.labels(u))
      for (Index b : c.labels(v)) {
        if (!shape.dummy_pairs && (unary.is_dummy(a) || unary.is_dummy(b))) continue;
        if (coin(rng, shape.pair_density)) {
          pairwise.push_back({u, a, v, b, cost()});
          any = true;
        }
      }
    const Index a = c.labels(u).front(), b = c.labels(v).front();
    if (!any && (shape.dummy_pairs || (!unary.is_dummy(a) && !unary.is_dummy(b))))
      pairwise.push_back({u, a, v, b, cost()});
  }
  return IqapInstance(std::move(unary), pairwise);
}

}  // namespace qapbound::gen
