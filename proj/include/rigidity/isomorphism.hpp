#pragma once

#include <algorithm>
#include <vector>

#include "rigidity/graph.hpp"

namespace rigidity {

/// Canonical edge list: the lexicographically smallest sorted edge list over
/// all relabelings that order vertices by (degree, sorted neighbour degrees).
/// Brute force within invariant classes; intended for graphs with at most a
/// dozen or so vertices.
inline std::vector<Edge> canonical_edges(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> key(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    key[v].push_back(g.degree(v));
    std::vector<int> nd;
    for (Vertex w : g.neighbors(v)) nd.push_back(g.degree(w));
    std::sort(nd.begin(), nd.end());
    key[v].insert(key[v].end(), nd.begin(), nd.end());
  }
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return key[a] < key[b]; });
  // Class boundaries in `order`; permutations only shuffle within a class.
  std::vector<std::pair<int, int>> classes;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && key[order[j]] == key[order[i]]) ++j;
    classes.emplace_back(i, j);
    i = j;
  }

  std::vector<Edge> best;
  bool have_best = false;
  std::vector<Vertex> label(static_cast<std::size_t>(n));
  std::vector<Edge> cur;
  auto evaluate = [&] {
    for (int i = 0; i < n; ++i) label[order[i]] = i;
    cur.clear();
    for (const Edge& e : g.edges()) cur.emplace_back(label[e.u], label[e.v]);
    std::sort(cur.begin(), cur.end());
    if (!have_best || cur < best) {
      best = cur;
      have_best = true;
    }
  };
  // Odometer over the product of per-class permutations.
  for (auto& [a, b] : classes) std::sort(order.begin() + a, order.begin() + b);
  while (true) {
    evaluate();
    std::size_t c = 0;
    for (; c < classes.size(); ++c) {
      auto [a, b] = classes[c];
      if (std::next_permutation(order.begin() + a, order.begin() + b)) break;
    }
    if (c == classes.size()) break;
  }
  return best;
}

inline bool isomorphic(const Graph& a, const Graph& b) {
  return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() &&
         canonical_edges(a) == canonical_edges(b);
}

}  // namespace rigidity
