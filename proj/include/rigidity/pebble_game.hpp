#pragma once

#include <vector>

#include "rigidity/graph.hpp"

namespace rigidity {

/// (k, l)-pebble game for 0 ≤ l < 2k. Returns the number of edges accepted
/// as independent; the graph is (k, l)-rigid when that count reaches
/// k·n − l.
class PebbleGame {
 public:
  PebbleGame(int n, int k, int l)
      : k_(k), l_(l), pebbles_(static_cast<std::size_t>(n), k), out_(static_cast<std::size_t>(n)) {}

  /// Tries to accept edge uv; returns whether it was independent.
  bool add_edge(Vertex u, Vertex v) {
    // Gather l + 1 pebbles on {u, v}.
    while (pebbles_[u] + pebbles_[v] < l_ + 1) {
      if (pebbles_[u] < k_ && collect(u, v)) continue;
      if (pebbles_[v] < k_ && collect(v, u)) continue;
      return false;
    }
    // Cover the edge with a pebble from u (or v) and direct it outwards.
    if (pebbles_[u] > 0) {
      --pebbles_[u];
      out_[u].push_back(v);
    } else {
      --pebbles_[v];
      out_[v].push_back(u);
    }
    ++accepted_;
    return true;
  }

  int accepted() const { return accepted_; }

 private:
  /// Searches along directed edges from `start` (never entering `blocked`) for
  /// a vertex holding a free pebble and reverses that path.
  bool collect(Vertex start, Vertex blocked) {
    const int n = static_cast<int>(pebbles_.size());
    std::vector<int> parent(static_cast<std::size_t>(n), -2);
    std::vector<Vertex> stack{start};
    parent[start] = -1;
    parent[blocked] = -1;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : out_[x]) {
        if (parent[y] != -2) continue;
        parent[y] = x;
        if (pebbles_[y] > 0) {
          // Reverse the path start -> ... -> y.
          --pebbles_[y];
          ++pebbles_[start];
          Vertex cur = y;
          while (cur != start) {
            Vertex prev = parent[cur];
            reverse_edge(prev, cur);
            cur = prev;
          }
          return true;
        }
        stack.push_back(y);
      }
    }
    return false;
  }

  void reverse_edge(Vertex from, Vertex to) {
    auto& list = out_[from];
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i] == to) {
        list[i] = list.back();
        list.pop_back();
        break;
      }
    }
    out_[to].push_back(from);
  }

  int k_;
  int l_;
  int accepted_ = 0;
  std::vector<int> pebbles_;
  std::vector<std::vector<Vertex>> out_;
};

/// Number of edges of a maximal (k, l)-sparse subgraph found by the pebble game.
inline int pebble_game_rank(const Graph& g, int k, int l) {
  PebbleGame game(g.vertex_count(), k, l);
  for (const Edge& e : g.edges()) game.add_edge(e.u, e.v);
  return game.accepted();
}

/// (k, l)-rigidity; for (2, 3) this is generic 2-rigidity (Laman).
inline bool pebble_game_rigid(const Graph& g, int k, int l) {
  const int n = g.vertex_count();
  if (n <= 1) return true;
  if (n == 2) return g.edge_count() == 1;
  return pebble_game_rank(g, k, l) == k * n - l;
}

}  // namespace rigidity
