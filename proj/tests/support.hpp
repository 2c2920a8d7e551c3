#pragma once

// Test-side oracles and generators. Nothing here calls into the code under
// test except for plain data types and file parsing.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rigidity/all.hpp"

namespace testing_support {

using boost::multiprecision::cpp_int;
using rigidity::Edge;
using rigidity::Graph;
using rigidity::Vertex;

inline std::string data_path(const std::string& name) { return std::string(RIGIDITY_DATA_DIR) + "/" + name; }

inline Graph load(const std::string& name) { return rigidity::read_graph_file(data_path(name)).graph; }

/// Engine settings for tests: single-threaded so timings are predictable.
inline rigidity::EngineConfig engine(std::uint64_t seed = rigidity::kDefaultSeed) {
  rigidity::EngineConfig c;
  c.seed = seed;
  c.threads = 1;
  return c;
}

/// Fraction-free Gaussian elimination over the integers.
inline int bareiss_rank(std::vector<std::vector<cpp_int>> m) {
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(m[0].size());
  cpp_int prev = 1;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int k = c + 1; k < cols; ++k) m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

inline std::vector<std::vector<cpp_int>> integer_rigidity_matrix(const Graph& g, int d,
                                                                 const std::vector<long long>& pts) {
  std::vector<std::vector<cpp_int>> m;
  for (const Edge& e : g.edges()) {
    std::vector<cpp_int> row(static_cast<std::size_t>(g.vertex_count()) * d, 0);
    for (int j = 0; j < d; ++j) {
      const long long diff = pts[e.u * d + j] - pts[e.v * d + j];
      row[e.u * d + j] = diff;
      row[e.v * d + j] = -diff;
    }
    m.push_back(std::move(row));
  }
  return m;
}

/// Every labelled graph on n vertices, by edge bitmask.
inline std::vector<Graph> all_labelled_graphs(int n) {
  std::vector<Edge> slots;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  std::vector<Graph> out;
  const std::uint64_t total = 1ULL << slots.size();
  out.reserve(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1U) edges.push_back(slots[i]);
    out.emplace_back(n, std::move(edges));
  }
  return out;
}

/// Minimally d-rigid graph grown from K_{d+1} by random 0- and 1-extensions
/// (hand-rolled, independent of the construction module).
inline Graph random_minimally_rigid(int n, int d, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (int u = 0; u <= d; ++u)
    for (int v = u + 1; v <= d; ++v) edges.emplace_back(u, v);
  for (int x = d + 1; x < n; ++x) {
    std::vector<Vertex> old(static_cast<std::size_t>(x));
    for (int v = 0; v < x; ++v) old[v] = v;
    std::shuffle(old.begin(), old.end(), rng);
    const bool one_ext = x > d + 1 && std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    if (!one_ext) {
      for (int k = 0; k < d; ++k) edges.emplace_back(old[k], x);
      continue;
    }
    const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng);
    const Edge removed = edges[pick];
    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(pick));
    std::vector<Vertex> nbrs{removed.u, removed.v};
    for (Vertex v : old) {
      if (static_cast<int>(nbrs.size()) == d + 1) break;
      if (v != removed.u && v != removed.v) nbrs.push_back(v);
    }
    for (Vertex v : nbrs) edges.emplace_back(v, x);
  }
  return Graph(n, std::move(edges));
}

/// Random graph with independent edge probability `p`.
inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

/// K_{1,...,1,t} with d singleton parts (vertices 0..d−1) and one part of size t.
inline Graph complete_multipartite(int d, int t) {
  std::vector<Edge> edges;
  for (int u = 0; u < d; ++u) {
    for (int v = u + 1; v < d; ++v) edges.emplace_back(u, v);
    for (int v = d; v < d + t; ++v) edges.emplace_back(u, v);
  }
  return Graph(d + t, std::move(edges));
}

}  // namespace testing_support
