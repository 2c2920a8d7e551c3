#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/error.hpp"

namespace rigidity {

using Vertex = int;

/// Unordered vertex pair, stored with `u < v`.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  auto operator<=>(const Edge&) const = default;

  bool touches(Vertex w) const { return u == w || v == w; }
  Vertex other(Vertex w) const { return w == u ? v : u; }
};

/// Ambient dimension of a framework.
class Dimension {
 public:
  static constexpr int kDefaultMax = 6;

  explicit Dimension(int d, int max_d = kDefaultMax) : d_(d) {
    if (d < 1 || d > max_d) {
      throw Error(ErrorKind::kInvalidArgument,
                  "dimension " + std::to_string(d) + " outside [1, " +
                      std::to_string(max_d) + "]");
    }
  }

  int value() const { return d_; }
  operator int() const { return d_; }

 private:
  int d_;
};

/// Finite simple graph on the dense vertex set [0, n).
///
/// The edge list is kept sorted; every query that enumerates edges or
/// neighbours does so in ascending order so downstream results do not depend
/// on input order.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n, std::vector<Edge> edges = {}) : n_(n) {
    if (n < 0) {
      throw Error(ErrorKind::kInvalidArgument, "negative vertex count");
    }
    for (const Edge& e : edges) {
      if (e.u == e.v) {
        throw Error(ErrorKind::kInvalidArgument,
                    "loop edge at vertex " + std::to_string(e.u));
      }
      if (e.u < 0 || e.v >= n) {
        throw Error(ErrorKind::kInvalidArgument,
                    "edge (" + std::to_string(e.u) + "," +
                        std::to_string(e.v) + ") out of range for n=" +
                        std::to_string(n));
      }
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "duplicate edge (" + std::to_string(dup->u) + "," +
                      std::to_string(dup->v) + ")");
    }
    edges_ = std::move(edges);
    adjacency_.assign(static_cast<std::size_t>(n), {});
    for (const Edge& e : edges_) {
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
  }

  static Graph complete(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    check_vertex(v);
    return adjacency_[v];
  }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  bool has_edge(Edge e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }
  bool has_edge(Vertex a, Vertex b) const { return a != b && has_edge(Edge(a, b)); }

  bool is_complete() const {
    return edge_count() == n_ * (n_ - 1) / 2;
  }

  /// Non-edges in sorted order.
  std::vector<Edge> non_edges() const {
    std::vector<Edge> out;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (!has_edge(i, j)) out.emplace_back(i, j);
    return out;
  }

  Graph with_edge(Edge e) const {
    std::vector<Edge> edges = edges_;
    edges.push_back(e);
    return Graph(n_, std::move(edges));
  }

  Graph without_edge(Edge e) const {
    std::vector<Edge> edges;
    edges.reserve(edges_.size());
    bool found = false;
    for (const Edge& f : edges_) {
      if (f == e) {
        found = true;
      } else {
        edges.push_back(f);
      }
    }
    if (!found) {
      throw Error(ErrorKind::kInvalidArgument,
                  "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                      ") not present");
    }
    return Graph(n_, std::move(edges));
  }

  /// Spanning subgraph on the same vertex set with the given edges.
  Graph spanning_subgraph(std::vector<Edge> edges) const {
    for (const Edge& e : edges) {
      if (!has_edge(e)) {
        throw Error(ErrorKind::kInvalidArgument, "subgraph edge not in graph");
      }
    }
    return Graph(n_, std::move(edges));
  }

  /// Subgraph induced on `vertices`, relabelled to [0, k) in the given order.
  Graph induced(std::span<const Vertex> vertices) const {
    std::map<Vertex, Vertex> index;
    for (Vertex v : vertices) {
      check_vertex(v);
      index.emplace(v, static_cast<Vertex>(index.size()));
    }
    std::vector<Edge> edges;
    for (const Edge& e : edges_) {
      auto a = index.find(e.u);
      auto b = index.find(e.v);
      if (a != index.end() && b != index.end()) edges.emplace_back(a->second, b->second);
    }
    return Graph(static_cast<int>(index.size()), std::move(edges));
  }

  /// Applies a vertex permutation: vertex v becomes perm[v].
  Graph relabeled(std::span<const Vertex> perm) const {
    std::vector<Edge> edges;
    edges.reserve(edges_.size());
    for (const Edge& e : edges_) edges.emplace_back(perm[e.u], perm[e.v]);
    return Graph(n_, std::move(edges));
  }

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) {
      throw Error(ErrorKind::kInvalidArgument,
                  "vertex " + std::to_string(v) + " out of range for n=" +
                      std::to_string(n_));
    }
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// N(u) ∩ N(v), ascending.
inline std::vector<Vertex> common_neighbors(const Graph& g, Vertex u, Vertex v) {
  g.check_vertex(u);
  g.check_vertex(v);
  if (u == v) {
    throw Error(ErrorKind::kInvalidArgument, "common_neighbors needs u != v");
  }
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

/// 64-bit FNV-1a over the canonical edge-list text; used to identify graphs
/// inside certificates.
inline std::uint64_t graph_hash(const Graph& g) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(g.vertex_count()));
  for (const Edge& e : g.edges()) {
    mix(static_cast<std::uint64_t>(e.u));
    mix(static_cast<std::uint64_t>(e.v));
  }
  return h;
}

/// Triangulated 2-sphere given by its face list.
class Triangulation {
 public:
  using Face = std::array<Vertex, 3>;

  Triangulation() = default;

  /// Validates: n >= 4, each edge in exactly two faces, every vertex link is a
  /// single cycle, and V - E + F = 2.
  Triangulation(int n, std::vector<Face> faces) : n_(n) {
    for (Face& f : faces) std::sort(f.begin(), f.end());
    std::sort(faces.begin(), faces.end());
    faces_ = std::move(faces);
    validate();
  }

  int vertex_count() const { return n_; }
  std::span<const Face> faces() const { return faces_; }

  bool operator==(const Triangulation&) const = default;

 private:
  void fail(const std::string& why) const {
    throw Error(ErrorKind::kInvalidTriangulation, why);
  }

  void validate() const {
    if (n_ < 4) fail("triangulation needs at least 4 vertices");
    if (std::adjacent_find(faces_.begin(), faces_.end()) != faces_.end()) {
      fail("duplicate face");
    }
    std::map<Edge, int> edge_faces;
    for (const Face& f : faces_) {
      if (f[0] < 0 || f[2] >= n_) fail("face vertex out of range");
      if (f[0] == f[1] || f[1] == f[2]) fail("degenerate face");
      ++edge_faces[Edge(f[0], f[1])];
      ++edge_faces[Edge(f[1], f[2])];
      ++edge_faces[Edge(f[0], f[2])];
    }
    for (const auto& [e, count] : edge_faces) {
      if (count != 2) {
        fail("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
             ") lies in " + std::to_string(count) + " faces");
      }
    }
    // Link of v: the edges {a,b} opposite v in faces containing v.
    for (Vertex v = 0; v < n_; ++v) {
      std::map<Vertex, std::vector<Vertex>> link;
      int link_edges = 0;
      for (const Face& f : faces_) {
        if (f[0] != v && f[1] != v && f[2] != v) continue;
        std::array<Vertex, 2> ab{};
        int k = 0;
        for (Vertex w : f)
          if (w != v) ab[k++] = w;
        link[ab[0]].push_back(ab[1]);
        link[ab[1]].push_back(ab[0]);
        ++link_edges;
      }
      if (link.empty()) fail("vertex " + std::to_string(v) + " in no face");
      for (const auto& [w, nb] : link) {
        if (nb.size() != 2) fail("link of vertex " + std::to_string(v) + " is not a cycle");
      }
      // Walk the cycle and make sure it covers the whole link.
      Vertex start = link.begin()->first;
      Vertex prev = -1;
      Vertex cur = start;
      int steps = 0;
      do {
        const auto& nb = link.at(cur);
        Vertex next = nb[0] != prev ? nb[0] : nb[1];
        prev = cur;
        cur = next;
        ++steps;
      } while (cur != start && steps <= link_edges);
      if (steps != static_cast<int>(link.size()) || link_edges != steps) {
        fail("link of vertex " + std::to_string(v) + " is not a single cycle");
      }
    }
    const int euler = n_ - static_cast<int>(edge_faces.size()) +
                      static_cast<int>(faces_.size());
    if (euler != 2) fail("Euler characteristic " + std::to_string(euler) + " != 2");
  }

  int n_ = 0;
  std::vector<Face> faces_;
};

/// 1-skeleton of a triangulated sphere.
inline Graph triangulation_graph(const Triangulation& t) {
  std::set<Edge> edges;
  for (const auto& f : t.faces()) {
    edges.emplace(f[0], f[1]);
    edges.emplace(f[1], f[2]);
    edges.emplace(f[0], f[2]);
  }
  return Graph(t.vertex_count(), std::vector<Edge>(edges.begin(), edges.end()));
}

}  // namespace rigidity
