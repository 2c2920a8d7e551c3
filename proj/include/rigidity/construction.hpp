#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rigidity/error.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/graph_io.hpp"
#include "rigidity/rigidity.hpp"

namespace rigidity {

enum class StepKind {
  kZeroExtension,
  kOneExtension,
  kVertexSplit,
  kSpiderSplit,
  kXReplacement,
  kVReplacement,
  kSubgraphSubstitution,
  kEdgeContraction,
};

inline std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::kZeroExtension: return "zero_extension";
    case StepKind::kOneExtension: return "one_extension";
    case StepKind::kVertexSplit: return "vertex_split";
    case StepKind::kSpiderSplit: return "spider_split";
    case StepKind::kXReplacement: return "x_replacement";
    case StepKind::kVReplacement: return "v_replacement";
    case StepKind::kSubgraphSubstitution: return "subgraph_substitution";
    case StepKind::kEdgeContraction: return "edge_contraction";
  }
  return "unknown";
}

inline StepKind step_kind_from_string(const std::string& s) {
  for (auto k : {StepKind::kZeroExtension, StepKind::kOneExtension, StepKind::kVertexSplit,
                 StepKind::kSpiderSplit, StepKind::kXReplacement, StepKind::kVReplacement,
                 StepKind::kSubgraphSubstitution, StepKind::kEdgeContraction}) {
    if (to_string(k) == s) return k;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown step kind '" + s + "'");
}

/// Conditions a verifier must establish before a prediction applies.
enum class Hypothesis {
  kInputRigid,
  kInputMinimallyRigid,
  kOutputMinimallyRigid,
  /// H and H' rigid and some minimally rigid H̃ ⊆ H makes G − E(H) + E(H̃)
  /// minimally rigid.
  kSubstitutionCondition,
};

inline std::string to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::kInputRigid: return "input_rigid";
    case Hypothesis::kInputMinimallyRigid: return "input_minimally_rigid";
    case Hypothesis::kOutputMinimallyRigid: return "output_minimally_rigid";
    case Hypothesis::kSubstitutionCondition: return "substitution_condition";
  }
  return "unknown";
}

/// A graph H together with where its vertices sit in a host graph.
/// `host[i]` is the host vertex of local vertex i, or -1 for a vertex that is
/// new to the host.
struct EmbeddedGraph {
  Graph graph;
  std::vector<Vertex> host;
};

enum class EffectKind { kNone, kExactFactor, kLowerBoundFactor, kExactRatio };

/// Predicted effect of one step on c_d. For kExactRatio the factor is
/// c_d(ratio_numerator) / c_d(ratio_denominator), left for the engine.
struct PredictedEffect {
  EffectKind kind = EffectKind::kNone;
  int factor = 1;
  std::optional<Graph> ratio_numerator;
  std::optional<Graph> ratio_denominator;
  std::vector<Hypothesis> hypotheses;
};

struct ConstructionStep {
  StepKind kind = StepKind::kZeroExtension;
  int d = 0;
  /// Split / contraction pivot, or the vertex added by an extension.
  Vertex x = -1;
  std::vector<Vertex> neighbors;  // 0-extension / 1-extension / replacement neighbours
  std::vector<Vertex> n1, n2, w;  // split partition
  std::vector<Edge> edges;        // removed or contracted edges
  std::optional<EmbeddedGraph> old_subgraph;
  std::optional<EmbeddedGraph> new_subgraph;
  /// Contractions: new id of every old vertex (the merged vertex maps to the
  /// survivor's id).
  std::vector<Vertex> relabel;
  PredictedEffect effect;
};

struct OperationResult {
  Graph graph;
  ConstructionStep step;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, what);
}

inline void require_distinct_in_range(const Graph& g, const std::vector<Vertex>& vs,
                                      const std::string& what) {
  std::set<Vertex> seen;
  for (Vertex v : vs) {
    require(v >= 0 && v < g.vertex_count(), what + ": vertex " + std::to_string(v) + " out of range");
    require(seen.insert(v).second, what + ": repeated vertex " + std::to_string(v));
  }
}

inline std::vector<Edge> edges_of(const Graph& g) {
  return {g.edges().begin(), g.edges().end()};
}

inline bool is_clique(const Graph& g, const std::vector<Vertex>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!g.has_edge(vs[i], vs[j])) return false;
  return true;
}

/// Builds the split output. `x` keeps its id as x1; x2 becomes vertex n.
inline Graph split_graph(const Graph& g, Vertex x, const std::vector<Vertex>& n1,
                         const std::vector<Vertex>& n2, const std::vector<Vertex>& w,
                         bool join_halves) {
  const Vertex x2 = g.vertex_count();
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (!e.touches(x)) edges.push_back(e);
  for (Vertex v : n1) edges.emplace_back(x, v);
  for (Vertex v : n2) edges.emplace_back(x2, v);
  for (Vertex v : w) {
    edges.emplace_back(x, v);
    edges.emplace_back(x2, v);
  }
  if (join_halves) edges.emplace_back(x, x2);
  return Graph(g.vertex_count() + 1, std::move(edges));
}

inline void check_partition(const Graph& g, Vertex x, const std::vector<Vertex>& n1,
                            const std::vector<Vertex>& n2, const std::vector<Vertex>& w,
                            std::size_t w_size, const std::string& op) {
  g.check_vertex(x);
  require(w.size() == w_size, op + ": W must have " + std::to_string(w_size) + " vertices");
  std::vector<Vertex> all;
  all.insert(all.end(), n1.begin(), n1.end());
  all.insert(all.end(), n2.begin(), n2.end());
  all.insert(all.end(), w.begin(), w.end());
  std::sort(all.begin(), all.end());
  auto nb = g.neighbors(x);
  require(std::equal(all.begin(), all.end(), nb.begin(), nb.end()),
          op + ": {N1, N2, W} is not a partition of N(x)");
}

}  // namespace detail

/// Adds vertex n joined to `neighbors` (d distinct vertices). Doubles c_d when
/// G is d-rigid with at least d + 1 vertices.
inline OperationResult zero_extension(const Graph& g, int d, const std::vector<Vertex>& neighbors) {
  detail::require(static_cast<int>(neighbors.size()) == d, "zero_extension: needs exactly d neighbours");
  detail::require_distinct_in_range(g, neighbors, "zero_extension");
  auto edges = detail::edges_of(g);
  const Vertex x = g.vertex_count();
  for (Vertex v : neighbors) edges.emplace_back(x, v);
  OperationResult r{Graph(x + 1, std::move(edges)), {}};
  r.step.kind = StepKind::kZeroExtension;
  r.step.d = d;
  r.step.x = x;
  r.step.neighbors = neighbors;
  r.step.effect = {EffectKind::kExactFactor, 2, {}, {}, {Hypothesis::kInputRigid}};
  return r;
}

/// Deletes v1v2 and adds vertex v0 = n joined to v1, v2 and the d − 1 `extra`
/// vertices. Predicts doubling when v1, …, v_{d+1} form a clique in a
/// minimally rigid G.
inline OperationResult one_extension(const Graph& g, int d, Edge removed,
                                     const std::vector<Vertex>& extra) {
  detail::require(g.has_edge(removed), "one_extension: removed edge not in graph");
  detail::require(static_cast<int>(extra.size()) == d - 1, "one_extension: needs d - 1 extra vertices");
  std::vector<Vertex> nbrs{removed.u, removed.v};
  nbrs.insert(nbrs.end(), extra.begin(), extra.end());
  detail::require_distinct_in_range(g, nbrs, "one_extension");
  auto base = g.without_edge(removed);
  auto edges = detail::edges_of(base);
  const Vertex x = g.vertex_count();
  for (Vertex v : nbrs) edges.emplace_back(x, v);
  OperationResult r{Graph(x + 1, std::move(edges)), {}};
  r.step.kind = StepKind::kOneExtension;
  r.step.d = d;
  r.step.x = x;
  r.step.neighbors = nbrs;
  r.step.edges = {removed};
  if (detail::is_clique(g, nbrs)) {
    r.step.effect = {EffectKind::kExactFactor, 2, {}, {}, {Hypothesis::kInputMinimallyRigid}};
  }
  return r;
}

/// d-dimensional vertex split of x: x keeps N1 and becomes x1, the new vertex
/// x2 = n takes N2, both join the d − 1 vertices of W, and x1x2 is added.
inline OperationResult vertex_split(const Graph& g, int d, Vertex x, const std::vector<Vertex>& n1,
                                    const std::vector<Vertex>& n2, const std::vector<Vertex>& w) {
  detail::check_partition(g, x, n1, n2, w, static_cast<std::size_t>(d - 1), "vertex_split");
  OperationResult r{detail::split_graph(g, x, n1, n2, w, true), {}};
  r.step.kind = StepKind::kVertexSplit;
  r.step.d = d;
  r.step.x = x;
  r.step.n1 = n1;
  r.step.n2 = n2;
  r.step.w = w;
  r.step.effect = {EffectKind::kLowerBoundFactor, 2, {}, {}, {Hypothesis::kInputMinimallyRigid}};
  return r;
}

/// d-dimensional spider split: as vertex_split but |W| = d and no x1x2 edge.
inline OperationResult spider_split(const Graph& g, int d, Vertex x, const std::vector<Vertex>& n1,
                                    const std::vector<Vertex>& n2, const std::vector<Vertex>& w) {
  detail::check_partition(g, x, n1, n2, w, static_cast<std::size_t>(d), "spider_split");
  OperationResult r{detail::split_graph(g, x, n1, n2, w, false), {}};
  r.step.kind = StepKind::kSpiderSplit;
  r.step.d = d;
  r.step.x = x;
  r.step.n1 = n1;
  r.step.n2 = n2;
  r.step.w = w;
  r.step.effect = {EffectKind::kLowerBoundFactor, 1, {}, {}, {Hypothesis::kInputMinimallyRigid}};
  return r;
}

enum class ReplacementKind { kX, kV };

/// X-replacement (two disjoint edges) or V-replacement (two edges sharing a
/// vertex): both edges are deleted and a new vertex v0 = n is joined to their
/// endpoints plus `extra`, d + 2 vertices in total.
///
/// Predicts exact doubling for d = 3 when the five neighbours induce K5 minus
/// an edge (the only minimally 3-rigid graph on five vertices) and both G and
/// the output are minimally 3-rigid.
inline OperationResult xv_replacement(const Graph& g, ReplacementKind kind, Edge e1, Edge e2,
                                      const std::vector<Vertex>& extra, int d) {
  detail::require(g.has_edge(e1) && g.has_edge(e2), "xv_replacement: edges must be in the graph");
  detail::require(e1 != e2, "xv_replacement: edges must differ");
  std::set<Vertex> ends{e1.u, e1.v, e2.u, e2.v};
  if (kind == ReplacementKind::kX) {
    detail::require(ends.size() == 4, "xv_replacement: X-replacement needs disjoint edges");
  } else {
    detail::require(ends.size() == 3, "xv_replacement: V-replacement needs adjacent edges");
  }
  std::vector<Vertex> nbrs(ends.begin(), ends.end());
  nbrs.insert(nbrs.end(), extra.begin(), extra.end());
  detail::require(static_cast<int>(nbrs.size()) == d + 2,
                  "xv_replacement: new vertex must have degree d + 2");
  detail::require_distinct_in_range(g, nbrs, "xv_replacement");

  auto edges = detail::edges_of(g.without_edge(e1).without_edge(e2));
  const Vertex x = g.vertex_count();
  for (Vertex v : nbrs) edges.emplace_back(x, v);
  OperationResult r{Graph(x + 1, std::move(edges)), {}};
  r.step.kind = kind == ReplacementKind::kX ? StepKind::kXReplacement : StepKind::kVReplacement;
  r.step.d = d;
  r.step.x = x;
  r.step.neighbors = nbrs;
  r.step.edges = {e1, e2};
  if (d == 3) {
    std::vector<Vertex> sorted = nbrs;
    std::sort(sorted.begin(), sorted.end());
    const Graph induced = g.induced(sorted);
    if (induced.edge_count() == 9) {
      r.step.effect = {EffectKind::kExactFactor, 2, {}, {},
                       {Hypothesis::kInputMinimallyRigid, Hypothesis::kOutputMinimallyRigid}};
    }
  }
  return r;
}

/// Replaces the subgraph `h` of `g` by `h_new`. Every host vertex of `h` must
/// appear in `h_new`; vertices of `h_new` with host -1 are appended to the
/// graph in local order. Predicts c_d(G') = c_d(H')/c_d(H) · c_d(G) under the
/// substitution hypothesis.
inline OperationResult subgraph_substitution(const Graph& g, const EmbeddedGraph& h,
                                             const EmbeddedGraph& h_new, int d,
                                             std::uint64_t seed = kDefaultSeed) {
  const int hn = h.graph.vertex_count();
  detail::require(static_cast<int>(h.host.size()) == hn, "subgraph_substitution: bad embedding of H");
  detail::require(static_cast<int>(h_new.host.size()) == h_new.graph.vertex_count(),
                  "subgraph_substitution: bad embedding of H'");
  detail::require_distinct_in_range(g, h.host, "subgraph_substitution: H");
  detail::require(hn >= d + 1, "subgraph_substitution: H needs at least d + 1 vertices");

  std::set<Vertex> w(h.host.begin(), h.host.end());
  std::set<Vertex> w_new_host;
  for (Vertex v : h_new.host) {
    if (v < 0) continue;
    detail::require(w.count(v) == 1,
                    "subgraph_substitution: H' may only reuse vertices of H (overlap condition)");
    detail::require(w_new_host.insert(v).second, "subgraph_substitution: H' repeats a host vertex");
  }
  detail::require(w_new_host == w, "subgraph_substitution: H' must contain every vertex of H");

  std::set<Edge> f;
  for (const Edge& e : h.graph.edges()) {
    Edge mapped(h.host[e.u], h.host[e.v]);
    detail::require(g.has_edge(mapped), "subgraph_substitution: H is not a subgraph of G");
    f.insert(mapped);
  }
  if (!is_d_rigid(h.graph, d, seed).rigid) {
    throw Error(ErrorKind::kNotRigid, "subgraph_substitution: H is not d-rigid");
  }

  std::vector<Vertex> to_global(h_new.host.size());
  Vertex next = g.vertex_count();
  for (std::size_t i = 0; i < h_new.host.size(); ++i) {
    to_global[i] = h_new.host[i] >= 0 ? h_new.host[i] : next++;
  }
  std::set<Edge> edges;
  for (const Edge& e : g.edges())
    if (!f.count(e)) edges.insert(e);
  for (const Edge& e : h_new.graph.edges()) edges.emplace(to_global[e.u], to_global[e.v]);

  OperationResult r{Graph(next, std::vector<Edge>(edges.begin(), edges.end())), {}};
  r.step.kind = StepKind::kSubgraphSubstitution;
  r.step.d = d;
  r.step.old_subgraph = h;
  r.step.new_subgraph = h_new;
  r.step.effect = {EffectKind::kExactRatio, 1, h_new.graph, h.graph,
                   {Hypothesis::kInputRigid, Hypothesis::kSubstitutionCondition}};
  return r;
}

/// Steps from `base` to `final`. For a Steinitz reduction the steps are edge
/// contractions from the sphere down to K4; each also records the vertex split
/// that undoes it.
struct ConstructionSequence {
  Graph base;
  std::vector<ConstructionStep> steps;
  Graph final;
};

/// Contracts edge uv of a triangulated sphere. v merges into u; vertices
/// above v shift down by one. Returns the new triangulation and fills the
/// contraction step (relabel log and inverse split in the new labels).
inline Triangulation contract_edge(const Triangulation& t, Edge e, ConstructionStep& step) {
  const int n = t.vertex_count();
  const Graph g = triangulation_graph(t);
  const auto common = common_neighbors(g, e.u, e.v);
  if (common.size() != 2 || n <= 4) {
    throw Error(ErrorKind::kNoContractibleEdge, "edge is not contractible");
  }
  std::vector<Vertex> relabel(static_cast<std::size_t>(n));
  for (Vertex a = 0; a < n; ++a) relabel[a] = a < e.v ? a : a - 1;
  relabel[e.v] = relabel[e.u];

  std::vector<Triangulation::Face> faces;
  for (const auto& f : t.faces()) {
    const bool has_u = std::find(f.begin(), f.end(), e.u) != f.end();
    const bool has_v = std::find(f.begin(), f.end(), e.v) != f.end();
    if (has_u && has_v) continue;
    faces.push_back({relabel[f[0]], relabel[f[1]], relabel[f[2]]});
  }
  Triangulation out(n - 1, std::move(faces));

  step = {};
  step.kind = StepKind::kEdgeContraction;
  step.d = 3;
  step.edges = {e};
  step.relabel = relabel;
  step.x = relabel[e.u];
  for (Vertex a : g.neighbors(e.u)) {
    if (a == e.v) continue;
    (std::binary_search(common.begin(), common.end(), a) ? step.w : step.n1).push_back(relabel[a]);
  }
  for (Vertex a : g.neighbors(e.v)) {
    if (a == e.u || std::binary_search(common.begin(), common.end(), a)) continue;
    step.n2.push_back(relabel[a]);
  }
  step.effect = {EffectKind::kLowerBoundFactor, 2, {}, {}, {Hypothesis::kInputMinimallyRigid}};
  return out;
}

/// Reduces a triangulated sphere to the tetrahedron by contracting, at each
/// stage, the first edge in sorted order whose endpoints have exactly two
/// common neighbours.
inline ConstructionSequence steinitz_contract(const Triangulation& t) {
  ConstructionSequence seq;
  seq.base = triangulation_graph(t);
  Triangulation cur = t;
  while (cur.vertex_count() > 4) {
    const Graph g = triangulation_graph(cur);
    bool contracted = false;
    for (const Edge& e : g.edges()) {
      if (common_neighbors(g, e.u, e.v).size() != 2) continue;
      ConstructionStep step;
      cur = contract_edge(cur, e, step);
      seq.steps.push_back(std::move(step));
      contracted = true;
      break;
    }
    if (!contracted) {
      throw Error(ErrorKind::kNoContractibleEdge,
                  "no contractible edge at " + std::to_string(cur.vertex_count()) + " vertices");
    }
  }
  seq.final = triangulation_graph(cur);
  return seq;
}

/// Applies the inverse split of a contraction step to the contracted graph
/// and restores the pre-contraction labels.
inline Graph undo_contraction(const Graph& contracted, const ConstructionStep& step) {
  const Graph split = vertex_split(contracted, 3, step.x, step.n1, step.n2, step.w).graph;
  // split labels -> original labels: x stays u, the new vertex becomes v, the
  // rest invert the shift.
  const int n = static_cast<int>(step.relabel.size());
  const Edge e = step.edges.at(0);
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  for (Vertex a = 0; a < n; ++a) {
    if (a == e.v) continue;
    perm[step.relabel[a]] = a;
  }
  perm[n - 1] = e.v;
  return split.relabeled(perm);
}

/// Contracts edge uv of a plain graph with the same labelling rule as
/// contract_edge (parallel edges collapse).
inline Graph contract_graph_edge(const Graph& g, Edge e, const std::vector<Vertex>& relabel) {
  std::set<Edge> edges;
  for (const Edge& f : g.edges()) {
    if (f == e) continue;
    const Vertex a = relabel[f.u];
    const Vertex b = relabel[f.v];
    if (a != b) edges.emplace(a, b);
  }
  return Graph(g.vertex_count() - 1, std::vector<Edge>(edges.begin(), edges.end()));
}

/// Replays contractions forward from `seq.base`; the result must equal `seq.final`.
inline Graph replay_forward(const ConstructionSequence& seq) {
  Graph g = seq.base;
  for (const auto& step : seq.steps) g = contract_graph_edge(g, step.edges.at(0), step.relabel);
  return g;
}

/// Replays the inverse vertex splits from `seq.final`; the result must equal
/// `seq.base`.
inline Graph replay_splits(const ConstructionSequence& seq) {
  Graph g = seq.final;
  for (auto it = seq.steps.rbegin(); it != seq.steps.rend(); ++it) g = undo_contraction(g, *it);
  return g;
}

// JSON ---------------------------------------------------------------------

inline nlohmann::json to_json(const Edge& e) { return nlohmann::json::array({e.u, e.v}); }

inline nlohmann::json to_json(const EmbeddedGraph& h) {
  return {{"graph", graph_to_json(h.graph)}, {"host", h.host}};
}

inline nlohmann::json to_json(const PredictedEffect& p) {
  nlohmann::json j;
  switch (p.kind) {
    case EffectKind::kNone: j["kind"] = "none"; break;
    case EffectKind::kExactFactor: j["kind"] = "exact_factor"; break;
    case EffectKind::kLowerBoundFactor: j["kind"] = "lower_bound_factor"; break;
    case EffectKind::kExactRatio: j["kind"] = "exact_ratio"; break;
  }
  if (p.kind == EffectKind::kExactFactor || p.kind == EffectKind::kLowerBoundFactor) j["factor"] = p.factor;
  if (p.ratio_numerator) j["ratio_numerator"] = graph_to_json(*p.ratio_numerator);
  if (p.ratio_denominator) j["ratio_denominator"] = graph_to_json(*p.ratio_denominator);
  nlohmann::json hyps = nlohmann::json::array();
  for (auto h : p.hypotheses) hyps.push_back(to_string(h));
  j["hypotheses"] = hyps;
  return j;
}

inline nlohmann::json to_json(const ConstructionStep& s) {
  nlohmann::json params;
  if (s.x >= 0) params["x"] = s.x;
  if (!s.neighbors.empty()) params["neighbors"] = s.neighbors;
  if (s.kind == StepKind::kVertexSplit || s.kind == StepKind::kSpiderSplit ||
      s.kind == StepKind::kEdgeContraction) {
    params["n1"] = s.n1;
    params["n2"] = s.n2;
    params["w"] = s.w;
  }
  if (!s.edges.empty()) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : s.edges) edges.push_back(to_json(e));
    params["edges"] = edges;
  }
  if (s.old_subgraph) params["old_subgraph"] = to_json(*s.old_subgraph);
  if (s.new_subgraph) params["new_subgraph"] = to_json(*s.new_subgraph);
  nlohmann::json j{{"kind", to_string(s.kind)}, {"d", s.d}, {"parameters", params},
                   {"predicted_effect", to_json(s.effect)}};
  if (!s.relabel.empty()) j["relabel"] = s.relabel;
  return j;
}

inline nlohmann::json to_json(const ConstructionSequence& seq) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : seq.steps) steps.push_back(to_json(s));
  return {{"base", graph_to_json(seq.base)}, {"steps", steps}, {"final", graph_to_json(seq.final)}};
}

namespace detail {
inline std::vector<Vertex> vertices_or_empty(const nlohmann::json& j, const char* key) {
  return j.contains(key) ? j.at(key).get<std::vector<Vertex>>() : std::vector<Vertex>{};
}
inline EmbeddedGraph embedded_from_json(const nlohmann::json& j) {
  return {graph_from_json(j.at("graph")), j.at("host").get<std::vector<Vertex>>()};
}
}  // namespace detail

/// Parameters of a step as written by to_json. The prediction is recomputed
/// by re-running the operation, so only the inputs are read here.
inline ConstructionStep step_from_json(const nlohmann::json& j) {
  ConstructionStep s;
  s.kind = step_kind_from_string(j.at("kind").get<std::string>());
  s.d = j.at("d").get<int>();
  const auto& p = j.at("parameters");
  s.x = p.contains("x") ? p.at("x").get<Vertex>() : -1;
  s.neighbors = detail::vertices_or_empty(p, "neighbors");
  s.n1 = detail::vertices_or_empty(p, "n1");
  s.n2 = detail::vertices_or_empty(p, "n2");
  s.w = detail::vertices_or_empty(p, "w");
  if (p.contains("edges")) {
    for (const auto& e : p.at("edges")) s.edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  }
  if (p.contains("old_subgraph")) s.old_subgraph = detail::embedded_from_json(p.at("old_subgraph"));
  if (p.contains("new_subgraph")) s.new_subgraph = detail::embedded_from_json(p.at("new_subgraph"));
  if (j.contains("relabel")) s.relabel = j.at("relabel").get<std::vector<Vertex>>();
  return s;
}

/// Re-applies a recorded step to `g`, recomputing its output and prediction.
inline OperationResult apply_step(const Graph& g, const ConstructionStep& s,
                                  std::uint64_t seed = kDefaultSeed) {
  switch (s.kind) {
    case StepKind::kZeroExtension:
      return zero_extension(g, s.d, s.neighbors);
    case StepKind::kOneExtension: {
      detail::require(s.edges.size() == 1 && s.neighbors.size() >= 2, "one_extension: bad parameters");
      std::vector<Vertex> extra(s.neighbors.begin() + 2, s.neighbors.end());
      return one_extension(g, s.d, s.edges[0], extra);
    }
    case StepKind::kVertexSplit:
      return vertex_split(g, s.d, s.x, s.n1, s.n2, s.w);
    case StepKind::kSpiderSplit:
      return spider_split(g, s.d, s.x, s.n1, s.n2, s.w);
    case StepKind::kXReplacement:
    case StepKind::kVReplacement: {
      detail::require(s.edges.size() == 2, "xv_replacement: bad parameters");
      std::set<Vertex> ends{s.edges[0].u, s.edges[0].v, s.edges[1].u, s.edges[1].v};
      std::vector<Vertex> extra;
      for (Vertex v : s.neighbors)
        if (!ends.count(v)) extra.push_back(v);
      return xv_replacement(g, s.kind == StepKind::kXReplacement ? ReplacementKind::kX : ReplacementKind::kV,
                            s.edges[0], s.edges[1], extra, s.d);
    }
    case StepKind::kSubgraphSubstitution:
      detail::require(s.old_subgraph && s.new_subgraph, "subgraph_substitution: bad parameters");
      return subgraph_substitution(g, *s.old_subgraph, *s.new_subgraph, s.d, seed);
    case StepKind::kEdgeContraction:
      break;
  }
  throw Error(ErrorKind::kInvalidArgument, "apply_step: contractions act on triangulations");
}

}  // namespace rigidity
