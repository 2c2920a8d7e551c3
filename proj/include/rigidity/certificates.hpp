#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rigidity/construction.hpp"
#include "rigidity/error.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/graph_io.hpp"
#include "rigidity/realisation.hpp"
#include "rigidity/rigidity.hpp"

namespace rigidity {

inline constexpr int kCertificateSchemaVersion = 1;

enum class ClaimKind { kDivisibility, kExactFactor, kLowerBound, kSphereBound, kAugmentation };
enum class Verdict { kVerified, kRefuted, kUnreliable };

inline std::string to_string(ClaimKind k) {
  switch (k) {
    case ClaimKind::kDivisibility: return "divisibility";
    case ClaimKind::kExactFactor: return "exact_factor";
    case ClaimKind::kLowerBound: return "lower_bound";
    case ClaimKind::kSphereBound: return "sphere_bound";
    case ClaimKind::kAugmentation: return "augmentation";
  }
  return "unknown";
}

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kVerified: return "verified";
    case Verdict::kRefuted: return "refuted";
    case Verdict::kUnreliable: return "unreliable";
  }
  return "unknown";
}

inline Verdict verdict_from_string(const std::string& s) {
  for (auto v : {Verdict::kVerified, Verdict::kRefuted, Verdict::kUnreliable})
    if (to_string(v) == s) return v;
  throw Error(ErrorKind::kParse, "unknown verdict '" + s + "'");
}

/// A checked claim about realisation numbers. `check` names the checker that
/// produced it; `inputs` holds everything needed to run it again and
/// `evidence` the counts and seeds it saw.
struct Certificate {
  ClaimKind claim = ClaimKind::kDivisibility;
  std::string check;
  std::string statement;
  int d = 0;
  std::uint64_t seed = 0;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json evidence = nlohmann::json::object();
  Verdict verdict = Verdict::kUnreliable;
};

inline nlohmann::json to_json(const Certificate& c) {
  return {{"schema_version", kCertificateSchemaVersion},
          {"claim", to_string(c.claim)},
          {"check", c.check},
          {"statement", c.statement},
          {"d", c.d},
          {"seed", c.seed},
          {"inputs", c.inputs},
          {"evidence", c.evidence},
          {"verdict", to_string(c.verdict)}};
}

/// c = p_1 ⋯ p_k with primes in ascending order.
struct PrimeFactorBudget {
  long long c = 1;
  std::vector<long long> factorization;
  int k() const { return static_cast<int>(factorization.size()); }
};

inline PrimeFactorBudget factorize(long long c) {
  if (c < 1) throw Error(ErrorKind::kInvalidArgument, "factorize: c must be positive");
  PrimeFactorBudget b;
  b.c = c;
  for (long long p = 2; p * p <= c; ++p) {
    while (c % p == 0) {
      b.factorization.push_back(p);
      c /= p;
    }
  }
  if (c > 1) b.factorization.push_back(c);
  return b;
}

inline nlohmann::json engine_config_to_json(const EngineConfig& cfg) {
  return {{"seed", cfg.seed},
          {"samples", cfg.samples},
          {"path_cap", cfg.path_cap},
          {"retries", cfg.retries},
          {"gamma_retries", cfg.gamma_retries},
          {"max_failure_fraction", cfg.max_failure_fraction},
          {"polish_tolerance", cfg.polish_tolerance},
          {"dedup_tolerance", cfg.dedup_tolerance},
          {"surplus_tolerance", cfg.surplus_tolerance},
          {"real_tolerance", cfg.real_tolerance},
          {"jacobian_tolerance", cfg.jacobian_tolerance},
          {"corrector_tolerance", cfg.tracker.corrector_tolerance},
          {"endgame_tolerance", cfg.tracker.endgame_tolerance},
          {"predictor", cfg.tracker.predictor == Predictor::kEuler ? "euler" : "rk4"}};
}

/// Reads back what engine_config_to_json wrote; `threads` is taken from
/// `base` since it never changes results.
inline EngineConfig engine_config_from_json(const nlohmann::json& j, EngineConfig base = {}) {
  EngineConfig c = base;
  c.seed = j.value("seed", c.seed);
  c.samples = j.value("samples", c.samples);
  c.path_cap = j.value("path_cap", c.path_cap);
  c.retries = j.value("retries", c.retries);
  c.gamma_retries = j.value("gamma_retries", c.gamma_retries);
  c.max_failure_fraction = j.value("max_failure_fraction", c.max_failure_fraction);
  c.polish_tolerance = j.value("polish_tolerance", c.polish_tolerance);
  c.dedup_tolerance = j.value("dedup_tolerance", c.dedup_tolerance);
  c.surplus_tolerance = j.value("surplus_tolerance", c.surplus_tolerance);
  c.real_tolerance = j.value("real_tolerance", c.real_tolerance);
  c.jacobian_tolerance = j.value("jacobian_tolerance", c.jacobian_tolerance);
  c.tracker.corrector_tolerance = j.value("corrector_tolerance", c.tracker.corrector_tolerance);
  c.tracker.endgame_tolerance = j.value("endgame_tolerance", c.tracker.endgame_tolerance);
  c.tracker.predictor = j.value("predictor", std::string("rk4")) == "euler" ? Predictor::kEuler
                                                                            : Predictor::kRungeKutta4;
  return c;
}

namespace detail {

/// Count with engine trouble turned into "unreliable" instead of an error.
struct CountOutcome {
  std::optional<CountResult> result;
  std::string failure;

  bool reliable() const { return result && result->reliable; }
  long long c() const { return result ? result->c : -1; }
};

inline CountOutcome try_count(const Graph& g, int d, const EngineConfig& cfg) {
  try {
    CountOutcome out{count_complex(g, d, cfg), ""};
    if (!out.result->reliable) out.failure = "engine run flagged unreliable";
    return out;
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::kExcessiveFailures:
      case ErrorKind::kDisagreement:
      case ErrorKind::kDegeneratePins:
        return {std::nullopt, e.what()};
      default:
        throw;
    }
  }
}

inline nlohmann::json count_evidence(const CountOutcome& o) {
  nlohmann::json j = o.result ? to_json(*o.result) : nlohmann::json{{"c", nullptr}};
  if (!o.failure.empty()) j["failure"] = o.failure;
  return j;
}

inline nlohmann::json graph_input(const Graph& g) {
  nlohmann::json j = graph_to_json(g);
  j["hash"] = graph_hash(g);
  return j;
}

/// Theorems cannot fail, so a refutation is first blamed on the numerics:
/// the check is re-run once with fresh seeds before it is reported.
inline Certificate with_rerun(const EngineConfig& cfg, const std::function<Certificate(const EngineConfig&)>& run) {
  Certificate first = run(cfg);
  if (first.verdict != Verdict::kRefuted) return first;
  EngineConfig fresh = cfg;
  fresh.seed = derive_seed(cfg.seed, Stream::kCertificate, 1);
  Certificate second = run(fresh);
  second.evidence["rerun_of_refuted"] = {{"seed", cfg.seed}, {"evidence", first.evidence}};
  second.inputs = first.inputs;
  second.seed = cfg.seed;
  return second;
}

inline Certificate make_certificate(ClaimKind claim, std::string check, std::string statement, int d,
                                    const EngineConfig& cfg) {
  Certificate c;
  c.claim = claim;
  c.check = std::move(check);
  c.statement = std::move(statement);
  c.d = d;
  c.seed = cfg.seed;
  c.inputs["engine"] = engine_config_to_json(cfg);
  return c;
}

inline bool is_edge_subset(const Graph& small, const Graph& big) {
  return std::all_of(small.edges().begin(), small.edges().end(), [&](const Edge& e) { return big.has_edge(e); });
}

}  // namespace detail

/// For a spanning d-rigid H ⊆ G: c_d(G) divides c_d(H).
inline Certificate check_spanning_divisibility(const Graph& g, const Graph& h, int d, const EngineConfig& cfg = {}) {
  if (h.vertex_count() != g.vertex_count() || !detail::is_edge_subset(h, g)) {
    throw Error(ErrorKind::kInvalidArgument, "H must be a spanning subgraph of G");
  }
  if (g.vertex_count() < d + 1) throw Error(ErrorKind::kInvalidArgument, "G needs at least d + 1 vertices");
  detail::require_rigid(g, d, cfg.seed);
  detail::require_rigid(h, d, cfg.seed);
  return detail::with_rerun(cfg, [&](const EngineConfig& run) {
    Certificate c = detail::make_certificate(ClaimKind::kDivisibility, "spanning_divisibility",
                                             "c_d(G) divides c_d(H) for a spanning d-rigid subgraph H", d, run);
    c.inputs["G"] = detail::graph_input(g);
    c.inputs["H"] = detail::graph_input(h);
    if (g == h) {
      c.evidence["trivial"] = true;
      c.verdict = Verdict::kVerified;
      return c;
    }
    const auto cg = detail::try_count(g, d, run);
    const auto ch = detail::try_count(h, d, run);
    c.evidence["G"] = detail::count_evidence(cg);
    c.evidence["H"] = detail::count_evidence(ch);
    if (!cg.reliable() || !ch.reliable()) {
      c.verdict = Verdict::kUnreliable;
    } else {
      c.verdict = ch.c() % cg.c() == 0 ? Verdict::kVerified : Verdict::kRefuted;
    }
    return c;
  });
}

/// Searches for a minimally rigid H̃ ⊆ H (greedy, with shuffled restarts)
/// such that G − E(H) + E(H̃) is minimally d-rigid. `h_edges` are edges of G.
inline std::optional<std::vector<Edge>> find_substitution_witness(const Graph& g, const std::vector<Edge>& h_edges,
                                                                  int d, std::uint64_t seed, int restarts = 8) {
  std::vector<Vertex> verts;
  for (const Edge& e : h_edges) {
    verts.push_back(e.u);
    verts.push_back(e.v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<Vertex> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<Vertex>(i);
  std::vector<Edge> local_edges;
  for (const Edge& e : h_edges) local_edges.emplace_back(local[e.u], local[e.v]);
  const Graph h(static_cast<int>(verts.size()), local_edges);
  const std::set<Edge> h_set(h_edges.begin(), h_edges.end());

  for (int r = 0; r < restarts; ++r) {
    Graph tilde(0, {});
    try {
      tilde = spanning_minimally_rigid_subgraph(h, d, derive_seed(seed, Stream::kSpanningOrder, r), r > 0);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kNotRigid) return std::nullopt;
      throw;
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
      if (!h_set.count(e)) edges.push_back(e);
    std::vector<Edge> tilde_global;
    for (const Edge& e : tilde.edges()) tilde_global.emplace_back(verts[e.u], verts[e.v]);
    edges.insert(edges.end(), tilde_global.begin(), tilde_global.end());
    if (is_minimally_d_rigid(Graph(g.vertex_count(), edges), d, seed)) return tilde_global;
  }
  return std::nullopt;
}

/// For a d-rigid subgraph H of G (given by edges of G) satisfying the
/// substitution condition: c_d(H) divides c_d(G).
inline Certificate check_subgraph_divisibility(const Graph& g, const std::vector<Edge>& h_edges, int d,
                                               const EngineConfig& cfg = {}) {
  for (const Edge& e : h_edges)
    if (!g.has_edge(e)) throw Error(ErrorKind::kInvalidArgument, "H is not a subgraph of G");
  std::vector<Vertex> verts;
  for (const Edge& e : h_edges) {
    verts.push_back(e.u);
    verts.push_back(e.v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (static_cast<int>(verts.size()) < d + 1 || g.vertex_count() < d + 1) {
    throw Error(ErrorKind::kInvalidArgument, "G and H need at least d + 1 vertices");
  }
  std::vector<Vertex> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<Vertex>(i);
  std::vector<Edge> local_edges;
  for (const Edge& e : h_edges) local_edges.emplace_back(local[e.u], local[e.v]);
  const Graph h(static_cast<int>(verts.size()), local_edges);
  detail::require_rigid(g, d, cfg.seed);
  detail::require_rigid(h, d, cfg.seed);
  const auto witness = find_substitution_witness(g, h_edges, d, cfg.seed);
  if (!witness) {
    throw Error(ErrorKind::kHypothesisNotEstablished,
                "no minimally rigid subgraph of H makes G - E(H) + E(H~) minimally rigid");
  }
  return detail::with_rerun(cfg, [&](const EngineConfig& run) {
    Certificate c = detail::make_certificate(ClaimKind::kDivisibility, "subgraph_divisibility",
                                             "c_d(H) divides c_d(G) for a d-rigid subgraph H with a substitution witness",
                                             d, run);
    c.inputs["G"] = detail::graph_input(g);
    nlohmann::json he = nlohmann::json::array();
    for (const Edge& e : h_edges) he.push_back(to_json(e));
    c.inputs["H_edges"] = he;
    nlohmann::json w = nlohmann::json::array();
    for (const Edge& e : *witness) w.push_back(to_json(e));
    c.evidence["witness_edges"] = w;
    c.evidence["H_vertices"] = verts;
    if (g == Graph(g.vertex_count(), h_edges)) {
      c.evidence["trivial"] = true;
      c.verdict = Verdict::kVerified;
      return c;
    }
    const auto cg = detail::try_count(g, d, run);
    const auto ch = detail::try_count(h, d, run);
    c.evidence["G"] = detail::count_evidence(cg);
    c.evidence["H"] = detail::count_evidence(ch);
    if (!cg.reliable() || !ch.reliable()) {
      c.verdict = Verdict::kUnreliable;
    } else {
      c.verdict = cg.c() % ch.c() == 0 ? Verdict::kVerified : Verdict::kRefuted;
    }
    return c;
  });
}

/// Adding a non-edge either keeps c_d or at least halves it, and the new
/// count divides the old.
inline Certificate check_edge_addition_drop(const Graph& g, Edge ij, int d, const EngineConfig& cfg = {}) {
  g.check_vertex(ij.u);
  g.check_vertex(ij.v);
  if (g.has_edge(ij)) throw Error(ErrorKind::kInvalidArgument, "ij must be a non-edge");
  detail::require_rigid(g, d, cfg.seed);
  const Graph plus = g.with_edge(ij);
  return detail::with_rerun(cfg, [&](const EngineConfig& run) {
    Certificate c = detail::make_certificate(ClaimKind::kDivisibility, "edge_addition_drop",
                                             "c_d(G+ij) = c_d(G) or c_d(G+ij) <= c_d(G)/2", d, run);
    c.inputs["G"] = detail::graph_input(g);
    c.inputs["edge"] = to_json(ij);
    const auto before = detail::try_count(g, d, run);
    const auto after = detail::try_count(plus, d, run);
    c.evidence["G"] = detail::count_evidence(before);
    c.evidence["G_plus_ij"] = detail::count_evidence(after);
    if (!before.reliable() || !after.reliable()) {
      c.verdict = Verdict::kUnreliable;
      return c;
    }
    const bool dropped = after.c() < before.c();
    c.evidence["dropped"] = dropped;
    const bool ok = before.c() % after.c() == 0 && (!dropped || 2 * after.c() <= before.c());
    c.verdict = ok ? Verdict::kVerified : Verdict::kRefuted;
    return c;
  });
}

/// Adds non-edges one at a time (first in sorted order that strictly lowers
/// c_d) until the count reaches 1. Verified when that happens within k
/// additions, k the number of prime factors of c_d(G). `budget` caps the
/// number of counts of augmented graphs.
inline Certificate greedy_augment(const Graph& g, int d, const EngineConfig& cfg = {}, int budget = 64) {
  detail::require_rigid(g, d, cfg.seed);
  return detail::with_rerun(cfg, [&](const EngineConfig& run) {
    Certificate c = detail::make_certificate(ClaimKind::kAugmentation, "greedy_augment",
                                             "some set F of at most k non-edges makes G globally d-rigid, "
                                             "k the number of prime factors of c_d(G)",
                                             d, run);
    c.inputs["G"] = detail::graph_input(g);
    c.inputs["budget"] = budget;
    const auto start = detail::try_count(g, d, run);
    c.evidence["G"] = detail::count_evidence(start);
    if (!start.reliable()) {
      c.verdict = Verdict::kUnreliable;
      return c;
    }
    const PrimeFactorBudget factors = factorize(start.c());
    c.evidence["factorization"] = factors.factorization;
    c.evidence["k"] = factors.k();
    Graph cur = g;
    long long count = start.c();
    std::vector<Edge> added;
    nlohmann::json trail = nlohmann::json::array();
    int used = 0;
    while (count > 1) {
      bool found = false;
      for (const Edge& e : cur.non_edges()) {
        if (++used > budget) {
          throw Error(ErrorKind::kBudgetExhausted,
                      "greedy_augment used its budget of " + std::to_string(budget) + " counts");
        }
        const Graph next = cur.with_edge(e);
        const auto r = detail::try_count(next, d, run);
        trail.push_back({{"edge", to_json(e)}, {"count", detail::count_evidence(r)}});
        if (!r.reliable()) {
          c.evidence["trail"] = trail;
          c.verdict = Verdict::kUnreliable;
          return c;
        }
        if (r.c() < count) {
          cur = next;
          count = r.c();
          added.push_back(e);
          found = true;
          break;
        }
      }
      if (!found) break;
    }
    nlohmann::json f = nlohmann::json::array();
    for (const Edge& e : added) f.push_back(to_json(e));
    c.evidence["F"] = f;
    c.evidence["trail"] = trail;
    c.evidence["final_count"] = count;
    c.verdict = (count == 1 && factors.k() >= static_cast<int>(added.size())) ? Verdict::kVerified
                                                                                 : Verdict::kRefuted;
    return c;
  });
}

/// Largest number of pinned unknowns (3n − 6) for which certify_sphere_bound
/// runs the engine by default.
inline constexpr int kSphereCountUnknowns = 12;

/// Steinitz reduction to the tetrahedron gives n − 4 inverse vertex splits,
/// hence c_3 ≥ 2^{n−4}. The engine count is added when the system has at most
/// `count_unknowns` unknowns.
inline Certificate certify_sphere_bound(const Triangulation& t, const EngineConfig& cfg = {},
                                        int count_unknowns = kSphereCountUnknowns) {
  const int n = t.vertex_count();
  const Graph g = triangulation_graph(t);
  return detail::with_rerun(cfg, [&](const EngineConfig& run) {
    Certificate c = detail::make_certificate(ClaimKind::kSphereBound, "sphere_bound",
                                             "c_3(G) >= 2^(n-4) for a triangulated sphere G", 3, run);
    c.inputs["triangulation"] = triangulation_to_json(t);
    c.inputs["hash"] = graph_hash(g);
    c.inputs["count_unknowns"] = count_unknowns;
    const ConstructionSequence seq = steinitz_contract(t);
    const long long bound = 1LL << (n - 4);
    const bool length_ok = static_cast<int>(seq.steps.size()) == n - 4;
    const bool replay_ok = replay_forward(seq) == seq.final && replay_splits(seq) == seq.base &&
                           seq.final == Graph::complete(4);
    c.evidence["sequence"] = to_json(seq);
    c.evidence["sequence_length"] = seq.steps.size();
    c.evidence["replay_ok"] = replay_ok;
    c.evidence["bound"] = bound;
    bool ok = length_ok && replay_ok;
    c.verdict = ok ? Verdict::kVerified : Verdict::kRefuted;
    if (3 * n - 6 <= count_unknowns && 3 * n - 6 <= run.path_cap) {
      const auto count = detail::try_count(g, 3, run);
      c.evidence["counted"] = true;
      c.evidence["count"] = detail::count_evidence(count);
      if (!count.reliable()) {
        if (ok) c.verdict = Verdict::kUnreliable;
      } else if (count.c() < bound) {
        c.verdict = Verdict::kRefuted;
      }
    } else {
      c.evidence["counted"] = false;
    }
    return c;
  });
}

namespace detail {

inline void establish(bool ok, Hypothesis h) {
  if (!ok) throw Error(ErrorKind::kHypothesisNotEstablished, "hypothesis not established: " + to_string(h));
}

inline void establish_hypotheses(const ConstructionStep& step, const Graph& before, const Graph& after,
                                 std::uint64_t seed) {
  const int d = step.d;
  for (Hypothesis h : step.effect.hypotheses) {
    switch (h) {
      case Hypothesis::kInputRigid:
        establish(before.vertex_count() >= d + 1 && is_d_rigid(before, d, seed).rigid, h);
        break;
      case Hypothesis::kInputMinimallyRigid:
        establish(before.vertex_count() >= d + 1 && is_minimally_d_rigid(before, d, seed), h);
        break;
      case Hypothesis::kOutputMinimallyRigid:
        establish(is_minimally_d_rigid(after, d, seed), h);
        break;
      case Hypothesis::kSubstitutionCondition: {
        const auto& hs = *step.old_subgraph;
        std::vector<Edge> h_edges;
        for (const Edge& e : hs.graph.edges()) h_edges.emplace_back(hs.host[e.u], hs.host[e.v]);
        establish(is_d_rigid(step.new_subgraph->graph, d, seed).rigid, h);
        establish(find_substitution_witness(before, h_edges, d, seed).has_value(), h);
        break;
      }
    }
  }
}

}  // namespace detail

/// Checks the predicted effect of `step` (taking `before` to `after`) against
/// engine counts. Throws HypothesisNotEstablished when the step carries no
/// prediction or its hypotheses fail.
inline Certificate verify_operation_effect(const ConstructionStep& step, const Graph& before, const Graph& after,
                                           const EngineConfig& cfg = {}) {
  const OperationResult replay = apply_step(before, step, cfg.seed);
  if (!(replay.graph == after)) {
    throw Error(ErrorKind::kInvalidArgument, "step does not take the input graph to the output graph");
  }
  const ConstructionStep& s = replay.step;
  if (s.effect.kind == EffectKind::kNone) {
    throw Error(ErrorKind::kHypothesisNotEstablished, "step carries no predicted effect");
  }
  detail::establish_hypotheses(s, before, after, cfg.seed);
  const int d = s.d;
  const ClaimKind claim = s.effect.kind == EffectKind::kLowerBoundFactor ? ClaimKind::kLowerBound
                                                                         : ClaimKind::kExactFactor;
  return detail::with_rerun(cfg, [&](const EngineConfig& run) {
    std::string statement;
    switch (s.effect.kind) {
      case EffectKind::kExactFactor:
        statement = "c_d(G') = " + std::to_string(s.effect.factor) + " c_d(G)";
        break;
      case EffectKind::kLowerBoundFactor:
        statement = "c_d(G') >= " + std::to_string(s.effect.factor) + " c_d(G)";
        break;
      default:
        statement = "c_d(G') c_d(H) = c_d(H') c_d(G)";
        break;
    }
    Certificate c = detail::make_certificate(claim, "operation_effect", statement, d, run);
    c.inputs["step"] = to_json(s);
    c.inputs["G"] = detail::graph_input(before);
    c.inputs["G_prime"] = detail::graph_input(after);
    const auto cb = detail::try_count(before, d, run);
    const auto ca = detail::try_count(after, d, run);
    c.evidence["G"] = detail::count_evidence(cb);
    c.evidence["G_prime"] = detail::count_evidence(ca);
    bool reliable = cb.reliable() && ca.reliable();
    bool ok = false;
    if (reliable) {
      switch (s.effect.kind) {
        case EffectKind::kExactFactor:
          ok = ca.c() == s.effect.factor * cb.c();
          break;
        case EffectKind::kLowerBoundFactor:
          ok = ca.c() >= s.effect.factor * cb.c();
          break;
        case EffectKind::kExactRatio: {
          const auto hn = detail::try_count(*s.effect.ratio_numerator, d, run);
          const auto hd = detail::try_count(*s.effect.ratio_denominator, d, run);
          c.evidence["H_prime"] = detail::count_evidence(hn);
          c.evidence["H"] = detail::count_evidence(hd);
          reliable = hn.reliable() && hd.reliable();
          ok = ca.c() * hd.c() == hn.c() * cb.c();
          break;
        }
        case EffectKind::kNone:
          break;
      }
    }
    c.evidence["ratio"] = (reliable && cb.c() > 0) ? nlohmann::json(static_cast<double>(ca.c()) / cb.c())
                                                    : nlohmann::json(nullptr);
    c.verdict = !reliable ? Verdict::kUnreliable : ok ? Verdict::kVerified : Verdict::kRefuted;
    return c;
  });
}

/// Outcome of re-running a certificate from its recorded inputs.
struct Recheck {
  Certificate recomputed;
  bool matches = false;
};

/// Re-runs the checker named in `j` with the recorded inputs, engine settings
/// and seed. `matches` requires the same verdict and identical evidence.
inline Recheck recheck_certificate(const nlohmann::json& j, int threads = 1) {
  if (j.value("schema_version", 0) != kCertificateSchemaVersion) {
    throw Error(ErrorKind::kParse, "unsupported certificate schema version");
  }
  const auto& in = j.at("inputs");
  EngineConfig base;
  base.threads = threads;
  const EngineConfig cfg = engine_config_from_json(in.at("engine"), base);
  const int d = j.at("d").get<int>();
  const std::string check = j.at("check").get<std::string>();
  Certificate c;
  if (check == "spanning_divisibility") {
    c = check_spanning_divisibility(graph_from_json(in.at("G")), graph_from_json(in.at("H")), d, cfg);
  } else if (check == "subgraph_divisibility") {
    std::vector<Edge> h;
    for (const auto& e : in.at("H_edges")) h.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    c = check_subgraph_divisibility(graph_from_json(in.at("G")), h, d, cfg);
  } else if (check == "edge_addition_drop") {
    const auto& e = in.at("edge");
    c = check_edge_addition_drop(graph_from_json(in.at("G")), Edge(e.at(0).get<Vertex>(), e.at(1).get<Vertex>()), d,
                                 cfg);
  } else if (check == "greedy_augment") {
    c = greedy_augment(graph_from_json(in.at("G")), d, cfg, in.at("budget").get<int>());
  } else if (check == "sphere_bound") {
    const ParsedGraph parsed = parse_json_graph(in.at("triangulation").dump());
    c = certify_sphere_bound(*parsed.triangulation, cfg, in.at("count_unknowns").get<int>());
  } else if (check == "operation_effect") {
    c = verify_operation_effect(step_from_json(in.at("step")), graph_from_json(in.at("G")),
                                graph_from_json(in.at("G_prime")), cfg);
  } else {
    throw Error(ErrorKind::kParse, "unknown certificate check '" + check + "'");
  }
  const nlohmann::json again = to_json(c);
  Recheck r{std::move(c), false};
  r.matches = again.at("verdict") == j.at("verdict") && again.at("evidence") == j.at("evidence");
  return r;
}

}  // namespace rigidity
