#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rigidity/error.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/modular.hpp"
#include "rigidity/pebble_game.hpp"
#include "rigidity/random.hpp"

namespace rigidity {

/// Coordinates for randomized rank are drawn from [-kRankCoordinateBound, kRankCoordinateBound].
inline constexpr long long kRankCoordinateBound = 1LL << 20;

/// Rank of the rigidity matrix of a generic rigid graph: d·n − d(d+1)/2 for
/// n ≥ d + 1, and n(n−1)/2 (the simplex) below that.
inline int rigidity_threshold(int n, int d) {
  if (n <= d + 1) return n * (n - 1) / 2;
  return d * n - d * (d + 1) / 2;
}

/// Evidence for a randomized rank computation. `rank` is always a lower bound
/// on the generic rank.
struct RankWitness {
  int rank = 0;
  int threshold = 0;
  std::uint64_t seed = 0;
  std::string field;
  int trials = 0;
  std::vector<int> trial_ranks;
  std::vector<std::uint64_t> trial_seeds;
};

inline nlohmann::json to_json(const RankWitness& w) {
  return {{"rank", w.rank},
          {"threshold", w.threshold},
          {"seed", w.seed},
          {"field", w.field},
          {"trials", w.trials},
          {"trial_ranks", w.trial_ranks},
          {"seeds", w.trial_seeds}};
}

/// Integer realisation with coordinates uniform in [-bound, bound], row-major
/// n × d.
inline std::vector<long long> random_integer_points(int n, int d, std::uint64_t seed,
                                                    long long bound = kRankCoordinateBound) {
  Rng rng(seed);
  std::vector<long long> pts(static_cast<std::size_t>(n) * d);
  for (auto& x : pts) x = uniform_int(rng, -bound, bound);
  return pts;
}

/// Rigidity-matrix row of `e` reduced modulo the field prime.
inline std::vector<PrimeField::Element> modular_rigidity_row(const PrimeField& field, const Edge& e,
                                                             int n, int d,
                                                             const std::vector<long long>& pts) {
  std::vector<PrimeField::Element> row(static_cast<std::size_t>(n) * d, 0);
  for (int j = 0; j < d; ++j) {
    const long long diff = pts[e.u * d + j] - pts[e.v * d + j];
    row[e.u * d + j] = field.from_int(diff);
    row[e.v * d + j] = field.from_int(-diff);
  }
  return row;
}

/// Exact rank of R(G, p) over Z/pZ at an integer realisation.
inline int modular_rigidity_rank(const Graph& g, int d, const std::vector<long long>& pts,
                                 const PrimeField& field) {
  std::vector<std::vector<PrimeField::Element>> rows;
  rows.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {
    rows.push_back(modular_rigidity_row(field, e, g.vertex_count(), d, pts));
  }
  return modular_rank(field, std::move(rows), g.vertex_count() * d);
}

/// Randomized generic rank: `samples` random integer realisations, each
/// reduced modulo both rank primes. The maximum over all (sample, prime)
/// trials is reported.
inline RankWitness generic_rank(const Graph& g, int d, std::uint64_t seed = kDefaultSeed,
                                int samples = 2) {
  RankWitness w;
  w.seed = seed;
  w.threshold = rigidity_threshold(g.vertex_count(), d);
  w.field = "Z/pZ, p in {2^61-1, 2^61-31}; coordinates in [-2^20, 2^20]";
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t sample_seed = derive_seed(seed, Stream::kRankSample, s);
    const auto pts = random_integer_points(g.vertex_count(), d, sample_seed);
    for (std::uint64_t prime : kRankPrimes) {
      const int r = modular_rigidity_rank(g, d, pts, PrimeField(prime));
      w.trial_ranks.push_back(r);
      w.trial_seeds.push_back(sample_seed);
      w.rank = std::max(w.rank, r);
      ++w.trials;
      // Full rank is already a proof; skip the remaining trials.
      if (w.rank >= w.threshold) return w;
    }
  }
  return w;
}

struct RigidityVerdict {
  bool rigid = false;
  /// True when the verdict is "flexible" on the strength of repeated rank
  /// deficiency rather than a proof.
  bool probabilistic = false;
  RankWitness witness;
  /// (2,3) pebble-game verdict, present for d = 2.
  std::optional<bool> pebble_rigid;
};

/// d-rigidity: the simplex case for n ≤ d + 1, otherwise full generic rank.
inline RigidityVerdict is_d_rigid(const Graph& g, int d, std::uint64_t seed = kDefaultSeed) {
  RigidityVerdict v;
  const int n = g.vertex_count();
  v.witness = generic_rank(g, d, seed);
  if (n <= d + 1) {
    v.rigid = g.is_complete();
  } else {
    v.rigid = v.witness.rank == v.witness.threshold;
    v.probabilistic = !v.rigid;
  }
  if (d == 2) {
    v.pebble_rigid = pebble_game_rigid(g, 2, 3);
  }
  return v;
}

inline bool is_minimally_d_rigid(const Graph& g, int d, std::uint64_t seed = kDefaultSeed) {
  return g.edge_count() == rigidity_threshold(g.vertex_count(), d) && is_d_rigid(g, d, seed).rigid;
}

/// Greedy spanning minimally rigid subgraph: edges are scanned in sorted order
/// (or a seeded shuffle of it when `shuffle` is set) and kept when they raise
/// the exact rank at a fixed random integer realisation.
inline Graph spanning_minimally_rigid_subgraph(const Graph& g, int d,
                                               std::uint64_t seed = kDefaultSeed,
                                               bool shuffle = false) {
  const int n = g.vertex_count();
  if (n <= d + 1) {
    if (!g.is_complete()) throw Error(ErrorKind::kNotRigid, "graph is not d-rigid");
    return g;
  }
  std::vector<Edge> order(g.edges().begin(), g.edges().end());
  if (shuffle) {
    Rng rng(derive_seed(seed, Stream::kSpanningOrder));
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long long>(i) - 1))]);
    }
  }
  const int threshold = rigidity_threshold(n, d);
  // Two realisations guard against an unlucky rank drop at one of them.
  for (int attempt = 0; attempt < 4; ++attempt) {
    const auto pts =
        random_integer_points(n, d, derive_seed(seed, Stream::kRankSample, 100 + attempt));
    const PrimeField field(kRankPrimes[attempt % 2]);
    ModularEchelon basis(field, n * d);
    std::vector<Edge> kept;
    for (const Edge& e : order) {
      if (basis.insert(modular_rigidity_row(field, e, n, d, pts))) kept.push_back(e);
      if (static_cast<int>(kept.size()) == threshold) break;
    }
    if (static_cast<int>(kept.size()) == threshold) return Graph(n, std::move(kept));
  }
  throw Error(ErrorKind::kNotRigid, "graph is not d-rigid (no full-rank spanning subgraph found)");
}

}  // namespace rigidity
