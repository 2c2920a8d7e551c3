#include <random>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace rigidity;
using testing_support::bareiss_rank;
using testing_support::integer_rigidity_matrix;
using testing_support::load;

namespace {

RealFramework random_real_framework(const Graph& g, int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  RealFramework::Points p(g.vertex_count(), d);
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int j = 0; j < d; ++j) p(v, j) = coord(rng);
  return RealFramework(g, d, p);
}

ComplexFramework random_complex_framework(const Graph& g, int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  ComplexFramework::Points p(g.vertex_count(), d);
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int j = 0; j < d; ++j) p(v, j) = {coord(rng), coord(rng)};
  return ComplexFramework(g, d, p);
}

Graph octahedron() { return load("octahedron.faces"); }

template <typename Scalar>
double max_relative_length_change(const Framework<Scalar>& a, const Framework<Scalar>& b) {
  double worst = 0.0;
  const int n = a.graph.vertex_count();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      const Scalar x = a.half_squared_length(u, v);
      const Scalar y = b.half_squared_length(u, v);
      worst = std::max(worst, std::abs(x - y) / std::max(1.0, std::abs(x)));
    }
  return worst;
}

}  // namespace

TEST(RigidityMatrix, SingleBarOnTheLine) {
  RealFramework::Points p(2, 1);
  p << 0.0, 5.0;
  const auto r = rigidity_matrix(RealFramework(Graph::complete(2), 1, p));
  ASSERT_EQ(r.rows(), 1);
  ASSERT_EQ(r.cols(), 2);
  EXPECT_DOUBLE_EQ(r(0, 0), -5.0);
  EXPECT_DOUBLE_EQ(r(0, 1), 5.0);
}

TEST(RigidityMatrix, TriangleHasRankThree) {
  RealFramework::Points p(3, 2);
  p << 0, 0, 1, 0, 0, 1;
  const auto r = rigidity_matrix(RealFramework(Graph::complete(3), 2, p));
  EXPECT_EQ(r.rows(), 3);
  EXPECT_EQ(r.cols(), 6);
  EXPECT_EQ(numerical_rank(r), 3);
}

TEST(RigidityMatrix, RowPattern) {
  std::mt19937_64 rng(3);
  const Graph g = load("hinged_triangles.edges");
  const RealFramework f = random_real_framework(g, 2, rng);
  const auto r = rigidity_matrix(f);
  int row = 0;
  for (const Edge& e : g.edges()) {
    for (Vertex w = 0; w < g.vertex_count(); ++w)
      for (int j = 0; j < 2; ++j) {
        double expect = 0.0;
        if (w == e.u) expect = f.points(e.u, j) - f.points(e.v, j);
        if (w == e.v) expect = f.points(e.v, j) - f.points(e.u, j);
        EXPECT_EQ(r(row, 2 * w + j), expect);
      }
    ++row;
  }
}

TEST(RigidityMatrix, DoubleBananaExactRankOracle) {
  const Graph g = load("double_banana.edges");
  ASSERT_EQ(g.vertex_count(), 8);
  ASSERT_EQ(g.edge_count(), 18);
  const auto pts = random_integer_points(8, 3, 99);
  EXPECT_EQ(bareiss_rank(integer_rigidity_matrix(g, 3, pts)), 17);
  for (auto p : kRankPrimes) EXPECT_EQ(modular_rigidity_rank(g, 3, pts, PrimeField(p)), 17);
}

TEST(GenericRank, Examples) {
  EXPECT_EQ(generic_rank(Graph::complete(4), 2).rank, 5);
  EXPECT_EQ(generic_rank(load("k4_minus_edge.edges"), 2).rank, 5);
  const RankWitness oct = generic_rank(octahedron(), 3);
  EXPECT_EQ(oct.rank, 12);
  EXPECT_EQ(oct.threshold, 12);
  // Oracle: exact rational rank at the witness realisation.
  const auto pts = random_integer_points(6, 3, oct.trial_seeds.front());
  EXPECT_EQ(bareiss_rank(integer_rigidity_matrix(octahedron(), 3, pts)), 12);
}

TEST(GenericRank, Thresholds) {
  EXPECT_EQ(rigidity_threshold(4, 2), 5);
  EXPECT_EQ(rigidity_threshold(6, 3), 12);
  EXPECT_EQ(rigidity_threshold(3, 3), 3);
  EXPECT_EQ(rigidity_threshold(1, 2), 0);
}

TEST(GenericRank, FullRankAtAlmostEverySeed) {
  const Graph g = load("prism_g1.edges");
  int hits = 0;
  const int seeds = 300;
  for (int s = 0; s < seeds; ++s) {
    const auto pts = random_integer_points(8, 2, 1000 + s);
    if (modular_rigidity_rank(g, 2, pts, PrimeField(kRankPrimes[s % 2])) == 13) ++hits;
  }
  EXPECT_GE(hits, seeds * 99 / 100);
}

TEST(GenericRank, AgreesWithBareissOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + trial % 3;
    const int n = std::uniform_int_distribution<int>(2, 8)(rng);
    const Graph g = testing_support::random_graph(n, 0.6, rng);
    const auto pts = random_integer_points(n, d, 7000 + trial, 50);  // small box: rank drops happen
    const int exact = bareiss_rank(integer_rigidity_matrix(g, d, pts));
    for (auto p : kRankPrimes) EXPECT_EQ(modular_rigidity_rank(g, d, pts, PrimeField(p)), exact);
  }
}

TEST(IsRigid, Examples) {
  EXPECT_TRUE(is_d_rigid(Graph::complete(4), 3).rigid);
  const RigidityVerdict c4 = is_d_rigid(load("c4.edges"), 2);
  EXPECT_FALSE(c4.rigid);
  EXPECT_TRUE(c4.probabilistic);
  ASSERT_TRUE(c4.pebble_rigid.has_value());
  EXPECT_FALSE(*c4.pebble_rigid);
  EXPECT_FALSE(is_d_rigid(load("double_banana.edges"), 3).rigid);
  // Double banana is rigid for the (3,6) count but flexible: a count-only test would be wrong.
  EXPECT_EQ(load("double_banana.edges").edge_count(), rigidity_threshold(8, 3));
  EXPECT_FALSE(is_d_rigid(Graph(3, {Edge(0, 1), Edge(1, 2)}), 2).rigid);
  EXPECT_TRUE(is_d_rigid(Graph(1), 2).rigid);
}

TEST(IsRigid, Minimality) {
  EXPECT_TRUE(is_minimally_d_rigid(load("k4_minus_edge.edges"), 2));
  EXPECT_FALSE(is_minimally_d_rigid(Graph::complete(4), 2));
  EXPECT_TRUE(is_minimally_d_rigid(octahedron(), 3));
  EXPECT_TRUE(is_minimally_d_rigid(load("icosahedron.faces"), 3));
  std::ifstream in(testing_support::data_path("sphere_corpus.json"));
  for (const auto& entry : nlohmann::json::parse(in))
    EXPECT_TRUE(is_minimally_d_rigid(parse_json_graph(entry.dump()).graph, 3));
}

TEST(SpanningSubgraph, Examples) {
  const Graph k4 = Graph::complete(4);
  const Graph h = spanning_minimally_rigid_subgraph(k4, 2);
  EXPECT_EQ(h.vertex_count(), 4);
  EXPECT_EQ(h.edge_count(), 5);
  EXPECT_TRUE(isomorphic(h, load("k4_minus_edge.edges")));

  const Graph g2 = load("prism_g2.edges");
  EXPECT_EQ(spanning_minimally_rigid_subgraph(g2, 2), g2);

  const Graph g1 = load("prism_g1.edges");
  const Graph s = spanning_minimally_rigid_subgraph(g1, 2, 17, true);
  EXPECT_EQ(s.edge_count(), 13);
  EXPECT_TRUE(is_minimally_d_rigid(s, 2));
  for (const Edge& e : s.edges()) EXPECT_TRUE(g1.has_edge(e));

  EXPECT_THROW(spanning_minimally_rigid_subgraph(load("c4.edges"), 2), Error);
}

TEST(CanonicalPin, TriangleExample) {
  RealFramework::Points p(3, 2);
  p << 2, 1, 3, 4, -1, 0;
  const RealFramework f(Graph::complete(3), 2, p);
  const std::vector<Vertex> pins{0, 1};
  const RealFramework q = canonical_pin(f, std::span<const Vertex>(pins));
  EXPECT_EQ(q.points(0, 0), 0.0);
  EXPECT_EQ(q.points(0, 1), 0.0);
  EXPECT_EQ(q.points(1, 1), 0.0);
  EXPECT_LT(max_relative_length_change(f, q), 1e-12);
}

TEST(CanonicalPin, IdempotentUpToSigns) {
  RealFramework::Points p(3, 2);
  p << 0, 0, 2, 0, 1, 3;
  const RealFramework f(Graph::complete(3), 2, p);
  const std::vector<Vertex> pins{0, 1};
  const RealFramework q = canonical_pin(f, std::span<const Vertex>(pins));
  for (int v = 0; v < 3; ++v)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(q.points(v, j)), std::abs(p(v, j)), 1e-12);
}

TEST(CanonicalPin, PreservesLengthsRealAndComplex) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 4;
    const int n = d + std::uniform_int_distribution<int>(0, 5)(rng);
    const Graph g = Graph::complete(n);
    std::vector<Vertex> all(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) all[v] = v;
    std::shuffle(all.begin(), all.end(), rng);
    const std::vector<Vertex> pins(all.begin(), all.begin() + d);

    const RealFramework r = random_real_framework(g, d, rng);
    const RealFramework rp = canonical_pin(r, std::span<const Vertex>(pins));
    EXPECT_LT(max_relative_length_change(r, rp), 1e-10);

    const ComplexFramework c = random_complex_framework(g, d, rng);
    const ComplexFramework cp = canonical_pin(c, std::span<const Vertex>(pins));
    EXPECT_LT(max_relative_length_change(c, cp), 1e-10);
    for (int col : pinned_columns(d, pins)) EXPECT_EQ(cp.points(col / d, col % d), Complex(0.0));
  }
}

TEST(CanonicalPin, ComplexKFourMinusEdge) {
  std::mt19937_64 rng(8);
  const Graph g = load("k4_minus_edge.edges");
  const ComplexFramework c = random_complex_framework(g, 2, rng);
  const std::vector<Vertex> pins{0, 1};
  const ComplexFramework cp = canonical_pin(c, std::span<const Vertex>(pins));
  const auto a = c.edge_measurements();
  const auto b = cp.edge_measurements();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LT(std::abs(a[i] - b[i]) / std::abs(a[i]), 1e-10);
}

TEST(CanonicalPin, DegeneratePins) {
  RealFramework::Points p(3, 2);
  p << 1, 1, 1, 1, 0, 2;  // first two pins coincide
  const std::vector<Vertex> pins{0, 1};
  try {
    canonical_pin(RealFramework(Graph::complete(3), 2, p), std::span<const Vertex>(pins));
    FAIL() << "coincident pins accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegeneratePins);
  }
  // Complex isotropic difference vector (1, i) has zero bilinear norm.
  ComplexFramework::Points q(3, 2);
  q << Complex(0), Complex(0), Complex(1), Complex(0, 1), Complex(2), Complex(3);
  EXPECT_THROW(canonical_pin(ComplexFramework(Graph::complete(3), 2, q), std::span<const Vertex>(pins)), Error);
}

TEST(Properties, MaxwellBoundOnTenThousandFrameworks) {
  std::mt19937_64 rng(1234);
  int violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int d = 1 + trial % 3;
    const int n = std::uniform_int_distribution<int>(d + 1, 9)(rng);
    const double p = std::uniform_real_distribution<double>(0.2, 1.0)(rng);
    const Graph g = testing_support::random_graph(n, p, rng);
    const auto pts = random_integer_points(n, d, rng());
    const int rank = modular_rigidity_rank(g, d, pts, PrimeField(kRankPrimes[trial % 2]));
    if (rank > rigidity_threshold(n, d)) ++violations;
    if (trial % 10 == 0) {
      const RealFramework f = random_real_framework(g, d, rng);
      if (numerical_rank(rigidity_matrix(f)) > rigidity_threshold(n, d)) ++violations;
    }
  }
  EXPECT_EQ(violations, 0);
}

TEST(Properties, PebbleGameMatchesRankForAllGraphsUpToSix) {
  int checked = 0;
  for (int n = 1; n <= 6; ++n) {
    for (const Graph& g : testing_support::all_labelled_graphs(n)) {
      const bool by_rank = generic_rank(g, 2).rank == rigidity_threshold(n, 2);
      ASSERT_EQ(pebble_game_rigid(g, 2, 3), by_rank) << serialize_edge_list(g);
      if (n >= 3) EXPECT_EQ(pebble_game_rank(g, 2, 3), generic_rank(g, 2).rank) << serialize_edge_list(g);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 1 + 2 + 8 + 64 + 1024 + 32768);
}

TEST(Properties, PinnedJacobianRankMatchesInfinitesimalRigidity) {
  std::mt19937_64 rng(77);
  int rigid_cases = 0;
  int flexible_cases = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 2 + trial % 2;
    const int n = std::uniform_int_distribution<int>(d + 2, 8)(rng);
    const Graph g = testing_support::random_graph(n, 0.7, rng);
    const RealFramework f = random_real_framework(g, d, rng);
    std::vector<Vertex> pins(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) pins[k] = k;
    const RealFramework pinned = canonical_pin(f, std::span<const Vertex>(pins));
    const auto full = rigidity_matrix(pinned);
    const auto dropped = pinned_columns(d, pins);
    Eigen::MatrixXd reduced(full.rows(), full.cols() - static_cast<Eigen::Index>(dropped.size()));
    int c = 0;
    for (int col = 0; col < full.cols(); ++col) {
      if (std::find(dropped.begin(), dropped.end(), col) != dropped.end()) continue;
      reduced.col(c++) = full.col(col);
    }
    const int threshold = rigidity_threshold(n, d);
    const bool inf_rigid = numerical_rank(rigidity_matrix(f)) == threshold;
    EXPECT_EQ(numerical_rank(reduced) == threshold, inf_rigid);
    (inf_rigid ? rigid_cases : flexible_cases)++;
  }
  EXPECT_GT(rigid_cases, 20);
  EXPECT_GT(flexible_cases, 20);
}
