#include <gtest/gtest.h>

#include "support.hpp"

using namespace rigidity;
using testing_support::complete_multipartite;
using testing_support::data_path;
using testing_support::engine;
using testing_support::load;

namespace {

Triangulation load_faces(const std::string& name) { return *read_graph_file(data_path(name)).triangulation; }

Graph k5_minus_edge() { return Graph::complete(5).without_edge(Edge(3, 4)); }

ErrorKind error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST(Factorize, Examples) {
  EXPECT_EQ(factorize(45).factorization, (std::vector<long long>{3, 3, 5}));
  EXPECT_EQ(factorize(45).k(), 3);
  EXPECT_EQ(factorize(32).k(), 5);
  EXPECT_TRUE(factorize(1).factorization.empty());
  EXPECT_EQ(factorize(97).factorization, (std::vector<long long>{97}));
  EXPECT_THROW(factorize(0), Error);
}

TEST(Factorize, ProductProperty) {
  for (long long c = 1; c <= 5000; ++c) {
    long long product = 1;
    for (long long p : factorize(c).factorization) product *= p;
    EXPECT_EQ(product, c);
  }
}

TEST(SpanningDivisibility, KFourOverKFourMinusEdge) {
  const Certificate c = check_spanning_divisibility(Graph::complete(4), load("k4_minus_edge.edges"), 2, engine());
  EXPECT_EQ(c.verdict, Verdict::kVerified);
  EXPECT_EQ(c.evidence["G"]["c"], 1);
  EXPECT_EQ(c.evidence["H"]["c"], 2);
}

TEST(SpanningDivisibility, TrivialAndInvalid) {
  const Graph g = load("prism_g1.edges");
  EXPECT_EQ(check_spanning_divisibility(g, g, 2, engine()).verdict, Verdict::kVerified);
  EXPECT_EQ(error_kind([] { check_spanning_divisibility(Graph::complete(4), Graph::complete(3), 2); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(error_kind([] { check_spanning_divisibility(Graph::complete(4), load("c4.edges"), 2); }),
            ErrorKind::kNotRigid);
}

TEST(SubgraphDivisibility, KFiveMinusEdgeInsideAHost) {
  const Graph host = zero_extension(k5_minus_edge(), 3, {0, 3, 4}).graph;
  const Graph k5e = k5_minus_edge();
  std::vector<Edge> h(k5e.edges().begin(), k5e.edges().end());
  const Certificate c = check_subgraph_divisibility(host, h, 3, engine());
  EXPECT_EQ(c.verdict, Verdict::kVerified);
  EXPECT_EQ(c.evidence["H"]["c"], 2);
  EXPECT_EQ(c.evidence["G"]["c"], 4);
}

TEST(SubgraphDivisibility, TrivialAndHypothesisFailure) {
  const Graph g = load("hinged_triangles.edges");
  std::vector<Edge> all(g.edges().begin(), g.edges().end());
  EXPECT_EQ(check_subgraph_divisibility(g, all, 2, engine()).verdict, Verdict::kVerified);
  // Triangle in K5 (d = 2): K5 is never minimally rigid, whatever replaces the triangle.
  EXPECT_EQ(error_kind([] {
              check_subgraph_divisibility(Graph::complete(5), {Edge(0, 1), Edge(0, 2), Edge(1, 2)}, 2, engine());
            }),
            ErrorKind::kHypothesisNotEstablished);
}

TEST(SubgraphDivisibility, OneExtensionHost) {
  // The clique K3 = {0, 2, 4} of a 1-extension of K4 - e: 1 divides anything.
  const Graph g = one_extension(load("k4_minus_edge.edges"), 2, Edge(0, 1), {2}).graph;
  const Certificate c = check_subgraph_divisibility(g, {Edge(0, 2), Edge(0, 4), Edge(2, 4)}, 2, engine());
  EXPECT_EQ(c.verdict, Verdict::kVerified);
}

TEST(EdgeAdditionDrop, Examples) {
  const Certificate k4e = check_edge_addition_drop(load("k4_minus_edge.edges"), Edge(2, 3), 2, engine());
  EXPECT_EQ(k4e.verdict, Verdict::kVerified);
  EXPECT_EQ(k4e.evidence["G"]["c"], 2);
  EXPECT_EQ(k4e.evidence["G_plus_ij"]["c"], 1);
  EXPECT_TRUE(k4e.evidence["dropped"].get<bool>());

  // Two K4's sharing a triangle in 3-space, plus the cross edge.
  const Certificate glued = check_edge_addition_drop(k5_minus_edge(), Edge(3, 4), 3, engine());
  EXPECT_EQ(glued.verdict, Verdict::kVerified);
  EXPECT_EQ(glued.evidence["G"]["c"], 2);
  EXPECT_EQ(glued.evidence["G_plus_ij"]["c"], 1);

  const Graph wheel_minus = Graph::complete(5).without_edge(Edge(0, 1));
  const Certificate same = check_edge_addition_drop(wheel_minus, Edge(0, 1), 2, engine());
  EXPECT_EQ(same.verdict, Verdict::kVerified);
  EXPECT_FALSE(same.evidence["dropped"].get<bool>());

  EXPECT_THROW(check_edge_addition_drop(Graph::complete(4), Edge(0, 1), 2), Error);
}

TEST(GreedyAugment, MultipartiteNeedsTMinusOneEdges) {
  const Certificate c = greedy_augment(complete_multipartite(2, 3), 2, engine());
  EXPECT_EQ(c.verdict, Verdict::kVerified);
  EXPECT_EQ(c.evidence["k"], 2);
  EXPECT_EQ(c.evidence["F"].size(), 2U);
  EXPECT_EQ(c.evidence["final_count"], 1);
}

TEST(GreedyAugment, GloballyRigidInputAndBudget) {
  const Certificate c = greedy_augment(Graph::complete(4), 2, engine());
  EXPECT_EQ(c.verdict, Verdict::kVerified);
  EXPECT_TRUE(c.evidence["F"].empty());
  EXPECT_EQ(error_kind([] { greedy_augment(complete_multipartite(2, 3), 2, engine(), 1); }),
            ErrorKind::kBudgetExhausted);
}

TEST(SphereBound, TetrahedronAndOctahedron) {
  const Certificate tet = certify_sphere_bound(load_faces("tetrahedron.faces"), engine());
  EXPECT_EQ(tet.verdict, Verdict::kVerified);
  EXPECT_EQ(tet.evidence["bound"], 1);
  EXPECT_EQ(tet.evidence["count"]["c"], 1);

  const Certificate oct = certify_sphere_bound(load_faces("octahedron.faces"), engine());
  EXPECT_EQ(oct.verdict, Verdict::kVerified);
  EXPECT_EQ(oct.evidence["bound"], 4);
  EXPECT_EQ(oct.evidence["sequence_length"], 2);
  EXPECT_GE(oct.evidence["count"]["c"].get<long long>(), 4);
}

TEST(SphereBound, StackedSphereAndIcosahedronWithoutCounting) {
  // Stacked sphere on 7 vertices: three face subdivisions of the tetrahedron.
  using Face = Triangulation::Face;
  std::vector<Face> faces{Face{0, 1, 2}, Face{0, 1, 3}, Face{0, 2, 3}, Face{1, 2, 3}};
  for (Vertex v = 4; v < 7; ++v) {
    const Face f = faces.front();
    faces.erase(faces.begin());
    faces.push_back(Face{f[0], f[1], v});
    faces.push_back(Face{f[0], f[2], v});
    faces.push_back(Face{f[1], f[2], v});
  }
  const Certificate stacked = certify_sphere_bound(Triangulation(7, faces), engine());
  EXPECT_EQ(stacked.verdict, Verdict::kVerified);
  EXPECT_EQ(stacked.evidence["bound"], 8);
  EXPECT_EQ(stacked.evidence["sequence_length"], 3);
  EXPECT_FALSE(stacked.evidence["counted"].get<bool>());

  const Certificate ico = certify_sphere_bound(load_faces("icosahedron.faces"), engine());
  EXPECT_EQ(ico.verdict, Verdict::kVerified);
  EXPECT_EQ(ico.evidence["bound"], 256);
  EXPECT_EQ(ico.evidence["sequence_length"], 8);
}

TEST(OperationEffect, ZeroExtensionDoubles) {
  const Graph g = load("k4_minus_edge.edges");
  const OperationResult r = zero_extension(g, 2, {0, 3});
  const Certificate c = verify_operation_effect(r.step, g, r.graph, engine());
  EXPECT_EQ(c.verdict, Verdict::kVerified);
  EXPECT_EQ(c.claim, ClaimKind::kExactFactor);
  EXPECT_EQ(c.evidence["G"]["c"], 2);
  EXPECT_EQ(c.evidence["G_prime"]["c"], 4);
}

TEST(OperationEffect, SplitsAndOneExtension) {
  const Graph hinged = load("hinged_triangles.edges");
  std::vector<Vertex> nbrs(hinged.neighbors(0).begin(), hinged.neighbors(0).end());
  ASSERT_EQ(nbrs.size(), 3U);
  const OperationResult split = vertex_split(hinged, 2, 0, {nbrs[1]}, {nbrs[2]}, {nbrs[0]});
  const Certificate vs = verify_operation_effect(split.step, hinged, split.graph, engine());
  EXPECT_EQ(vs.verdict, Verdict::kVerified);
  EXPECT_EQ(vs.claim, ClaimKind::kLowerBound);
  EXPECT_GE(vs.evidence["G_prime"]["c"].get<long long>(), 2 * vs.evidence["G"]["c"].get<long long>());

  const OperationResult spider = spider_split(hinged, 2, 0, {nbrs[2]}, {}, {nbrs[0], nbrs[1]});
  EXPECT_EQ(verify_operation_effect(spider.step, hinged, spider.graph, engine()).verdict, Verdict::kVerified);

  const Graph k4e = load("k4_minus_edge.edges");
  ASSERT_TRUE(k4e.has_edge(Edge(0, 1)) && k4e.has_edge(Edge(0, 2)) && k4e.has_edge(Edge(1, 2)));
  const OperationResult one = one_extension(k4e, 2, Edge(0, 1), {2});
  ASSERT_EQ(one.step.effect.kind, EffectKind::kExactFactor);
  const Certificate oe = verify_operation_effect(one.step, k4e, one.graph, engine());
  EXPECT_EQ(oe.verdict, Verdict::kVerified);
}

TEST(OperationEffect, XReplacementDoublesKFiveMinusEdge) {
  const Graph h = k5_minus_edge();
  const OperationResult x = xv_replacement(h, ReplacementKind::kX, Edge(0, 1), Edge(2, 3), {4}, 3);
  const Certificate c = verify_operation_effect(x.step, h, x.graph, engine());
  EXPECT_EQ(c.verdict, Verdict::kVerified);
  EXPECT_EQ(c.evidence["G"]["c"], 2);
  EXPECT_EQ(c.evidence["G_prime"]["c"], 4);
}

TEST(OperationEffect, SubstitutionRatio) {
  const Graph host = zero_extension(Graph::complete(5), 3, {0, 1, 2}).graph;
  const OperationResult r = subgraph_substitution(host, EmbeddedGraph{Graph::complete(5), {0, 1, 2, 3, 4}},
                                                  EmbeddedGraph{k5_minus_edge(), {0, 1, 2, 3, 4}}, 3);
  // The host is not minimally rigid, so the witness search is what establishes the hypothesis.
  const Certificate c = verify_operation_effect(r.step, host, r.graph, engine());
  EXPECT_EQ(c.verdict, Verdict::kVerified);
  EXPECT_EQ(c.evidence["H_prime"]["c"], 2);
  EXPECT_EQ(c.evidence["H"]["c"], 1);
}

TEST(OperationEffect, Refusals) {
  const Graph g(4, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3), Edge(0, 2)});
  const OperationResult none = one_extension(g, 2, Edge(0, 1), {3});
  EXPECT_EQ(error_kind([&] { verify_operation_effect(none.step, g, none.graph); }),
            ErrorKind::kHypothesisNotEstablished);
  // Vertex split of a redundantly rigid graph: no prediction is made.
  const OperationResult split = vertex_split(Graph::complete(4), 2, 0, {1}, {2}, {3});
  EXPECT_EQ(error_kind([&] { verify_operation_effect(split.step, Graph::complete(4), split.graph); }),
            ErrorKind::kHypothesisNotEstablished);
  const OperationResult z = zero_extension(Graph::complete(3), 2, {0, 1});
  EXPECT_EQ(error_kind([&] { verify_operation_effect(z.step, Graph::complete(3), Graph::complete(4)); }),
            ErrorKind::kInvalidArgument);
}

TEST(Recheck, CertificatesReproduce) {
  std::vector<Certificate> certs;
  certs.push_back(check_spanning_divisibility(Graph::complete(4), load("k4_minus_edge.edges"), 2, engine(3)));
  certs.push_back(check_edge_addition_drop(load("hinged_triangles.edges"), Edge(0, 4), 2, engine(4)));
  certs.push_back(greedy_augment(complete_multipartite(2, 2), 2, engine(5)));
  certs.push_back(certify_sphere_bound(load_faces("tetrahedron.faces"), engine(6)));
  const OperationResult z = zero_extension(load("hinged_triangles.edges"), 2, {1, 4});
  certs.push_back(verify_operation_effect(z.step, load("hinged_triangles.edges"), z.graph, engine(7)));
  const Graph host = zero_extension(Graph::complete(3), 2, {0, 1}).graph;
  certs.push_back(check_subgraph_divisibility(host, {Edge(0, 1), Edge(0, 2), Edge(1, 2)}, 2, engine(8)));
  for (const Certificate& c : certs) {
    const nlohmann::json j = to_json(c);
    EXPECT_EQ(j["schema_version"], kCertificateSchemaVersion);
    const Recheck r = recheck_certificate(nlohmann::json::parse(j.dump()));
    EXPECT_TRUE(r.matches) << c.check;
    EXPECT_EQ(to_json(r.recomputed).dump(), j.dump()) << c.check;
  }
}

TEST(Recheck, TamperingIsDetected) {
  nlohmann::json j = to_json(check_edge_addition_drop(load("k4_minus_edge.edges"), Edge(2, 3), 2, engine()));
  j["verdict"] = "refuted";
  EXPECT_FALSE(recheck_certificate(j).matches);
  j["verdict"] = "verified";
  j["evidence"]["G"]["c"] = 3;
  EXPECT_FALSE(recheck_certificate(j).matches);
  j["schema_version"] = 99;
  EXPECT_THROW(recheck_certificate(j), Error);
}

TEST(Certificate, DeterministicJson) {
  const auto a = to_json(greedy_augment(complete_multipartite(2, 3), 2, engine(77))).dump();
  const auto b = to_json(greedy_augment(complete_multipartite(2, 3), 2, engine(77))).dump();
  EXPECT_EQ(a, b);
}
