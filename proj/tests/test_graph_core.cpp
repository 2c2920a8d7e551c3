#include <random>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace rigidity;
using testing_support::data_path;
using testing_support::load;

namespace {

Triangulation load_faces(const std::string& name) { return *read_graph_file(data_path(name)).triangulation; }

ErrorKind parse_error_kind(const std::string& text) {
  try {
    parse_graph(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST(Graph, ParsesCompleteGraphOnFour) {
  const Graph g = parse_graph("4; 0 1, 0 2, 0 3, 1 2, 1 3, 2 3").graph;
  EXPECT_EQ(g.vertex_count(), 4);
  EXPECT_EQ(g.edge_count(), 6);
  EXPECT_TRUE(g.is_complete());
}

TEST(Graph, RejectsLoop) { EXPECT_EQ(parse_error_kind("2; 0 0"), ErrorKind::kParse); }

TEST(Graph, RejectsDuplicateEdgeWithLineNumber) {
  try {
    parse_graph("3; 0 1,\n1 2,\n1 0");
    FAIL() << "duplicate accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Graph, RejectsMalformedInput) {
  EXPECT_EQ(parse_error_kind("3 0 1"), ErrorKind::kParse);
  EXPECT_EQ(parse_error_kind("3; 0"), ErrorKind::kParse);
  EXPECT_EQ(parse_error_kind("3; 0 x"), ErrorKind::kParse);
  EXPECT_EQ(parse_error_kind("{\"n\": 3, \"edges\": [[0, 1, 2]]}"), ErrorKind::kParse);
  EXPECT_EQ(parse_error_kind("{\"n\": 2, \"edges\": [[0, 0]]}"), ErrorKind::kParse);
}

TEST(Graph, CompactsSparseIds) {
  const ParsedGraph p = parse_graph("3; 10 20, 20 30");
  EXPECT_EQ(p.graph.vertex_count(), 3);
  EXPECT_EQ(p.labels, (std::vector<long long>{10, 20, 30}));
  EXPECT_TRUE(p.graph.has_edge(Edge(0, 1)));
  EXPECT_TRUE(p.graph.has_edge(Edge(1, 2)));
}

TEST(Graph, ParsesJsonAndEdgeListIdentically) {
  const Graph a = parse_graph("4; 0 1, 1 2, 2 3").graph;
  const Graph b = parse_graph(R"({"n": 4, "edges": [[2, 3], [1, 0], [1, 2]]})").graph;
  EXPECT_EQ(a, b);
  EXPECT_EQ(graph_from_json(graph_to_json(a)), a);
}

TEST(Graph, EdgesAreSorted) {
  const Graph g(4, {Edge(3, 2), Edge(0, 3), Edge(1, 0)});
  const std::vector<Edge> expect{Edge(0, 1), Edge(0, 3), Edge(2, 3)};
  EXPECT_EQ(std::vector<Edge>(g.edges().begin(), g.edges().end()), expect);
}

TEST(Graph, PrismGraphEdgeCounts) {
  const Graph g2 = load("prism_g2.edges");
  EXPECT_EQ(g2.vertex_count(), 8);
  EXPECT_EQ(g2.edge_count(), 13);
  const Graph g1 = load("prism_g1.edges");
  EXPECT_EQ(g1.edge_count(), 14);
  EXPECT_EQ(load("prism_g3.edges").edge_count(), 13);
}

TEST(Graph, RoundTripProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = std::uniform_int_distribution<int>(0, 12)(rng);
    const Graph g = testing_support::random_graph(n, 0.4, rng);
    EXPECT_EQ(parse_edge_list(serialize_edge_list(g)).graph, g);
    EXPECT_EQ(graph_from_json(graph_to_json(g)), g);
  }
}

TEST(Graph, CommonNeighbors) {
  EXPECT_EQ(common_neighbors(Graph::complete(4), 0, 1), (std::vector<Vertex>{2, 3}));
  const Graph path(3, {Edge(0, 1), Edge(1, 2)});
  EXPECT_EQ(common_neighbors(path, 0, 2), (std::vector<Vertex>{1}));
  EXPECT_THROW(common_neighbors(path, 0, 5), Error);
  EXPECT_THROW(common_neighbors(path, 1, 1), Error);
}

TEST(Graph, OctahedronAdjacentPairsShareTwoNeighbours) {
  const Graph oct = triangulation_graph(load_faces("octahedron.faces"));
  // Oracle: the octahedron is K6 minus a perfect matching.
  int non_edges = 0;
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = u + 1; v < 6; ++v)
      if (!oct.has_edge(Edge(u, v))) ++non_edges;
  EXPECT_EQ(non_edges, 3);
  for (const Edge& e : oct.edges()) EXPECT_EQ(common_neighbors(oct, e.u, e.v).size(), 2U);
}

TEST(Graph, Dimension) {
  EXPECT_EQ(Dimension(3).value(), 3);
  EXPECT_THROW(Dimension(0), Error);
  EXPECT_THROW(Dimension(7), Error);
  EXPECT_EQ(Dimension(7, 8).value(), 7);
}

TEST(Triangulation, SkeletonsOfPlatonicSolids) {
  const Graph tet = triangulation_graph(load_faces("tetrahedron.faces"));
  EXPECT_EQ(tet, Graph::complete(4));
  const Graph oct = triangulation_graph(load_faces("octahedron.faces"));
  EXPECT_EQ(oct.vertex_count(), 6);
  EXPECT_EQ(oct.edge_count(), 12);
  EXPECT_EQ(load_faces("octahedron.faces").faces().size(), 8U);
  const Graph ico = triangulation_graph(load_faces("icosahedron.faces"));
  EXPECT_EQ(ico.vertex_count(), 12);
  EXPECT_EQ(ico.edge_count(), 30);
}

TEST(Triangulation, CorpusSatisfiesEdgeCount) {
  std::ifstream in(data_path("sphere_corpus.json"));
  const auto corpus = nlohmann::json::parse(in);
  ASSERT_EQ(corpus.size(), 23U);
  for (const auto& entry : corpus) {
    const Triangulation t = *parse_json_graph(entry.dump()).triangulation;
    const Graph g = triangulation_graph(t);
    EXPECT_EQ(g.edge_count(), 3 * g.vertex_count() - 6);
  }
}

TEST(Triangulation, RejectsInvalidFaceLists) {
  using Face = Triangulation::Face;
  EXPECT_THROW(Triangulation(3, {Face{0, 1, 2}, Face{0, 1, 2}}), Error);
  // Tetrahedron missing a face: three edges in one face only.
  EXPECT_THROW(Triangulation(4, {Face{0, 1, 2}, Face{0, 1, 3}, Face{0, 2, 3}}), Error);
  // Two tetrahedra sharing vertex 0: every edge is fine but the link of 0 is two cycles.
  std::vector<Face> pinched{Face{0, 1, 2}, Face{0, 1, 3}, Face{0, 2, 3}, Face{1, 2, 3},
                            Face{0, 4, 5}, Face{0, 4, 6}, Face{0, 5, 6}, Face{4, 5, 6}};
  try {
    Triangulation(7, pinched);
    FAIL() << "pinched sphere accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidTriangulation);
  }
}

TEST(Triangulation, FuzzedFaceListsAreRejected) {
  // Perturbing one vertex of one face breaks the two-faces-per-edge rule.
  const Triangulation ico = load_faces("icosahedron.faces");
  std::mt19937_64 rng(11);
  int rejected = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Triangulation::Face> faces(ico.faces().begin(), ico.faces().end());
    auto& f = faces[std::uniform_int_distribution<std::size_t>(0, faces.size() - 1)(rng)];
    const int slot = std::uniform_int_distribution<int>(0, 2)(rng);
    const Vertex replacement = std::uniform_int_distribution<Vertex>(0, 11)(rng);
    if (replacement == f[0] || replacement == f[1] || replacement == f[2]) continue;
    f[slot] = replacement;
    EXPECT_THROW(Triangulation(12, faces), Error);
    ++rejected;
  }
  EXPECT_GT(rejected, 200);
}

TEST(Triangulation, FaceFileMustMatchEdges) {
  EXPECT_EQ(parse_error_kind(R"({"n": 4, "edges": [[0, 1]], "faces": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]]})"),
            ErrorKind::kParse);
}
