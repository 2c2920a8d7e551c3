#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rigidity/error.hpp"
#include "rigidity/graph.hpp"

namespace rigidity {

/// Result of reading a graph file. `labels[i]` is the id vertex i carried in
/// the input before compaction.
struct ParsedGraph {
  Graph graph;
  std::vector<long long> labels;
  std::optional<Triangulation> triangulation;
};

namespace detail {

struct Token {
  std::string text;
  int line;
};

inline std::vector<Token> tokenize_edge_list(const std::string& text) {
  std::vector<Token> tokens;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ';' || c == ',') {
      tokens.push_back({std::string(1, c), line});
      ++i;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
             text[j] != ';' && text[j] != ',' && text[j] != '#') {
        ++j;
      }
      tokens.push_back({text.substr(i, j - i), line});
      i = j;
    }
  }
  return tokens;
}

inline long long parse_int(const Token& tok) {
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(tok.text, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected integer, got '" + tok.text + "'", tok.line);
  }
  if (pos != tok.text.size()) {
    throw ParseError("expected integer, got '" + tok.text + "'", tok.line);
  }
  return value;
}

/// Maps raw ids onto [0, n). Ids already inside [0, n) are kept verbatim;
/// otherwise the distinct ids are assigned in ascending order.
inline std::vector<long long> compact_ids(long long n, const std::vector<long long>& ids,
                                          std::map<long long, int>& index) {
  bool dense = true;
  for (long long id : ids) dense = dense && id >= 0 && id < n;
  std::vector<long long> labels(static_cast<std::size_t>(n));
  if (dense) {
    for (long long i = 0; i < n; ++i) {
      labels[i] = i;
      index[i] = static_cast<int>(i);
    }
    return labels;
  }
  std::set<long long> distinct(ids.begin(), ids.end());
  if (static_cast<long long>(distinct.size()) > n) {
    throw ParseError("more distinct vertex ids than declared n=" + std::to_string(n), 0);
  }
  int next = 0;
  for (long long id : distinct) {
    labels[next] = id;
    index[id] = next++;
  }
  // Unused slots become isolated vertices labelled past the largest id.
  long long filler = distinct.empty() ? 0 : *distinct.rbegin() + 1;
  for (; next < n; ++next) labels[next] = filler++;
  return labels;
}

}  // namespace detail

/// Parses `n; u v, u v, ...`. Whitespace is insignificant, `#` starts a
/// comment, and a trailing comma is tolerated.
inline ParsedGraph parse_edge_list(const std::string& text) {
  auto tokens = detail::tokenize_edge_list(text);
  if (tokens.size() < 2 || tokens[1].text != ";") {
    throw ParseError("edge list must start with 'n;'", tokens.empty() ? 1 : tokens[0].line);
  }
  const long long n = detail::parse_int(tokens[0]);
  if (n < 0 || n > 1'000'000) throw ParseError("invalid vertex count", tokens[0].line);

  struct RawEdge {
    long long a, b;
    int line;
  };
  std::vector<RawEdge> raw;
  std::size_t i = 2;
  while (i < tokens.size()) {
    if (tokens[i].text == ",") {
      ++i;
      continue;
    }
    if (i + 1 >= tokens.size() || tokens[i + 1].text == "," || tokens[i + 1].text == ";") {
      throw ParseError("malformed edge, expected 'u v'", tokens[i].line);
    }
    RawEdge e{detail::parse_int(tokens[i]), detail::parse_int(tokens[i + 1]), tokens[i].line};
    i += 2;
    if (i < tokens.size() && tokens[i].text != ",") {
      throw ParseError("malformed edge, expected ',' after 'u v'", tokens[i].line);
    }
    raw.push_back(e);
  }

  std::vector<long long> ids;
  for (const auto& e : raw) {
    if (e.a == e.b) throw ParseError("loop edge at vertex " + std::to_string(e.a), e.line);
    ids.push_back(e.a);
    ids.push_back(e.b);
  }
  std::map<long long, int> index;
  ParsedGraph out;
  out.labels = detail::compact_ids(n, ids, index);
  std::set<Edge> seen;
  std::vector<Edge> edges;
  for (const auto& e : raw) {
    Edge edge(index.at(e.a), index.at(e.b));
    if (!seen.insert(edge).second) {
      throw ParseError("duplicate edge " + std::to_string(e.a) + " " + std::to_string(e.b),
                       e.line);
    }
    edges.push_back(edge);
  }
  out.graph = Graph(static_cast<int>(n), std::move(edges));
  return out;
}

/// Parses `{"n": int, "edges": [[u,v],...], "faces": [[a,b,c],...]}`. When
/// only faces are given the edges are the 1-skeleton.
inline ParsedGraph parse_json_graph(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
    throw ParseError("JSON graph needs an integer field 'n'", 0);
  }
  const long long n = doc["n"].get<long long>();
  if (n < 0) throw ParseError("invalid vertex count", 0);

  ParsedGraph out;
  std::vector<long long> ids;
  std::vector<std::pair<long long, long long>> raw;
  if (doc.contains("edges")) {
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2) throw ParseError("edge must be [u, v]", 0);
      long long a = e[0].get<long long>();
      long long b = e[1].get<long long>();
      if (a == b) throw ParseError("loop edge at vertex " + std::to_string(a), 0);
      raw.emplace_back(a, b);
      ids.push_back(a);
      ids.push_back(b);
    }
  }
  std::vector<std::array<long long, 3>> raw_faces;
  if (doc.contains("faces")) {
    for (const auto& f : doc["faces"]) {
      if (!f.is_array() || f.size() != 3) throw ParseError("face must be [a, b, c]", 0);
      raw_faces.push_back({f[0].get<long long>(), f[1].get<long long>(), f[2].get<long long>()});
      for (long long v : raw_faces.back()) ids.push_back(v);
    }
  }
  std::map<long long, int> index;
  out.labels = detail::compact_ids(n, ids, index);

  if (!raw_faces.empty()) {
    std::vector<Triangulation::Face> faces;
    for (const auto& f : raw_faces) faces.push_back({index.at(f[0]), index.at(f[1]), index.at(f[2])});
    out.triangulation = Triangulation(static_cast<int>(n), std::move(faces));
  }
  if (raw.empty() && out.triangulation) {
    out.graph = triangulation_graph(*out.triangulation);
    return out;
  }
  std::set<Edge> seen;
  std::vector<Edge> edges;
  for (const auto& [a, b] : raw) {
    Edge edge(index.at(a), index.at(b));
    if (!seen.insert(edge).second) {
      throw ParseError("duplicate edge " + std::to_string(a) + " " + std::to_string(b), 0);
    }
    edges.push_back(edge);
  }
  out.graph = Graph(static_cast<int>(n), std::move(edges));
  if (out.triangulation && !(triangulation_graph(*out.triangulation) == out.graph)) {
    throw ParseError("edges do not match the 1-skeleton of the faces", 0);
  }
  return out;
}

/// Dispatches on the first non-space character: `{` means JSON.
inline ParsedGraph parse_graph(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return parse_json_graph(text);
    break;
  }
  return parse_edge_list(text);
}

inline ParsedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str());
}

/// Canonical edge-list text; `parse_edge_list(serialize_edge_list(g)).graph == g`.
inline std::string serialize_edge_list(const Graph& g) {
  std::string out = std::to_string(g.vertex_count()) + ";";
  bool first = true;
  for (const Edge& e : g.edges()) {
    out += first ? " " : ", ";
    out += std::to_string(e.u) + " " + std::to_string(e.v);
    first = false;
  }
  return out;
}

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

inline Graph graph_from_json(const nlohmann::json& j) {
  return parse_json_graph(j.dump()).graph;
}

inline nlohmann::json triangulation_to_json(const Triangulation& t) {
  nlohmann::json faces = nlohmann::json::array();
  for (const auto& f : t.faces()) faces.push_back({f[0], f[1], f[2]});
  return {{"n", t.vertex_count()}, {"faces", faces}};
}

}  // namespace rigidity
