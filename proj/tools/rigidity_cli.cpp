// Command-line front end: rigidity tests, realisation counts and certificates.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rigidity/all.hpp"

namespace {

using nlohmann::json;
using namespace rigidity;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // flexible, refuted, unreliable, mismatch
constexpr int kExitError = 2;

struct Options {
  int d = 2;
  std::uint64_t seed = kDefaultSeed;
  int samples = 2;
  int path_cap = 22;
  int threads = 0;
  int retries = 2;
  double corrector_tol = 1e-7;
  double dedup_tol = 1e-8;
  double real_tol = 1e-7;
  bool json_output = false;
  std::string out;
};

void add_common(CLI::App* cmd, Options& o, bool with_d = true) {
  if (with_d) cmd->add_option("--d", o.d, "dimension")->check(CLI::Range(1, 6));
  cmd->add_option("--seed", o.seed, "root seed for every random choice");
  cmd->add_option("--samples", o.samples, "independent generic samples per count")->check(CLI::Range(1, 16));
  cmd->add_option("--path-cap", o.path_cap, "largest k with 2^k homotopy paths")->check(CLI::Range(1, 31));
  cmd->add_option("--threads", o.threads, "worker threads (default: RIGIDITY_THREADS or all cores)")
      ->check(CLI::Range(1, 1024));
  cmd->add_option("--retries", o.retries, "extra sample rounds on disagreement")->check(CLI::Range(0, 16));
  cmd->add_option("--corrector-tol", o.corrector_tol, "Newton corrector tolerance while tracking")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--dedup-tol", o.dedup_tol, "relative distance below which solutions coincide")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--real-tol", o.real_tol, "imaginary-part threshold for real solutions")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--json", o.json_output, "print the JSON report on stdout");
  cmd->add_option("--out", o.out, "also write the JSON report to this file");
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RIGIDITY_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

EngineConfig engine_config(const Options& o) {
  EngineConfig c;
  c.seed = o.seed;
  c.samples = o.samples;
  c.path_cap = o.path_cap;
  c.threads = resolve_threads(o.threads);
  c.retries = o.retries;
  c.tracker.corrector_tolerance = o.corrector_tol;
  c.dedup_tolerance = o.dedup_tol;
  c.real_tolerance = o.real_tol;
  return c;
}

/// Writes the report to --out and to stdout (JSON with --json, otherwise the
/// human summary).
void emit(const Options& o, const json& report, const std::string& summary) {
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorKind::kInvalidArgument, "cannot write " + o.out);
    f << report.dump(2) << "\n";
  }
  if (o.json_output) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << summary << "\n";
  }
}

Graph load_graph(const std::string& path) { return read_graph_file(path).graph; }

std::string verdict_line(const Certificate& c) {
  return to_string(c.claim) + " (" + c.statement + "): " + to_string(c.verdict);
}

int certificate_exit(const Certificate& c) { return c.verdict == Verdict::kVerified ? kExitOk : kExitNegative; }

int cmd_rigid(const Options& o, const std::string& path) {
  const Graph g = load_graph(path);
  const RigidityVerdict v = is_d_rigid(g, o.d, o.seed);
  const bool minimal = v.rigid && g.edge_count() == rigidity_threshold(g.vertex_count(), o.d);
  json report{{"rigid", v.rigid},
              {"minimal", minimal},
              {"rank", v.witness.rank},
              {"threshold", v.witness.threshold},
              {"seeds", v.witness.trial_seeds},
              {"probabilistic", v.probabilistic},
              {"witness", to_json(v.witness)}};
  if (v.pebble_rigid) report["pebble_game_rigid"] = *v.pebble_rigid;
  std::ostringstream s;
  s << (v.rigid ? "rigid" : "flexible") << (minimal ? " (minimally)" : "") << " in dimension " << o.d << ": rank "
    << v.witness.rank << " of " << v.witness.threshold;
  emit(o, report, s.str());
  return v.rigid ? kExitOk : kExitNegative;
}

int cmd_count(const Options& o, const std::string& path, int real_samples) {
  const Graph g = load_graph(path);
  const EngineConfig cfg = engine_config(o);
  const CountResult r = real_samples > 0 ? count_real_samples(g, o.d, real_samples, cfg) : count_complex(g, o.d, cfg);
  std::ostringstream s;
  s << "c_" << o.d << " = " << r.c;
  if (real_samples > 0) {
    s << ", sampled real counts:";
    for (long long c : r.real_counts()) s << " " << c;
    s << " (r_lower = " << r.r_lower << ")";
  }
  s << (r.reliable ? "" : " [unreliable]") << ", " << r.paths.tracked << " paths";
  emit(o, to_json(r), s.str());
  return r.reliable ? kExitOk : kExitNegative;
}

int emit_certificate(const Options& o, const Certificate& c) {
  emit(o, to_json(c), verdict_line(c));
  return certificate_exit(c);
}

struct OperationArgs {
  std::string kind;
  int x = -1;
  std::vector<int> neighbors, n1, n2, w, edges;
  std::string step_file;
};

std::vector<Edge> edge_pairs(const std::vector<int>& flat) {
  if (flat.size() % 2 != 0) throw Error(ErrorKind::kInvalidArgument, "--edges needs an even number of ids");
  std::vector<Edge> out;
  for (std::size_t i = 0; i < flat.size(); i += 2) out.emplace_back(flat[i], flat[i + 1]);
  return out;
}

OperationResult run_operation(const Graph& g, int d, const OperationArgs& a, std::uint64_t seed) {
  if (!a.step_file.empty()) {
    std::ifstream f(a.step_file);
    if (!f) throw Error(ErrorKind::kInvalidArgument, "cannot open " + a.step_file);
    json j;
    try {
      j = json::parse(f);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid step JSON: ") + e.what(), 0);
    }
    return apply_step(g, step_from_json(j), seed);
  }
  std::string kind = a.kind;
  for (char& c : kind)
    if (c == '-') c = '_';
  const auto edges = edge_pairs(a.edges);
  if (kind == "zero_extension") return zero_extension(g, d, a.neighbors);
  if (kind == "one_extension") {
    if (edges.size() != 1) throw Error(ErrorKind::kInvalidArgument, "one-extension needs one edge in --edges");
    return one_extension(g, d, edges[0], a.neighbors);
  }
  if (kind == "vertex_split") return vertex_split(g, d, a.x, a.n1, a.n2, a.w);
  if (kind == "spider_split") return spider_split(g, d, a.x, a.n1, a.n2, a.w);
  if (kind == "x_replacement" || kind == "v_replacement") {
    if (edges.size() != 2) throw Error(ErrorKind::kInvalidArgument, "replacements need two edges in --edges");
    return xv_replacement(g, kind == "x_replacement" ? ReplacementKind::kX : ReplacementKind::kV, edges[0], edges[1],
                          a.neighbors, d);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown operation kind '" + a.kind + "'");
}

int cmd_verify(const Options& o, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::kInvalidArgument, "cannot open " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid certificate JSON: ") + e.what(), 0);
  }
  const Recheck r = recheck_certificate(j, resolve_threads(o.threads));
  json report{{"matches", r.matches},
              {"recorded_verdict", j.at("verdict")},
              {"verdict", to_string(r.recomputed.verdict)},
              {"certificate", to_json(r.recomputed)}};
  std::string summary = std::string(r.matches ? "reproduced" : "NOT reproduced") + ": " + verdict_line(r.recomputed);
  emit(o, report, summary);
  return r.matches ? kExitOk : kExitNegative;
}

void report_error(bool as_json, const std::string& reason, const std::string& message) {
  std::cerr << "error (" << reason << "): " << message << "\n";
  if (as_json) std::cout << json{{"error", reason}, {"message", message}}.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generic rigidity, realisation counts and certificates"};
  app.require_subcommand(1);
  Options o;
  std::string path;
  int real_samples = 0;

  auto* rigid = app.add_subcommand("rigid", "test generic d-rigidity");
  add_common(rigid, o);
  rigid->add_option("graph", path, "graph file (edge list or JSON)")->required();

  auto* count = app.add_subcommand("count", "count complex (and sampled real) realisations");
  add_common(count, o);
  count->add_option("graph", path, "graph file")->required();
  count->add_option("--real-samples", real_samples, "number of real realisations to sample")
      ->check(CLI::Range(0, 100000));

  auto* certify = app.add_subcommand("certify", "produce a certificate");
  certify->require_subcommand(1);

  auto* sphere = certify->add_subcommand("sphere", "lower bound for a triangulated sphere");
  add_common(sphere, o, false);
  int count_unknowns = kSphereCountUnknowns;
  sphere->add_option("faces", path, "face list (JSON with n and faces)")->required();
  sphere->add_option("--count-unknowns", count_unknowns, "run the engine when 3n - 6 is at most this");

  auto* divides = certify->add_subcommand("divides", "divisibility between G and a rigid subgraph H");
  divides->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  add_common(divides, o);
  std::string g_path, h_path;
  bool subgraph_mode = false;
  divides->add_option("--g", g_path, "graph G")->required();
  divides->add_option("--h", h_path, "subgraph H, labelled as in G")->required();
  divides->add_flag("--subgraph", subgraph_mode,
                    "H is a (non-spanning) rigid subgraph: check c_d(H) | c_d(G) instead of c_d(G) | c_d(H)");

  auto* augment = certify->add_subcommand("augment", "greedy augmentation to global rigidity");
  add_common(augment, o);
  int budget = 64;
  augment->add_option("graph", path, "graph file")->required();
  augment->add_option("--budget", budget, "maximum number of augmented graphs to count")->check(CLI::Range(1, 100000));

  auto* drop = certify->add_subcommand("drop", "effect of adding one non-edge");
  add_common(drop, o);
  std::vector<int> drop_edge;
  drop->add_option("graph", path, "graph file")->required();
  drop->add_option("--edge", drop_edge, "the non-edge, as u,v")->delimiter(',')->allow_extra_args(false)->required();

  auto* operation = certify->add_subcommand("operation", "predicted effect of a construction step");
  add_common(operation, o);
  OperationArgs op;
  operation->add_option("graph", path, "graph file (edge list, JSON or faces)")->required();
  operation->add_option("--kind", op.kind,
                        "zero-extension, one-extension, vertex-split, spider-split, x-replacement, v-replacement");
  operation->add_option("--x", op.x, "vertex to split");
  operation->add_option("--neighbors", op.neighbors, "new vertex neighbours / extra neighbours")->delimiter(',')->allow_extra_args(false);
  operation->add_option("--n1", op.n1, "neighbours kept by x")->delimiter(',')->allow_extra_args(false);
  operation->add_option("--n2", op.n2, "neighbours moved to the new vertex")->delimiter(',')->allow_extra_args(false);
  operation->add_option("--w", op.w, "shared neighbours")->delimiter(',')->allow_extra_args(false);
  operation->add_option("--edges", op.edges, "removed edges as u,v[,u,v]")->delimiter(',')->allow_extra_args(false);
  operation->add_option("--step", op.step_file, "construction step JSON instead of the flags above");

  auto* verify = app.add_subcommand("verify", "recheck a certificate file end to end");
  add_common(verify, o, false);
  verify->add_option("certificate", path, "certificate JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*rigid) return cmd_rigid(o, path);
    if (*count) return cmd_count(o, path, real_samples);
    if (*verify) return cmd_verify(o, path);
    const EngineConfig cfg = engine_config(o);
    if (*sphere) {
      const ParsedGraph parsed = read_graph_file(path);
      if (!parsed.triangulation) throw Error(ErrorKind::kInvalidTriangulation, path + " has no faces");
      return emit_certificate(o, certify_sphere_bound(*parsed.triangulation, cfg, count_unknowns));
    }
    if (*divides) {
      const Graph g = load_graph(g_path);
      const ParsedGraph h = read_graph_file(h_path);
      if (subgraph_mode) {
        std::vector<Edge> edges;
        for (const Edge& e : h.graph.edges())
          edges.emplace_back(static_cast<Vertex>(h.labels[e.u]), static_cast<Vertex>(h.labels[e.v]));
        return emit_certificate(o, check_subgraph_divisibility(g, edges, o.d, cfg));
      }
      return emit_certificate(o, check_spanning_divisibility(g, h.graph, o.d, cfg));
    }
    if (*augment) return emit_certificate(o, greedy_augment(load_graph(path), o.d, cfg, budget));
    if (*drop) {
      if (drop_edge.size() != 2) throw Error(ErrorKind::kInvalidArgument, "--edge needs exactly two vertices u,v");
      return emit_certificate(o, check_edge_addition_drop(load_graph(path), Edge(drop_edge[0], drop_edge[1]), o.d, cfg));
    }
    if (*operation) {
      const Graph g = load_graph(path);
      const OperationResult r = run_operation(g, o.d, op, o.seed);
      return emit_certificate(o, verify_operation_effect(r.step, g, r.graph, cfg));
    }
  } catch (const Error& e) {
    report_error(o.json_output, std::string(to_string(e.kind())), e.what());
    return kExitError;
  } catch (const std::exception& e) {
    report_error(o.json_output, "internal_error", e.what());
    return kExitError;
  }
  return kExitError;
}
