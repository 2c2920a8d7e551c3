#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rigidity/error.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/homotopy.hpp"
#include "rigidity/pinned_system.hpp"
#include "rigidity/random.hpp"
#include "rigidity/rigidity.hpp"

namespace rigidity {

struct EngineConfig {
  std::uint64_t seed = kDefaultSeed;
  /// Independent generic λ samples that must agree on c_d.
  int samples = 2;
  /// Largest number of square equations k; 2^k paths are tracked.
  int path_cap = 22;
  int threads = 1;
  /// Extra rounds of samples when they disagree or are unreliable.
  int retries = 2;
  /// Fresh gammas tried before a fiber with too many failed paths is
  /// reported unreliable.
  int gamma_retries = 1;
  double max_failure_fraction = 0.01;
  double polish_tolerance = 1e-12;
  double dedup_tolerance = 1e-8;
  double surplus_tolerance = 1e-8;
  double real_tolerance = 1e-7;
  double jacobian_tolerance = 1e-8;
  TrackerConfig tracker;
};

struct PathStats {
  std::uint64_t tracked = 0;
  std::uint64_t converged = 0;
  std::uint64_t diverged = 0;
  std::uint64_t failed = 0;

  PathStats& operator+=(const PathStats& o) {
    tracked += o.tracked;
    converged += o.converged;
    diverged += o.diverged;
    failed += o.failed;
    return *this;
  }
};

inline nlohmann::json to_json(const PathStats& s) {
  return {{"tracked", s.tracked}, {"converged", s.converged}, {"diverged", s.diverged}, {"failed", s.failed}};
}

struct FiberPoint {
  VectorXc x;
  double residual = 0.0;
  bool real = false;
  bool newton_certified = false;
};

struct SolutionSet {
  std::vector<FiberPoint> points;
  PathStats paths;
  /// Converged paths whose endpoint coincided with an earlier one.
  int duplicates = 0;
  /// Converged endpoints rejected by the surplus equations.
  int filtered = 0;
  /// Points added by sign-flip closure.
  int recovered = 0;
  bool contains_sample = false;
  bool reliable = true;
  std::uint64_t gamma_seed = 0;

  int real_count() const {
    return static_cast<int>(std::count_if(points.begin(), points.end(), [](const FiberPoint& p) { return p.real; }));
  }
};

namespace detail {

/// Newton on the square system. Returns the polished point when the step
/// falls below tolerance and the Jacobian is well conditioned.
inline std::optional<FiberPoint> polish(const PinnedSystem& s, VectorXc x, const EngineConfig& cfg) {
  VectorXc f;
  MatrixXc jac;
  bool converged = false;
  for (int it = 0; it < 12; ++it) {
    s.evaluate(x, f, &jac);
    const VectorXc delta = jac.partialPivLu().solve(-f);
    if (!delta.allFinite()) return std::nullopt;
    x += delta;
    if (delta.norm() <= cfg.polish_tolerance * std::max(1.0, x.norm())) {
      converged = true;
      break;
    }
  }
  s.evaluate(x, f, &jac);
  if (s.residual(x) > 1e-8) return std::nullopt;
  const Eigen::VectorXd sv = singular_values(jac);
  if (sv.size() > 0 && !(sv(sv.size() - 1) > cfg.jacobian_tolerance * sv(0))) return std::nullopt;
  FiberPoint p;
  p.residual = s.residual(x);
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  p.real = x.imag().cwiseAbs().maxCoeff() < cfg.real_tolerance * scale;
  p.newton_certified = converged;
  p.x = std::move(x);
  return p;
}

inline bool same_point(const VectorXc& a, const VectorXc& b, double tol) {
  return (a - b).norm() <= tol * std::max(1.0, std::max(a.norm(), b.norm()));
}

inline bool contains(const std::vector<FiberPoint>& pts, const VectorXc& x, double tol) {
  return std::any_of(pts.begin(), pts.end(), [&](const FiberPoint& p) { return same_point(p.x, x, tol); });
}

/// Path endpoints → fiber: polish, deduplicate, apply surplus filters and
/// close under sign flips.
inline SolutionSet assemble_fiber(const PinnedSystem& s, const std::vector<PathEnd>& ends,
                                  const EngineConfig& cfg) {
  SolutionSet out;
  out.paths.tracked = ends.size();
  for (const PathEnd& end : ends) {
    if (end.status == PathStatus::kDiverged) {
      ++out.paths.diverged;
      continue;
    }
    if (end.status == PathStatus::kFailed) {
      ++out.paths.failed;
      continue;
    }
    const VectorXc x = end.z.tail(end.z.size() - 1) / end.z(0);
    auto p = polish(s, x, cfg);
    if (!p) {
      // Endpoints that cannot be polished to a regular solution are either
      // huge (heading to infinity) or genuine failures.
      if (x.cwiseAbs().maxCoeff() > 1e4) {
        ++out.paths.diverged;
      } else {
        ++out.paths.failed;
      }
      continue;
    }
    ++out.paths.converged;
    if (contains(out.points, p->x, cfg.dedup_tolerance)) {
      ++out.duplicates;
      continue;
    }
    out.points.push_back(std::move(*p));
  }
  std::erase_if(out.points, [&](const FiberPoint& p) {
    const bool reject = s.surplus_residual(p.x) >= cfg.surplus_tolerance;
    if (reject) ++out.filtered;
    return reject;
  });
  const unsigned group = 1U << s.d;
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    for (unsigned mask = 1; mask < group; ++mask) {
      const VectorXc y = s.sign_flip(out.points[i].x, mask);
      if (contains(out.points, y, cfg.dedup_tolerance)) continue;
      if (auto p = polish(s, y, cfg); p && s.surplus_residual(p->x) < cfg.surplus_tolerance) {
        out.points.push_back(std::move(*p));
        ++out.recovered;
      }
    }
  }
  out.contains_sample = contains(out.points, s.sample, cfg.dedup_tolerance);
  return out;
}

}  // namespace detail

/// All isolated points of the pinned fiber, by a total-degree homotopy from
/// x_i² = 1 with a random gamma and a random projective patch.
inline SolutionSet track_fiber(const PinnedSystem& s, const EngineConfig& cfg) {
  const int k = s.unknowns();
  if (k > cfg.path_cap || k + 1 > kMaxSystemSize) {
    throw Error(ErrorKind::kPathBudgetExceeded,
                "2^" + std::to_string(k) + " paths exceed the cap of 2^" + std::to_string(cfg.path_cap));
  }
  const std::uint64_t paths = std::uint64_t{1} << k;
  SolutionSet best;
  for (int attempt = 0; attempt <= cfg.gamma_retries; ++attempt) {
    const std::uint64_t gamma_seed = derive_seed(s.seed, Stream::kGamma, attempt);
    Rng rng(gamma_seed);
    TotalDegreeHomotopy h;
    h.equations = &s.square_equations;
    h.targets = &s.square_targets;
    h.gamma = random_unit_complex(rng);
    h.patch.resize(k + 1);
    for (int i = 0; i <= k; ++i) h.patch(i) = random_unit_complex(rng);
    h.start_scale.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) h.start_scale[i] = std::max(std::abs(s.square_targets[i]), 1e-3);

    std::vector<PathEnd> ends(static_cast<std::size_t>(paths));
    parallel_for(paths, cfg.threads, [&](std::uint64_t i) {
      PathTracker<TotalDegreeHomotopy> tracker(h, cfg.tracker);
      ends[i] = tracker.track(h.start_point(i));
    });
    SolutionSet fiber = detail::assemble_fiber(s, ends, cfg);
    fiber.gamma_seed = gamma_seed;
    fiber.reliable = static_cast<double>(fiber.paths.failed) <= cfg.max_failure_fraction * static_cast<double>(paths);
    if (fiber.reliable) return fiber;
    best = std::move(fiber);
  }
  return best;
}

/// Moves a known fiber of `from` to the fiber of `to` (same graph, pins and
/// square edges) along a straight line in λ-space.
inline SolutionSet continue_fiber(const PinnedSystem& from, const SolutionSet& fiber, const PinnedSystem& to,
                                  const EngineConfig& cfg, std::uint64_t seed) {
  Rng rng(derive_seed(seed, Stream::kPatch));
  ParameterHomotopy h;
  h.equations = &to.square_equations;
  h.from = from.square_targets;
  h.to = to.square_targets;
  h.patch.resize(to.unknowns() + 1);
  for (Eigen::Index i = 0; i < h.patch.size(); ++i) h.patch(i) = random_unit_complex(rng);
  std::vector<PathEnd> ends(fiber.points.size());
  parallel_for(ends.size(), cfg.threads, [&](std::uint64_t i) {
    PathTracker<ParameterHomotopy> tracker(h, cfg.tracker);
    ends[i] = tracker.track(h.lift(fiber.points[i].x));
  });
  SolutionSet out = detail::assemble_fiber(to, ends, cfg);
  out.gamma_seed = seed;
  out.reliable = out.paths.failed == 0 && out.points.size() == fiber.points.size();
  return out;
}

struct SampleReport {
  std::uint64_t seed = 0;
  Sampling sampling = Sampling::kComplex;
  int solutions = 0;
  /// Complex samples: solutions / 2^d. Real samples: real solutions / 2^d.
  long long count = 0;
  bool reliable = false;
  bool contains_sample = false;
  int recovered = 0;
  PathStats paths;
};

inline nlohmann::json to_json(const SampleReport& r) {
  return {{"seed", r.seed},
          {"sampling", r.sampling == Sampling::kReal ? "real" : "complex"},
          {"solutions", r.solutions},
          {"count", r.count},
          {"reliable", r.reliable},
          {"contains_sample", r.contains_sample},
          {"recovered", r.recovered},
          {"paths", to_json(r.paths)}};
}

struct CountResult {
  long long c = 0;
  long long r_lower = 0;
  int d = 0;
  PathStats paths;
  std::vector<SampleReport> samples;
  bool reliable = false;
  std::uint64_t seed = 0;

  std::vector<long long> real_counts() const {
    std::vector<long long> out;
    for (const auto& s : samples)
      if (s.sampling == Sampling::kReal) out.push_back(s.count);
    return out;
  }
};

inline nlohmann::json to_json(const CountResult& r) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.samples) samples.push_back(to_json(s));
  return {{"c", r.c},         {"r_lower", r.r_lower}, {"d", r.d},   {"paths", to_json(r.paths)},
          {"samples", samples}, {"reliable", r.reliable}, {"seed", r.seed}};
}

namespace detail {

inline SampleReport report(const PinnedSystem& s, const SolutionSet& fiber) {
  SampleReport r;
  r.seed = s.seed;
  r.sampling = s.sampling;
  r.solutions = static_cast<int>(fiber.points.size());
  const long long group = 1LL << s.d;
  const long long counted = s.sampling == Sampling::kReal ? fiber.real_count() : r.solutions;
  r.count = counted / group;
  r.contains_sample = fiber.contains_sample;
  r.recovered = fiber.recovered;
  r.paths = fiber.paths;
  r.reliable = fiber.reliable && fiber.contains_sample && r.solutions % group == 0 && counted % group == 0;
  return r;
}

/// A generic complex fiber kept for continuation to other λ.
struct GenericFiber {
  PinnedSystem system;
  SolutionSet fiber;
};

inline void require_rigid(const Graph& g, int d, std::uint64_t seed) {
  if (!is_d_rigid(g, d, seed).rigid) throw Error(ErrorKind::kNotRigid, "graph is not d-rigid");
}

/// Shared by count_complex and count_real_samples.
inline CountResult count_generic(const Graph& g, int d, const EngineConfig& cfg, std::optional<GenericFiber>* keep) {
  require_rigid(g, d, cfg.seed);
  CountResult result;
  result.d = d;
  result.seed = cfg.seed;
  if (g.vertex_count() <= d + 1) {
    result.c = 1;
    result.reliable = true;
    return result;
  }
  const Graph square = spanning_minimally_rigid_subgraph(g, d, cfg.seed);
  const int per_round = std::max(1, cfg.samples);
  std::vector<long long> last_counts;
  for (int round = 0; round <= cfg.retries; ++round) {
    std::vector<SampleReport> reports;
    bool all_reliable = true;
    for (int i = 0; i < per_round; ++i) {
      const std::uint64_t seed = derive_seed(cfg.seed, Stream::kRetry, round * per_round + i);
      PinnedSystem s = build_pinned_system(g, d, seed, Sampling::kComplex, &square);
      SolutionSet fiber = track_fiber(s, cfg);
      SampleReport r = report(s, fiber);
      all_reliable = all_reliable && r.reliable;
      result.paths += r.paths;
      if (keep && r.reliable && !*keep) *keep = GenericFiber{std::move(s), std::move(fiber)};
      reports.push_back(r);
    }
    result.samples.insert(result.samples.end(), reports.begin(), reports.end());
    const bool agree = std::all_of(reports.begin(), reports.end(),
                                   [&](const SampleReport& r) { return r.count == reports[0].count; });
    last_counts.clear();
    for (const auto& r : reports) last_counts.push_back(r.count);
    if (agree && all_reliable) {
      result.c = reports[0].count;
      result.reliable = true;
      return result;
    }
  }
  const bool agree = std::all_of(last_counts.begin(), last_counts.end(),
                                 [&](long long c) { return c == last_counts[0]; });
  if (!agree) {
    std::string counts;
    for (long long c : last_counts) counts += (counts.empty() ? "" : ", ") + std::to_string(c);
    throw Error(ErrorKind::kDisagreement, "independent samples disagree on c_d: " + counts);
  }
  result.c = last_counts[0];
  result.reliable = false;
  return result;
}

}  // namespace detail

/// c_d(G): number of pinned complex solutions over 2^d at generic complex λ,
/// confirmed by independent samples.
inline CountResult count_complex(const Graph& g, int d, const EngineConfig& cfg = {}) {
  return detail::count_generic(g, d, cfg, nullptr);
}

/// Real counts r(G, p) at `samples` random real integer realisations; r_lower
/// is their maximum, a lower bound on r_d(G). Each real fiber is obtained by
/// continuing a generic complex fiber, with a total-degree solve as fallback.
inline CountResult count_real_samples(const Graph& g, int d, int samples, const EngineConfig& cfg = {}) {
  std::optional<detail::GenericFiber> base;
  CountResult result = detail::count_generic(g, d, cfg, &base);
  if (g.vertex_count() <= d + 1) {
    result.r_lower = 1;
    for (int i = 0; i < samples; ++i) {
      SampleReport r;
      r.seed = derive_seed(cfg.seed, Stream::kRealSample, i);
      r.sampling = Sampling::kReal;
      r.count = 1;
      r.reliable = true;
      r.contains_sample = true;
      result.samples.push_back(r);
    }
    return result;
  }
  if (!base) {
    result.reliable = false;
    return result;
  }
  const Graph square(g.vertex_count(), base->system.square_edges);
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t seed = derive_seed(cfg.seed, Stream::kRealSample, i);
    std::optional<PinnedSystem> target;
    for (int attempt = 0; attempt < 8 && !target; ++attempt) {
      const std::uint64_t sample_seed = derive_seed(seed, Stream::kRealisation, attempt);
      try {
        target = make_pinned_system(g, d, square, base->system.pins,
                                    sample_realisation(g, d, sample_seed, Sampling::kReal));
        target->sampling = Sampling::kReal;
        target->seed = sample_seed;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kDegeneratePins) throw;
      }
    }
    if (!target) throw Error(ErrorKind::kDegeneratePins, "no admissible real sample found");
    SolutionSet fiber = continue_fiber(base->system, base->fiber, *target, cfg, seed);
    if (!fiber.reliable) fiber = track_fiber(*target, cfg);
    SampleReport r = detail::report(*target, fiber);
    r.reliable = r.reliable && r.solutions == static_cast<int>(base->fiber.points.size());
    result.reliable = result.reliable && r.reliable;
    result.paths += r.paths;
    result.r_lower = std::max(result.r_lower, r.count);
    result.samples.push_back(r);
  }
  return result;
}

}  // namespace rigidity
