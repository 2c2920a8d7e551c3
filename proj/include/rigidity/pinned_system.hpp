#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "rigidity/error.hpp"
#include "rigidity/framework.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/homotopy.hpp"
#include "rigidity/random.hpp"
#include "rigidity/rigidity.hpp"

namespace rigidity {

/// Sampled realisations use integer coordinates (and integer imaginary parts
/// for complex sampling) in [-kSampleBound, kSampleBound], divided by
/// kSampleBound before solving so the unknowns are of order one.
inline constexpr long long kSampleBound = 1000;

enum class Sampling { kReal, kComplex };

/// Polynomial system for the pinned fiber of f_{G,d}: one unknown per
/// coordinate that is not pinned to zero, one equation
/// ½‖q(u) − q(v)‖² = λ_uv per edge of a spanning minimally rigid subgraph,
/// and the remaining edges kept aside as filters.
struct PinnedSystem {
  Graph graph;
  int d = 0;
  std::vector<Vertex> pins;
  std::vector<Edge> square_edges;
  std::vector<Edge> surplus_edges;
  /// variable[v·d + j] is the unknown index of coordinate j of v, or −1.
  std::vector<int> variable;
  /// coordinate[i] is the coordinate axis of unknown i.
  std::vector<int> coordinate;
  std::vector<QuadraticEquation> square_equations;
  std::vector<QuadraticEquation> surplus_equations;
  std::vector<Complex> square_targets;
  std::vector<Complex> surplus_targets;
  /// The sampled realisation after pinning and scaling, as an unknown vector.
  VectorXc sample;
  Sampling sampling = Sampling::kComplex;
  std::uint64_t seed = 0;

  int unknowns() const { return static_cast<int>(coordinate.size()); }

  /// Unknown vector → n × d point matrix.
  ComplexFramework::Points points(const VectorXc& x) const {
    const int n = graph.vertex_count();
    ComplexFramework::Points p = ComplexFramework::Points::Zero(n, d);
    for (int v = 0; v < n; ++v)
      for (int j = 0; j < d; ++j)
        if (variable[v * d + j] >= 0) p(v, j) = x(variable[v * d + j]);
    return p;
  }

  void evaluate(const VectorXc& x, VectorXc& f, MatrixXc* jac = nullptr) const {
    evaluate_quadratic_system(square_equations, square_targets, x, f, jac);
  }

  /// Largest defect of the square equations, each relative to max(1, |λ|).
  double residual(const VectorXc& x) const { return defect(square_equations, square_targets, x); }

  /// Largest relative defect of the surplus equations (0 when there are none).
  double surplus_residual(const VectorXc& x) const { return defect(surplus_equations, surplus_targets, x); }

  /// Image of x under the diagonal isometry flipping every axis j whose bit
  /// is set in `mask`.
  VectorXc sign_flip(const VectorXc& x, unsigned mask) const {
    VectorXc y = x;
    for (int i = 0; i < unknowns(); ++i)
      if ((mask >> coordinate[i]) & 1U) y(i) = -y(i);
    return y;
  }

 private:
  static double defect(const std::vector<QuadraticEquation>& eqs, const std::vector<Complex>& targets,
                       const VectorXc& x) {
    VectorXc f;
    evaluate_quadratic_system(eqs, targets, x, f, nullptr);
    double worst = 0.0;
    for (Eigen::Index e = 0; e < f.size(); ++e)
      worst = std::max(worst, std::abs(f(e)) / std::max(1.0, std::abs(targets[e])));
    return worst;
  }
};

/// Integer realisation scaled into [-1, 1]^d (per real and imaginary part).
inline ComplexFramework sample_realisation(const Graph& g, int d, std::uint64_t seed, Sampling sampling) {
  Rng rng(seed);
  const int n = g.vertex_count();
  ComplexFramework::Points p(n, d);
  for (int v = 0; v < n; ++v) {
    for (int j = 0; j < d; ++j) {
      const double re = static_cast<double>(uniform_int(rng, -kSampleBound, kSampleBound));
      const double im = sampling == Sampling::kComplex
                            ? static_cast<double>(uniform_int(rng, -kSampleBound, kSampleBound))
                            : 0.0;
      p(v, j) = Complex(re, im) / static_cast<double>(kSampleBound);
    }
  }
  return ComplexFramework(g, d, std::move(p));
}

namespace detail {

inline QuadraticEquation make_equation(const Edge& e, int d, const std::vector<int>& variable) {
  QuadraticEquation q;
  for (int j = 0; j < d; ++j) {
    const int a = variable[e.u * d + j];
    const int b = variable[e.v * d + j];
    if (a >= 0 || b >= 0) q.terms.emplace_back(a, b);
  }
  return q;
}

}  // namespace detail

/// Assembles the system for a given square subgraph, pin set and realisation.
/// Throws DegeneratePins when the pins cannot be placed canonically.
inline PinnedSystem make_pinned_system(const Graph& g, int d, const Graph& square,
                                       std::span<const Vertex> pins, const ComplexFramework& sample) {
  PinnedSystem s;
  s.graph = g;
  s.d = d;
  s.pins.assign(pins.begin(), pins.end());
  const ComplexFramework pinned = canonical_pin(sample, pins);
  const int n = g.vertex_count();
  s.variable.assign(static_cast<std::size_t>(n) * d, 0);
  for (int col : pinned_columns(d, pins)) s.variable[col] = -1;
  for (int col = 0; col < n * d; ++col) {
    if (s.variable[col] < 0) continue;
    s.variable[col] = static_cast<int>(s.coordinate.size());
    s.coordinate.push_back(col % d);
  }
  s.sample.resize(s.unknowns());
  for (int col = 0; col < n * d; ++col)
    if (s.variable[col] >= 0) s.sample(s.variable[col]) = pinned.points(col / d, col % d);
  for (const Edge& e : g.edges()) {
    const Complex lambda = pinned.half_squared_length(e.u, e.v);
    if (square.has_edge(e)) {
      s.square_edges.push_back(e);
      s.square_equations.push_back(detail::make_equation(e, d, s.variable));
      s.square_targets.push_back(lambda);
    } else {
      s.surplus_edges.push_back(e);
      s.surplus_equations.push_back(detail::make_equation(e, d, s.variable));
      s.surplus_targets.push_back(lambda);
    }
  }
  if (static_cast<int>(s.square_edges.size()) != s.unknowns()) {
    throw Error(ErrorKind::kInvalidArgument, "square subgraph does not match the number of unknowns");
  }
  return s;
}

/// Pin candidates: the d lowest-indexed vertices first, then the remaining
/// d-subsets in lexicographic order.
inline std::vector<std::vector<Vertex>> pin_candidates(int n, int d, std::size_t limit = 64) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> cur(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) cur[i] = i;
  while (out.size() < limit) {
    out.push_back(cur);
    int i = d - 1;
    while (i >= 0 && cur[i] == n - d + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < d; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// Samples a realisation, pins it and sets λ = f_{G,d}(p). `square` may be
/// supplied to reuse a spanning minimally rigid subgraph; otherwise one is
/// selected greedily.
inline PinnedSystem build_pinned_system(const Graph& g, int d, std::uint64_t seed, Sampling sampling,
                                        const Graph* square = nullptr) {
  const int n = g.vertex_count();
  if (n < d + 1) throw Error(ErrorKind::kInvalidArgument, "pinned system needs n >= d + 1");
  const Graph chosen = square ? *square : spanning_minimally_rigid_subgraph(g, d, seed);
  // Degenerate pins at one realisation are a measure-zero event; rotate
  // through pin sets, then resample.
  for (int attempt = 0; attempt < 4; ++attempt) {
    const std::uint64_t sample_seed = derive_seed(seed, Stream::kRealisation, attempt);
    const ComplexFramework sample = sample_realisation(g, d, sample_seed, sampling);
    for (const auto& pins : pin_candidates(n, d)) {
      try {
        PinnedSystem s = make_pinned_system(g, d, chosen, pins, sample);
        s.sampling = sampling;
        s.seed = sample_seed;
        return s;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kDegeneratePins) throw;
      }
    }
  }
  throw Error(ErrorKind::kDegeneratePins, "no admissible pin choice found");
}

}  // namespace rigidity
