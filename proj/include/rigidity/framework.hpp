#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "rigidity/error.hpp"
#include "rigidity/graph.hpp"

namespace rigidity {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

/// A graph with one point of `Scalar^d` per vertex. Row v of `points` is p(v).
template <typename Scalar>
struct Framework {
  using Points = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Graph graph;
  int d = 0;
  Points points;

  Framework() = default;
  Framework(Graph g, int dim, Points p) : graph(std::move(g)), d(dim), points(std::move(p)) {
    if (points.rows() != graph.vertex_count() || points.cols() != d) {
      throw Error(ErrorKind::kInvalidArgument, "framework point matrix has wrong shape");
    }
    if (!points.allFinite()) {
      throw Error(ErrorKind::kInvalidArgument, "framework coordinates must be finite");
    }
  }

  /// ½‖p(u) − p(v)‖² with the bilinear form Σ x_i² (no conjugation).
  Scalar half_squared_length(Vertex u, Vertex v) const {
    Scalar s(0);
    for (int j = 0; j < d; ++j) {
      const Scalar diff = points(u, j) - points(v, j);
      s += diff * diff;
    }
    return s / Scalar(2);
  }

  /// f_{G,d}(p) in edge order.
  std::vector<Scalar> edge_measurements() const {
    std::vector<Scalar> out;
    out.reserve(graph.edges().size());
    for (const Edge& e : graph.edges()) out.push_back(half_squared_length(e.u, e.v));
    return out;
  }
};

using RealFramework = Framework<double>;
using ComplexFramework = Framework<std::complex<double>>;

/// |E| × d|V| matrix whose row for uv holds p(u)−p(v) in u's column block and
/// p(v)−p(u) in v's.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> rigidity_matrix(const Framework<Scalar>& f) {
  const int d = f.d;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> r =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(f.graph.edge_count(),
                                                                  d * f.graph.vertex_count());
  int row = 0;
  for (const Edge& e : f.graph.edges()) {
    for (int j = 0; j < d; ++j) {
      const Scalar diff = f.points(e.u, j) - f.points(e.v, j);
      r(row, d * e.u + j) = diff;
      r(row, d * e.v + j) = -diff;
    }
    ++row;
  }
  return r;
}

/// Singular values in decreasing order. Complex matrices go through the real
/// embedding [Re −Im; Im Re], whose spectrum is theirs doubled; Eigen's complex
/// SVD is unreliable under -fcx-limited-range when imaginary parts are tiny.
template <typename Derived>
Eigen::VectorXd singular_values(const Eigen::MatrixBase<Derived>& m) {
  if constexpr (is_complex<typename Derived::Scalar>::value) {
    const Eigen::Index r = m.rows(), c = m.cols();
    Eigen::MatrixXd e(2 * r, 2 * c);
    e << m.real(), -m.imag(), m.imag(), m.real();
    const Eigen::VectorXd doubled = Eigen::JacobiSVD<Eigen::MatrixXd>(e).singularValues();
    Eigen::VectorXd s(doubled.size() / 2);
    for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = doubled(2 * i);
    return s;
  } else {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m.template cast<double>()).singularValues();
  }
}

/// Numerical rank via singular values, relative tolerance `rel_tol`.
template <typename Derived>
int numerical_rank(const Eigen::MatrixBase<Derived>& m, double rel_tol = 1e-9) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return rank;
}

/// Column indices of the pinned coordinates (j, v_k) with k ≤ j (0-based:
/// coordinate j of the k-th pin is fixed at zero whenever j ≥ k).
inline std::vector<int> pinned_columns(int d, std::span<const Vertex> pins) {
  std::vector<int> cols;
  for (int k = 0; k < static_cast<int>(pins.size()); ++k)
    for (int j = k; j < d; ++j) cols.push_back(d * pins[k] + j);
  return cols;
}

namespace detail {

template <typename Scalar>
double magnitude(Scalar x) {
  return std::abs(x);
}

}  // namespace detail

/// Congruent copy of `f` with the k-th pin's coordinates k..d-1 equal to zero
/// (pin 0 at the origin, pin 1 on the first axis, and so on).
///
/// Works over the reals and over the complex numbers with the bilinear form
/// Σ x_i², via Gram–Schmidt on the pin difference vectors. Each normalising
/// square root picks the principal branch; the other branches give the 2^d
/// sign-flipped copies. Throws DegeneratePins when a leading principal minor of
/// the pin Gram matrix vanishes, which shows up here as a null vector
/// ⟨w, w⟩ ≈ 0 during orthogonalisation.
template <typename Scalar>
Framework<Scalar> canonical_pin(const Framework<Scalar>& f, std::span<const Vertex> pins,
                                double degeneracy_tol = 1e-10) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const int d = f.d;
  const int n = f.graph.vertex_count();
  if (static_cast<int>(pins.size()) != d) {
    throw Error(ErrorKind::kInvalidArgument, "canonical_pin needs exactly d pins");
  }
  for (Vertex v : pins) f.graph.check_vertex(v);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      if (pins[a] == pins[b]) throw Error(ErrorKind::kInvalidArgument, "pins must be distinct");

  auto dot = [](const Vec& a, const Vec& b) { return (a.array() * b.array()).sum(); };

  double scale = 0.0;
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < d; ++j)
      scale = std::max(scale, detail::magnitude(f.points(v, j) - f.points(pins[0], j)));
  if (scale == 0.0) scale = 1.0;

  const Vec origin = f.points.row(pins[0]).transpose();
  std::vector<Vec> basis;
  for (int k = 1; k < d; ++k) {
    Vec w = f.points.row(pins[k]).transpose() - origin;
    for (const Vec& e : basis) w -= dot(e, w) * e;
    const Scalar norm2 = dot(w, w);
    if (detail::magnitude(norm2) <= degeneracy_tol * scale * scale) {
      throw Error(ErrorKind::kDegeneratePins,
                  "leading principal minor " + std::to_string(k) + " of the pin Gram matrix vanishes");
    }
    basis.push_back(w / std::sqrt(norm2));
  }
  // Complete to a full orthonormal frame using the best-conditioned standard
  // basis vector.
  while (static_cast<int>(basis.size()) < d) {
    Vec best;
    double best_mag = -1.0;
    Scalar best_norm2(0);
    for (int j = 0; j < d; ++j) {
      Vec w = Vec::Zero(d);
      w(j) = Scalar(1);
      for (const Vec& e : basis) w -= dot(e, w) * e;
      const Scalar norm2 = dot(w, w);
      if (detail::magnitude(norm2) > best_mag) {
        best_mag = detail::magnitude(norm2);
        best = w;
        best_norm2 = norm2;
      }
    }
    if (best_mag <= degeneracy_tol) {
      throw Error(ErrorKind::kDegeneratePins, "cannot complete an orthonormal frame");
    }
    basis.push_back(best / std::sqrt(best_norm2));
  }

  typename Framework<Scalar>::Points out(n, d);
  for (int v = 0; v < n; ++v) {
    const Vec x = f.points.row(v).transpose() - origin;
    for (int j = 0; j < d; ++j) out(v, j) = dot(basis[j], x);
  }
  // The pinned entries are zero up to rounding; make them exact.
  for (int col : pinned_columns(d, pins)) out(col / d, col % d) = Scalar(0);
  return Framework<Scalar>(f.graph, d, std::move(out));
}

}  // namespace rigidity
