#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace rigidity {

using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

/// Upper bound on the homogenised system size (unknowns + 1). Path tracking
/// works on stack-allocated vectors and matrices of at most this size.
inline constexpr int kMaxSystemSize = 32;
using PathVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, kMaxSystemSize, 1>;
using PathMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxSystemSize, kMaxSystemSize>;

/// One quadratic equation ½‖q(u) − q(v)‖² = λ written over the unknown
/// vector: `terms` holds, per coordinate, the unknown indices of q(u)_j and
/// q(v)_j (-1 where the coordinate is pinned to zero).
struct QuadraticEquation {
  std::vector<std::pair<int, int>> terms;
};

/// Affine evaluation of ½‖Δ‖² − λ for each equation, plus Jacobian.
inline void evaluate_quadratic_system(const std::vector<QuadraticEquation>& eqs,
                                      const std::vector<Complex>& targets, const VectorXc& x,
                                      VectorXc& f, MatrixXc* jac) {
  const Eigen::Index k = static_cast<Eigen::Index>(eqs.size());
  f.resize(k);
  if (jac) jac->setZero(k, x.size());
  for (Eigen::Index e = 0; e < k; ++e) {
    Complex s = 0.0;
    for (const auto& [a, b] : eqs[e].terms) {
      const Complex diff = (a >= 0 ? x(a) : 0.0) - (b >= 0 ? x(b) : 0.0);
      s += diff * diff;
      if (jac) {
        if (a >= 0) (*jac)(e, a) += diff;
        if (b >= 0) (*jac)(e, b) -= diff;
      }
    }
    f(e) = 0.5 * s - targets[e];
  }
}

/// Homogenised quadratic system on z = (z0, x): ½‖Δ(x)‖² − λ_e z0², with
/// λ_e = target(e). Accumulates `weight` × values into f and `weight` ×
/// derivatives into jac (rows 0..k−1, column 0 is z0).
template <typename Target>
void accumulate_homogeneous(const std::vector<QuadraticEquation>& eqs, Target&& target,
                            const PathVector& z, Complex weight, PathVector& f, PathMatrix* jac) {
  const Complex z0 = z(0);
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    Complex s = 0.0;
    for (const auto& [a, b] : eqs[e].terms) {
      const Complex diff = (a >= 0 ? z(a + 1) : 0.0) - (b >= 0 ? z(b + 1) : 0.0);
      s += diff * diff;
      if (jac) {
        const Complex wd = weight * diff;
        if (a >= 0) (*jac)(e, a + 1) += wd;
        if (b >= 0) (*jac)(e, b + 1) -= wd;
      }
    }
    const Complex lambda = target(e);
    f(e) += weight * (0.5 * s - lambda * z0 * z0);
    if (jac) (*jac)(e, 0) -= weight * 2.0 * lambda * z0;
  }
}

/// Total-degree homotopy H = γ(1 − t)·G + t·F with start system
/// G_i = s_i (x_i² − 1), homogenised, plus a random affine patch a·z = 1.
struct TotalDegreeHomotopy {
  const std::vector<QuadraticEquation>* equations = nullptr;
  const std::vector<Complex>* targets = nullptr;
  std::vector<double> start_scale;
  Complex gamma{1.0, 0.0};
  PathVector patch;

  int size() const { return static_cast<int>(patch.size()); }

  /// H(z, t), ∂H/∂z and ∂H/∂t; the last row is the patch.
  void evaluate(const PathVector& z, double t, PathVector& h, PathMatrix* hz, PathVector* ht) const {
    const int k = size() - 1;
    h.setZero(k + 1);
    if (hz) hz->setZero(k + 1, k + 1);
    const Complex g_weight = gamma * (1.0 - t);
    auto target = [this](std::size_t e) { return (*targets)[e]; };
    accumulate_homogeneous(*equations, target, z, t, h, hz);
    if (ht) {
      ht->setZero(k + 1);
      accumulate_homogeneous(*equations, target, z, 1.0, *ht, nullptr);
    }
    const Complex z0 = z(0);
    for (int i = 0; i < k; ++i) {
      const Complex zi = z(i + 1);
      const Complex g = start_scale[i] * (zi * zi - z0 * z0);
      h(i) += g_weight * g;
      if (hz) {
        (*hz)(i, i + 1) += g_weight * 2.0 * start_scale[i] * zi;
        (*hz)(i, 0) -= g_weight * 2.0 * start_scale[i] * z0;
      }
      if (ht) (*ht)(i) -= gamma * g;
    }
    h(k) = patch.dot(z) - 1.0;  // Eigen's dot conjugates the left operand
    if (hz) hz->row(k) = patch.adjoint();
    if (ht) (*ht)(k) = 0.0;
  }

  /// The 2^k start points (±1, …, ±1) scaled onto the patch; bit i of `index`
  /// chooses the sign of x_i.
  PathVector start_point(std::uint64_t index) const {
    const int k = size() - 1;
    PathVector z(k + 1);
    z(0) = 1.0;
    for (int i = 0; i < k; ++i) z(i + 1) = ((index >> i) & 1U) ? -1.0 : 1.0;
    return z / (patch.dot(z));
  }
};

/// Parameter homotopy moving the targets linearly from `from` to `to`,
/// homogenised with a random patch.
struct ParameterHomotopy {
  const std::vector<QuadraticEquation>* equations = nullptr;
  std::vector<Complex> from;
  std::vector<Complex> to;
  PathVector patch;

  int size() const { return static_cast<int>(patch.size()); }

  void evaluate(const PathVector& z, double t, PathVector& h, PathMatrix* hz, PathVector* ht) const {
    const int k = size() - 1;
    h.setZero(k + 1);
    if (hz) hz->setZero(k + 1, k + 1);
    auto target = [&](std::size_t e) { return (1.0 - t) * from[e] + t * to[e]; };
    accumulate_homogeneous(*equations, target, z, 1.0, h, hz);
    if (ht) {
      ht->setZero(k + 1);
      const Complex z0 = z(0);
      for (int e = 0; e < k; ++e) (*ht)(e) = -(to[e] - from[e]) * z0 * z0;
    }
    h(k) = patch.dot(z) - 1.0;
    if (hz) hz->row(k) = patch.adjoint();
  }

  PathVector lift(const VectorXc& x) const {
    PathVector z(x.size() + 1);
    z(0) = 1.0;
    z.tail(x.size()) = x;
    return z / patch.dot(z);
  }
};

/// LU with partial pivoting for the small dense systems met while tracking.
/// Pivots on |re| + |im|, which avoids a hypot per candidate.
class SmallLU {
 public:
  void compute(const PathMatrix& a) {
    lu_ = a;
    const Eigen::Index n = a.rows();
    perm_.resize(n);
    singular_ = false;
    for (Eigen::Index k = 0; k < n; ++k) {
      Eigen::Index pivot = k;
      double best = -1.0;
      for (Eigen::Index i = k; i < n; ++i) {
        const double m = std::abs(lu_(i, k).real()) + std::abs(lu_(i, k).imag());
        if (m > best) {
          best = m;
          pivot = i;
        }
      }
      perm_(k) = static_cast<int>(pivot);
      if (best == 0.0) {
        singular_ = true;
        return;
      }
      if (pivot != k) lu_.row(k).swap(lu_.row(pivot));
      const Complex inv = 1.0 / lu_(k, k);
      const Eigen::Index rest = n - k - 1;
      lu_.col(k).tail(rest) *= inv;
      lu_.bottomRightCorner(rest, rest).noalias() -= lu_.col(k).tail(rest) * lu_.row(k).tail(rest);
    }
  }

  /// Solves A x = b; returns false when A was exactly singular.
  bool solve(PathVector b, PathVector& x) const {
    if (singular_) return false;
    const Eigen::Index n = lu_.rows();
    for (Eigen::Index k = 0; k < n; ++k)
      if (perm_(k) != k) std::swap(b(k), b(perm_(k)));
    lu_.triangularView<Eigen::UnitLower>().solveInPlace(b);
    lu_.triangularView<Eigen::Upper>().solveInPlace(b);
    x = std::move(b);
    return x.allFinite();
  }

 private:
  PathMatrix lu_;
  Eigen::Matrix<int, Eigen::Dynamic, 1, 0, kMaxSystemSize, 1> perm_;
  bool singular_ = false;
};

enum class Predictor { kEuler, kRungeKutta4 };

struct TrackerConfig {
  Predictor predictor = Predictor::kRungeKutta4;
  double initial_step = 0.02;
  double max_step = 0.1;
  double min_step = 1e-14;
  /// Consecutive accepted steps before the step size doubles.
  int growth_after = 3;
  /// Step factor after a rejection; squared from the third consecutive
  /// rejection on, so stalls reach min_step quickly.
  double shrink = 0.5;
  int max_steps = 50000;
  int max_corrector_iterations = 3;
  /// Newton step size (relative to ‖z‖) that counts as converged while tracking.
  double corrector_tolerance = 1e-7;
  /// Tighter corrector used once t exceeds `endgame_start`.
  double endgame_tolerance = 1e-9;
  double endgame_start = 0.99;
  /// Affine norm beyond which a path is declared to be heading to infinity.
  double divergence_norm = 1e8;
};

enum class PathStatus { kConverged, kDiverged, kFailed };

struct PathEnd {
  PathStatus status = PathStatus::kFailed;
  VectorXc z;   // projective endpoint (or last point reached)
  double t = 0.0;
  int steps = 0;
  int rejections = 0;
};

namespace detail {
inline double affine_norm(const PathVector& z) {
  const double z0 = std::abs(z(0));
  const double tail = z.tail(z.size() - 1).cwiseAbs().maxCoeff();
  return z0 == 0.0 ? INFINITY : tail / z0;
}
}  // namespace detail

/// Predictor–corrector tracker on t ∈ [0, 1] with adaptive steps. A step is
/// accepted only when Newton converges within the iteration budget while
/// contracting, which keeps paths from jumping onto neighbours.
template <typename Homotopy>
class PathTracker {
 public:
  PathTracker(const Homotopy& homotopy, TrackerConfig config)
      : h_(homotopy), cfg_(config), n_(homotopy.size()) {
    val_.resize(n_);
    ht_.resize(n_);
    jac_.resize(n_, n_);
  }

  PathEnd track(PathVector z) {
    PathEnd end;
    tangent_valid_ = false;
    double t = 0.0;
    double step = cfg_.initial_step;
    int successes = 0;
    int rejections_in_row = 0;
    double endgame_norm = -1.0;
    while (t < 1.0) {
      if (end.steps + end.rejections >= cfg_.max_steps) {
        end.status = PathStatus::kFailed;
        break;
      }
      step = std::min(step, 1.0 - t);
      const double t_next = (1.0 - t - step < 1e-15) ? 1.0 : t + step;
      const double tol = t_next >= cfg_.endgame_start ? cfg_.endgame_tolerance : cfg_.corrector_tolerance;
      PathVector candidate;
      if (predict(z, t, t_next - t, candidate) && correct(candidate, t_next, tol)) {
        z = std::move(candidate);
        t = t_next;
        tangent_valid_ = false;
        ++end.steps;
        rejections_in_row = 0;
        if (++successes >= cfg_.growth_after) {
          step = std::min(step * 2.0, cfg_.max_step);
          successes = 0;
        }
        if (t >= cfg_.endgame_start) {
          const double norm = detail::affine_norm(z);
          if (endgame_norm < 0.0) endgame_norm = norm;
          if (norm > cfg_.divergence_norm) {
            end.status = PathStatus::kDiverged;
            end.z = z;
            end.t = t;
            return end;
          }
        }
      } else {
        ++end.rejections;
        successes = 0;
        step *= ++rejections_in_row >= 3 ? cfg_.shrink * cfg_.shrink : cfg_.shrink;
        if (step < cfg_.min_step) {
          // Step underflow: a path whose affine norm keeps growing is
          // running off to infinity; anything else is a failure.
          const double norm = detail::affine_norm(z);
          const bool growing = endgame_norm > 0.0 && norm > 10.0 * endgame_norm;
          end.status = (norm > cfg_.divergence_norm || growing) ? PathStatus::kDiverged
                                                                 : PathStatus::kFailed;
          end.z = z;
          end.t = t;
          return end;
        }
      }
    }
    if (t >= 1.0) {
      end.status = detail::affine_norm(z) > cfg_.divergence_norm ? PathStatus::kDiverged
                                                                 : PathStatus::kConverged;
    }
    end.z = z;
    end.t = t;
    return end;
  }

 private:
  /// dz/dt = −H_z⁻¹ H_t at (z, t).
  bool tangent(const PathVector& z, double t, PathVector& dz) {
    h_.evaluate(z, t, val_, &jac_, &ht_);
    lu_.compute(jac_);
    return lu_.solve(-ht_, dz);
  }

  bool predict(const PathVector& z, double t, double dt, PathVector& out) {
    // The tangent at the current point is reused across rejected steps.
    if (!tangent_valid_) {
      if (!tangent(z, t, k1_)) return false;
      tangent_valid_ = true;
    }
    const PathVector& k1 = k1_;
    PathVector k2, k3, k4;
    if (cfg_.predictor == Predictor::kEuler) {
      out = z + dt * k1;
      return true;
    }
    if (!tangent(z + 0.5 * dt * k1, t + 0.5 * dt, k2)) return false;
    if (!tangent(z + 0.5 * dt * k2, t + 0.5 * dt, k3)) return false;
    if (!tangent(z + dt * k3, t + dt, k4)) return false;
    out = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return out.allFinite();
  }

  bool correct(PathVector& z, double t, double tol) {
    double previous = INFINITY;
    for (int it = 0; it < cfg_.max_corrector_iterations; ++it) {
      h_.evaluate(z, t, val_, &jac_, nullptr);
      lu_.compute(jac_);
      PathVector delta;
      if (!lu_.solve(-val_, delta)) return false;
      const double size = delta.norm();
      if (size > 0.5 * previous) return false;
      z += delta;
      previous = size;
      if (size <= tol * std::max(1.0, z.norm())) return true;
    }
    return false;
  }

  const Homotopy& h_;
  TrackerConfig cfg_;
  int n_;
  PathVector val_;
  PathVector ht_;
  PathMatrix jac_;
  SmallLU lu_;
  PathVector k1_;
  bool tangent_valid_ = false;
};

/// Runs `work(i)` for i in [0, count) on up to `threads` workers. Each index
/// writes its own slot, so aggregation order does not depend on scheduling.
template <typename Work>
void parallel_for(std::uint64_t count, int threads, Work&& work) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::uint64_t>(count, 256))));
  if (threads == 1) {
    for (std::uint64_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t i = next++; i < count; i = next++) work(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace rigidity
