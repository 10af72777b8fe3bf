#pragma once

// Sampled symplectic paths, their lifted Lagrangian paths, and Maslov
// indices.
//
// A path is compared through its lift: transport a plane l along the
// samples, track w(t) = S_t l under the Souriau map, and continue
// theta(t) = arg det w(t) across branch cuts by accumulating principal
// increments. The Maslov index is the Leray index of the endpoint lift
// against the starting lift.
//
// Paths are caller-sampled. The library validates density (every angle
// increment must stay below pi/2) and refuses to interpolate: inventing
// samples inside Sp(n) could silently change the homotopy class, which is
// exactly the data the index measures.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "maslov/indices.hpp"
#include "maslov/matrix_ops.hpp"

namespace maslov {

class SymplecticPath {
 public:
  SymplecticPath(std::vector<double> times, std::vector<SymplecticMatrix> samples,
                 const Tolerances& tol = {})
      : times_(std::move(times)), samples_(std::move(samples)) {
    require(times_.size() == samples_.size(), Error::Code::kDimensionMismatch,
            "SymplecticPath: one sample per time");
    require(times_.size() >= 2, Error::Code::kInvalidArgument,
            "SymplecticPath: need at least two samples");
    require(times_.front() == 0.0, Error::Code::kInvalidArgument,
            "SymplecticPath: time grid must start at 0");
    for (std::size_t k = 0; k + 1 < times_.size(); ++k) {
      require(times_[k] < times_[k + 1], Error::Code::kInvalidArgument,
              "SymplecticPath: times must be strictly increasing");
    }
    int n = samples_.front().n();
    for (const SymplecticMatrix& s : samples_) {
      require(s.n() == n, Error::Code::kDimensionMismatch,
              "SymplecticPath: mixed dimensions");
    }
    double origin_gap =
        (samples_.front().matrix() - RealMatrix::Identity(2 * n, 2 * n)).norm();
    require(origin_gap <= tol.identity, Error::Code::kInvalidArgument,
            "SymplecticPath: path must originate at the identity");
  }

  int n() const { return samples_.front().n(); }
  std::size_t size() const { return times_.size(); }
  double time(std::size_t k) const { return times_.at(k); }
  const SymplecticMatrix& sample(std::size_t k) const { return samples_.at(k); }
  const std::vector<double>& times() const { return times_; }
  double duration() const { return times_.back(); }
  const SymplecticMatrix& front() const { return samples_.front(); }
  const SymplecticMatrix& back() const { return samples_.back(); }

  // Index of the sample at time t; t must lie on the grid.
  std::size_t index_of(double t) const {
    double grid_tol = 1e-9 * std::max(1.0, duration());
    for (std::size_t k = 0; k < times_.size(); ++k) {
      if (std::abs(times_[k] - t) <= grid_tol) return k;
    }
    throw Error(Error::Code::kInvalidArgument,
                "SymplecticPath: requested time is not a sample time");
  }

  // Prefix [0, t_end]; t_end must be a sample time.
  SymplecticPath restricted_to(double t_end, const Tolerances& tol = {}) const {
    std::size_t last = index_of(t_end);
    require(last >= 1, Error::Code::kInvalidArgument,
            "SymplecticPath: restriction needs at least two samples");
    std::vector<double> times(times_.begin(), times_.begin() + last + 1);
    std::vector<SymplecticMatrix> samples(samples_.begin(), samples_.begin() + last + 1);
    return SymplecticPath(std::move(times), std::move(samples), tol);
  }

 private:
  std::vector<double> times_;
  std::vector<SymplecticMatrix> samples_;
};

// n=1 rotation path: S_t is the image of e^{i t alpha}, t in [0, 1].
inline SymplecticPath rotation_path(double alpha, int steps, const Tolerances& tol = {}) {
  require(steps >= 2, Error::Code::kInvalidArgument, "rotation_path: steps >= 2");
  std::vector<double> times;
  std::vector<SymplecticMatrix> samples;
  times.reserve(steps + 1);
  samples.reserve(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    double t = static_cast<double>(k) / steps;
    ComplexMatrix u = ComplexMatrix::Constant(1, 1, std::polar(1.0, alpha * t));
    times.push_back(t);
    samples.emplace_back(embed_unitary(u, tol), tol);
  }
  return SymplecticPath(std::move(times), std::move(samples), tol);
}

// Closed unitary path diag(e^{2 pi i k t}, 1, ..., 1), t in [0, 1], with
// det winding exactly `winding`.
inline SymplecticPath unitary_loop_path(int winding, int steps, int n,
                                        const Tolerances& tol = {}) {
  require(steps >= 2, Error::Code::kInvalidArgument, "unitary_loop_path: steps >= 2");
  require(n >= 1, Error::Code::kInvalidArgument, "unitary_loop_path: n >= 1");
  std::vector<double> times;
  std::vector<SymplecticMatrix> samples;
  times.reserve(steps + 1);
  samples.reserve(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    double t = static_cast<double>(k) / steps;
    ComplexMatrix u = ComplexMatrix::Identity(n, n);
    u(0, 0) = std::polar(1.0, 2.0 * kPi * winding * t);
    times.push_back(t);
    samples.emplace_back(embed_unitary(u, tol), tol);
  }
  return SymplecticPath(std::move(times), std::move(samples), tol);
}

// Exact flow samples S_t = exp(t J A) of a constant quadratic Hamiltonian
// with Hessian A.
inline SymplecticPath quadratic_flow_path(const RealMatrix& hessian, double duration,
                                          int steps, const Tolerances& tol = {}) {
  require(steps >= 2, Error::Code::kInvalidArgument, "quadratic_flow_path: steps >= 2");
  require(duration > 0.0, Error::Code::kInvalidArgument,
          "quadratic_flow_path: duration must be positive");
  require_square(hessian, "quadratic_flow_path");
  require(hessian.rows() % 2 == 0, Error::Code::kDimensionMismatch,
          "quadratic_flow_path: Hessian must be 2n x 2n");
  require((hessian - hessian.transpose()).norm() <= tol.structural * matrix_scale(hessian),
          Error::Code::kNotSymmetric, "quadratic_flow_path: Hessian must be symmetric");
  int n = static_cast<int>(hessian.rows()) / 2;
  RealMatrix generator = standard_form(n) * hessian;
  std::vector<double> times;
  std::vector<SymplecticMatrix> samples;
  times.reserve(steps + 1);
  samples.reserve(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    double t = duration * static_cast<double>(k) / steps;
    times.push_back(t);
    samples.emplace_back(matrix_exp(t * generator), tol);
  }
  return SymplecticPath(std::move(times), std::move(samples), tol);
}

inline SymplecticPath pointwise_product(const SymplecticPath& p, const SymplecticPath& q,
                                        const Tolerances& tol = {}) {
  require(p.n() == q.n(), Error::Code::kDimensionMismatch, "pointwise_product: size mismatch");
  require(p.size() == q.size(), Error::Code::kDimensionMismatch,
          "pointwise_product: sample counts differ");
  double grid_tol = 1e-9 * std::max(1.0, p.duration());
  std::vector<double> times;
  std::vector<SymplecticMatrix> samples;
  times.reserve(p.size());
  samples.reserve(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    require(std::abs(p.time(k) - q.time(k)) <= grid_tol, Error::Code::kInvalidArgument,
            "pointwise_product: time grids differ");
    times.push_back(p.time(k));
    samples.emplace_back(p.sample(k).matrix() * q.sample(k).matrix(), tol);
  }
  return SymplecticPath(std::move(times), std::move(samples), tol);
}

inline SymplecticPath conjugate_path(const SymplecticMatrix& s0, const SymplecticPath& p,
                                     const Tolerances& tol = {}) {
  require(s0.n() == p.n(), Error::Code::kDimensionMismatch, "conjugate_path: size mismatch");
  RealMatrix inv = s0.inverse().matrix();
  std::vector<double> times;
  std::vector<SymplecticMatrix> samples;
  times.reserve(p.size());
  samples.reserve(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    times.push_back(p.time(k));
    samples.emplace_back(inv * p.sample(k).matrix() * s0.matrix(), tol);
  }
  return SymplecticPath(std::move(times), std::move(samples), tol);
}

class LiftedLagrangianPath {
 public:
  LiftedLagrangianPath(std::vector<double> times, std::vector<LagrangianLift> lifts)
      : times_(std::move(times)), lifts_(std::move(lifts)) {
    require(times_.size() == lifts_.size(), Error::Code::kDimensionMismatch,
            "LiftedLagrangianPath: one lift per time");
    require(times_.size() >= 2, Error::Code::kInvalidArgument,
            "LiftedLagrangianPath: need at least two samples");
    for (std::size_t k = 0; k + 1 < times_.size(); ++k) {
      require(times_[k] < times_[k + 1], Error::Code::kInvalidArgument,
              "LiftedLagrangianPath: times must be strictly increasing");
      require(std::abs(lifts_[k + 1].theta() - lifts_[k].theta()) < 0.5 * kPi,
              Error::Code::kStepTooCoarse,
              "LiftedLagrangianPath: theta increment reaches pi/2");
    }
  }

  int n() const { return lifts_.front().n(); }
  std::size_t size() const { return times_.size(); }
  double time(std::size_t k) const { return times_.at(k); }
  const LagrangianLift& lift(std::size_t k) const { return lifts_.at(k); }
  const LagrangianLift& front() const { return lifts_.front(); }
  const LagrangianLift& back() const { return lifts_.back(); }
  double winding_angle() const { return lifts_.back().theta() - lifts_.front().theta(); }

 private:
  std::vector<double> times_;
  std::vector<LagrangianLift> lifts_;
};

// Transport seed_plane along the path and lift the angle continuously,
// starting from the principal argument of det w(0).
inline LiftedLagrangianPath lift_lagrangian_path(const SymplecticPath& p,
                                                 const LagrangianFrame& seed_plane,
                                                 const Tolerances& tol = {}) {
  require(p.n() == seed_plane.n(), Error::Code::kDimensionMismatch,
          "lift_lagrangian_path: size mismatch");
  std::vector<double> times;
  std::vector<LagrangianLift> lifts;
  times.reserve(p.size());
  lifts.reserve(p.size());
  double theta = 0.0;
  Complex previous_det(0.0, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    SouriauPoint w = frame_to_souriau(act_symplectic(p.sample(k), seed_plane, tol), tol);
    Complex det = w.det();
    if (k == 0) {
      theta = std::arg(det);
    } else {
      double increment = std::arg(det / previous_det);
      require(std::abs(increment) < 0.5 * kPi, Error::Code::kStepTooCoarse,
              "lift_lagrangian_path: angle step reaches pi/2 in [" +
                  std::to_string(p.time(k - 1)) + ", " + std::to_string(p.time(k)) +
                  "]; supply a denser sampling");
      theta += increment;
    }
    previous_det = det;
    times.push_back(p.time(k));
    lifts.emplace_back(w, theta, tol);
  }
  return LiftedLagrangianPath(std::move(times), std::move(lifts));
}

struct MaslovResult {
  long index = 0;
  double residual = 0.0;        // pre-rounding distance from the integer
  bool endpoint_transversal = false;  // S_T l transversal to l
};

// Maslov index of the path relative to an arbitrary plane l:
// the Leray index of the endpoint lift against the starting lift of the
// transported plane.
inline MaslovResult maslov_index_rel(const SymplecticPath& p, const LagrangianFrame& plane,
                                     std::uint64_t seed = 0, const Tolerances& tol = {}) {
  LiftedLagrangianPath lifted = lift_lagrangian_path(p, plane, tol);
  LerayResult m = leray(lifted.back(), lifted.front(), seed, tol);
  MaslovResult result;
  result.index = m.value;
  result.residual = m.residual;
  result.endpoint_transversal =
      is_transversal(lifted.back().point(), lifted.front().point(), tol);
  return result;
}

// Maslov index relative to the momentum plane.
inline MaslovResult maslov_index(const SymplecticPath& p, std::uint64_t seed = 0,
                                 const Tolerances& tol = {}) {
  return maslov_index_rel(p, LagrangianFrame::momentum_plane(p.n()), seed, tol);
}

struct IdentityCheck {
  long lhs = 0;
  long rhs = 0;
  bool holds() const { return lhs == rhs; }
};

// Product rule: mu(S S') = mu(S) + mu(S') - Inert(S_T S'_T l_p, S_T l_p, l_p)
// where the product path is the pointwise product (the composition law of
// the covering group).
inline IdentityCheck maslov_product_check(const SymplecticPath& p, const SymplecticPath& q,
                                          std::uint64_t seed = 0, const Tolerances& tol = {}) {
  SymplecticPath product = pointwise_product(p, q, tol);
  IdentityCheck check;
  check.lhs = maslov_index(product, seed, tol).index;
  LagrangianFrame lp = LagrangianFrame::momentum_plane(p.n());
  LagrangianFrame both = act_symplectic(p.back(), act_symplectic(q.back(), lp, tol), tol);
  LagrangianFrame first = act_symplectic(p.back(), lp, tol);
  TripleIndexReport triple = inertia_index(both, first, lp, tol);
  check.rhs = maslov_index(p, seed, tol).index + maslov_index(q, seed, tol).index - triple.inert;
  return check;
}

// mu_{l1} - mu_{l2} = Inert(S l1, l1, l2) - Inert(S l1, S l2, l2) with
// S the endpoint.
inline IdentityCheck rel_index_difference(const SymplecticPath& p, const LagrangianFrame& l1,
                                          const LagrangianFrame& l2, std::uint64_t seed = 0,
                                          const Tolerances& tol = {}) {
  IdentityCheck check;
  check.lhs = maslov_index_rel(p, l1, seed, tol).index - maslov_index_rel(p, l2, seed, tol).index;
  LagrangianFrame moved1 = act_symplectic(p.back(), l1, tol);
  LagrangianFrame moved2 = act_symplectic(p.back(), l2, tol);
  check.rhs = inertia_index(moved1, l1, l2, tol).inert - inertia_index(moved1, moved2, l2, tol).inert;
  return check;
}

// Closed path of orthogonal-symplectic samples: the winding number k of
// det u_t, returned as the Maslov index 2k and cross-checked against the
// lift-based index of the same path.
inline MaslovResult loop_winding_index(const SymplecticPath& p, std::uint64_t seed = 0,
                                       const Tolerances& tol = {}) {
  double closure = (p.back().matrix() - p.front().matrix()).norm();
  require(closure <= tol.identity, Error::Code::kNotClosed,
          "loop_winding_index: path endpoints differ");
  double total = 0.0;
  Complex previous_det(0.0, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    ComplexMatrix u = unitary_block(p.sample(k).matrix(), tol);
    Complex det = u.determinant();
    if (k > 0) {
      double increment = std::arg(det / previous_det);
      require(std::abs(increment) < 0.5 * kPi, Error::Code::kStepTooCoarse,
              "loop_winding_index: determinant step reaches pi/2");
      total += increment;
    }
    previous_det = det;
  }
  double raw = total / (2.0 * kPi);
  long winding = exact_integer(raw, tol.integer_residual, "loop_winding_index");
  MaslovResult direct = maslov_index(p, seed, tol);
  require(direct.index == 2 * winding, Error::Code::kIdentityViolated,
          "loop_winding_index: lift index " + std::to_string(direct.index) +
              " disagrees with winding " + std::to_string(winding));
  MaslovResult result;
  result.index = 2 * winding;
  result.residual = std::max(std::abs(raw - static_cast<double>(winding)), direct.residual);
  result.endpoint_transversal = direct.endpoint_transversal;
  return result;
}

// Index of a closed Lagrangian loop: the Leray index of the final lift
// against a reference lift, minus the same index for the initial lift.
// Any reference gives the same value; the default reference is the
// initial lift itself.
inline long arnold_maslov_loop_index(const LiftedLagrangianPath& loop,
                                     const LagrangianLift& reference, std::uint64_t seed = 0,
                                     const Tolerances& tol = {}) {
  require(loop.n() == reference.n(), Error::Code::kDimensionMismatch,
          "arnold_maslov_loop_index: size mismatch");
  double closure = (loop.back().point().matrix() - loop.front().point().matrix()).norm();
  require(closure <= tol.identity * loop.n(), Error::Code::kNotClosed,
          "arnold_maslov_loop_index: path is not a loop");
  LerayResult end = leray(loop.back(), reference, seed, tol);
  LerayResult start = leray(loop.front(), reference, seed, tol);
  return end.value - start.value;
}

inline long arnold_maslov_loop_index(const LiftedLagrangianPath& loop, std::uint64_t seed = 0,
                                     const Tolerances& tol = {}) {
  return arnold_maslov_loop_index(loop, loop.front(), seed, tol);
}

}  // namespace maslov
