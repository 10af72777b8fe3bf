#pragma once

// Lagrangian planes of (R^{2n}, sigma) and their unitary coordinates.
//
// A plane is carried either by a frame (a 2n x n matrix of full rank whose
// columns span an isotropic subspace) or by its Souriau point: writing an
// orthonormal frame as (X; P), the matrix u = P - iX is unitary and
// w = u u^T is symmetric unitary; w depends on the plane only. The momentum
// plane 0 x R^n_p maps to w = I, the position plane to w = -I, and
// dim(l ^ l') = n - rank(w - w'). Lifts to the universal cover are pairs
// (w, theta) with det w = e^{i theta}, theta not reduced mod 2pi.
//
// Planes are unoriented throughout.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "maslov/matrix_ops.hpp"
#include "maslov/rng.hpp"

namespace maslov {

class LagrangianFrame {
 public:
  // z is 2n x n, full column rank, with z^T J z = 0.
  explicit LagrangianFrame(RealMatrix z, const Tolerances& tol = {}) : z_(std::move(z)) {
    require(z_.rows() > 0 && z_.rows() % 2 == 0 && z_.cols() == z_.rows() / 2,
            Error::Code::kDimensionMismatch,
            "LagrangianFrame: frame must be 2n x n");
    require_finite(z_, "LagrangianFrame");
    int n = static_cast<int>(z_.cols());
    require(rank_with_tolerance(z_, tol.rank) == n, Error::Code::kRankDeficient,
            "LagrangianFrame: frame is rank deficient");
    RealMatrix form = z_.transpose() * standard_form(n) * z_;
    double scale = std::max(1.0, z_.squaredNorm());
    require(form.norm() <= tol.structural * scale, Error::Code::kNotLagrangian,
            "LagrangianFrame: span is not isotropic");
  }

  int n() const { return static_cast<int>(z_.cols()); }
  const RealMatrix& matrix() const { return z_; }
  RealMatrix x_block() const { return z_.topRows(n()); }
  RealMatrix p_block() const { return z_.bottomRows(n()); }

  static LagrangianFrame momentum_plane(int n) {
    RealMatrix z = RealMatrix::Zero(2 * n, n);
    z.bottomRows(n) = RealMatrix::Identity(n, n);
    return LagrangianFrame(std::move(z));
  }

  static LagrangianFrame position_plane(int n) {
    RealMatrix z = RealMatrix::Zero(2 * n, n);
    z.topRows(n) = RealMatrix::Identity(n, n);
    return LagrangianFrame(std::move(z));
  }

 private:
  RealMatrix z_;
};

class SouriauPoint {
 public:
  // w symmetric unitary.
  explicit SouriauPoint(ComplexMatrix w, const Tolerances& tol = {}) : w_(std::move(w)) {
    require_square(w_, "SouriauPoint");
    require((w_ - w_.transpose()).norm() <= tol.structural * matrix_scale(w_),
            Error::Code::kNotSymmetric, "SouriauPoint: w is not symmetric");
    require_unitary(w_, tol, "SouriauPoint");
  }

  int n() const { return static_cast<int>(w_.rows()); }
  const ComplexMatrix& matrix() const { return w_; }
  Complex det() const { return w_.determinant(); }

 private:
  ComplexMatrix w_;
};

class LagrangianLift {
 public:
  // det w = e^{i theta}; theta picks the sheet of the universal cover and is
  // deliberately not reduced mod 2pi.
  LagrangianLift(SouriauPoint point, double theta, const Tolerances& tol = {})
      : point_(std::move(point)), theta_(theta) {
    require(std::isfinite(theta_), Error::Code::kNotFinite, "LagrangianLift: theta");
    Complex expected = std::polar(1.0, theta_);
    require(std::abs(point_.det() - expected) <=
                1e3 * tol.structural * static_cast<double>(point_.n()),
            Error::Code::kLiftMismatch,
            "LagrangianLift: det w does not match e^{i theta}");
  }

  const SouriauPoint& point() const { return point_; }
  double theta() const { return theta_; }
  int n() const { return point_.n(); }

 private:
  SouriauPoint point_;
  double theta_;
};

class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(RealMatrix s, const Tolerances& tol = {}) : s_(std::move(s)) {
    require_square(s_, "SymplecticMatrix");
    require(s_.rows() % 2 == 0, Error::Code::kDimensionMismatch,
            "SymplecticMatrix: dimension must be even");
    int n = static_cast<int>(s_.rows()) / 2;
    RealMatrix j = standard_form(n);
    double scale = std::max(1.0, s_.squaredNorm());
    require((s_.transpose() * j * s_ - j).norm() <= tol.structural * scale,
            Error::Code::kNotSymplectic, "SymplecticMatrix: S^T J S != J");
  }

  int n() const { return static_cast<int>(s_.rows()) / 2; }
  const RealMatrix& matrix() const { return s_; }

  // Group inverse -J S^T J; exact up to the input's own symplectic residual.
  SymplecticMatrix inverse() const {
    RealMatrix j = standard_form(n());
    return SymplecticMatrix(-j * s_.transpose() * j);
  }

  static SymplecticMatrix identity(int n) {
    return SymplecticMatrix(RealMatrix::Identity(2 * n, 2 * n));
  }

 private:
  RealMatrix s_;
};

// U(n) -> Sp(n): u = A + iB maps to (A  -B; B  A).
inline RealMatrix embed_unitary(const ComplexMatrix& u, const Tolerances& tol = {}) {
  require_unitary(u, tol, "embed_unitary");
  int n = static_cast<int>(u.rows());
  RealMatrix s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = u.real();
  s.topRightCorner(n, n) = -u.imag();
  s.bottomLeftCorner(n, n) = u.imag();
  s.bottomRightCorner(n, n) = u.real();
  return s;
}

// Inverse of embed_unitary for orthogonal symplectic matrices.
inline ComplexMatrix unitary_block(const RealMatrix& s, const Tolerances& tol = {}) {
  require_square(s, "unitary_block");
  require(s.rows() % 2 == 0, Error::Code::kDimensionMismatch, "unitary_block: odd dimension");
  int n = static_cast<int>(s.rows()) / 2;
  ComplexMatrix u = s.topLeftCorner(n, n).cast<Complex>() +
                    Complex(0.0, 1.0) * s.bottomLeftCorner(n, n).cast<Complex>();
  require((embed_unitary(u, tol) - s).norm() <= 1e3 * tol.structural * matrix_scale(s),
          Error::Code::kNotUnitaryPath,
          "unitary_block: matrix is not in the unitary subgroup");
  return u;
}

// Orthonormal frame spanning the same plane (thin QR).
inline LagrangianFrame frame_orthonormalize(const LagrangianFrame& frame,
                                            const Tolerances& tol = {}) {
  Eigen::HouseholderQR<RealMatrix> qr(frame.matrix());
  RealMatrix q = qr.householderQ() * RealMatrix::Identity(frame.matrix().rows(), frame.n());
  return LagrangianFrame(std::move(q), tol);
}

// Unitary coordinate u = P - iX of an orthonormalized frame (X; P). Any two
// orthonormal frames of the same plane differ by a right O(n) factor, so
// w = u u^T below is frame independent.
inline ComplexMatrix frame_to_unitary(const LagrangianFrame& frame, const Tolerances& tol = {}) {
  LagrangianFrame ortho = frame_orthonormalize(frame, tol);
  int n = ortho.n();
  ComplexMatrix u = ortho.p_block().cast<Complex>() -
                    Complex(0.0, 1.0) * ortho.x_block().cast<Complex>();
  require_unitary(u, tol, "frame_to_unitary");
  (void)n;
  return u;
}

inline SouriauPoint frame_to_souriau(const LagrangianFrame& frame, const Tolerances& tol = {}) {
  ComplexMatrix u = frame_to_unitary(frame, tol);
  return SouriauPoint(u * u.transpose(), tol);
}

// Souriau point of the plane S.l for a frame l of the plane.
inline LagrangianFrame act_symplectic(const SymplecticMatrix& s, const LagrangianFrame& frame,
                                      const Tolerances& tol = {}) {
  require(s.n() == frame.n(), Error::Code::kDimensionMismatch, "act_symplectic: size mismatch");
  return LagrangianFrame(s.matrix() * frame.matrix(), tol);
}

inline SouriauPoint act_unitary_on_souriau(const ComplexMatrix& u, const SouriauPoint& w,
                                           const Tolerances& tol = {}) {
  require_unitary(u, tol, "act_unitary_on_souriau");
  require(u.rows() == w.n(), Error::Code::kDimensionMismatch,
          "act_unitary_on_souriau: size mismatch");
  return SouriauPoint(u * w.matrix() * u.transpose(), tol);
}

inline int intersection_dim(const SouriauPoint& a, const SouriauPoint& b,
                            const Tolerances& tol = {}) {
  require(a.n() == b.n(), Error::Code::kDimensionMismatch, "intersection_dim: size mismatch");
  ComplexMatrix diff = a.matrix() - b.matrix();
  if (diff.norm() <= tol.rank) return a.n();
  return a.n() - rank_with_tolerance(diff, tol.rank);
}

inline bool is_transversal(const SouriauPoint& a, const SouriauPoint& b,
                           const Tolerances& tol = {}) {
  return intersection_dim(a, b, tol) == 0;
}

// Recover a frame of the plane from its Souriau point. Writing w = A + iB,
// the parts A, B are commuting real symmetric matrices with A^2 + B^2 = I;
// a joint orthogonal eigenbasis O gives w = O diag(e^{i phi}) O^T, and
// u = O diag(e^{i phi / 2}) is a unitary with u u^T = w.
inline LagrangianFrame souriau_to_frame(const SouriauPoint& w, const Tolerances& tol = {}) {
  int n = w.n();
  RealMatrix a = w.matrix().real();
  RealMatrix b = w.matrix().imag();
  // Joint diagonalization through a generic combination; the fixed angle list
  // only matters when an accidental eigenvalue collision makes one mix.
  constexpr double kAngles[] = {0.6154797086703874, 1.234567890123456, 2.031982051019882,
                                0.287654321098765, 1.829384756102938, 2.718281828459045,
                                0.912837465001923, 1.414213562373095};
  const double off_gate = 1e-8 * static_cast<double>(n);
  for (double angle : kAngles) {
    RealMatrix combo = std::cos(angle) * a + std::sin(angle) * b;
    RealSpectralDecomposition dec = symmetric_eigen(combo, tol);
    RealMatrix da = dec.vectors.transpose() * a * dec.vectors;
    RealMatrix db = dec.vectors.transpose() * b * dec.vectors;
    RealMatrix da_off = da - RealMatrix(da.diagonal().asDiagonal());
    RealMatrix db_off = db - RealMatrix(db.diagonal().asDiagonal());
    if (da_off.norm() > off_gate || db_off.norm() > off_gate) continue;
    ComplexMatrix u(n, n);
    u.setZero();
    for (int j = 0; j < n; ++j) {
      double phi = std::atan2(db(j, j), da(j, j));
      u.col(j) = dec.vectors.col(j).cast<Complex>() * std::polar(1.0, phi / 2.0);
    }
    RealMatrix z(2 * n, n);
    z.topRows(n) = -u.imag();
    z.bottomRows(n) = u.real();
    LagrangianFrame frame(std::move(z), tol);
    if ((frame_to_souriau(frame, tol).matrix() - w.matrix()).norm() <=
        1e3 * tol.structural * static_cast<double>(n))
      return frame;
  }
  throw Error(Error::Code::kNoConvergence,
              "souriau_to_frame: joint diagonalization failed");
}

// Lift with theta on the principal sheet, arg det w in (-pi, pi].
inline LagrangianLift principal_lift(const SouriauPoint& w, const Tolerances& tol = {}) {
  return LagrangianLift(w, std::arg(w.det()), tol);
}

// Deterministic search for a plane transversal to both a and b: seeded random
// unitaries v give candidates w'' = v v^T, accepted when rank(w'' - a) and
// rank(w'' - b) are both full.
inline SouriauPoint find_common_transversal(const SouriauPoint& a, const SouriauPoint& b,
                                            std::uint64_t seed, const Tolerances& tol = {}) {
  require(a.n() == b.n(), Error::Code::kDimensionMismatch,
          "find_common_transversal: size mismatch");
  int n = a.n();
  Rng rng(seed);
  constexpr int kMaxAttempts = 64;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    ComplexMatrix v = random_unitary(rng, n);
    SouriauPoint candidate(v * v.transpose(), tol);
    if (is_transversal(candidate, a, tol) && is_transversal(candidate, b, tol))
      return candidate;
  }
  throw Error(Error::Code::kSearchExhausted,
              "find_common_transversal: no candidate after " +
                  std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace maslov
