#pragma once

// Random geometric objects for property checks: Lagrangian frames and
// lifts, symplectic matrices, and quadratic Hamiltonians whose flows stay
// inside the domain of the monodromy splitting. Everything is driven by
// Rng, so a seed pins the whole sample.

#include <cmath>
#include <utility>

#include "maslov/lagrangian.hpp"
#include "maslov/monodromy.hpp"
#include "maslov/rng.hpp"

namespace maslov {

// Every symmetric unitary is v v^T for some unitary v, so this reaches
// all of W(n).
inline SouriauPoint random_souriau(Rng& rng, int n, const Tolerances& tol = {}) {
  ComplexMatrix v = random_unitary(rng, n);
  ComplexMatrix w = v * v.transpose();
  return SouriauPoint(std::move(w), tol);
}

inline LagrangianFrame random_lagrangian_frame(Rng& rng, int n,
                                               const Tolerances& tol = {}) {
  return souriau_to_frame(random_souriau(rng, n, tol), tol);
}

// Same plane, different basis: right-multiply by a well-conditioned
// invertible factor. Used to check that nothing depends on the frame.
inline LagrangianFrame regauge_frame(Rng& rng, const LagrangianFrame& frame,
                                     const Tolerances& tol = {}) {
  int n = frame.n();
  RealMatrix m(n, n);
  do {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.gauss();
  } while (std::abs(m.determinant()) < 0.2);
  RealMatrix z = frame.matrix() * m;
  return LagrangianFrame(std::move(z), tol);
}

// Random point of the covering space: any theta with e^{i theta} = det w
// works, so pick a random sheet around the principal one.
inline LagrangianLift random_lagrangian_lift(Rng& rng, int n,
                                             const Tolerances& tol = {}) {
  SouriauPoint w = random_souriau(rng, n, tol);
  double theta = std::arg(w.det()) + 2.0 * kPi * static_cast<double>(rng.uniform_int(-3, 3));
  return LagrangianLift(std::move(w), theta, tol);
}

// Polar-style product of a unitary rotation and a positive symplectic
// factor; covers both compact and stretching directions.
inline SymplecticMatrix random_symplectic(Rng& rng, int n, double stretch = 0.7,
                                          const Tolerances& tol = {}) {
  RealMatrix u = embed_unitary(random_unitary(rng, n));
  RealMatrix a = random_symmetric(rng, 2 * n, stretch / (2.0 * n));
  RealMatrix s = u * matrix_exp(standard_form(n) * a);
  return SymplecticMatrix(std::move(s), tol);
}

// Constant quadratic Hamiltonian whose flow satisfies, by construction,
// the hypotheses of the monodromy splitting over two periods: every
// eigenvalue angle of J H'' stays below 1.3 / period, so S_{2T} cannot
// touch the negative real axis and log S_{2T} is principal.
inline HamiltonianSpec random_bounded_spec(Rng& rng, int n, double period = 1.0,
                                           const Tolerances& tol = {}) {
  double cap = 1.3 / period;
  RealMatrix a = RealMatrix::Zero(2 * n, 2 * n);
  long style = rng.uniform_int(0, 3);
  if (style == 0 || style == 1 || style == 3) {
    // Per-mode normal forms: a rotation block or a stretch block on each
    // (x_j, p_j) pair.
    for (int j = 0; j < n; ++j) {
      bool elliptic = style == 0 || (style == 3 && rng.uniform_int(0, 1) == 0);
      if (elliptic) {
        double omega = rng.uniform(0.2 * cap, 0.9 * cap);
        a(j, j) = -omega;
        a(n + j, n + j) = -omega;
      } else {
        double lambda = rng.uniform(0.2, 1.0);
        a(j, n + j) = lambda;
        a(n + j, j) = lambda;
      }
    }
  } else {
    // Dense symmetric matrix, rescaled by the spectral radius of J H''.
    a = random_symmetric(rng, 2 * n, 1.0);
    Eigen::EigenSolver<RealMatrix> eig(standard_form(n) * a);
    double radius = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (radius < 1e-6) {
      a = -0.5 * cap * RealMatrix::Identity(2 * n, 2 * n);
    } else {
      a *= rng.uniform(0.3, 0.9) * cap / radius;
    }
  }
  return HamiltonianSpec::constant_quadratic(std::move(a), period, tol);
}

// Short quadratic flow on a uniform grid; handy for product and
// conjugation checks where two paths must share their grid.
inline SymplecticPath random_quadratic_path(Rng& rng, int n, int steps = 64,
                                            const Tolerances& tol = {}) {
  RealMatrix a = random_symmetric(rng, 2 * n, 0.8 / (2.0 * n));
  return quadratic_flow_path(a, 1.0, steps, tol);
}

}  // namespace maslov
