#pragma once

// Index calculus on triples of Lagrangian planes and pairs of lifts.
//
// tau(l, l', l'') is the signature of the quadratic form
//   Q(z, z', z'') = sigma(z, z') + sigma(z', z'') + sigma(z'', z)
// on l x l' x l''. With ddim = dim(l^l') - dim(l^l'') + dim(l'^l''),
// the inertia index Inert = (tau - ddim + n) / 2 is a nonnegative integer.
//
// The Leray index of two lifts (w, theta), (w', theta') is, in the
// transversal case,
//   m = (theta - theta' + i Tr Log(-w w'^{-1})) / 2pi + n/2,
// an exact integer; the general case routes through a common transversal
// witness c:  m(a, b) = m(a, c) - m(b, c) + Inert(l_a, l_b, l_c), which is
// independent of the witness.

#include <cmath>
#include <cstdint>

#include "maslov/lagrangian.hpp"

namespace maslov {

struct TripleIndexReport {
  int tau = 0;
  int ddim = 0;
  int inert = 0;
};

namespace detail {

// Coefficient matrix of sigma(Z_a zeta_a, Z_b zeta_b) = zeta_b^T C zeta_a.
inline RealMatrix pairing(const LagrangianFrame& a, const LagrangianFrame& b) {
  return b.matrix().transpose() * standard_form(a.n()) * a.matrix();
}

}  // namespace detail

// Signature of the 3n x 3n form. Frames are orthonormalized first so the
// zero-eigenvalue threshold sees comparable scales; the signature itself is
// invariant under any change of frame. Eigenvalues inside the guard band
// (gate, 10*gate) indicate a near-degenerate configuration and are an error
// rather than a silent sign guess.
inline int signature(const LagrangianFrame& a, const LagrangianFrame& b,
                     const LagrangianFrame& c, const Tolerances& tol = {}) {
  require(a.n() == b.n() && b.n() == c.n(), Error::Code::kDimensionMismatch,
          "signature: size mismatch");
  int n = a.n();
  LagrangianFrame oa = frame_orthonormalize(a, tol);
  LagrangianFrame ob = frame_orthonormalize(b, tol);
  LagrangianFrame oc = frame_orthonormalize(c, tol);

  RealMatrix m = RealMatrix::Zero(3 * n, 3 * n);
  auto add_term = [&m, n](int row_block, int col_block, const RealMatrix& coeff) {
    // Term zeta_row^T coeff zeta_col, symmetrized.
    m.block(row_block * n, col_block * n, n, n) += 0.5 * coeff;
    m.block(col_block * n, row_block * n, n, n) += 0.5 * coeff.transpose();
  };
  add_term(1, 0, detail::pairing(oa, ob));  // sigma(z_a, z_b)
  add_term(2, 1, detail::pairing(ob, oc));  // sigma(z_b, z_c)
  add_term(0, 2, detail::pairing(oc, oa));  // sigma(z_c, z_a)

  RealSpectralDecomposition dec = symmetric_eigen(m, tol);
  double max_abs = 0.0;
  for (int j = 0; j < 3 * n; ++j) max_abs = std::max(max_abs, std::abs(dec.values(j)));
  if (max_abs == 0.0) return 0;
  // Orthonormalized frames put the form's coefficients at unit scale, so the
  // zero gate keeps an absolute floor; without it a coincident triple (all
  // pairings at rounding level) would count noise as inertia.
  double gate = 1e-9 * std::max(1.0, max_abs);
  int plus = 0;
  int minus = 0;
  for (int j = 0; j < 3 * n; ++j) {
    double v = std::abs(dec.values(j));
    require(v <= gate || v >= 10.0 * gate, Error::Code::kNearThreshold,
            "signature: eigenvalue inside the zero guard band");
    if (v <= gate) continue;
    if (dec.values(j) > 0.0)
      ++plus;
    else
      ++minus;
  }
  return plus - minus;
}

inline int ddim(const LagrangianFrame& a, const LagrangianFrame& b, const LagrangianFrame& c,
                const Tolerances& tol = {}) {
  SouriauPoint wa = frame_to_souriau(a, tol);
  SouriauPoint wb = frame_to_souriau(b, tol);
  SouriauPoint wc = frame_to_souriau(c, tol);
  return intersection_dim(wa, wb, tol) - intersection_dim(wa, wc, tol) +
         intersection_dim(wb, wc, tol);
}

inline TripleIndexReport inertia_index(const LagrangianFrame& a, const LagrangianFrame& b,
                                       const LagrangianFrame& c, const Tolerances& tol = {}) {
  TripleIndexReport report;
  report.tau = signature(a, b, c, tol);
  report.ddim = ddim(a, b, c, tol);
  int numerator = report.tau - report.ddim + a.n();
  require(numerator % 2 == 0, Error::Code::kNonIntegerIndex,
          "inertia_index: tau - ddim + n is odd");
  report.inert = numerator / 2;
  return report;
}

struct LerayResult {
  long value = 0;
  double residual = 0.0;  // distance of the raw real value from `value`
};

// Transversal case only.
inline LerayResult leray_transversal(const LagrangianLift& a, const LagrangianLift& b,
                                     const Tolerances& tol = {}) {
  require(a.n() == b.n(), Error::Code::kDimensionMismatch, "leray_transversal: size mismatch");
  require(is_transversal(a.point(), b.point(), tol), Error::Code::kNotTransversal,
          "leray_transversal: planes intersect");
  int n = a.n();
  ComplexMatrix arg = -a.point().matrix() * b.point().matrix().adjoint();
  Complex tr_log = unitary_log_trace(arg, tol);
  // i Tr Log is real for unitary input: i * (i * sum of args) = -sum of args.
  double raw = (a.theta() - b.theta() - tr_log.imag()) / (2.0 * kPi) + 0.5 * n;
  LerayResult result;
  result.value = exact_integer(raw, tol.integer_residual, "leray_transversal");
  result.residual = std::abs(raw - static_cast<double>(result.value));
  return result;
}

// General case. Transversal pairs are evaluated directly; other pairs (and
// transversal pairs that sit too close to the logarithm branch cut) go
// through a seeded common-transversal witness. The witness route is valid for
// every pair and the cochain identity makes the result witness independent.
inline LerayResult leray(const LagrangianLift& a, const LagrangianLift& b,
                         std::uint64_t seed = 0, const Tolerances& tol = {}) {
  require(a.n() == b.n(), Error::Code::kDimensionMismatch, "leray: size mismatch");
  if (is_transversal(a.point(), b.point(), tol)) {
    try {
      return leray_transversal(a, b, tol);
    } catch (const Error& e) {
      if (e.code() != Error::Code::kBranchCutEigenvalue) throw;
    }
  }
  SouriauPoint witness = find_common_transversal(a.point(), b.point(), seed, tol);
  LagrangianLift c = principal_lift(witness, tol);
  LerayResult ma = leray_transversal(a, c, tol);
  LerayResult mb = leray_transversal(b, c, tol);
  TripleIndexReport triple =
      inertia_index(souriau_to_frame(a.point(), tol), souriau_to_frame(b.point(), tol),
                    souriau_to_frame(witness, tol), tol);
  LerayResult result;
  result.value = ma.value - mb.value + triple.inert;
  result.residual = std::max(ma.residual, mb.residual);
  return result;
}

}  // namespace maslov
