#pragma once

// Self-check battery behind the `verify` command. Each check replays one
// of the identities the index calculus is built on, over seeded random
// data, and reports pass or fail; the suite is deterministic for a given
// (seed, trials, max_n).

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "maslov/indices.hpp"
#include "maslov/monodromy.hpp"
#include "maslov/sampling.hpp"

namespace maslov {

// Lift of the line x cos(theta) rotated from the momentum axis: w = e^{2i
// theta} with lift angle 2 theta.
inline LagrangianLift line_lift(double theta, const Tolerances& tol = {}) {
  ComplexMatrix w(1, 1);
  w(0, 0) = std::exp(Complex(0.0, 2.0 * theta));
  return LagrangianLift(SouriauPoint(std::move(w), tol), 2.0 * theta, tol);
}

// Closed form for the line index with delta = theta - theta': the index
// is floor(delta/pi) + 1 away from multiples of pi and k at delta = k pi.
// The even anchors delta = 2k pi -> 2k force this shape: the index jumps
// by exactly one at each crossing, so a flat stretch of length 2 pi is
// impossible.
inline long line_index_oracle(double delta) {
  double ratio = delta / kPi;
  long nearest = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(nearest)) < 1e-9) return nearest;
  return static_cast<long>(std::floor(ratio)) + 1;
}

struct VerifyCheck {
  std::string name;
  int cases = 0;
  bool passed = true;
};

namespace detail {

// Retry wrapper: random triples can land in the guard band of the
// signature threshold; those draws are discarded, not failed.
template <typename F>
inline bool with_resample(Rng& rng, int attempts, F&& body) {
  for (int k = 0; k < attempts; ++k) {
    try {
      return body(rng);
    } catch (const Error& e) {
      if (e.code() != Error::Code::kNearThreshold) throw;
    }
  }
  return false;
}

}  // namespace detail

inline std::vector<VerifyCheck> run_verify_suite(std::uint64_t seed, int trials, int max_n,
                                                 const Tolerances& tol = {}) {
  require(trials >= 1, Error::Code::kInvalidArgument, "run_verify_suite: trials >= 1");
  require(max_n >= 1 && max_n <= 4, Error::Code::kInvalidArgument,
          "run_verify_suite: max_n must be in [1, 4]");
  std::vector<VerifyCheck> checks;
  auto add = [&checks](const char* name, int cases, bool passed) {
    checks.push_back({name, cases, passed});
  };
  Rng rng(seed);
  int per_n = std::max(1, trials / (3 * max_n));

  {  // The Souriau point depends on the plane, not on the frame chosen for it.
    int cases = 0;
    bool ok = true;
    for (int n = 1; n <= max_n; ++n) {
      for (int t = 0; t < per_n; ++t) {
        LagrangianFrame frame = random_lagrangian_frame(rng, n, tol);
        SouriauPoint w1 = frame_to_souriau(frame, tol);
        SouriauPoint w2 = frame_to_souriau(regauge_frame(rng, frame, tol), tol);
        SouriauPoint w3 = frame_to_souriau(souriau_to_frame(w1, tol), tol);
        ok = ok && (w1.matrix() - w2.matrix()).norm() <= 1e-8 * n &&
             (w1.matrix() - w3.matrix()).norm() <= 1e-8 * n;
        ++cases;
      }
    }
    add("souriau_frame_independence", cases, ok);
  }

  {  // Signature: antisymmetry, cocycle, symplectic invariance, parity.
    int cases = 0;
    bool ok = true;
    for (int n = 1; n <= max_n; ++n) {
      for (int t = 0; t < per_n; ++t) {
        bool good = detail::with_resample(rng, 8, [&](Rng& r) {
          LagrangianFrame a = random_lagrangian_frame(r, n, tol);
          LagrangianFrame b = random_lagrangian_frame(r, n, tol);
          LagrangianFrame c = random_lagrangian_frame(r, n, tol);
          LagrangianFrame d = random_lagrangian_frame(r, n, tol);
          int tau = signature(a, b, c, tol);
          if (signature(b, a, c, tol) != -tau) return false;
          if (signature(a, c, b, tol) != -tau) return false;
          int boundary = signature(b, c, d, tol) - signature(a, c, d, tol) +
                         signature(a, b, d, tol) - tau;
          if (boundary != 0) return false;
          SymplecticMatrix s = random_symplectic(r, n, 0.7, tol);
          if (signature(act_symplectic(s, a, tol), act_symplectic(s, b, tol),
                        act_symplectic(s, c, tol), tol) != tau)
            return false;
          TripleIndexReport triple = inertia_index(a, b, c, tol);
          return (triple.tau - triple.ddim + n) % 2 == 0;
        });
        ok = ok && good;
        ++cases;
      }
    }
    add("signature_cocycle", cases, ok);
  }

  {  // Leray index: vanishing on the diagonal, antisymmetry up to the
     // intersection defect, deck translation by 2 pi, seed independence.
    int cases = 0;
    bool ok = true;
    for (int n = 1; n <= max_n; ++n) {
      for (int t = 0; t < per_n; ++t) {
        LagrangianLift a = random_lagrangian_lift(rng, n, tol);
        LagrangianLift b = random_lagrangian_lift(rng, n, tol);
        long ab = leray(a, b, 0, tol).value;
        long ba = leray(b, a, 0, tol).value;
        int defect = intersection_dim(a.point(), b.point(), tol);
        ok = ok && leray(a, a, 0, tol).value == 0;
        ok = ok && ab + ba == n - defect;
        LagrangianLift a_up(a.point(), a.theta() + 2.0 * kPi, tol);
        LagrangianLift b_up(b.point(), b.theta() + 2.0 * kPi, tol);
        ok = ok && leray(a_up, b, 0, tol).value == ab + 1;
        ok = ok && leray(a, b_up, 0, tol).value == ab - 1;
        for (std::uint64_t s = 1; s <= 3; ++s)
          ok = ok && leray(a, b, s, tol).value == ab;
        ++cases;
      }
    }
    add("leray_translation_antisymmetry", cases, ok);
  }

  {  // Coboundary: m(a,b) - m(a,c) + m(b,c) = Inert on the projections.
    int cases = 0;
    bool ok = true;
    for (int n = 1; n <= max_n; ++n) {
      for (int t = 0; t < per_n; ++t) {
        bool good = detail::with_resample(rng, 8, [&](Rng& r) {
          LagrangianLift a = random_lagrangian_lift(r, n, tol);
          LagrangianLift b = random_lagrangian_lift(r, n, tol);
          LagrangianLift c = random_lagrangian_lift(r, n, tol);
          long lhs = leray(a, b, 0, tol).value - leray(a, c, 0, tol).value +
                     leray(b, c, 0, tol).value;
          TripleIndexReport triple =
              inertia_index(souriau_to_frame(a.point(), tol), souriau_to_frame(b.point(), tol),
                            souriau_to_frame(c.point(), tol), tol);
          return lhs == triple.inert;
        });
        ok = ok && good;
        ++cases;
      }
    }
    add("leray_coboundary", cases, ok);
  }

  {  // Pairs with a common line (n >= 2) exercise the witness route.
    int cases = 0;
    bool ok = true;
    if (max_n >= 2) {
      for (int t = 0; t < per_n * 2; ++t) {
        SymplecticMatrix s = random_symplectic(rng, 2, 0.7, tol);
        RealMatrix za(4, 2), zb(4, 2);
        za.setZero();
        zb.setZero();
        za(0, 0) = 1.0;  // x_1
        za(1, 1) = 1.0;  // x_2
        zb(0, 0) = 1.0;  // x_1
        zb(3, 1) = 1.0;  // p_2
        LagrangianFrame a = act_symplectic(s, LagrangianFrame(za, tol), tol);
        LagrangianFrame b = act_symplectic(s, LagrangianFrame(zb, tol), tol);
        LagrangianLift la = principal_lift(frame_to_souriau(a, tol), tol);
        LagrangianLift lb = principal_lift(frame_to_souriau(b, tol), tol);
        ok = ok && intersection_dim(la.point(), lb.point(), tol) == 1;
        long base = leray(la, lb, 0, tol).value;
        for (std::uint64_t sd = 1; sd <= 4; ++sd)
          ok = ok && leray(la, lb, sd, tol).value == base;
        ok = ok && base + leray(lb, la, 0, tol).value == 2 - 1;
        ++cases;
      }
    }
    // Not applicable below two degrees of freedom; no row rather than a
    // zero-case pass.
    if (cases > 0) add("leray_intersecting_pairs", cases, ok);
  }

  {  // Line pairs against the closed form, including multiples of pi.
    int cases = 0;
    bool ok = true;
    for (int i = 0; i < 16; ++i) {
      for (int j = 0; j < 16; ++j) {
        double theta = -3.0 * kPi + 0.4 * kPi * i;
        double theta_prime = -3.0 * kPi + 0.4 * kPi * j;
        long got = leray(line_lift(theta, tol), line_lift(theta_prime, tol), 0, tol).value;
        ok = ok && got == line_index_oracle(theta - theta_prime);
        ++cases;
      }
    }
    add("line_closed_form", cases, ok);
  }

  {  // Rotation paths against the same closed form.
    int cases = 0;
    bool ok = true;
    for (double alpha : {0.25 * kPi, 0.5 * kPi, kPi, 1.5 * kPi, 2.0 * kPi, 3.0 * kPi,
                         4.0 * kPi, -0.5 * kPi, -2.0 * kPi}) {
      int steps = std::max(16, static_cast<int>(std::ceil(8.0 * std::abs(alpha) / kPi)));
      MaslovResult r = maslov_index(rotation_path(alpha, steps, tol), 0, tol);
      ok = ok && r.index == line_index_oracle(alpha);
      ++cases;
    }
    add("rotation_index", cases, ok);
  }

  {  // Unitary loops: Maslov index twice the det-squared winding number.
    int cases = 0;
    bool ok = true;
    for (int n = 1; n <= std::min(2, max_n); ++n) {
      for (int k : {-1, 0, 1, 2}) {
        SymplecticPath loop = unitary_loop_path(k, std::max(16, 8 * std::abs(k) + 8), n, tol);
        MaslovResult r = loop_winding_index(loop, 0, tol);
        ok = ok && r.index == 2 * k;
        ++cases;
      }
    }
    add("loop_even_index", cases, ok);
  }

  {  // Product rule and conjugation invariance on short quadratic flows.
    int cases = 0;
    bool ok = true;
    for (int n = 1; n <= std::min(2, max_n); ++n) {
      for (int t = 0; t < std::max(2, per_n / 2); ++t) {
        SymplecticPath p = random_quadratic_path(rng, n, 64, tol);
        SymplecticPath q = random_quadratic_path(rng, n, 64, tol);
        ok = ok && maslov_product_check(p, q, 0, tol).holds();
        SymplecticMatrix s0 = random_symplectic(rng, n, 0.7, tol);
        LagrangianFrame lp = LagrangianFrame::momentum_plane(n);
        long conjugated = maslov_index(conjugate_path(s0, p, tol), 0, tol).index;
        long moved = maslov_index_rel(p, act_symplectic(s0, lp, tol), 0, tol).index;
        ok = ok && conjugated == moved;
        ok = ok && rel_index_difference(p, random_lagrangian_frame(rng, n, tol),
                                        random_lagrangian_frame(rng, n, tol), 0, tol)
                       .holds();
        ++cases;
      }
    }
    add("product_and_conjugation", cases, ok);
  }

  {  // Refinement stability: doubling the sampling cannot move the index.
    int cases = 0;
    bool ok = true;
    for (int n = 1; n <= std::min(2, max_n); ++n) {
      for (int t = 0; t < 3; ++t) {
        RealMatrix a = random_symmetric(rng, 2 * n, 0.8 / (2.0 * n));
        long coarse = maslov_index(quadratic_flow_path(a, 1.0, 64, tol), 0, tol).index;
        long fine = maslov_index(quadratic_flow_path(a, 1.0, 128, tol), 0, tol).index;
        ok = ok && coarse == fine;
        ++cases;
      }
    }
    add("refinement_stability", cases, ok);
  }

  {  // Named flows with hand-computable indices.
    bool ok = true;
    try {
      HamiltonianSpec harmonic = HamiltonianSpec::builtin("harmonic_oscillator", {}, {}, tol);
      MonodromyDecomposition d = split_monodromy(
          integrate_variational(harmonic, 2, 128, nullptr, tol), harmonic.period(), 0, tol);
      SplittingReport r = splitting_report(d, 0, tol, false);
      ok = ok && r.all_hold() && r.mu_period == 2 && r.winding == 2 && r.mu_exp_double == 0 &&
           d.generator.norm() <= 1e-8;

      HamiltonianSpec inverted = HamiltonianSpec::builtin("inverted_oscillator", {}, {}, tol);
      MonodromyDecomposition dh = split_monodromy(
          integrate_variational(inverted, 2, 128, nullptr, tol), inverted.period(), 0, tol);
      SplittingReport rh = splitting_report(dh, 0, tol, false);
      ok = ok && rh.all_hold() && rh.mu_period == 0 && rh.winding == 0 &&
           rh.mu_periodic_part == 0;

      HamiltonianSpec driven = HamiltonianSpec::builtin("driven_oscillator", {}, {}, tol);
      MonodromyDecomposition dd = split_monodromy(
          integrate_variational(driven, 2, 256, nullptr, tol), driven.period(), 0, tol);
      SplittingReport rd = splitting_report(dd, 0, tol, false);
      ok = ok && rd.all_hold() && rd.mu_period == 1 && rd.winding == 0 && rd.generator_checked;

      HamiltonianSpec aniso = HamiltonianSpec::builtin("anisotropic_oscillator", {}, {}, tol);
      MonodromyDecomposition da = split_monodromy(
          integrate_variational(aniso, 2, 256, nullptr, tol), aniso.period(), 0, tol);
      SplittingReport ra = splitting_report(da, 0, tol, false);
      ok = ok && ra.all_hold() && ra.mu_period == 6 && ra.winding == 6;
    } catch (const Error&) {
      ok = false;
    }
    add("named_flows", 4, ok);
  }

  {  // Splitting identities on random bounded generators.
    int cases = 0;
    bool ok = true;
    for (int n = 1; n <= max_n; ++n) {
      for (int t = 0; t < std::max(2, per_n / 2); ++t) {
        try {
          HamiltonianSpec spec = random_bounded_spec(rng, n, 1.0, tol);
          SymplecticPath flow = integrate_variational(spec, 2, 64, nullptr, tol);
          MonodromyDecomposition d = split_monodromy(flow, spec.period(), 0, tol);
          SplittingReport r = splitting_report(d, 0, tol, false);
          ok = ok && r.all_hold() && r.generator_checked;
        } catch (const Error&) {
          ok = false;
        }
        ++cases;
      }
    }
    add("random_generator_splitting", cases, ok);
  }

  {  // Iterated orbits: direct index of r periods vs the recursion.
    int cases = 0;
    bool ok = true;
    try {
      HamiltonianSpec harmonic = HamiltonianSpec::builtin("harmonic_oscillator", {}, {}, tol);
      for (int r = 2; r <= 3; ++r) {
        SymplecticPath flow = integrate_variational(harmonic, r, 128, nullptr, tol);
        ok = ok && repetition_index(flow, harmonic.period(), r, 0, tol, false).holds();
        ++cases;
      }
      for (int t = 0; t < 3; ++t) {
        HamiltonianSpec spec = random_bounded_spec(rng, 1 + (t % max_n), 1.0, tol);
        SymplecticPath flow = integrate_variational(spec, 3, 64, nullptr, tol);
        ok = ok && repetition_index(flow, spec.period(), 3, 0, tol, false).holds();
        ++cases;
      }
    } catch (const Error&) {
      ok = false;
    }
    add("repetition_recursion", cases, ok);
  }

  {  // Moving the orbit origin: conjugacy and index bookkeeping.
    bool ok = true;
    try {
      HamiltonianSpec driven = HamiltonianSpec::builtin("driven_oscillator", {}, {}, tol);
      OriginChangeReport rd =
          change_origin_report(driven, driven.period() / 4.0, 256, 0, tol, false);
      ok = ok && rd.all_hold();
      HamiltonianSpec harmonic = HamiltonianSpec::builtin("harmonic_oscillator", {}, {}, tol);
      OriginChangeReport rh =
          change_origin_report(harmonic, 3.0 * harmonic.period() / 8.0, 256, 0, tol, false);
      ok = ok && rh.all_hold();
    } catch (const Error&) {
      ok = false;
    }
    add("origin_change", 2, ok);
  }

  return checks;
}

}  // namespace maslov
