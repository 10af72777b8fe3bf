#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace maslov;

namespace {

Error::Code code_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a throw");
  return Error::Code::kInvalidArgument;
}

}  // namespace

TEST_CASE("builtin specs validate name, parameters and origin") {
  REQUIRE(code_of([] { HamiltonianSpec::builtin("pendulum"); }) ==
          Error::Code::kInvalidArgument);
  REQUIRE(code_of([] {
            HamiltonianSpec::builtin("harmonic_oscillator", {{"omga", 1.0}});
          }) == Error::Code::kInvalidArgument);
  REQUIRE(code_of([] {
            HamiltonianSpec::builtin("harmonic_oscillator", {{"omega", -1.0}});
          }) == Error::Code::kInvalidArgument);
  REQUIRE(code_of([] {
            HamiltonianSpec::builtin("harmonic_oscillator", {{"n", 2.5}});
          }) == Error::Code::kInvalidArgument);
  REQUIRE(code_of([] {
            HamiltonianSpec::builtin("harmonic_oscillator", {}, RealVector::Zero(4));
          }) == Error::Code::kDimensionMismatch);

  HamiltonianSpec harmonic = HamiltonianSpec::builtin("harmonic_oscillator");
  REQUIRE(harmonic.n() == 1);
  REQUIRE(harmonic.period() == Catch::Approx(2.0 * kPi));
  REQUIRE(harmonic.autonomous());
  REQUIRE(harmonic.origin()(0) == 1.0);

  HamiltonianSpec driven = HamiltonianSpec::builtin("driven_oscillator");
  REQUIRE_FALSE(driven.autonomous());
  REQUIRE(driven.hessian_at(0.0)(0, 0) < 0.0);
}

TEST_CASE("shifting a spec moves its schedule") {
  HamiltonianSpec driven = HamiltonianSpec::builtin("driven_oscillator");
  double delta = -driven.period() / 4.0;
  HamiltonianSpec shifted = driven.shifted(delta);
  for (double t : {0.0, 0.7, 3.1}) {
    REQUIRE((shifted.hessian_at(t) - driven.hessian_at(t + delta)).norm() < 1e-15);
  }
  HamiltonianSpec harmonic = HamiltonianSpec::builtin("harmonic_oscillator");
  REQUIRE((harmonic.shifted(1.0).hessian_at(0.0) - harmonic.hessian_at(0.0)).norm() == 0.0);
}

TEST_CASE("autonomous schedules integrate exactly") {
  HamiltonianSpec spec =
      HamiltonianSpec::constant_quadratic(RealMatrix::Identity(2, 2), 2.0 * kPi);
  IntegrationLog log;
  SymplecticPath path = integrate_variational(spec, 1, 64, &log);
  REQUIRE(log.exact_flow);
  REQUIRE((path.back().matrix() - RealMatrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("the one-step integrator tracks a known flow") {
  // A two-point schedule with equal values is constant in time but runs
  // through the generic integrator, so it can be checked against the
  // closed form.
  RealMatrix a(2, 2);
  a << 0.4, 0.1, 0.1, -0.3;
  HamiltonianSpec spec = HamiltonianSpec::periodic_quadratic({0.0, 1.0}, {a, a});
  IntegrationLog log;
  SymplecticPath path = integrate_variational(spec, 2, 256, &log);
  REQUIRE_FALSE(log.exact_flow);
  RealMatrix generator = standard_form(1) * a;
  double worst = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    worst = std::max(
        worst, (path.sample(k).matrix() - matrix_exp(path.time(k) * generator)).norm());
  }
  REQUIRE(worst < 1e-9);
  REQUIRE(log.max_final_drift <= 1e-10);

  REQUIRE(code_of([&spec] { integrate_variational(spec, 0, 256); }) ==
          Error::Code::kInvalidArgument);
  REQUIRE(code_of([&spec] { integrate_variational(spec, 1, 32); }) ==
          Error::Code::kInvalidArgument);
}

TEST_CASE("monodromy extraction checks the translation relation") {
  HamiltonianSpec harmonic = HamiltonianSpec::builtin("harmonic_oscillator");
  SymplecticPath path = integrate_variational(harmonic, 2, 128);
  SymplecticMatrix s = monodromy_matrix(path, harmonic.period());
  REQUIRE((s.matrix() - RealMatrix::Identity(2, 2)).norm() < 1e-10);

  auto rotation = [](double angle) {
    ComplexMatrix u(1, 1);
    u(0, 0) = std::polar(1.0, angle);
    return SymplecticMatrix(embed_unitary(u));
  };
  SymplecticPath misaligned({0.0, 0.4, 1.0},
                            {SymplecticMatrix::identity(1), rotation(0.2), rotation(0.5)});
  REQUIRE(code_of([&misaligned] { monodromy_matrix(misaligned, 0.4); }) ==
          Error::Code::kInvalidArgument);
  SymplecticPath broken({0.0, 0.5, 1.0},
                        {SymplecticMatrix::identity(1), rotation(0.3), rotation(0.4)});
  REQUIRE(code_of([&broken] { monodromy_matrix(broken, 0.5); }) ==
          Error::Code::kMonodromyRelationViolated);
}

TEST_CASE("splitting the harmonic oscillator flow") {
  HamiltonianSpec spec = HamiltonianSpec::builtin("harmonic_oscillator");
  SymplecticPath path = integrate_variational(spec, 2, 128);
  MonodromyDecomposition d = split_monodromy(path, spec.period());
  REQUIRE(d.winding == 2);
  REQUIRE(d.generator.norm() < 1e-8);  // S_{2T} = I, the exponential part is trivial
  SplittingReport report = splitting_report(d);
  REQUIRE(report.mu_period == 2);
  REQUIRE(report.mu_double == 4);
  REQUIRE(report.mu_exp_double == 0);
  REQUIRE(report.winding == 2);
  REQUIRE(report.generator_checked);
  REQUIRE(report.all_hold());
}

TEST_CASE("splitting the inverted oscillator flow") {
  HamiltonianSpec spec = HamiltonianSpec::builtin("inverted_oscillator");
  SymplecticPath path = integrate_variational(spec, 2, 128);
  MonodromyDecomposition d = split_monodromy(path, spec.period());
  SplittingReport report = splitting_report(d);
  REQUIRE(report.mu_period == 0);
  REQUIRE(report.mu_double == 0);
  REQUIRE(report.winding == 0);
  REQUIRE(report.mu_unitary_part == 0);
  REQUIRE(report.generator_checked);
  REQUIRE(report.all_hold());
}

TEST_CASE("splitting the driven oscillator flow") {
  HamiltonianSpec spec = HamiltonianSpec::builtin("driven_oscillator");
  SymplecticPath path = integrate_variational(spec, 2, 256);
  MonodromyDecomposition d = split_monodromy(path, spec.period());
  SplittingReport report = splitting_report(d);
  REQUIRE(report.mu_period == 1);
  REQUIRE(report.winding == 0);
  REQUIRE(report.generator_checked);
  REQUIRE(report.all_hold());
}

TEST_CASE("splitting the anisotropic oscillator flow") {
  HamiltonianSpec spec = HamiltonianSpec::builtin("anisotropic_oscillator");
  SymplecticPath path = integrate_variational(spec, 2, 256);
  MonodromyDecomposition d = split_monodromy(path, spec.period());
  SplittingReport report = splitting_report(d);
  REQUIRE(report.mu_period == 6);
  REQUIRE(report.winding == 6);
  REQUIRE(report.mu_double == 12);
  REQUIRE(report.all_hold());
}

TEST_CASE("a monodromy on the negative axis is refused, not guessed") {
  // S_T has eigenvalues +-i, so S_{2T} = -I sits on the branch cut of the
  // real logarithm.
  SymplecticPath path = quadratic_flow_path(-RealMatrix::Identity(2, 2), kPi, 64);
  REQUIRE((path.back().matrix() + RealMatrix::Identity(2, 2)).norm() < 1e-12);
  REQUIRE(code_of([&path] { split_monodromy(path, kPi / 2.0); }) ==
          Error::Code::kNonGenericMonodromy);
}

TEST_CASE("splitting identities hold for random bounded schedules") {
  Rng rng(53);
  for (int n : {1, 2, 3}) {
    for (int trial = 0; trial < 3; ++trial) {
      HamiltonianSpec spec = random_bounded_spec(rng, n);
      SymplecticPath path = integrate_variational(spec, 2, 128);
      MonodromyDecomposition d = split_monodromy(path, spec.period());
      SplittingReport report = splitting_report(d);
      REQUIRE(report.generator_checked);
      REQUIRE(report.all_hold());
    }
  }
}

TEST_CASE("repeated traversal follows the product recursion") {
  struct Case {
    const char* name;
    int repetitions;
    int steps;
  };
  const Case cases[] = {{"harmonic_oscillator", 3, 128},
                        {"inverted_oscillator", 3, 128},
                        {"driven_oscillator", 2, 256},
                        {"anisotropic_oscillator", 2, 256}};
  for (const Case& c : cases) {
    HamiltonianSpec spec = HamiltonianSpec::builtin(c.name);
    SymplecticPath path = integrate_variational(spec, c.repetitions, c.steps);
    RepetitionReport report = repetition_index(path, spec.period(), c.repetitions);
    REQUIRE(report.holds());
  }
  HamiltonianSpec harmonic = HamiltonianSpec::builtin("harmonic_oscillator");
  REQUIRE(repetition_index(integrate_variational(harmonic, 3, 128), harmonic.period(), 3)
              .direct == 6);
}

TEST_CASE("re-basing the orbit origin") {
  HamiltonianSpec driven = HamiltonianSpec::builtin("driven_oscillator");
  OriginChangeReport report =
      change_origin_report(driven, driven.period() / 4.0, 256);
  REQUIRE(report.all_hold());
  REQUIRE(report.conjugacy_residual <= 1e-8);
  REQUIRE(report.mu_base == 1);

  HamiltonianSpec harmonic = HamiltonianSpec::builtin("harmonic_oscillator");
  OriginChangeReport circular =
      change_origin_report(harmonic, 3.0 * harmonic.period() / 8.0, 256);
  REQUIRE(circular.all_hold());
  REQUIRE(circular.mu_base == 2);

  REQUIRE(code_of([&driven] { change_origin_report(driven, 0.0); }) ==
          Error::Code::kInvalidArgument);
  REQUIRE(code_of([&driven] { change_origin_report(driven, driven.period()); }) ==
          Error::Code::kInvalidArgument);
  REQUIRE(code_of([&driven] {
            change_origin_report(driven, driven.period() * 0.1234567, 256);
          }) == Error::Code::kInvalidArgument);
}

TEST_CASE("orbit tangent frame of a circular orbit") {
  HamiltonianSpec harmonic = HamiltonianSpec::builtin("harmonic_oscillator");
  REQUIRE(orbit_tangent_available(harmonic));
  LagrangianFrame tangent = orbit_tangent_frame(harmonic);
  // The velocity at (1, 0) points along the momentum axis.
  REQUIRE(std::abs(tangent.matrix()(0, 0)) < 1e-15);

  SymplecticPath period_path = integrate_variational(harmonic, 1, 128);
  REQUIRE(maslov_index_rel(period_path, tangent).index == 2);
  LiftedLagrangianPath loop = lift_lagrangian_path(period_path, tangent);
  REQUIRE(arnold_maslov_loop_index(loop) == 2);
  Rng rng(59);
  for (int trial = 0; trial < 3; ++trial) {
    REQUIRE(arnold_maslov_loop_index(loop, random_lagrangian_lift(rng, 1)) == 2);
  }

  REQUIRE_FALSE(orbit_tangent_available(HamiltonianSpec::builtin("driven_oscillator")));
  REQUIRE_FALSE(
      orbit_tangent_available(HamiltonianSpec::builtin("anisotropic_oscillator")));
  REQUIRE(code_of([] {
            orbit_tangent_frame(HamiltonianSpec::builtin("inverted_oscillator"));
          }) == Error::Code::kInvalidArgument);
}
