#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace maslov;

TEST_CASE("path validation") {
  std::vector<SymplecticMatrix> two = {SymplecticMatrix::identity(1),
                                       SymplecticMatrix::identity(1)};
  REQUIRE_THROWS_AS(SymplecticPath({1.0, 2.0}, two), Error);   // grid must start at 0
  REQUIRE_THROWS_AS(SymplecticPath({0.0, 0.0}, two), Error);   // strictly increasing
  REQUIRE_THROWS_AS(SymplecticPath({0.0}, {two[0]}), Error);   // at least two samples
  RealMatrix shear(2, 2);
  shear << 1.0, 0.5, 0.0, 1.0;
  REQUIRE_THROWS_AS(
      SymplecticPath({0.0, 1.0}, {SymplecticMatrix(shear), SymplecticMatrix(shear)}),
      Error);  // must originate at the identity
}

TEST_CASE("rotation index over a grid of angles") {
  struct Pinned {
    double alpha;
    long index;
  };
  const Pinned pinned[] = {{kPi / 4, 1}, {kPi / 2, 1}, {kPi, 1},  {3 * kPi / 2, 2},
                           {2 * kPi, 2}, {3 * kPi, 3}, {4 * kPi, 4}};
  for (const Pinned& p : pinned) {
    int steps = std::max(16, static_cast<int>(std::ceil(8.0 * std::abs(p.alpha) / kPi)));
    REQUIRE(maslov_index(rotation_path(p.alpha, steps)).index == p.index);
  }
  for (int tick = -12; tick <= 12; ++tick) {
    if (tick == 0) continue;
    double alpha = tick * kPi / 3.0;
    int steps = std::max(16, static_cast<int>(std::ceil(8.0 * std::abs(alpha) / kPi)));
    MaslovResult m = maslov_index(rotation_path(alpha, steps));
    REQUIRE(m.index == testutil::line_index_oracle(alpha));
    REQUIRE(m.residual < 1e-9);
    REQUIRE(m.endpoint_transversal == (tick % 3 != 0));
  }
}

TEST_CASE("coarse sampling is rejected rather than silently wrong") {
  // 3 pi over 8 steps advances the lift angle by 3 pi / 4 per step.
  REQUIRE_THROWS_AS(maslov_index(rotation_path(3.0 * kPi, 8)), Error);
  try {
    maslov_index(rotation_path(3.0 * kPi, 8));
  } catch (const Error& e) {
    REQUIRE(e.code() == Error::Code::kStepTooCoarse);
  }
}

TEST_CASE("index is stable under grid refinement") {
  Rng rng(31);
  for (int n : {1, 2}) {
    for (int trial = 0; trial < 4; ++trial) {
      RealMatrix h = random_symmetric(rng, 2 * n, 0.8 / (2 * n));
      long coarse = maslov_index(quadratic_flow_path(h, 1.0, 64)).index;
      long fine = maslov_index(quadratic_flow_path(h, 1.0, 128)).index;
      REQUIRE(coarse == fine);
    }
  }
}

TEST_CASE("exact quadratic flow matches the closed form") {
  RealMatrix h = RealMatrix::Identity(2, 2);
  SymplecticPath p = quadratic_flow_path(h, 1.3, 32);
  RealMatrix expected(2, 2);
  expected << std::cos(1.3), std::sin(1.3), -std::sin(1.3), std::cos(1.3);
  REQUIRE((p.back().matrix() - expected).norm() < 1e-12);
  // The reversed sign turns the flow counterclockwise: a full turn gives 2.
  SymplecticPath turn = quadratic_flow_path(-h, 2.0 * kPi, 64);
  REQUIRE(maslov_index(turn).index == 2);
}

TEST_CASE("unitary loops carry index twice the winding") {
  for (int n : {1, 2, 3}) {
    for (int k : {-2, -1, 0, 1, 2, 3}) {
      int steps = std::max(16, 8 * std::abs(k) + 8);
      SymplecticPath loop = unitary_loop_path(k, steps, n);
      MaslovResult m = loop_winding_index(loop);
      REQUIRE(m.index == 2 * k);
      LiftedLagrangianPath lifted =
          lift_lagrangian_path(loop, LagrangianFrame::momentum_plane(n));
      REQUIRE(lifted.winding_angle() == Catch::Approx(4.0 * kPi * k).margin(1e-8));
    }
  }
}

TEST_CASE("winding index rejects open and non-orthogonal paths") {
  try {
    loop_winding_index(rotation_path(kPi / 2, 16));
    FAIL("expected a throw");
  } catch (const Error& e) {
    REQUIRE(e.code() == Error::Code::kNotClosed);
  }
  std::vector<double> times;
  std::vector<SymplecticMatrix> samples;
  for (int k = 0; k <= 8; ++k) {
    double t = k / 8.0;
    RealMatrix s(2, 2);
    s << 1.0, std::sin(2.0 * kPi * t), 0.0, 1.0;
    times.push_back(t);
    samples.emplace_back(s);
  }
  try {
    loop_winding_index(SymplecticPath(std::move(times), std::move(samples)));
    FAIL("expected a throw");
  } catch (const Error& e) {
    REQUIRE(e.code() == Error::Code::kNotUnitaryPath);
  }
}

TEST_CASE("product rule for concatenated flows") {
  const double angles[] = {kPi / 3, kPi / 2, kPi, 5.0};
  for (double a : angles)
    for (double b : angles) {
      SymplecticPath p = rotation_path(a, 64);
      SymplecticPath q = rotation_path(b, 64);
      REQUIRE(maslov_product_check(p, q).holds());
    }
  Rng rng(37);
  for (int n : {1, 2}) {
    for (int trial = 0; trial < 3; ++trial) {
      SymplecticPath p = random_quadratic_path(rng, n);
      SymplecticPath q = random_quadratic_path(rng, n);
      REQUIRE(maslov_product_check(p, q).holds());
    }
  }
}

TEST_CASE("conjugation moves the index to the transported plane") {
  Rng rng(41);
  for (int n : {1, 2}) {
    for (int trial = 0; trial < 4; ++trial) {
      SymplecticPath p = random_quadratic_path(rng, n);
      SymplecticMatrix s0 = random_symplectic(rng, n);
      LagrangianFrame moved =
          act_symplectic(s0, LagrangianFrame::momentum_plane(n));
      REQUIRE(maslov_index(conjugate_path(s0, p)).index ==
              maslov_index_rel(p, moved).index);
    }
  }
}

TEST_CASE("difference of relative indices reduces to inertia indices") {
  Rng rng(43);
  for (int n : {1, 2, 3}) {
    for (int trial = 0; trial < 4; ++trial) {
      SymplecticPath p = random_quadratic_path(rng, n);
      LagrangianFrame l1 = random_lagrangian_frame(rng, n);
      LagrangianFrame l2 = random_lagrangian_frame(rng, n);
      REQUIRE(rel_index_difference(p, l1, l2).holds());
    }
  }
}

TEST_CASE("loop index is independent of the reference lift") {
  Rng rng(47);
  for (int k : {-1, 0, 2}) {
    SymplecticPath loop = unitary_loop_path(k, 32, 2);
    LiftedLagrangianPath lifted =
        lift_lagrangian_path(loop, LagrangianFrame::momentum_plane(2));
    REQUIRE(arnold_maslov_loop_index(lifted) == 2 * k);
    for (int trial = 0; trial < 10; ++trial) {
      LagrangianLift reference = random_lagrangian_lift(rng, 2);
      REQUIRE(arnold_maslov_loop_index(lifted, reference) == 2 * k);
    }
  }
}
