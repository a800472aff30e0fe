#include <numbers>

#include <doctest.h>

#include "jacobi/inequalities.hpp"
#include "jacobi/models.hpp"
#include "jacobi/random.hpp"

using namespace jacobi;
constexpr double pi = std::numbers::pi;

TEST_SUITE("inequalities") {
  TEST_CASE("lytchak tight example") {
    const auto sys = constant_curvature_system(1.0, 2);
    const FundamentalSolution flow(sys, 0.0, {0.0, pi});
    const FieldSubspace l0 = vanishing_lagrangian(sys, 0.0);
    const FieldSubspace sc(sys, 0.0,
                           {FieldVector{0.0, Vector::Zero(2), Vector::Unit(2, 0)},
                            FieldVector{0.0, Vector::Unit(2, 1), Vector::Zero(2)}});
    const auto v = verify_inequality(flow, LytchakArgs{&l0, &sc, IntervalSpec::closed(0, pi)});
    CHECK(v.pass);
    CHECK(v.lhs == 1);
    CHECK(v.rhs == 1);
    CHECK(v.slack == 0);
  }

  TEST_CASE("lytchak rejects non-lagrangian input as a hypothesis failure") {
    const auto sys = constant_curvature_system(1.0, 2);
    const FundamentalSolution flow(sys, 0.0, {0.0, pi});
    const FieldSubspace l0 = vanishing_lagrangian(sys, 0.0);
    const FieldSubspace one(sys, 0.0, {FieldVector{0.0, Vector::Zero(2), Vector::Unit(2, 0)}});
    const auto v = verify_inequality(flow, LytchakArgs{&l0, &one, IntervalSpec::closed(0, pi)});
    CHECK(v.status == VerdictStatus::hypothesis_not_met);
  }

  TEST_CASE("delta lower example") {
    const auto sys = constant_curvature_system(1.0, 2);
    const FundamentalSolution flow(sys, 0.0, {0.0, 3 * pi + 0.1});
    const FieldSubspace l0 = vanishing_lagrangian(sys, 0.0);
    const auto v = verify_inequality(flow, DeltaLowerArgs{&l0, 0.0, 1, 1.0});
    CHECK(v.pass);
    CHECK(v.lhs == 4);
    CHECK(v.rhs == 4);
    CHECK(v.slack == 0);
    const auto bad = verify_inequality(flow, DeltaLowerArgs{&l0, 0.0, 1, 1.5});
    CHECK(bad.status == VerdictStatus::hypothesis_not_met);
  }

  TEST_CASE("periodic upper example") {
    const auto sys = constant_curvature_system(1.0, 2);
    const FundamentalSolution flow(sys, 0.0, {0.0, 3 * pi + 0.1});
    const FieldSubspace l0 = vanishing_lagrangian(sys, 0.0);
    const auto v = verify_inequality(flow, PeriodicUpperArgs{&l0, 0.0, 3, pi});
    CHECK(v.pass);
    CHECK(v.lhs == 8);
    CHECK(v.rhs == 14);
    auto aperiodic = JacobiSystem::closed_form(1, [](double) { return Matrix::Identity(1, 1); });
    const FundamentalSolution af(aperiodic, 0.0, {0.0, 4.0});
    const FieldSubspace la = vanishing_lagrangian(aperiodic, 0.0);
    CHECK(verify_inequality(af, PeriodicUpperArgs{&la, 0.0, 1, 1.0}).status ==
          VerdictStatus::hypothesis_not_met);
  }

  TEST_CASE("conj upper") {
    const auto sys = constant_curvature_system(1.0, 2);
    const FundamentalSolution flow(sys, 0.0, {0.0, 4 * pi});
    const FieldSubspace l0 = vanishing_lagrangian(sys, 0.0);
    for (int r = 1; r <= 3; ++r) {
      const auto v = verify_inequality(flow, ConjUpperArgs{&l0, 0.0, r, 3.0});
      CHECK(v.pass);
      CHECK(v.rhs == (r + 1) * 2);
    }
    // c = pi reaches the conjugate point of L_a, so the hypothesis fails.
    CHECK(verify_inequality(flow, ConjUpperArgs{&l0, 0.0, 1, pi}).status ==
          VerdictStatus::hypothesis_not_met);
  }

  TEST_CASE("span property") {
    {
      const auto sys = constant_curvature_system(1.0, 2);
      const FundamentalSolution flow(sys, 0.0, {0.0, pi + 0.1});
      const auto v = verify_span_property(flow, vanishing_lagrangian(sys, 0.0), 0.0, 1.0);
      CHECK(v.pass);
      CHECK(v.lhs == 2);
    }
    {
      const auto sys = constant_curvature_system(4.0, 1);
      const FundamentalSolution flow(sys, 0.0, {0.0, pi + 0.1});
      CHECK(verify_span_property(flow, vanishing_lagrangian(sys, 0.0), 0.0, 4.0).pass);
    }
    {
      const auto model = hopf_model(HopfKind::s3_s2);
      const FundamentalSolution flow(model.total, 0.0, {0.0, pi + 0.1});
      const auto v = verify_span_property(flow, submersion_lagrangian(model), 0.0, 1.0);
      CHECK(v.pass);
      CHECK(v.lhs == 2);
    }
  }

  TEST_CASE("lytchak on random pairs with known intersection") {
    Rng rng(53);
    for (int trial = 0; trial < 25; ++trial) {
      const int m = 1 + trial % 4;
      const auto sys = random_trig_system(m, rng);
      const FundamentalSolution flow(sys, 0.0, {0.0, 3.0});
      const FieldSubspace l1 = random_lagrangian(sys, 0.0, rng);
      const FieldSubspace l2 = random_lagrangian_sharing(l1, trial % (m + 1), rng);
      const auto v = verify_inequality(flow, LytchakArgs{&l1, &l2, IntervalSpec::closed(0.0, 3.0)});
      CHECK(v.pass);
      CHECK(v.rhs == m - trial % (m + 1));
    }
  }
}
