#include <cmath>
#include <numbers>

#include <doctest.h>

#include "../support/oracle.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/flow.hpp"
#include "jacobi/models.hpp"
#include "jacobi/random.hpp"

using namespace jacobi;
constexpr double pi = std::numbers::pi;

TEST_SUITE("flow") {
  TEST_CASE("evaluate_fields on L_0 for R = I") {
    const auto sys = constant_curvature_system(1.0, 2);
    const FundamentalSolution flow(sys, 0.0, {0.0, pi});
    const FieldSubspace l0 = vanishing_lagrangian(sys, 0.0);
    auto at0 = evaluate_fields(flow, l0, 0.0);
    CHECK((at0[0].stacked() - l0.basis().col(0)).norm() < 1e-15);
    auto half = evaluate_fields(flow, l0, pi / 2);
    for (int i = 0; i < 2; ++i) {
      CHECK((half[i].value - Vector::Unit(2, i)).norm() < 1e-9);
      CHECK(half[i].derivative.norm() < 1e-9);
      CHECK(half[i].anchor == pi / 2);
    }
    auto end = evaluate_fields(flow, l0, pi);
    for (int i = 0; i < 2; ++i) {
      CHECK(end[i].value.norm() < 1e-9);
      CHECK((end[i].derivative + Vector::Unit(2, i)).norm() < 1e-9);
    }
    CHECK((evaluation_matrix(flow, l0, pi / 2) - Matrix::Identity(2, 2)).norm() < 1e-9);
    CHECK(evaluation_matrix(flow, l0, pi).norm() < 1e-9);
  }

  TEST_CASE("evaluation extends a mutable flow") {
    const auto sys = constant_curvature_system(4.0, 1);
    FundamentalSolution flow(sys, 0.0, {0.0, 1.0});
    const FieldSubspace l0 = vanishing_lagrangian(sys, 0.0);
    CHECK_THROWS_AS(evaluate_fields(static_cast<const FundamentalSolution&>(flow), l0, 3.0),
                    ContractError);
    auto f = evaluate_fields(flow, l0, 3.0);
    CHECK(f[0].value(0) == doctest::Approx(std::sin(6.0) / 2).epsilon(1e-9));
  }

  TEST_CASE("symplectic form is independent of the anchor") {
    const auto sys = constant_curvature_system(1.0, 1);
    const FundamentalSolution flow(sys, 0.0, {0.0, 1.0});
    const FieldVector x{0.0, Vector::Zero(1), Vector::Ones(1)};  // sin t
    const FieldVector y{0.0, Vector::Ones(1), Vector::Zero(1)};  // cos t
    CHECK(symplectic_form(x, y) == -1.0);
    CHECK(std::abs(symplectic_form(reanchor(flow, x, 0.7), reanchor(flow, y, 0.7)) + 1.0) < 1e-10);

    Rng rng(3);
    const auto trig = random_trig_system(4, rng);
    const FundamentalSolution tf(trig, 0.0, {-2.0, 6.0});
    const FieldSubspace l = random_lagrangian(trig, 0.0, rng);
    const Matrix omega = canonical_form(4);
    for (double t : {-2.0, 1.3, 6.0}) {
      const FieldSubspace lt = reanchor(tf, l, t);
      CHECK(lt.anchor() == t);
      CHECK(is_lagrangian(lt));
      const Matrix s = state_matrix(tf, l, t);
      CHECK((s.transpose() * omega * s).cwiseAbs().maxCoeff() < 1e-8);
    }
  }

  TEST_CASE("agrees with an independent RK4 reference") {
    Rng rng(17);
    for (int trial = 0; trial < 4; ++trial) {
      const int m = 1 + trial;
      const auto sys = random_trig_system(m, rng);
      const FundamentalSolution flow(sys, 0.5, {0.5, 4.0});
      const Matrix ref = oracle::rk4_fundamental([&](double t) { return sys->curvature(t); }, m, 0.5,
                                                 4.0, 20000);
      CHECK((flow.at(4.0) - ref).cwiseAbs().maxCoeff() < 1e-8 * (1.0 + ref.norm()));
    }
  }

  TEST_CASE("dPhi/dt matches the generator by finite differences") {
    Rng rng(23);
    const auto sys = random_trig_system(3, rng);
    const FundamentalSolution flow(sys, 0.0, {-1.0, 10.0});
    const double h = 1e-4;
    for (double t = -0.5; t < 9.5; t += 0.73) {
      const Matrix fd = (flow.at(t + h) - flow.at(t - h)) / (2 * h);
      const Matrix exact = flow.generator(t) * flow.at(t);
      CHECK((fd - exact).cwiseAbs().maxCoeff() < 1e-6 * (1.0 + exact.norm()));
    }
  }

  TEST_CASE("evaluation commutes with linear combinations") {
    Rng rng(29);
    const auto sys = random_trig_system(3, rng);
    const FundamentalSolution flow(sys, 0.0, {0.0, 5.0});
    const FieldSubspace l = random_lagrangian(sys, 0.0, rng);
    const Vector c = Vector::LinSpaced(3, 1.0, -2.0);
    const FieldVector comb = FieldVector::from_stacked(0.0, l.basis() * c);
    for (double t : {1.0, 2.5, 5.0}) {
      const Vector direct = reanchor(flow, comb, t).stacked();
      const Vector mixed = state_matrix(flow, l, t) * c;
      CHECK((direct - mixed).norm() < 1e-10);
    }
  }

  TEST_CASE("symplectic defect stays below 1e-8 over [0, 8 pi] on bundled systems") {
    std::vector<SystemPtr> systems{constant_curvature_system(1.0, 2), constant_curvature_system(4.0, 3)};
    for (const auto& name : model_names()) {
      const auto model = make_model(name);
      systems.push_back(model.total);
      systems.push_back(model.base);
    }
    for (const auto& sys : systems) {
      const FundamentalSolution flow(sys, 0.0, {0.0, 8 * pi});
      double worst = 0.0;
      for (double t = 0.0; t <= 8 * pi; t += 0.1) worst = std::max(worst, flow.symplectic_defect(t));
      CHECK(worst <= 1e-8);
    }
  }

  TEST_CASE("transition composes and inverts") {
    Rng rng(31);
    const auto sys = random_trig_system(2, rng);
    const FundamentalSolution flow(sys, 1.0, {0.0, 4.0});
    const Matrix ab = flow.transition(0.5, 2.0);
    const Matrix bc = flow.transition(2.0, 3.5);
    CHECK((bc * ab - flow.transition(0.5, 3.5)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((flow.transition(3.5, 0.5) * flow.transition(0.5, 3.5) - Matrix::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() < 1e-9);
  }

  TEST_CASE("intersection across anchors") {
    const auto sys = constant_curvature_system(1.0, 2);
    const FundamentalSolution flow(sys, 0.0, {0.0, pi});
    const FieldSubspace l0 = vanishing_lagrangian(sys, 0.0);
    CHECK(intersection_dimension(flow, l0, vanishing_lagrangian(sys, pi / 2)) == 0);
    CHECK(intersection_dimension(flow, l0, vanishing_lagrangian(sys, pi)) == 2);
    CHECK(intersection_dimension(flow, l0, l0) == 2);
    const FieldSubspace sc(sys, 0.0,
                           {FieldVector{0.0, Vector::Zero(2), Vector::Unit(2, 0)},
                            FieldVector{0.0, Vector::Unit(2, 1), Vector::Zero(2)}});
    CHECK(intersection_dimension(flow, l0, sc) == 1);
    CHECK(intersection_dimension(flow, sc, l0) == 1);
  }

  TEST_CASE("holonomy field of s3_s2 has constant norm") {
    const auto model = hopf_model(HopfKind::s3_s2);
    const FieldSubspace w = holonomy_subspace(model);
    const FundamentalSolution flow(model.total, 0.0, {0.0, 2 * pi});
    const double n0 = evaluation_matrix(flow, w, 0.0).norm();
    for (double t = 0.0; t <= 2 * pi; t += 0.3) {
      const Matrix ev = evaluation_matrix(flow, w, t);
      CHECK(ev.cols() == 1);
      CHECK(std::abs(ev.norm() - n0) < 1e-9);
    }
  }
}
