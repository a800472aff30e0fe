#include <cmath>
#include <numbers>

#include <doctest.h>

#include "jacobi/errors.hpp"
#include "jacobi/models.hpp"
#include "jacobi/transverse.hpp"

using namespace jacobi;
constexpr double pi = std::numbers::pi;

TEST_SUITE("models") {
  TEST_CASE("constant curvature conjugate times") {
    CHECK(*first_conjugate_time(constant_curvature_system(1.0, 2), 0.0, 5.0) ==
          doctest::Approx(pi).epsilon(1e-9));
    CHECK_FALSE(first_conjugate_time(constant_curvature_system(0.0, 3), 0.0, 10.0));
    CHECK(*first_conjugate_time(constant_curvature_system(4.0, 1), 0.0, 5.0) ==
          doctest::Approx(pi / 2).epsilon(1e-9));
    CHECK_THROWS_AS(constant_curvature_system(1.0, 0), ContractError);
  }

  TEST_CASE("hopf registry") {
    const std::vector<std::pair<int, int>> dims{{2, 1}, {4, 3}, {8, 7}};
    const auto names = model_names();
    REQUIRE(names.size() == 3);
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto model = make_model(names[i]);
      CHECK(model.name == names[i]);
      CHECK(model.n == dims[i].first);
      CHECK(model.k == dims[i].second);
      CHECK(model.total->dim() == model.normal_dim());
      CHECK(model.base->dim() == model.n - 1);
      CHECK(model.constants.conj_radius_base == pi / 2);
      CHECK(model.constants.shortest_closed_geodesic == pi);
      CHECK(oneill_defect(model, {0.0, 2 * pi}) < 1e-12);
      // Measured base conjugate radius.
      CHECK(*first_conjugate_time(model.base, 0.0, pi) == doctest::Approx(pi / 2).epsilon(1e-9));
    }
    CHECK_THROWS_AS(make_model("s5_cp2"), ContractError);
  }

  TEST_CASE("holonomy gram matrices are constant") {
    for (const auto& name : model_names()) {
      const auto model = make_model(name);
      const FieldSubspace w = holonomy_subspace(model);
      CHECK(w.dim() == model.k);
      CHECK(is_isotropic(w).isotropic);
      const FundamentalSolution flow(model.total, 0.0, {0.0, 2 * pi});
      const Matrix g0 = [&] {
        const Matrix e = evaluation_matrix(flow, w, 0.0);
        return Matrix(e.transpose() * e);
      }();
      for (double t = 0.2; t <= 2 * pi; t += 0.7) {
        const Matrix e = evaluation_matrix(flow, w, t);
        CHECK((e.transpose() * e - g0).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }

  TEST_CASE("submersion lagrangian of s3_s2") {
    const auto model = hopf_model(HopfKind::s3_s2);
    const FieldSubspace l = submersion_lagrangian(model);
    CHECK(is_lagrangian(l));
    CHECK(l.dim() == 2);
    const FundamentalSolution flow(model.total, 0.0, {0.0, pi});
    CHECK(index_on_interval(flow, l, IntervalSpec::left_open(0.0, pi)).total == 2);
    for (const auto& name : model_names()) {
      const auto m = make_model(name);
      const FundamentalSolution f(m.total, 0.0, {0.0, pi});
      const FieldSubspace lm = submersion_lagrangian(m);
      CHECK(lm.dim() == m.normal_dim());
      for (int j = 0; j < m.k; ++j) {
        CHECK(projectability_residual(m, f, lm.field(j), {0.0, pi}) < 1e-8);
      }
    }
  }

  TEST_CASE("projectable lifts") {
    const auto model = hopf_model(HopfKind::s3_s2);
    const FundamentalSolution flow(model.total, 0.0, {0.0, pi});
    // Over the zero base field: a holonomy field.
    const FieldVector zero{0.0, Vector::Zero(1), Vector::Zero(1)};
    const FieldVector hol = projectable_lift(model, zero, Vector::Ones(1));
    CHECK(projectability_residual(model, flow, hol, {0.0, pi}) < 1e-8);
    const FieldSubspace w = holonomy_subspace(model);
    CHECK(intersection_dimension_same_anchor(w, FieldSubspace(model.total, 0.0, {hol})) == 1);
    // Over sin(2t)/2: horizontal part sin t cos t.
    const FieldVector base{0.0, Vector::Zero(1), Vector::Ones(1)};
    const FieldVector lift = projectable_lift(model, base, Vector::Zero(1));
    CHECK(projection_mismatch(model, lift, base, {0.0, pi}) < 1e-8);
    CHECK(projectability_residual(model, flow, lift, {0.0, pi}) < 1e-8);
    // Zero data lifts to zero.
    CHECK(projectable_lift(model, zero, Vector::Zero(1)).is_zero());
  }

  TEST_CASE("submanifold lagrangians and focal counts") {
    // Point: L^N = L_0.
    const auto sys = constant_curvature_system(1.0, 2);
    const FieldSubspace point = submanifold_lagrangian(sys, Matrix::Zero(2, 2), Matrix::Zero(2, 2));
    CHECK(intersection_dimension_same_anchor(point, vanishing_lagrangian(sys, 0.0)) == 2);
    const FundamentalSolution flow(sys, 0.0, {0.0, pi + 0.1});
    const auto vp = focal_count_check(flow, point, 3);
    CHECK(vp.pass);
    CHECK(vp.lhs == 2);
    CHECK(vp.slack == 0);

    // Hopf fiber through alpha(0) in S^3.
    const auto model = hopf_model(HopfKind::s3_s2);
    const Matrix v = model.vertical_basis(0.0);
    const FieldSubspace fiber =
        submanifold_lagrangian(model.total, v * v.transpose(), Matrix::Zero(2, 2));
    CHECK(is_lagrangian(fiber));
    const FundamentalSolution hf(model.total, 0.0, {0.0, pi + 0.1});
    const auto z = zero_times(hf, fiber, IntervalSpec::left_open(0.0, pi));
    REQUIRE(z.size() == 2);
    CHECK(z[0].time == doctest::Approx(pi / 2).epsilon(1e-9));
    CHECK(z[1].time == doctest::Approx(pi).epsilon(1e-9));
    const auto vf = focal_count_check(hf, fiber, 3);
    CHECK(vf.pass);
    CHECK(vf.slack == 0);

    // Totally geodesic line through e1 in R = I: cos t e1 focal at pi/2.
    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = 1.0;
    const FieldSubspace eq = submanifold_lagrangian(sys, p, Matrix::Zero(2, 2));
    const auto ze = zero_times(flow, eq, IntervalSpec::left_open(0.0, pi / 2 + 0.01));
    REQUIRE(ze.size() == 1);
    CHECK(ze[0].time == doctest::Approx(pi / 2).epsilon(1e-9));
    CHECK(ze[0].multiplicity == 1);
  }

  TEST_CASE("dimension bounds") {
    for (const auto& name : model_names()) {
      const auto model = make_model(name);
      const auto a = evaluate_dimension_bound(model, DimensionTheorem::A);
      CHECK(a.verdict.pass);
      CHECK(a.verdict.slack == 0);
      CHECK(a.verdict.lhs == model.k);
      REQUIRE(a.measured_constant.has_value());
      CHECK(std::abs(*a.measured_constant - pi / 2) < 1e-6);
    }
    const auto model = hopf_model(HopfKind::s3_s2);
    const auto b = evaluate_dimension_bound(model, DimensionTheorem::B);
    CHECK(b.verdict.pass);
    CHECK(b.verdict.rhs == doctest::Approx(2.0));
    CHECK(b.verdict.slack == doctest::Approx(1.0));
    const auto f = evaluate_dimension_bound(model, DimensionTheorem::foliation);
    CHECK(f.verdict.pass);
    CHECK(f.verdict.slack == 0);
    REQUIRE(f.measured_constant.has_value());
    CHECK(std::abs(*f.measured_constant - pi / 2) < 1e-6);
    const auto j = evaluate_dimension_bound(model, DimensionTheorem::jimenez);
    CHECK(j.verdict.pass);
  }

  TEST_CASE("a typo in a stored constant is caught") {
    auto model = hopf_model(HopfKind::s3_s2);
    model.constants.conj_radius_base = 1.6;
    const auto a = evaluate_dimension_bound(model, DimensionTheorem::A);
    CHECK_FALSE(a.verdict.pass);
    CHECK(a.verdict.status == VerdictStatus::hypothesis_not_met);
    CHECK(a.discrepancy > 1e-3);
  }

  TEST_CASE("index chains") {
    const auto model = hopf_model(HopfKind::s3_s2);
    for (int r = 1; r <= 3; ++r) {
      for (const auto& v : theorem_a_chain(model, r, 0.95 * pi / 2)) {
        CHECK_MESSAGE(v.pass, v.statement << " " << v.lhs << " vs " << v.rhs);
      }
      for (const auto& v : theorem_b_chain(model, r)) {
        CHECK_MESSAGE(v.pass, v.statement << " " << v.lhs << " vs " << v.rhs);
      }
    }
    const auto bad = theorem_a_chain(model, 1, pi / 2 + 0.1);
    bool flagged = false;
    for (const auto& v : bad) flagged |= v.status == VerdictStatus::hypothesis_not_met;
    CHECK(flagged);
  }

  TEST_CASE("transverse fidelity on s3_s2") {
    const auto model = hopf_model(HopfKind::s3_s2);
    const auto fid = transverse_fidelity(
        model, {IntervalSpec::left_open(0, pi), IntervalSpec::closed(0, pi), IntervalSpec::closed(0, 2 * pi)});
    CHECK(fid.curvature_error <= 1e-7);
    REQUIRE(fid.identities.size() == 3);
    for (const auto& v : fid.identities) CHECK(v.pass);
  }
}
