#include <cmath>
#include <numbers>

#include <doctest.h>

#include "jacobi/errors.hpp"
#include "jacobi/integrator.hpp"

using namespace jacobi;

namespace {

// y' = A y with A the rotation generator; exact solution is a rotation.
DenseFlow rotation_flow(Span span, double start = 0.0) {
  Matrix y0 = Matrix::Identity(2, 2);
  return DenseFlow(
      [](double, const Matrix& y, Matrix& dy) {
        dy.row(0) = y.row(1);
        dy.row(1) = -y.row(0);
      },
      start, y0, span);
}

Matrix rotation(double t) {
  Matrix r(2, 2);
  r << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
  return r;
}

}  // namespace

TEST_SUITE("integrator") {
  TEST_CASE("dense output matches the exact rotation on both sides of the start") {
    const DenseFlow flow = rotation_flow({-3.0, 7.0}, 1.0);
    for (double t = -3.0; t <= 7.0; t += 0.137) {
      CHECK((flow(t) - rotation(t - 1.0)).cwiseAbs().maxCoeff() < 1e-9);
      Matrix d(2, 2);
      d << -std::sin(t - 1.0), std::cos(t - 1.0), -std::cos(t - 1.0), -std::sin(t - 1.0);
      CHECK((flow.derivative(t) - d).cwiseAbs().maxCoeff() < 1e-8);
    }
    CHECK(flow(1.0).isApprox(Matrix::Identity(2, 2)));
  }

  TEST_CASE("scalar growth") {
    DenseFlow flow([](double, const Matrix& y, Matrix& dy) { dy = y; }, 0.0, Matrix::Ones(1, 1),
                   {0.0, 5.0});
    CHECK(flow(5.0)(0, 0) == doctest::Approx(std::exp(5.0)).epsilon(1e-9));
    CHECK(flow(2.345)(0, 0) == doctest::Approx(std::exp(2.345)).epsilon(1e-9));
  }

  TEST_CASE("outside the span is a contract error until extended") {
    DenseFlow flow = rotation_flow({0.0, 1.0});
    CHECK_THROWS_AS(flow(1.5), ContractError);
    flow.extend({-2.0, 4.0});
    CHECK(flow.span().lo <= -2.0);
    CHECK(flow.span().hi >= 4.0);
    CHECK((flow(3.9) - rotation(3.9)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((flow(-1.9) - rotation(-1.9)).cwiseAbs().maxCoeff() < 1e-9);
  }

  TEST_CASE("step collapse raises an integration error") {
    IntegratorOptions o;
    o.max_steps = 50;
    CHECK_THROWS_AS(DenseFlow([](double t, const Matrix& y, Matrix& dy) { dy = y / (1.0 - t); }, 0.0,
                              Matrix::Ones(1, 1), {0.0, 2.0}, o),
                    IntegrationError);
  }
}
