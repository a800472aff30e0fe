#include <cmath>

#include <doctest.h>

#include "jacobi/certificates.hpp"
#include "jacobi/models.hpp"

using namespace jacobi;

TEST_SUITE("certificates") {
  TEST_CASE("constant systems") {
    const auto sys = constant_curvature_system(2.0, 3);
    CHECK(rate_certificate(*sys, 2.0, {0.0, 10.0}));
    CHECK_FALSE(rate_certificate(*sys, 2.1, {0.0, 10.0}));
    CHECK(certified_min_eigenvalue(*sys, {0.0, 1.0}) == doctest::Approx(2.0));
  }

  TEST_CASE("bumped identity") {
    const auto sys = JacobiSystem::closed_form(2, [](double t) {
      Matrix r = Matrix::Identity(2, 2);
      r(0, 0) += 1.0 + std::sin(t);
      return r;
    });
    CHECK(rate_certificate(*sys, 1.0, {0.0, 20.0}));
    CHECK_FALSE(rate_certificate(*sys, 1.01, {0.0, 20.0}));
  }

  TEST_CASE("a dip between coarse samples is found") {
    // min eigenvalue 1 - 0.5 at t = 3.3 only, on a narrow bump.
    const auto sys = JacobiSystem::closed_form(1, [](double t) {
      return Matrix::Constant(1, 1, 1.0 - 0.5 * std::exp(-200.0 * (t - 3.3) * (t - 3.3)));
    });
    CHECK_FALSE(rate_certificate(*sys, 0.9, {0.0, 10.0}));
  }
}
