#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "jacobi/flow.hpp"
#include "jacobi/random.hpp"

using namespace jacobi;

TEST_SUITE("random") {
  TEST_CASE("derived seeds are deterministic and distinct") {
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 5) != derive_seed(2, 5));
  }

  TEST_CASE("random symmetric") {
    Rng rng(1);
    const Matrix a = random_symmetric(4, rng);
    CHECK((a - a.transpose()).norm() == 0.0);
  }

  TEST_CASE("trig systems respect the norm bound") {
    Rng rng(2);
    for (int m = 1; m <= 5; ++m) {
      const auto sys = random_trig_system(m, rng, 9.0);
      REQUIRE(sys->period().has_value());
      for (double t = 0.0; t < 7.0; t += 0.1) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(sys->curvature(t));
        CHECK(es.eigenvalues().cwiseAbs().maxCoeff() <= 9.0 + 1e-12);
      }
    }
  }

  TEST_CASE("positive systems stay above delta") {
    Rng rng(3);
    for (int m = 1; m <= 4; ++m) {
      const auto sys = random_positive_system(m, 0.7, rng);
      CHECK(min_curvature_eigenvalue(*sys, 0.0, 10.0, 400) >= 0.7 - 1e-12);
    }
  }

  TEST_CASE("random lagrangians and subspaces") {
    Rng rng(4);
    for (int m = 1; m <= 5; ++m) {
      const auto sys = random_trig_system(m, rng);
      const FieldSubspace l = random_lagrangian(sys, 0.25, rng);
      CHECK(is_lagrangian(l));
      CHECK(l.anchor() == 0.25);
      for (int shared = 0; shared <= m; ++shared) {
        const FieldSubspace l2 = random_lagrangian_sharing(l, shared, rng);
        CHECK(is_lagrangian(l2));
        CHECK(intersection_dimension_same_anchor(l, l2) == shared);
      }
      for (int d = 1; d <= m; ++d) {
        const FieldSubspace w = random_subspace_of(l, d, rng);
        CHECK(w.dim() == d);
        CHECK(is_isotropic(w).isotropic);
        CHECK(intersection_dimension_same_anchor(l, w) == d);
      }
    }
  }

  TEST_CASE("isotropic frames keep the seed columns") {
    Rng rng(5);
    const Matrix seed = random_isotropic_frame(3, 1, rng);
    const Matrix f = random_isotropic_frame(3, 3, rng, seed);
    CHECK((f.col(0) - seed.col(0)).norm() < 1e-14);
    CHECK((f.transpose() * f - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((f.transpose() * canonical_form(3) * f).cwiseAbs().maxCoeff() < 1e-12);
  }
}
