#include <cmath>
#include <numbers>

#include <doctest.h>

#include "jacobi/errors.hpp"
#include "jacobi/frame.hpp"

using namespace jacobi;
constexpr double pi = std::numbers::pi;

namespace {

ProjectorPath constant_path(const Matrix& p) {
  return [p](double) { return ProjectorSample{p, Matrix::Zero(p.rows(), p.cols())}; };
}

Vector rotating(double t) {
  Vector h(2);
  h << -std::sin(t), std::cos(t);
  return h;
}

}  // namespace

TEST_SUITE("frame") {
  TEST_CASE("constant line") {
    Matrix p = Matrix::Zero(3, 3);
    p(0, 0) = 1.0;
    const ParallelFrame f = parallel_frame(constant_path(p), {0.0, 5.0}, 1.0);
    CHECK(f.rank() == 1);
    for (double t : {0.0, 2.0, 5.0}) {
      CHECK(std::abs(std::abs(f.at(t)(0, 0)) - 1.0) < 1e-14);
      CHECK(f.containment_defect(t) < 1e-14);
    }
  }

  TEST_CASE("full space keeps its basis") {
    const ParallelFrame f = parallel_frame(constant_path(Matrix::Identity(3, 3)), {0.0, 4.0}, 0.0);
    CHECK(f.rank() == 3);
    CHECK((f.at(4.0) - f.at(0.0)).norm() == 0.0);
    CHECK(f.parallelism_defect(2.0) == 0.0);
  }

  TEST_CASE("rotating horizontal line of the s3_s2 model") {
    const ProjectorPath path = [](double t) {
      const Vector h = rotating(t);
      Vector dh(2);
      dh << -std::cos(t), -std::sin(t);
      return ProjectorSample{h * h.transpose(), dh * h.transpose() + h * dh.transpose()};
    };
    const ParallelFrame f = parallel_frame(path, {0.0, 2 * pi}, 0.0);
    const double sign = f.at(0.0).col(0).dot(rotating(0.0));
    for (double t = 0.0; t <= 2 * pi; t += 0.2) {
      CHECK((f.at(t).col(0) - sign * rotating(t)).norm() < 1e-8);
      CHECK(f.orthonormality_defect(t) < 1e-9);
      CHECK(f.parallelism_defect(t) <= 1e-8);
    }
  }

  TEST_CASE("frame from a spanning function") {
    const ParallelFrame f = parallel_frame_from_basis(
        [](double t) {
          Matrix s(3, 1);
          s << std::cos(t), std::sin(t), 0.5;
          return s;
        },
        {0.0, 3.0}, 0.0);
    CHECK(f.rank() == 1);
    for (double t = 0.0; t <= 3.0; t += 0.5) {
      CHECK(f.orthonormality_defect(t) < 1e-8);
      CHECK(f.containment_defect(t) < 1e-8);
      CHECK(f.parallelism_defect(t) < 1e-6);
    }
  }

  TEST_CASE("rank jumps are detected") {
    const ProjectorPath jumpy = [](double t) {
      Matrix p = Matrix::Zero(2, 2);
      p(0, 0) = 1.0;
      if (t > 1.0) p(1, 1) = 1.0;
      return ProjectorSample{p, Matrix::Zero(2, 2)};
    };
    CHECK_THROWS_AS(parallel_frame(jumpy, {0.0, 2.0}, 0.0), RankJumpError);
    const ProjectorPath flip = [](double t) {
      Matrix p = Matrix::Zero(2, 2);
      p(t > 1.0 ? 1 : 0, t > 1.0 ? 1 : 0) = 1.0;
      return ProjectorSample{p, Matrix::Zero(2, 2)};
    };
    CHECK_THROWS_AS(parallel_frame(flip, {0.0, 2.0}, 0.0), RankJumpError);
  }
}
