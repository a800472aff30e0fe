#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's integrator or index scan.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXd;
constexpr double pi = std::numbers::pi;

// Classical fixed-step RK4 for Phi' = [[0, I], [-R, 0]] Phi, Phi(t0) = I.
inline Matrix rk4_fundamental(const std::function<Matrix(double)>& curvature, int m, double t0,
                              double t1, int steps) {
  auto f = [&](double t, const Matrix& y) {
    Matrix d(2 * m, 2 * m);
    d.topRows(m) = y.bottomRows(m);
    d.bottomRows(m) = -curvature(t) * y.topRows(m);
    return d;
  };
  Matrix y = Matrix::Identity(2 * m, 2 * m);
  const double h = (t1 - t0) / steps;
  double t = t0;
  for (int i = 0; i < steps; ++i) {
    const Matrix k1 = f(t, y);
    const Matrix k2 = f(t + h / 2, y + h / 2 * k1);
    const Matrix k3 = f(t + h / 2, y + h / 2 * k2);
    const Matrix k4 = f(t + h, y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    t = t0 + (i + 1) * h;
  }
  return y;
}

// Zeros of sin(sqrt(delta) (t - a)) in an interval with inclusion flags.
inline std::vector<double> sine_zeros(double delta, double a, double lo, double hi, bool include_lo,
                                      bool include_hi) {
  std::vector<double> out;
  const double step = pi / std::sqrt(delta);
  const double eps = 1e-9;
  for (long j = static_cast<long>(std::floor((lo - a) / step)) - 1;; ++j) {
    const double t = a + j * step;
    if (t > hi + eps) break;
    if (t < lo - eps) continue;
    if (std::abs(t - lo) <= eps && !include_lo) continue;
    if (std::abs(t - hi) <= eps && !include_hi) continue;
    out.push_back(t);
  }
  return out;
}

// Index of L_a in R = delta I on R^m: every sine zero has multiplicity m.
inline int vanishing_index(double delta, int m, double a, double lo, double hi, bool include_lo,
                           bool include_hi) {
  return m * static_cast<int>(sine_zeros(delta, a, lo, hi, include_lo, include_hi).size());
}

// Sign changes of a scalar Jacobi field y'' + r(t) y = 0 on (t0, t1], by RK4
// on a fixed grid. Only meaningful when the grid resolves every zero.
inline int scalar_sign_changes(const std::function<double(double)>& r, double y, double dy,
                               double t0, double t1, int steps) {
  const double h = (t1 - t0) / steps;
  int count = 0;
  double t = t0;
  for (int i = 0; i < steps; ++i) {
    auto f = [&](double s, double a, double b, double& da, double& db) {
      da = b;
      db = -r(s) * a;
    };
    double a1, b1, a2, b2, a3, b3, a4, b4;
    f(t, y, dy, a1, b1);
    f(t + h / 2, y + h / 2 * a1, dy + h / 2 * b1, a2, b2);
    f(t + h / 2, y + h / 2 * a2, dy + h / 2 * b2, a3, b3);
    f(t + h, y + h * a3, dy + h * b3, a4, b4);
    const double next = y + h / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
    dy += h / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
    if ((y > 0 && next <= 0) || (y < 0 && next >= 0)) ++count;
    y = next;
    t = t0 + (i + 1) * h;
  }
  return count;
}

}  // namespace oracle
