#pragma once

#include <functional>
#include <vector>

#include "jacobi/linalg.hpp"

namespace jacobi {

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double initial_step = 0.01;
  double max_step = 0.25;
  double min_step = 1e-13;
  long max_steps = 5'000'000;
};

/// Closed time span [lo, hi].
struct Span {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double t) const noexcept { return t >= lo && t <= hi; }
  double length() const noexcept { return hi - lo; }
};

/// Adaptive Dormand–Prince 5(4) integrator for matrix ODEs Y' = f(t, Y) with
/// the method's continuous extension as dense output. Integrates both ways
/// from `start`; every accepted step is kept so evaluation anywhere in the
/// covered span is a polynomial evaluation.
class DenseFlow {
 public:
  /// rhs(t, Y, dY) writes f(t, Y) into dY (already sized like Y).
  using Rhs = std::function<void(double, const Matrix&, Matrix&)>;

  DenseFlow(Rhs rhs, double start, Matrix initial, Span span, IntegratorOptions options = {});

  /// Y(t); throws ContractError outside the covered span.
  Matrix operator()(double t) const;
  /// d/dt of the dense-output polynomial at t.
  Matrix derivative(double t) const;
  Span span() const noexcept { return {lo_, hi_}; }
  double start() const noexcept { return start_; }
  /// Integrates further so that the covered span includes `span`.
  void extend(Span span);
  long steps() const noexcept { return static_cast<long>(forward_.size() + backward_.size()); }

 private:
  struct Segment {
    double t0;
    double h;
    Matrix r1, r2, r3, r4, r5;
  };

  void advance(std::vector<Segment>& segs, double target, double direction);
  static Matrix interpolate(const Segment& s, double t);
  static Matrix interpolate_derivative(const Segment& s, double t);
  const Segment& locate(double t) const;

  Rhs rhs_;
  double start_;
  Matrix initial_;
  IntegratorOptions options_;
  std::vector<Segment> forward_;   // increasing t0, h > 0
  std::vector<Segment> backward_;  // decreasing t0, h < 0
  double lo_;
  double hi_;
  double last_forward_h_;
  double last_backward_h_;
};

}  // namespace jacobi
