#include "jacobi/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jacobi/errors.hpp"

namespace jacobi {
namespace {

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension (Hairer, Nørsett & Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

}  // namespace

DenseFlow::DenseFlow(Rhs rhs, double start, Matrix initial, Span span, IntegratorOptions options)
    : rhs_(std::move(rhs)),
      start_(start),
      initial_(std::move(initial)),
      options_(options),
      lo_(start),
      hi_(start),
      last_forward_h_(options.initial_step),
      last_backward_h_(-options.initial_step) {
  if (!span.contains(start)) throw ContractError("DenseFlow: span must contain the start time");
  if (!initial_.allFinite()) throw IntegrationError("non-finite initial state", start);
  extend(span);
}

void DenseFlow::extend(Span span) {
  if (span.hi > hi_) {
    advance(forward_, span.hi, 1.0);
    hi_ = span.hi;
  }
  if (span.lo < lo_) {
    advance(backward_, span.lo, -1.0);
    lo_ = span.lo;
  }
}

void DenseFlow::advance(std::vector<Segment>& segs, double target, double direction) {
  double t = start_;
  Matrix y = initial_;
  double h = direction > 0 ? last_forward_h_ : last_backward_h_;
  if (!segs.empty()) {
    const Segment& s = segs.back();
    t = s.t0 + s.h;
    y = s.r1 + s.r2;
  }
  const auto rows = y.rows();
  const auto cols = y.cols();
  Matrix k1(rows, cols), k2(rows, cols), k3(rows, cols), k4(rows, cols), k5(rows, cols),
      k6(rows, cols), k7(rows, cols), tmp(rows, cols), y5(rows, cols), err(rows, cols);

  long steps = 0;
  rhs_(t, y, k1);
  while (direction * (target - t) > 0.0) {
    if (++steps > options_.max_steps) throw IntegrationError("step budget exhausted", t);
    h = direction * std::min(std::abs(h), options_.max_step);
    const double proposed = h;
    bool last = false;
    if (direction * (t + h - target) >= 0.0) {
      h = target - t;
      last = true;
    }
    tmp = y + h * a21 * k1;
    rhs_(t + c2 * h, tmp, k2);
    tmp = y + h * (a31 * k1 + a32 * k2);
    rhs_(t + c3 * h, tmp, k3);
    tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs_(t + c4 * h, tmp, k4);
    tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs_(t + c5 * h, tmp, k5);
    tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs_(t + h, tmp, k6);
    y5 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    rhs_(t + h, y5, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    if (!y5.allFinite() || !err.allFinite()) throw IntegrationError("non-finite state", t + h);
    const Matrix scale =
        (options_.abs_tol +
         options_.rel_tol * y.cwiseAbs().cwiseMax(y5.cwiseAbs()).array()).matrix();
    const double e = std::sqrt((err.array() / scale.array()).square().mean());

    if (e <= 1.0) {
      Segment s{t, h, y, y5 - y, Matrix(), Matrix(), Matrix()};
      s.r3 = h * k1 - s.r2;
      s.r4 = s.r2 - h * k7 - s.r3;
      s.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      segs.push_back(std::move(s));
      t = last ? target : t + h;
      y = y5;
      k1 = k7;
      const double fac = (e == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
      h = (last ? proposed : h) * fac;
    } else {
      h *= std::clamp(0.9 * std::pow(e, -0.2), 0.2, 1.0);
    }
    if (std::abs(h) < options_.min_step * std::max(1.0, std::abs(t))) {
      throw IntegrationError("step size collapsed", t);
    }
  }
  (direction > 0 ? last_forward_h_ : last_backward_h_) = h;
}

Matrix DenseFlow::interpolate(const Segment& s, double t) {
  const double theta = (t - s.t0) / s.h;
  const double th1 = 1.0 - theta;
  return s.r1 + theta * (s.r2 + th1 * (s.r3 + theta * (s.r4 + th1 * s.r5)));
}

Matrix DenseFlow::interpolate_derivative(const Segment& s, double t) {
  const double u = (t - s.t0) / s.h;
  const double v = 1.0 - u;
  return (s.r2 + (v - u) * s.r3 + (2.0 * u * v - u * u) * s.r4 +
          (2.0 * u * v * v - 2.0 * u * u * v) * s.r5) /
         s.h;
}

const DenseFlow::Segment& DenseFlow::locate(double t) const {
  // Stage times of an enclosing integrator may overshoot the span by rounding.
  const double slack = 1e-12 * std::max({1.0, std::abs(lo_), std::abs(hi_)});
  if (t < lo_ && t >= lo_ - slack) t = lo_;
  if (t > hi_ && t <= hi_ + slack) t = hi_;
  if (t < lo_ || t > hi_) {
    std::ostringstream os;
    os << "DenseFlow: t = " << t << " outside integrated span [" << lo_ << ", " << hi_ << "]";
    throw ContractError(os.str());
  }
  if (t >= start_ && !forward_.empty()) {
    auto it = std::lower_bound(forward_.begin(), forward_.end(), t,
                               [](const Segment& s, double v) { return s.t0 + s.h < v; });
    if (it == forward_.end()) --it;
    return *it;
  }
  if (backward_.empty()) {
    // Degenerate span on this side; only t == start reaches here.
    return forward_.front();
  }
  auto it = std::lower_bound(backward_.begin(), backward_.end(), t,
                             [](const Segment& s, double v) { return s.t0 + s.h > v; });
  if (it == backward_.end()) --it;
  return *it;
}

Matrix DenseFlow::operator()(double t) const {
  if (t == start_) return initial_;
  return interpolate(locate(t), t);
}

Matrix DenseFlow::derivative(double t) const {
  if (forward_.empty() && backward_.empty()) {
    Matrix dy(initial_.rows(), initial_.cols());
    rhs_(t, initial_, dy);
    return dy;
  }
  if (t == start_) {
    const Segment& s = forward_.empty() ? backward_.front() : forward_.front();
    return interpolate_derivative(s, t);
  }
  return interpolate_derivative(locate(t), t);
}

}  // namespace jacobi
