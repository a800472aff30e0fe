#pragma once

#include <string>

namespace jacobi {

/// Interval with explicit endpoint inclusion; the half-open conventions of
/// (a, a+c] and [a, a+l) map to flags, never to shifted endpoints.
struct IntervalSpec {
  double lo = 0.0;
  double hi = 0.0;
  bool include_lo = true;
  bool include_hi = true;

  static IntervalSpec closed(double lo, double hi) { return {lo, hi, true, true}; }
  static IntervalSpec open(double lo, double hi) { return {lo, hi, false, false}; }
  static IntervalSpec left_open(double lo, double hi) { return {lo, hi, false, true}; }
  static IntervalSpec right_open(double lo, double hi) { return {lo, hi, true, false}; }

  bool contains(double t) const noexcept {
    if (t < lo || t > hi) return false;
    if (t == lo && !include_lo) return false;
    if (t == hi && !include_hi) return false;
    return true;
  }
  bool valid() const noexcept { return lo <= hi; }
  std::string to_string() const;
};

}  // namespace jacobi
