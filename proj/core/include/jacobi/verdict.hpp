#pragma once

#include <string>

namespace jacobi {

enum class VerdictStatus {
  pass,
  inequality_failed,
  hypothesis_not_met,
  numerical_error,  ///< conditioning or integration failure while evaluating
};
const char* to_string(VerdictStatus s);

/// Outcome of checking one inequality. Hypothesis failures and numerical
/// failures are distinct from the inequality failing.
struct VerdictRecord {
  std::string statement;
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs for upper bounds, lhs - rhs for lower bounds.
  double slack = 0.0;
  bool pass = false;
  bool hypothesis_ok = true;
  VerdictStatus status = VerdictStatus::pass;
  std::string notes;

  /// Fills pass/status from slack, hypothesis_ok and `tol`.
  void settle(double tol = 0.0);
  static VerdictRecord upper(std::string statement, double lhs, double rhs, double tol = 0.0);
  static VerdictRecord lower(std::string statement, double lhs, double rhs, double tol = 0.0);
  static VerdictRecord hypothesis_failure(std::string statement, std::string why);
  static VerdictRecord numerical_failure(std::string statement, std::string why);
};

}  // namespace jacobi
