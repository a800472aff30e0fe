#include <cmath>
#include <sstream>

#include "jacobi/interval.hpp"
#include "jacobi/verdict.hpp"

namespace jacobi {

std::string IntervalSpec::to_string() const {
  std::ostringstream os;
  os.precision(12);
  os << (include_lo ? '[' : '(') << lo << ", " << hi << (include_hi ? ']' : ')');
  return os.str();
}

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::pass: return "pass";
    case VerdictStatus::inequality_failed: return "inequality_failed";
    case VerdictStatus::hypothesis_not_met: return "hypothesis_not_met";
    case VerdictStatus::numerical_error: return "numerical_error";
  }
  return "?";
}

void VerdictRecord::settle(double tol) {
  if (status == VerdictStatus::numerical_error) {
    pass = false;
    return;
  }
  if (!hypothesis_ok) {
    status = VerdictStatus::hypothesis_not_met;
    pass = false;
    return;
  }
  pass = slack >= -tol;
  status = pass ? VerdictStatus::pass : VerdictStatus::inequality_failed;
}

VerdictRecord VerdictRecord::upper(std::string statement, double lhs, double rhs, double tol) {
  VerdictRecord v;
  v.statement = std::move(statement);
  v.lhs = lhs;
  v.rhs = rhs;
  v.slack = rhs - lhs;
  v.settle(tol);
  return v;
}

VerdictRecord VerdictRecord::lower(std::string statement, double lhs, double rhs, double tol) {
  VerdictRecord v;
  v.statement = std::move(statement);
  v.lhs = lhs;
  v.rhs = rhs;
  v.slack = lhs - rhs;
  v.settle(tol);
  return v;
}

VerdictRecord VerdictRecord::hypothesis_failure(std::string statement, std::string why) {
  VerdictRecord v;
  v.statement = std::move(statement);
  v.hypothesis_ok = false;
  v.notes = std::move(why);
  v.slack = std::nan("");
  v.settle();
  return v;
}

VerdictRecord VerdictRecord::numerical_failure(std::string statement, std::string why) {
  VerdictRecord v;
  v.statement = std::move(statement);
  v.status = VerdictStatus::numerical_error;
  v.notes = std::move(why);
  v.slack = std::nan("");
  v.settle();
  return v;
}

}  // namespace jacobi
