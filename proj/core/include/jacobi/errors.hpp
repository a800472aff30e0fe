#pragma once

#include <stdexcept>
#include <string>

namespace jacobi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's preconditions (mismatched anchors,
/// wrong dimensions, W not contained in L, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A rank or kernel decision fell inside the ambiguity band of its
/// singular-value threshold.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Step-size collapse or non-finite state while integrating an ODE.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double time)
      : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// A subspace path changed rank where constant rank was required.
class RankJumpError : public Error {
 public:
  RankJumpError(const std::string& what, double time)
      : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// An internal cross-check failed: well-definedness residuals, Jacobi
/// residuals of model fields, projection residuals.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace jacobi
