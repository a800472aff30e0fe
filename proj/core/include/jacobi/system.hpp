#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "jacobi/linalg.hpp"

namespace jacobi {

enum class CurvatureKind { closed_form, periodic, sampled };

/// The pair (E, R): E = R^m with the standard inner product and a smooth
/// family of self-adjoint operators R(t). Immutable once built; always held
/// through SystemPtr so subspaces and flows can share it.
class JacobiSystem {
 public:
  using CurvatureFn = std::function<Matrix(double)>;

  static std::shared_ptr<const JacobiSystem> closed_form(int m, CurvatureFn curvature,
                                                         double symmetry_tol = 1e-10);
  static std::shared_ptr<const JacobiSystem> periodic(int m, CurvatureFn curvature, double period,
                                                      double symmetry_tol = 1e-10);
  /// Natural cubic spline through sampled operators, entrywise. Times must be
  /// strictly increasing; queries outside [front, back] are rejected.
  static std::shared_ptr<const JacobiSystem> sampled(std::vector<double> times,
                                                     std::vector<Matrix> values,
                                                     double symmetry_tol = 1e-10);

  int dim() const noexcept { return dim_; }
  CurvatureKind kind() const noexcept { return kind_; }
  std::optional<double> period() const noexcept { return period_; }
  double symmetry_tol() const noexcept { return symmetry_tol_; }

  /// R(t), symmetrized. Throws ContractError when the raw operator has the
  /// wrong shape or is asymmetric beyond symmetry_tol, IntegrationError when
  /// it is non-finite.
  Matrix curvature(double t) const;

  /// Largest asymmetry seen by the spline fit (sampled systems) or 0.
  double interpolation_asymmetry() const noexcept { return interpolation_asymmetry_; }

  /// Sampled check that ||R(t + l) - R(t)|| <= symmetry_tol over [lo, hi].
  bool check_periodicity(double lo, double hi, int samples = 64) const;

 private:
  JacobiSystem() = default;

  int dim_ = 0;
  CurvatureKind kind_ = CurvatureKind::closed_form;
  std::optional<double> period_;
  double symmetry_tol_ = 1e-10;
  double interpolation_asymmetry_ = 0.0;
  CurvatureFn curvature_;
};

using SystemPtr = std::shared_ptr<const JacobiSystem>;

/// Smallest / largest eigenvalue of R on a uniform sample of [lo, hi].
double min_curvature_eigenvalue(const JacobiSystem& system, double lo, double hi, int samples);
double max_curvature_eigenvalue(const JacobiSystem& system, double lo, double hi, int samples);

}  // namespace jacobi
