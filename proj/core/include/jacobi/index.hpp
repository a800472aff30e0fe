#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jacobi/flow.hpp"
#include "jacobi/interval.hpp"
#include "jacobi/verdict.hpp"

namespace jacobi {

struct IndexOptions {
  /// Scan step; 0 selects 0.1 / sqrt(1 + Lambda) with Lambda the largest
  /// sampled eigenvalue of R on the scanned range.
  double scan_step = 0.0;
  /// Width of the final bracket around a refined zero.
  double refine_tol = 1e-10;
  /// Kernel threshold on singular values of the value block of an
  /// orthonormalized state basis (these lie in [0, 1]).
  double kernel_tol = 1e-7;
  /// Values in [kernel_tol, kernel_tol * ambiguity_factor) are ambiguous.
  double ambiguity_factor = 100.0;
  /// Refined zeros this close to an interval endpoint are put on it.
  double snap_tol = 1e-8;
  /// Depth of local rescans when the determinant parity of a Lagrangian
  /// disagrees with the zeros found in a cell.
  int max_rescans = 4;
};

struct ZeroEvent {
  double time = 0.0;
  int multiplicity = 0;
};

struct IndexReport {
  std::string subspace_id;
  IntervalSpec interval;
  std::vector<ZeroEvent> zeros;  ///< zeros inside `interval`, increasing
  int total = 0;
  double scan_step = 0.0;
  double refine_tol = 0.0;
  double snap_tol = 1e-8;
  std::vector<std::string> warnings;

  /// Index over a sub-interval, from the same zero list. Zeros within
  /// snap_tol of an endpoint of `sub` count as lying on it.
  int count(const IntervalSpec& sub) const;
};

/// dim ker of the evaluation map at t.
int index_at_time(const FundamentalSolution& flow, const FieldSubspace& w, double t,
                  const IndexOptions& options = {});

/// Orthonormal basis (d x k) of the coefficient vectors c with W(t) c = 0,
/// in the coordinates of w.basis().
Matrix kernel_at(const FundamentalSolution& flow, const FieldSubspace& w, double t,
                 const IndexOptions& options = {});

/// Smallest singular value of the normalized evaluation map at t. This is the
/// scanned quantity; exposed for trace output.
double sigma_min(const FundamentalSolution& flow, const FieldSubspace& w, double t);

std::vector<ZeroEvent> zero_times(const FundamentalSolution& flow, const FieldSubspace& w,
                                  const IntervalSpec& interval, const IndexOptions& options = {});

IndexReport index_on_interval(const FundamentalSolution& flow, const FieldSubspace& w,
                              const IntervalSpec& interval, const IndexOptions& options = {});

/// Scan step actually used for [lo, hi] under `options`.
double effective_scan_step(const JacobiSystem& system, double lo, double hi,
                           const IndexOptions& options);

/// Least t in (a, a + horizon] where some field of L_a vanishes; the flow
/// must cover [a, a + horizon].
std::optional<double> first_conjugate_time(const FundamentalSolution& flow, double a,
                                           double horizon, const IndexOptions& options = {});
/// Builds its own flow.
std::optional<double> first_conjugate_time(const SystemPtr& system, double a, double horizon,
                                           const IndexOptions& options = {});

/// Infimum of first_conjugate_time over the sampled base points.
std::optional<double> conjugate_radius(const SystemPtr& system, const std::vector<double>& bases,
                                       double horizon, const IndexOptions& options = {});

}  // namespace jacobi
