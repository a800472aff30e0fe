#pragma once

#include <memory>
#include <vector>

#include "jacobi/field_space.hpp"
#include "jacobi/integrator.hpp"

namespace jacobi {

/// Phi(t): the 2m x 2m matrix sending (J(anchor), J'(anchor)) to (J(t), J'(t)).
/// Integrated once per (system, anchor); any subspace of the same system,
/// whatever its anchor, is evaluated through Phi(t) Phi(b)^{-1}.
class FundamentalSolution {
 public:
  FundamentalSolution(SystemPtr system, double anchor, Span span, IntegratorOptions options = {});

  static std::shared_ptr<FundamentalSolution> make(SystemPtr system, double anchor, Span span,
                                                   IntegratorOptions options = {});

  const SystemPtr& system() const noexcept { return system_; }
  double anchor() const noexcept { return anchor_; }
  Span span() const noexcept { return flow_.span(); }
  const IntegratorOptions& options() const noexcept { return options_; }

  /// Phi(t).
  Matrix at(double t) const;
  /// Phi(to) Phi(from)^{-1}: propagates data given at `from` to `to`.
  Matrix transition(double from, double to) const;
  /// [[0, I], [-R(t), 0]].
  Matrix generator(double t) const;
  /// ||Phi^T Omega Phi - Omega||_max at t.
  double symplectic_defect(double t) const;

  /// Not thread-safe: the owner extends before sharing.
  void extend(Span span) { flow_.extend(span); }
  long steps() const noexcept { return flow_.steps(); }

 private:
  SystemPtr system_;
  double anchor_;
  IntegratorOptions options_;
  DenseFlow flow_;
};

using FlowPtr = std::shared_ptr<const FundamentalSolution>;

/// Stacked (value; derivative) states of the basis fields at t: 2m x d.
Matrix state_matrix(const FundamentalSolution& flow, const FieldSubspace& w, double t);

/// Column i is J_i(t) for basis field i: m x d.
Matrix evaluation_matrix(const FundamentalSolution& flow, const FieldSubspace& w, double t);

std::vector<FieldVector> evaluate_fields(const FundamentalSolution& flow, const FieldSubspace& w,
                                         double t);
/// Extends the flow when t lies outside its span.
std::vector<FieldVector> evaluate_fields(FundamentalSolution& flow, const FieldSubspace& w,
                                         double t);

FieldVector reanchor(const FundamentalSolution& flow, const FieldVector& x, double t);
FieldSubspace reanchor(const FundamentalSolution& flow, const FieldSubspace& w, double t);

/// dim(L1 ∩ L2); L2 is re-anchored to L1's anchor first.
int intersection_dimension(const FundamentalSolution& flow, const FieldSubspace& l1,
                           const FieldSubspace& l2, const RankThresholds& rank = {});

}  // namespace jacobi
