#pragma once

#include <variant>

#include "jacobi/index.hpp"

namespace jacobi {

/// |ind_L1 I - ind_L2 I| <= m - dim(L1 ∩ L2).
struct LytchakArgs {
  const FieldSubspace* l1 = nullptr;
  const FieldSubspace* l2 = nullptr;
  IntervalSpec interval;
};

/// ind_L [a, a + r c] <= (r + 1) m, given that L_{a+ic} has no zero in
/// (a + ic, a + (i+1)c] for i < r.
struct ConjUpperArgs {
  const FieldSubspace* l = nullptr;
  double a = 0.0;
  int r = 1;
  double c = 0.0;
};

/// ind_L [a, a + r pi / sqrt(delta)] >= r m + ind_L(a), given R >= delta.
struct DeltaLowerArgs {
  const FieldSubspace* l = nullptr;
  double a = 0.0;
  int r = 1;
  double delta = 1.0;
};

/// ind_L [a, a + r l] <= r (m + ind_L [a, a + l)) + m for l-periodic R.
struct PeriodicUpperArgs {
  const FieldSubspace* l = nullptr;
  double a = 0.0;
  int r = 1;
  double period = 0.0;
};

using InequalityArgs = std::variant<LytchakArgs, ConjUpperArgs, DeltaLowerArgs, PeriodicUpperArgs>;

VerdictRecord verify_lytchak(const FundamentalSolution& flow, const LytchakArgs& args,
                             const IndexOptions& options = {});
VerdictRecord verify_conj_upper(const FundamentalSolution& flow, const ConjUpperArgs& args,
                                const IndexOptions& options = {});
VerdictRecord verify_delta_lower(const FundamentalSolution& flow, const DeltaLowerArgs& args,
                                 const IndexOptions& options = {});
VerdictRecord verify_periodic_upper(const FundamentalSolution& flow, const PeriodicUpperArgs& args,
                                    const IndexOptions& options = {});

/// Dispatches on the argument kind. Conditioning and integration errors are
/// caught and reported as numerical_error verdicts.
VerdictRecord verify_inequality(const FundamentalSolution& flow, const InequalityArgs& args,
                                const IndexOptions& options = {});

/// The fields of L vanishing somewhere in (a, a + pi/sqrt(delta)] span L.
/// Requires R >= delta on that interval.
VerdictRecord verify_span_property(const FundamentalSolution& flow, const FieldSubspace& l,
                                   double a, double delta, const IndexOptions& options = {});

}  // namespace jacobi
