#include "jacobi/inequalities.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "jacobi/certificates.hpp"
#include "jacobi/errors.hpp"

namespace jacobi {
namespace {

void require(const FieldSubspace* l, const char* what) {
  if (l == nullptr) throw ContractError(std::string(what) + ": missing subspace");
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

VerdictRecord verify_lytchak(const FundamentalSolution& flow, const LytchakArgs& args,
                             const IndexOptions& options) {
  require(args.l1, "lytchak");
  require(args.l2, "lytchak");
  const char* id = "lytchak";
  if (!is_lagrangian(*args.l1) || !is_lagrangian(*args.l2)) {
    return VerdictRecord::hypothesis_failure(id, "both subspaces must be Lagrangian");
  }
  const int i1 = index_on_interval(flow, *args.l1, args.interval, options).total;
  const int i2 = index_on_interval(flow, *args.l2, args.interval, options).total;
  const int m = flow.system()->dim();
  const int cap = intersection_dimension(flow, *args.l1, *args.l2);
  auto v = VerdictRecord::upper(id, std::abs(i1 - i2), m - cap);
  v.notes = "ind1=" + std::to_string(i1) + " ind2=" + std::to_string(i2) +
            " dim_cap=" + std::to_string(cap) + " I=" + args.interval.to_string();
  return v;
}

VerdictRecord verify_conj_upper(const FundamentalSolution& flow, const ConjUpperArgs& args,
                                const IndexOptions& options) {
  require(args.l, "conj_upper");
  const char* id = "conj_upper";
  if (args.r < 0 || !(args.c > 0.0)) throw ContractError("conj_upper: need r >= 0 and c > 0");
  if (!is_lagrangian(*args.l)) return VerdictRecord::hypothesis_failure(id, "L is not Lagrangian");
  for (int i = 0; i < args.r; ++i) {
    const double s = args.a + i * args.c;
    const FieldSubspace ls = vanishing_lagrangian(flow.system(), s);
    const auto z = zero_times(flow, ls, IntervalSpec::left_open(s, s + args.c), options);
    if (!z.empty()) {
      return VerdictRecord::hypothesis_failure(
          id, "L_" + fmt(s) + " vanishes again at t=" + fmt(z.front().time) + " within c");
    }
  }
  const int m = flow.system()->dim();
  const auto rep = index_on_interval(flow, *args.l,
                                     IntervalSpec::closed(args.a, args.a + args.r * args.c), options);
  auto v = VerdictRecord::upper(id, rep.total, (args.r + 1) * m);
  v.notes = "a=" + fmt(args.a) + " r=" + std::to_string(args.r) + " c=" + fmt(args.c);
  return v;
}

VerdictRecord verify_delta_lower(const FundamentalSolution& flow, const DeltaLowerArgs& args,
                                 const IndexOptions& options) {
  require(args.l, "delta_lower");
  const char* id = "delta_lower";
  if (args.r < 0 || !(args.delta > 0.0)) {
    throw ContractError("delta_lower: need r >= 0 and delta > 0");
  }
  if (!is_lagrangian(*args.l)) return VerdictRecord::hypothesis_failure(id, "L is not Lagrangian");
  const double hi = args.a + args.r * std::numbers::pi / std::sqrt(args.delta);
  if (!rate_certificate(*flow.system(), args.delta, {args.a, hi})) {
    return VerdictRecord::hypothesis_failure(id, "R >= delta certificate failed on [" +
                                                     fmt(args.a) + ", " + fmt(hi) + "]");
  }
  const int m = flow.system()->dim();
  const int lhs = index_on_interval(flow, *args.l, IntervalSpec::closed(args.a, hi), options).total;
  const int at_a = index_at_time(flow, *args.l, args.a, options);
  auto v = VerdictRecord::lower(id, lhs, args.r * m + at_a);
  v.notes = "ind_L(a)=" + std::to_string(at_a) + " r=" + std::to_string(args.r);
  return v;
}

VerdictRecord verify_periodic_upper(const FundamentalSolution& flow, const PeriodicUpperArgs& args,
                                    const IndexOptions& options) {
  require(args.l, "periodic_upper");
  const char* id = "periodic_upper";
  if (args.r < 0 || !(args.period > 0.0)) {
    throw ContractError("periodic_upper: need r >= 0 and period > 0");
  }
  if (!is_lagrangian(*args.l)) return VerdictRecord::hypothesis_failure(id, "L is not Lagrangian");
  const JacobiSystem& sys = *flow.system();
  if (sys.kind() != CurvatureKind::periodic) {
    return VerdictRecord::hypothesis_failure(id, "curvature is not declared periodic");
  }
  const double hi = args.a + args.r * args.period;
  constexpr int kSamples = 64;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = args.a + (hi - args.a) * i / kSamples;
    const double gap = (sys.curvature(t + args.period) - sys.curvature(t)).cwiseAbs().maxCoeff();
    if (gap > sys.symmetry_tol()) {
      return VerdictRecord::hypothesis_failure(
          id, "R(t+l) != R(t) at t=" + fmt(t) + " (gap " + fmt(gap) + ")");
    }
  }
  const int m = sys.dim();
  const auto rep = index_on_interval(flow, *args.l, IntervalSpec::closed(args.a, hi), options);
  const int first = rep.count(IntervalSpec::right_open(args.a, args.a + args.period));
  auto v = VerdictRecord::upper(id, rep.total, args.r * (m + first) + m);
  v.notes = "ind[a,a+l)=" + std::to_string(first) + " r=" + std::to_string(args.r);
  return v;
}

VerdictRecord verify_inequality(const FundamentalSolution& flow, const InequalityArgs& args,
                                const IndexOptions& options) {
  static constexpr const char* names[] = {"lytchak", "conj_upper", "delta_lower", "periodic_upper"};
  try {
    return std::visit(
        [&](const auto& a) -> VerdictRecord {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, LytchakArgs>) return verify_lytchak(flow, a, options);
          if constexpr (std::is_same_v<T, ConjUpperArgs>) return verify_conj_upper(flow, a, options);
          if constexpr (std::is_same_v<T, DeltaLowerArgs>) return verify_delta_lower(flow, a, options);
          if constexpr (std::is_same_v<T, PeriodicUpperArgs>) {
            return verify_periodic_upper(flow, a, options);
          }
        },
        args);
  } catch (const ConditioningError& e) {
    return VerdictRecord::numerical_failure(names[args.index()], e.what());
  } catch (const IntegrationError& e) {
    return VerdictRecord::numerical_failure(names[args.index()], e.what());
  }
}

VerdictRecord verify_span_property(const FundamentalSolution& flow, const FieldSubspace& l,
                                   double a, double delta, const IndexOptions& options) {
  const char* id = "span_property";
  if (!(delta > 0.0)) throw ContractError("span_property: delta must be positive");
  const double hi = a + std::numbers::pi / std::sqrt(delta);
  if (!rate_certificate(*flow.system(), delta, {a, hi})) {
    return VerdictRecord::hypothesis_failure(id, "R >= delta certificate failed");
  }
  try {
    const auto zeros = zero_times(flow, l, IntervalSpec::left_open(a, hi), options);
    Matrix gathered(l.dim(), 0);
    std::string times;
    for (const auto& z : zeros) {
      const Matrix k = kernel_at(flow, l, z.time, options);
      Matrix next(l.dim(), gathered.cols() + k.cols());
      next << gathered, k;
      gathered = std::move(next);
      times += (times.empty() ? "" : ",") + fmt(z.time);
    }
    const int rank = gathered.cols() == 0 ? 0 : banded_rank(gathered, {}, "span_property");
    auto v = VerdictRecord::lower(id, rank, l.dim());
    v.notes = "zeros at {" + times + "}";
    return v;
  } catch (const ConditioningError& e) {
    return VerdictRecord::numerical_failure(id, e.what());
  } catch (const IntegrationError& e) {
    return VerdictRecord::numerical_failure(id, e.what());
  }
}

}  // namespace jacobi
