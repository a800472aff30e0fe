#include "jacobi/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace jacobi {
namespace {

double min_eig(const JacobiSystem& system, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(system.curvature(t), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Walks the span with a step chosen from the local margin over `floor` and a
// finite-difference Lipschitz estimate of R; calls visit(t, lambda_min).
// visit returns false to stop early.
template <class Visit>
void sweep(const JacobiSystem& system, Span span, double floor, const CertificateOptions& o,
           Visit&& visit) {
  double t = span.lo;
  while (true) {
    const double lam = min_eig(system, t);
    if (!visit(t, lam)) return;
    if (t >= span.hi) return;
    const double probe = std::min(o.min_step, span.hi - t);
    double lip = 0.0;
    if (probe > 0.0) {
      lip = (system.curvature(t + probe) - system.curvature(t)).norm() / probe;
    }
    double step = o.max_step;
    if (lip > 0.0) step = std::clamp(2.0 * (lam - floor + o.tol) / lip, o.min_step, o.max_step);
    t = std::min(span.hi, t + step);
  }
}

}  // namespace

bool rate_certificate(const JacobiSystem& system, double delta, Span span,
                      const CertificateOptions& options) {
  bool ok = true;
  sweep(system, span, delta, options, [&](double, double lam) {
    if (lam < delta - options.tol) ok = false;
    return ok;
  });
  return ok;
}

double certified_min_eigenvalue(const JacobiSystem& system, Span span,
                                const CertificateOptions& options) {
  double lo = std::numeric_limits<double>::infinity();
  sweep(system, span, -std::numeric_limits<double>::infinity(), options,
        [&](double, double lam) {
          lo = std::min(lo, lam);
          return true;
        });
  return lo;
}

}  // namespace jacobi
