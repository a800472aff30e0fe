#pragma once

#include "jacobi/integrator.hpp"
#include "jacobi/system.hpp"

namespace jacobi {

struct CertificateOptions {
  double tol = 1e-9;
  double max_step = 0.05;
  double min_step = 1e-3;
};

/// True iff min eig R(t) >= delta - tol on a sample of `span` whose density
/// follows a finite-difference Lipschitz estimate of R.
bool rate_certificate(const JacobiSystem& system, double delta, Span span,
                      const CertificateOptions& options = {});

/// Sampled minimum eigenvalue used by the certificate (diagnostic).
double certified_min_eigenvalue(const JacobiSystem& system, Span span,
                                const CertificateOptions& options = {});

}  // namespace jacobi
