#pragma once

#include <Eigen/Dense>

namespace jacobi {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Canonical matrix of the symplectic form on value/derivative pairs:
/// omega(x, y) = x^T * Omega * y with Omega = [[0, I], [-I, 0]].
Matrix canonical_form(int m);

/// Singular values in ascending order.
Vector singular_values_ascending(const Matrix& a);

/// Rank decision with an ambiguity band. Singular values >= threshold * scale
/// count towards the rank; a value inside [band_lo, threshold) * scale raises
/// ConditioningError. `scale` defaults to the largest singular value.
struct RankThresholds {
  double threshold = 1e-8;
  double band_lo = 1e-10;
};
int banded_rank(const Matrix& a, const RankThresholds& t = {}, const char* what = "rank");

/// Orthonormal basis of the column space (thin QR). Columns must be
/// independent; callers certify that beforehand.
Matrix orthonormal_columns(const Matrix& a);

/// Orthonormal basis of the orthogonal complement of range(q), where q has
/// orthonormal columns.
Matrix orthogonal_complement(const Matrix& q);

/// Orthonormal basis of the null space of a, using a plain threshold
/// relative to the largest singular value (or absolute when `absolute`).
Matrix null_space(const Matrix& a, double tol, bool absolute = false);

inline Matrix symmetrized(const Matrix& a) { return 0.5 * (a + a.transpose()); }

}  // namespace jacobi
