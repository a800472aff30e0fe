#include "jacobi/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "jacobi/errors.hpp"

namespace jacobi {

Matrix canonical_form(int m) {
  Matrix omega = Matrix::Zero(2 * m, 2 * m);
  omega.topRightCorner(m, m) = Matrix::Identity(m, m);
  omega.bottomLeftCorner(m, m) = -Matrix::Identity(m, m);
  return omega;
}

Vector singular_values_ascending(const Matrix& a) {
  if (a.size() == 0) return Vector();
  Eigen::JacobiSVD<Matrix> svd(a);
  Vector s = svd.singularValues();
  std::reverse(s.data(), s.data() + s.size());
  return s;
}

int banded_rank(const Matrix& a, const RankThresholds& t, const char* what) {
  if (a.size() == 0) return 0;
  const Vector s = singular_values_ascending(a);
  const double scale = s(s.size() - 1);
  if (scale == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double rel = s(i) / scale;
    if (rel >= t.threshold) {
      ++rank;
    } else if (rel >= t.band_lo) {
      std::ostringstream os;
      os << what << ": singular value ratio " << rel << " inside ambiguity band [" << t.band_lo
         << ", " << t.threshold << ")";
      throw ConditioningError(os.str());
    }
  }
  return rank;
}

Matrix orthonormal_columns(const Matrix& a) {
  if (a.cols() == 0) return Matrix(a.rows(), 0);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
  // Sign convention: positive diagonal of R, so Q keeps the direction of a.
  const auto k = std::min(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < k; ++j) {
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

Matrix orthogonal_complement(const Matrix& q) {
  const auto n = q.rows();
  const auto d = q.cols();
  if (d == 0) return Matrix::Identity(n, n);
  Eigen::HouseholderQR<Matrix> qr(q);
  Matrix full = qr.householderQ() * Matrix::Identity(n, n);
  return full.rightCols(n - d);
}

Matrix null_space(const Matrix& a, double tol, bool absolute) {
  const auto cols = a.cols();
  if (cols == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double scale = absolute ? 1.0 : (s.size() ? s(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol * scale) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

}  // namespace jacobi
