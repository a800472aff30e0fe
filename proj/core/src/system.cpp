#include "jacobi/system.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "jacobi/errors.hpp"

namespace jacobi {
namespace {

// Natural cubic spline second derivatives for one scalar series.
std::vector<double> spline_moments(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  std::vector<double> m(n, 0.0);
  if (n < 3) return m;
  std::vector<double> c(n, 0.0), d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = t[i] - t[i - 1];
    const double h1 = t[i + 1] - t[i];
    const double a = h0 / 6.0;
    const double b = (h0 + h1) / 3.0;
    const double cc = h1 / 6.0;
    const double rhs = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
    const double denom = b - a * c[i - 1];
    c[i] = cc / denom;
    d[i] = (rhs - a * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m[i] = d[i] - c[i] * m[i + 1];
    if (i == 1) break;
  }
  return m;
}

struct SplineTable {
  std::vector<double> times;
  std::vector<Matrix> values;
  std::vector<Matrix> moments;

  Matrix eval(double t) const {
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t i = static_cast<std::size_t>(std::distance(times.begin(), it));
    i = std::clamp<std::size_t>(i, 1, times.size() - 1);
    const double t0 = times[i - 1];
    const double t1 = times[i];
    const double h = t1 - t0;
    const double a = (t1 - t) / h;
    const double b = (t - t0) / h;
    return a * values[i - 1] + b * values[i] +
           ((a * a * a - a) * moments[i - 1] + (b * b * b - b) * moments[i]) * (h * h / 6.0);
  }
};

}  // namespace

std::shared_ptr<const JacobiSystem> JacobiSystem::closed_form(int m, CurvatureFn curvature,
                                                              double symmetry_tol) {
  if (m < 1) throw ContractError("JacobiSystem: dimension must be >= 1");
  if (!curvature) throw ContractError("JacobiSystem: empty curvature function");
  auto s = std::shared_ptr<JacobiSystem>(new JacobiSystem());
  s->dim_ = m;
  s->kind_ = CurvatureKind::closed_form;
  s->symmetry_tol_ = symmetry_tol;
  s->curvature_ = std::move(curvature);
  return s;
}

std::shared_ptr<const JacobiSystem> JacobiSystem::periodic(int m, CurvatureFn curvature,
                                                           double period, double symmetry_tol) {
  if (!(period > 0.0)) throw ContractError("JacobiSystem: period must be positive");
  auto base = closed_form(m, std::move(curvature), symmetry_tol);
  auto s = std::const_pointer_cast<JacobiSystem>(base);
  s->kind_ = CurvatureKind::periodic;
  s->period_ = period;
  return s;
}

std::shared_ptr<const JacobiSystem> JacobiSystem::sampled(std::vector<double> times,
                                                          std::vector<Matrix> values,
                                                          double symmetry_tol) {
  if (times.size() < 2 || times.size() != values.size()) {
    throw ContractError("JacobiSystem::sampled: need >= 2 times with one operator each");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw ContractError("JacobiSystem::sampled: times must be strictly increasing");
    }
  }
  const auto m = values.front().rows();
  for (const auto& v : values) {
    if (v.rows() != m || v.cols() != m) {
      throw ContractError("JacobiSystem::sampled: operators must all be square of equal size");
    }
  }
  auto table = std::make_shared<SplineTable>();
  table->times = std::move(times);
  table->values = std::move(values);
  const std::size_t n = table->times.size();
  table->moments.assign(n, Matrix::Zero(m, m));
  std::vector<double> series(n);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) {
      for (std::size_t i = 0; i < n; ++i) series[i] = table->values[i](r, c);
      const auto mom = spline_moments(table->times, series);
      for (std::size_t i = 0; i < n; ++i) table->moments[i](r, c) = mom[i];
    }
  }
  double asym = 0.0;
  for (const auto& v : table->values) asym = std::max(asym, (v - v.transpose()).cwiseAbs().maxCoeff());
  const double lo = table->times.front();
  const double hi = table->times.back();
  auto fn = [table, lo, hi](double t) -> Matrix {
    if (t < lo || t > hi) {
      std::ostringstream os;
      os << "sampled curvature queried at t = " << t << " outside [" << lo << ", " << hi << "]";
      throw ContractError(os.str());
    }
    return table->eval(t);
  };
  auto base = closed_form(static_cast<int>(m), fn, symmetry_tol);
  auto s = std::const_pointer_cast<JacobiSystem>(base);
  s->kind_ = CurvatureKind::sampled;
  s->interpolation_asymmetry_ = asym;
  return s;
}

Matrix JacobiSystem::curvature(double t) const {
  Matrix r = curvature_(t);
  if (r.rows() != dim_ || r.cols() != dim_) {
    std::ostringstream os;
    os << "curvature at t = " << t << " has shape " << r.rows() << "x" << r.cols()
       << ", expected " << dim_ << "x" << dim_;
    throw ContractError(os.str());
  }
  if (!r.allFinite()) throw IntegrationError("non-finite curvature", t);
  const double asym = (r - r.transpose()).cwiseAbs().maxCoeff();
  if (asym > symmetry_tol_ * std::max(1.0, r.cwiseAbs().maxCoeff())) {
    std::ostringstream os;
    os << "curvature at t = " << t << " is not symmetric (defect " << asym << ")";
    throw ContractError(os.str());
  }
  return symmetrized(r);
}

bool JacobiSystem::check_periodicity(double lo, double hi, int samples) const {
  if (!period_) return false;
  for (int i = 0; i < samples; ++i) {
    const double t = lo + (hi - lo) * (i + 0.5) / samples;
    const double defect = (curvature(t + *period_) - curvature(t)).norm();
    if (defect > std::max(symmetry_tol_, 1e-12)) return false;
  }
  return true;
}

namespace {
template <class Pick>
double extreme_eigenvalue(const JacobiSystem& system, double lo, double hi, int samples, Pick pick) {
  samples = std::max(samples, 1);
  double best = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = (samples == 0) ? lo : lo + (hi - lo) * i / samples;
    Eigen::SelfAdjointEigenSolver<Matrix> es(system.curvature(t), Eigen::EigenvaluesOnly);
    const double v = pick(es.eigenvalues());
    best = (i == 0) ? v : pick(Vector((Vector(2) << best, v).finished()));
  }
  return best;
}
}  // namespace

double min_curvature_eigenvalue(const JacobiSystem& system, double lo, double hi, int samples) {
  return extreme_eigenvalue(system, lo, hi, samples, [](const Vector& v) { return v.minCoeff(); });
}

double max_curvature_eigenvalue(const JacobiSystem& system, double lo, double hi, int samples) {
  return extreme_eigenvalue(system, lo, hi, samples, [](const Vector& v) { return v.maxCoeff(); });
}

}  // namespace jacobi
