#include "jacobi/index.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "jacobi/errors.hpp"

namespace jacobi {
namespace {

struct Probe {
  Vector sigmas;  // ascending singular values of the normalized value block
  double sigma_min() const { return sigmas.size() ? sigmas(0) : 1.0; }
};

// Evaluates the normalized evaluation map of W. The singular values of the
// value block of an orthonormal basis of the state subspace lie in [0, 1]
// and count kernel directions independently of field growth.
class Evaluator {
 public:
  Evaluator(const FundamentalSolution& flow, const FieldSubspace& w)
      : flow_(flow), m_(w.ambient_dim()), d_(w.dim()) {
    if (flow.system() != w.system()) {
      throw ContractError("index: flow and subspace belong to different systems");
    }
    data_ = (w.anchor() == flow.anchor()) ? w.basis()
                                          : Matrix(flow.at(w.anchor()).partialPivLu().solve(w.basis()));
  }

  int dim() const { return d_; }
  bool lagrangian() const { return d_ == m_; }

  Probe probe(double t) const {
    Probe p;
    if (d_ == 0) return p;
    const Matrix s = flow_.at(t) * data_;
    Eigen::HouseholderQR<Matrix> qr(s);
    const Matrix q = qr.householderQ() * Matrix::Identity(2 * m_, d_);
    p.sigmas = singular_values_ascending(q.topRows(m_));
    return p;
  }

  // Lagrangian case: with an orthonormal frame (X; Y) the matrix
  // U = X + iY is unitary and dim ker X = dim ker(U U^T + I). Returns the
  // angles arg(-lambda) in (-pi, pi] of the eigenvalues of U U^T; zeros of
  // the subspace are the times where some angle passes through 0.
  std::vector<double> phases(double t) const {
    const Matrix s = flow_.at(t) * data_;
    Eigen::HouseholderQR<Matrix> qr(s);
    const Matrix q = qr.householderQ() * Matrix::Identity(2 * m_, d_);
    const Eigen::MatrixXcd u = q.topRows(m_).cast<std::complex<double>>() +
                               std::complex<double>(0.0, 1.0) * q.bottomRows(m_);
    const Eigen::MatrixXcd w = u * u.transpose();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(w, false);
    std::vector<double> out(m_);
    for (int j = 0; j < m_; ++j) out[j] = std::arg(-es.eigenvalues()(j));
    return out;
  }

  // Coefficients c (in W's basis) with value-block(S(t)) c = 0.
  Matrix kernel(double t, int count) const {
    const Matrix s = flow_.at(t) * data_;
    Eigen::HouseholderQR<Matrix> qr(s);
    const Matrix q = qr.householderQ() * Matrix::Identity(2 * m_, d_);
    const Matrix r = qr.matrixQR().topLeftCorner(d_, d_).triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<Matrix> svd(q.topRows(m_), Eigen::ComputeFullV);
    const Matrix qk = svd.matrixV().rightCols(count);
    const Matrix c = r.triangularView<Eigen::Upper>().solve(qk);
    return orthonormal_columns(c);
  }

 private:
  const FundamentalSolution& flow_;
  int m_;
  int d_;
  Matrix data_;
};

struct Candidate {
  double time;
  int multiplicity;
  double lo;
  double hi;
};

template <class F>
double golden_minimize(F&& f, double a, double b, double tol) {
  constexpr double g = 0.6180339887498949;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  double best = 0.5 * (a + b);
  double fbest = f(best);
  for (double t : {a, b}) {
    const double v = f(t);
    if (v < fbest) {
      fbest = v;
      best = t;
    }
  }
  return best;
}

class Scanner {
 public:
  /// `speed` bounds how fast the eigenvalue angles of U U^T move:
  /// 2 max(1, |R|) for the Jacobi flow.
  Scanner(const Evaluator& ev, const IndexOptions& opt, double speed,
          std::vector<std::string>& warnings)
      : ev_(ev), opt_(opt), speed_(speed), warnings_(warnings) {}

  std::vector<Candidate> scan(double lo, double hi, double step, int depth) {
    const int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / step)));
    std::vector<double> t(n + 1);
    std::vector<Probe> p(n + 1);
    for (int i = 0; i <= n; ++i) {
      t[i] = (i == n) ? hi : lo + (hi - lo) * i / n;
      p[i] = ev_.probe(t[i]);
    }
    std::vector<Candidate> found;
    for (int i = 0; i <= n; ++i) {
      const double fi = p[i].sigma_min();
      if (fi > kCandidateCeiling) continue;
      if (i > 0 && fi > p[i - 1].sigma_min()) continue;
      if (i < n && fi > p[i + 1].sigma_min()) continue;
      const double a = t[std::max(i - 1, 0)];
      const double b = t[std::min(i + 1, n)];
      if (auto c = refine(a, b)) found.push_back(*c);
    }
    found = merge(std::move(found));
    if (ev_.lagrangian()) found = crossing_pass(t, p, std::move(found), step, depth);
    return found;
  }

 private:
  static constexpr double kCandidateCeiling = 0.5;

  std::optional<Candidate> refine(double a, double b) {
    const auto f = [this](double s) { return ev_.probe(s).sigma_min(); };
    double tol = opt_.refine_tol;
    double t = golden_minimize(f, a, b, tol);
    for (int attempt = 0; attempt < 3; ++attempt) {
      const Probe pr = ev_.probe(t);
      const double upper = opt_.kernel_tol * opt_.ambiguity_factor;
      if (pr.sigma_min() >= upper) return std::nullopt;
      int mult = 0;
      bool ambiguous = false;
      for (Eigen::Index k = 0; k < pr.sigmas.size(); ++k) {
        const double s = pr.sigmas(k);
        if (s < opt_.kernel_tol) {
          ++mult;
        } else if (s < upper) {
          ambiguous = true;
        }
      }
      if (!ambiguous) {
        if (mult == 0) return std::nullopt;
        return Candidate{t, mult, a, b};
      }
      // Re-refine around t at ten times the precision.
      const double half = 10.0 * tol;
      tol *= 0.1;
      t = golden_minimize(f, std::max(a, t - half), std::min(b, t + half), tol);
    }
    std::ostringstream os;
    os << "zero_times: ambiguous kernel dimension near t = " << t;
    throw ConditioningError(os.str());
  }

  std::vector<Candidate> merge(std::vector<Candidate> c) {
    std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.time < y.time; });
    std::vector<Candidate> out;
    for (auto& z : c) {
      if (!out.empty() && z.time - out.back().time < 10.0 * opt_.refine_tol) {
        if (z.lo >= out.back().hi) {
          std::ostringstream os;
          os << "clustered zeros near t = " << z.time;
          warnings_.push_back(os.str());
        }
        out.back().multiplicity = std::max(out.back().multiplicity, z.multiplicity);
        out.back().hi = std::max(out.back().hi, z.hi);
        continue;
      }
      out.push_back(z);
    }
    return out;
  }

  // Net number of eigenvalue angles crossing 0 on (a, b]. On each substep
  // every angle moves by less than mu, so counting the angles inside an arc
  // (0, edge) whose far edge stays mu away from all of them captures exactly
  // the crossings at 0. Crossings are clockwise for the Jacobi flow.
  int crossings(double a, double b) const {
    const int m = ev_.dim();
    const double mu = 0.9 * std::numbers::pi / (2 * m + 1);
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) * speed_ / mu)));
    const auto inside = [](const std::vector<double>& ph, double edge) {
      int c = 0;
      for (double x : ph) c += (x > 0.0 && x < edge) ? 1 : 0;
      return c;
    };
    int total = 0;
    std::vector<double> cur = ev_.phases(a);
    for (int i = 1; i <= n; ++i) {
      const double t = (i == n) ? b : a + (b - a) * i / n;
      std::vector<double> next = ev_.phases(t);
      // Far edge of the arc: the candidate farthest from the current angles.
      double edge = 0.5 * std::numbers::pi;
      double best = -1.0;
      for (int c = 0; c <= 64; ++c) {
        const double e = mu + (std::numbers::pi - 2.0 * mu) * c / 64.0;
        double gap = std::numeric_limits<double>::infinity();
        for (double x : cur) gap = std::min(gap, std::abs(x - e));
        if (gap > best) {
          best = gap;
          edge = e;
        }
      }
      total += inside(cur, edge) - inside(next, edge);
      cur = std::move(next);
    }
    return total;
  }

  // Between consecutive grid points well away from zeros, the number of
  // zeros found must equal the crossing count; otherwise rescan finer.
  std::vector<Candidate> crossing_pass(const std::vector<double>& t, const std::vector<Probe>& p,
                                       std::vector<Candidate> zeros, double step, int depth) {
    constexpr double kSafe = 1e-6;
    int prev = -1;
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
      if (p[i].sigma_min() <= kSafe) continue;
      if (prev >= 0) {
        const double a = t[prev];
        const double b = t[i];
        int found = 0;
        for (const auto& z : zeros) {
          if (z.time > a && z.time < b) found += z.multiplicity;
        }
        const int expected = crossings(a, b);
        if (found != expected) {
          if (depth < opt_.max_rescans) {
            auto local = scan(a, b, step / 8.0, depth + 1);
            std::vector<Candidate> kept;
            for (const auto& z : zeros) {
              if (!(z.time > a && z.time < b)) kept.push_back(z);
            }
            for (const auto& z : local) {
              if (z.time > a && z.time < b) kept.push_back(z);
            }
            zeros = merge(std::move(kept));
          } else {
            std::ostringstream os;
            os << "crossing count " << expected << " differs from " << found << " zeros found on ("
               << a << ", " << b << ")";
            warnings_.push_back(os.str());
          }
        }
      }
      prev = i;
    }
    return zeros;
  }

  const Evaluator& ev_;
  const IndexOptions& opt_;
  double speed_;
  std::vector<std::string>& warnings_;
};

struct Detection {
  std::vector<ZeroEvent> zeros;
  double step = 0.0;
  std::vector<std::string> warnings;
};

Detection detect(const FundamentalSolution& flow, const FieldSubspace& w,
                 const IntervalSpec& interval, const IndexOptions& options) {
  if (!interval.valid()) throw ContractError("index: interval has lo > hi");
  Detection out;
  const Span span = flow.span();
  if (interval.lo < span.lo || interval.hi > span.hi) {
    std::ostringstream os;
    os << "index: interval " << interval.to_string() << " not covered by the flow span [" << span.lo
       << ", " << span.hi << "]";
    throw ContractError(os.str());
  }
  if (w.dim() == 0) return out;
  Evaluator ev(flow, w);
  out.step = effective_scan_step(*flow.system(), interval.lo, interval.hi, options);
  if (interval.lo == interval.hi) {
    const Probe pr = ev.probe(interval.lo);
    int mult = 0;
    for (Eigen::Index k = 0; k < pr.sigmas.size(); ++k) {
      if (pr.sigmas(k) < options.kernel_tol) ++mult;
    }
    if (mult > 0 && interval.include_lo && interval.include_hi) {
      out.zeros.push_back({interval.lo, mult});
    }
    return out;
  }
  const double lo = std::max(span.lo, interval.lo - out.step);
  const double hi = std::min(span.hi, interval.hi + out.step);
  const int samples = std::max(16, static_cast<int>(std::ceil((hi - lo) / 0.05)));
  const double lam = std::max({1.0, max_curvature_eigenvalue(*flow.system(), lo, hi, samples),
                               -min_curvature_eigenvalue(*flow.system(), lo, hi, samples)});
  Scanner scanner(ev, options, 2.0 * lam * 1.25, out.warnings);
  for (const auto& c : scanner.scan(lo, hi, out.step, 0)) {
    double t = c.time;
    if (std::abs(t - interval.lo) <= options.snap_tol) t = interval.lo;
    if (std::abs(t - interval.hi) <= options.snap_tol) t = interval.hi;
    if (interval.contains(t)) out.zeros.push_back({t, c.multiplicity});
  }
  return out;
}

}  // namespace

int IndexReport::count(const IntervalSpec& sub) const {
  int total_in = 0;
  for (const auto& z : zeros) {
    double t = z.time;
    if (std::abs(t - sub.lo) <= snap_tol) t = sub.lo;
    if (std::abs(t - sub.hi) <= snap_tol) t = sub.hi;
    if (sub.contains(t)) total_in += z.multiplicity;
  }
  return total_in;
}

double effective_scan_step(const JacobiSystem& system, double lo, double hi,
                           const IndexOptions& options) {
  if (options.scan_step > 0.0) return options.scan_step;
  const int samples = std::max(16, static_cast<int>(std::ceil((hi - lo) / 0.05)));
  const double lambda = std::max(0.0, max_curvature_eigenvalue(system, lo, hi, samples));
  return 0.1 / std::sqrt(1.0 + lambda);
}

double sigma_min(const FundamentalSolution& flow, const FieldSubspace& w, double t) {
  return Evaluator(flow, w).probe(t).sigma_min();
}

int index_at_time(const FundamentalSolution& flow, const FieldSubspace& w, double t,
                  const IndexOptions& options) {
  const Probe pr = Evaluator(flow, w).probe(t);
  int mult = 0;
  for (Eigen::Index k = 0; k < pr.sigmas.size(); ++k) {
    const double s = pr.sigmas(k);
    if (s < options.kernel_tol) {
      ++mult;
    } else if (s < options.kernel_tol * options.ambiguity_factor) {
      std::ostringstream os;
      os << "index_at_time: singular value " << s << " at t = " << t << " inside ambiguity band";
      throw ConditioningError(os.str());
    }
  }
  return mult;
}

Matrix kernel_at(const FundamentalSolution& flow, const FieldSubspace& w, double t,
                 const IndexOptions& options) {
  const int k = index_at_time(flow, w, t, options);
  if (k == 0) return Matrix(w.dim(), 0);
  return Evaluator(flow, w).kernel(t, k);
}

std::vector<ZeroEvent> zero_times(const FundamentalSolution& flow, const FieldSubspace& w,
                                  const IntervalSpec& interval, const IndexOptions& options) {
  return detect(flow, w, interval, options).zeros;
}

IndexReport index_on_interval(const FundamentalSolution& flow, const FieldSubspace& w,
                              const IntervalSpec& interval, const IndexOptions& options) {
  Detection d = detect(flow, w, interval, options);
  IndexReport report;
  report.subspace_id = w.id();
  report.interval = interval;
  report.zeros = std::move(d.zeros);
  report.scan_step = d.step;
  report.refine_tol = options.refine_tol;
  report.snap_tol = options.snap_tol;
  report.warnings = std::move(d.warnings);
  for (const auto& z : report.zeros) report.total += z.multiplicity;
  return report;
}

std::optional<double> first_conjugate_time(const FundamentalSolution& flow, double a,
                                           double horizon, const IndexOptions& options) {
  const FieldSubspace la = vanishing_lagrangian(flow.system(), a);
  const auto zeros = zero_times(flow, la, IntervalSpec::left_open(a, a + horizon), options);
  if (zeros.empty()) return std::nullopt;
  return zeros.front().time;
}

std::optional<double> first_conjugate_time(const SystemPtr& system, double a, double horizon,
                                           const IndexOptions& options) {
  const FundamentalSolution flow(system, a, {a, a + horizon + 0.5});
  return first_conjugate_time(flow, a, horizon, options);
}

std::optional<double> conjugate_radius(const SystemPtr& system, const std::vector<double>& bases,
                                       double horizon, const IndexOptions& options) {
  std::optional<double> best;
  for (double a : bases) {
    if (auto t = first_conjugate_time(system, a, horizon, options)) {
      const double gap = *t - a;
      if (!best || gap < *best) best = gap;
    }
  }
  return best;
}

}  // namespace jacobi
