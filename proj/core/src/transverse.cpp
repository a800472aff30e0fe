#include "jacobi/transverse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "jacobi/errors.hpp"

namespace jacobi {
namespace {

// Golub–Welsch nodes and weights on [0, 1].
void gauss_legendre(int n, Vector& nodes, Vector& weights) {
  Matrix jac = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = b;
    jac(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(jac);
  nodes = (es.eigenvalues().array() + 1.0) * 0.5;
  weights = es.eigenvectors().row(0).transpose().array().square();  // sums to 1 on [0, 1]
}

Matrix data_at_anchor(const FundamentalSolution& flow, const FieldSubspace& w) {
  if (w.anchor() == flow.anchor()) return w.basis();
  return flow.at(w.anchor()).partialPivLu().solve(w.basis());
}

}  // namespace

// ---------------------------------------------------------------- WbarPath

WbarPath::WbarPath(FlowPtr flow, FieldSubspace w, Span span, const TransverseOptions& options)
    : flow_(std::move(flow)), w_(std::move(w)), span_(span), options_(options) {
  if (!flow_) throw ContractError("WbarPath: null flow");
  if (flow_->system() != w_.system()) throw ContractError("WbarPath: W belongs to another system");
  const Span fs = flow_->span();
  if (span.lo < fs.lo || span.hi > fs.hi) throw ContractError("WbarPath: span not covered by flow");
  if (w_.kind() == SubspaceKind::generic) {
    throw ContractError("WbarPath: W must be isotropic");
  }
  gauss_legendre(options_.quadrature_nodes, nodes_, weights_);
  if (w_.dim() == 0) return;
  const double lo = std::max(fs.lo, span.lo - options_.window_radius);
  const double hi = std::min(fs.hi, span.hi + options_.window_radius);
  for (const auto& z : zero_times(*flow_, w_, IntervalSpec::closed(lo, hi), options_.index)) {
    zeros_.push_back({z.time, kernel_at(*flow_, w_, z.time, options_.index), options_.window_radius});
  }
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    if (i > 0) {
      zeros_[i].radius = std::min(zeros_[i].radius, 0.45 * (zeros_[i].time - zeros_[i - 1].time));
    }
    if (i + 1 < zeros_.size()) {
      zeros_[i].radius = std::min(zeros_[i].radius, 0.45 * (zeros_[i + 1].time - zeros_[i].time));
    }
  }
}

std::pair<Matrix, Matrix> WbarPath::spanning(double t) const {
  const int m = w_.ambient_dim();
  const int d = w_.dim();
  if (d == 0) return {Matrix(m, 0), Matrix(m, 0)};
  // Recomputed per call so the path stays a pure function of t.
  const Matrix x0 = data_at_anchor(*flow_, w_);
  const Matrix s = flow_->at(t) * x0;
  const KernelEvent* ev = nullptr;
  for (const auto& z : zeros_) {
    if (std::abs(t - z.time) <= z.radius) ev = &z;
  }
  if (ev == nullptr) return {s.topRows(m), s.bottomRows(m)};

  // Inside a window: fields of the kernel are replaced by the divided
  // difference g(t) = (J(t) - J(t*)) / (t - t*) = int_0^1 J'(t* + th s) dth,
  // g'(t) = -int_0^1 th R(.) J(.) dth.
  const int k = static_cast<int>(ev->kernel.cols());
  const Matrix rest = orthogonal_complement(ev->kernel);
  Matrix g(m, d);
  Matrix dg(m, d);
  const Matrix sr = s * rest;
  g.leftCols(d - k) = sr.topRows(m);
  dg.leftCols(d - k) = sr.bottomRows(m);
  const double ds = t - ev->time;
  Matrix gk = Matrix::Zero(m, k);
  Matrix dgk = Matrix::Zero(m, k);
  const Matrix xk = x0 * ev->kernel;
  for (Eigen::Index q = 0; q < nodes_.size(); ++q) {
    const double th = nodes_(q);
    const double tau = ev->time + th * ds;
    const Matrix st = flow_->at(tau) * xk;
    gk += weights_(q) * st.bottomRows(m);
    dgk -= weights_(q) * th * (flow_->system()->curvature(tau) * st.topRows(m));
  }
  g.rightCols(k) = gk;
  dg.rightCols(k) = dgk;
  return {g, dg};
}

ProjectorSample WbarPath::projector(double t) const {
  const int m = w_.ambient_dim();
  const auto [g, dg] = spanning(t);
  ProjectorSample out;
  if (g.cols() == 0) {
    out.projector = Matrix::Zero(m, m);
    out.derivative = Matrix::Zero(m, m);
    return out;
  }
  const int d = static_cast<int>(g.cols());
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = qr.householderQ() * Matrix::Identity(m, d);
  const Matrix r = qr.matrixQR().topLeftCorner(d, d).triangularView<Eigen::Upper>();
  const Vector diag = r.diagonal().cwiseAbs();
  if (diag.minCoeff() < options_.degenerate_tol * diag.maxCoeff()) {
    throw RankJumpError("Wbar: spanning set is degenerate", t);
  }
  out.projector = q * q.transpose();
  // P' = (I - P) G' R^{-1} Q^T + transpose.
  const Matrix grq =
      r.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(dg) * q.transpose();
  const Matrix half = grq - out.projector * grq;
  out.derivative = half + half.transpose();
  return out;
}

Matrix WbarPath::basis(double t) const {
  const Matrix g = spanning(t).first;
  if (g.cols() == 0) return g;
  return orthonormal_columns(g);
}

ProjectorSample WbarPath::horizontal_projector(double t) const {
  ProjectorSample s = projector(t);
  const auto m = s.projector.rows();
  s.projector = Matrix::Identity(m, m) - s.projector;
  s.derivative = -s.derivative;
  return s;
}

Matrix wbar_basis(const FlowPtr& flow, const FieldSubspace& w, double t,
                  const TransverseOptions& options) {
  const Span fs = flow->span();
  if (!fs.contains(t)) throw ContractError("wbar_basis: t outside the flow span");
  const double r = options.window_radius;
  const Span local{std::max(fs.lo, t - r), std::min(fs.hi, t + r)};
  return WbarPath(flow, w, local, options).basis(t);
}

double AOperator::norm() const {
  if (matrix.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(matrix).singularValues()(0);
}

namespace {

AOperator build_a_operator(const WbarPath& path, double t, const Matrix* frame) {
  const auto& flow = *path.flow();
  const auto& w = path.subspace();
  const int m = w.ambient_dim();
  AOperator a;
  const ProjectorSample p = path.projector(t);
  a.wbar_basis = path.basis(t);
  a.horizontal_basis = frame ? *frame : orthogonal_complement(a.wbar_basis);
  a.matrix = a.horizontal_basis.transpose() * p.derivative * a.wbar_basis;
  if (w.dim() > 0) {
    const Matrix s = orthonormal_columns(flow.at(t) * data_at_anchor(flow, w));
    const Matrix ph = Matrix::Identity(m, m) - p.projector;
    const Matrix lhs = ph * s.bottomRows(m);
    const Matrix rhs = ph * p.derivative * s.topRows(m);
    a.residual = (lhs - rhs).colwise().norm().maxCoeff();
  }
  return a;
}

}  // namespace

AOperator a_operator(const FlowPtr& flow, const FieldSubspace& w, double t,
                     const TransverseOptions& options) {
  const Span fs = flow->span();
  const double r = options.window_radius;
  const WbarPath path(flow, w, {std::max(fs.lo, t - r), std::min(fs.hi, t + r)}, options);
  AOperator a = build_a_operator(path, t, nullptr);
  if (a.residual > options.consistency_tol) {
    std::ostringstream os;
    os << "a_operator: well-definedness residual " << a.residual << " at t = " << t;
    throw ConsistencyError(os.str());
  }
  return a;
}

// Frame and reduced flow see P'^2, which is large when W nearly degenerates
// without vanishing, so they run tighter than the parent flow.
namespace {
IntegratorOptions derived_integrator(const TransverseOptions& options) {
  IntegratorOptions io = options.integrator;
  io.rel_tol = std::max(io.rel_tol * options.derived_tol_factor, 1e-13);
  io.abs_tol = std::max(io.abs_tol * options.derived_tol_factor, 1e-15);
  return io;
}
}  // namespace

ParallelFrame horizontal_frame(const FlowPtr& flow, const FieldSubspace& w, Span span,
                               double start, const TransverseOptions& options) {
  auto path = std::make_shared<const WbarPath>(flow, w, span, options);
  FrameOptions fo;
  fo.integrator = derived_integrator(options);
  return parallel_frame([path](double t) { return path->horizontal_projector(t); }, span, start,
                        fo);
}

// -------------------------------------------------------- TransverseSystem

TransverseSystem::TransverseSystem(FlowPtr parent, FieldSubspace w, Span span, double frame_start,
                                   TransverseOptions options)
    : options_(options) {
  // P' amplifies flow error by 1/sigma_min(W)^2, so Wbar is traced on a
  // re-integration of the parent at the derived tolerances.
  const IntegratorOptions io = derived_integrator(options);
  FlowPtr tracer = parent;
  if (io.rel_tol < parent->options().rel_tol) {
    tracer = FundamentalSolution::make(parent->system(), parent->anchor(), parent->span(), io);
  }
  auto path = std::make_shared<const WbarPath>(tracer, w, span, options);
  if (w.dim() >= w.ambient_dim()) {
    throw ContractError("transverse_system: W is Lagrangian, the reduced space is zero");
  }
  FrameOptions fo;
  fo.integrator = derived_integrator(options);
  ParallelFrame frame = parallel_frame(
      [path](double t) { return path->horizontal_projector(t); }, span, frame_start, fo);
  state_ = std::make_shared<const State>(*path, span, std::move(frame));

  const auto st = state_;
  const int r = st->frame.rank();
  reduced_ = JacobiSystem::closed_form(r, [st](double t) -> Matrix {
    const Matrix f = st->frame.at(t);
    const Matrix dp = st->path.projector(t).derivative;
    const Matrix full = st->path.flow()->system()->curvature(t) + 3.0 * dp * dp;
    return symmetrized(f.transpose() * full * f);
  });
  reduced_flow_ = FundamentalSolution::make(reduced_, frame_start, span, derived_integrator(options));
}

Matrix TransverseSystem::reduced_curvature(double t) const { return reduced_->curvature(t); }

AOperator TransverseSystem::a_operator(double t) const {
  const Matrix f = state_->frame.at(t);
  AOperator a = build_a_operator(state_->path, t, &f);
  if (a.residual > options_.consistency_tol) {
    std::ostringstream os;
    os << "a_operator: well-definedness residual " << a.residual << " at t = " << t;
    throw ConsistencyError(os.str());
  }
  return a;
}

double TransverseSystem::a_norm(double t) const {
  const Matrix f = state_->frame.at(t);
  return build_a_operator(state_->path, t, &f).norm();
}

double TransverseSystem::curvature_gain(double t) const {
  const Matrix f = state_->frame.at(t);
  const Matrix base = f.transpose() * parent()->system()->curvature(t) * f;
  const Matrix gain = symmetrized(reduced_curvature(t) - base);
  Eigen::SelfAdjointEigenSolver<Matrix> es(gain, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Vector TransverseSystem::project_state(const Vector& state, double t) const {
  const auto m = state.size() / 2;
  const Matrix f = state_->frame.at(t);
  const Matrix df = state_->frame.derivative(t);
  Vector out(2 * f.cols());
  out.head(f.cols()) = f.transpose() * state.head(m);
  out.tail(f.cols()) = df.transpose() * state.head(m) + f.transpose() * state.tail(m);
  return out;
}

// ------------------------------------------------------------- projection

double projection_residual(const FieldVector& y, const TransverseSystem& tr, int samples) {
  const auto& flow = *tr.parent();
  const Span sp = tr.span();
  const double t0 = tr.frame_start();
  const Vector y_at = flow.transition(y.anchor, t0) * y.stacked();
  const Vector x0 = tr.project_state(y_at, t0);
  const auto r = x0.size() / 2;
  const auto m = y_at.size() / 2;
  const Matrix phi0_inv = flow.at(t0).partialPivLu().inverse();
  double worst = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = sp.lo + sp.length() * i / samples;
    const Vector yt = flow.at(t) * (phi0_inv * y_at);
    const Vector proj = tr.frame().at(t).transpose() * yt.head(m);
    const Vector xt = (tr.reduced_flow()->at(t) * x0).head(r);
    worst = std::max(worst, (proj - xt).cwiseAbs().maxCoeff());
  }
  return worst;
}

FieldSubspace project_subspace(const FieldSubspace& l, const TransverseSystem& tr,
                               double residual_tol) {
  const auto& flow = *tr.parent();
  const FieldSubspace& w = tr.w();
  if (l.system() != w.system()) throw ContractError("project_subspace: L and W differ in system");
  if (!is_lagrangian(l)) throw ContractError("project_subspace: L is not Lagrangian");
  const int d = w.dim();
  if (intersection_dimension(flow, l, w) != d) {
    throw ContractError("project_subspace: W is not contained in L");
  }
  const double t0 = tr.frame_start();
  // Coordinates of W inside L (orthonormal basis of L at L's anchor), then
  // the complementary fields of L, whose projections are independent.
  const Matrix w_at_l = flow.transition(w.anchor(), l.anchor()) * w.basis();
  const Matrix coords = l.basis().transpose() * w_at_l;
  const Matrix rest = d == 0 ? Matrix(Matrix::Identity(l.dim(), l.dim()))
                             : orthogonal_complement(orthonormal_columns(coords));
  const Matrix fields = flow.transition(l.anchor(), t0) * (l.basis() * rest);
  Matrix projected(2 * tr.rank(), fields.cols());
  double worst = 0.0;
  for (Eigen::Index j = 0; j < fields.cols(); ++j) {
    projected.col(j) = tr.project_state(fields.col(j), t0);
    worst = std::max(worst, projection_residual(FieldVector::from_stacked(t0, fields.col(j)), tr) /
                                std::max(1.0, fields.col(j).norm()));
  }
  if (worst > residual_tol) {
    std::ostringstream os;
    os << "project_subspace: projected fields leave the reduced flow (residual " << worst << ")";
    throw ConsistencyError(os.str());
  }
  std::string id = l.id().empty() ? "L" : l.id();
  id += "/" + (w.id().empty() ? std::string("W") : w.id());
  return FieldSubspace::from_matrix(tr.reduced(), t0, projected).with_id(id);
}

}  // namespace jacobi
