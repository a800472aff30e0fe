#include "jacobi/flow.hpp"

#include <sstream>

#include "jacobi/errors.hpp"

namespace jacobi {
namespace {

DenseFlow::Rhs jacobi_rhs(SystemPtr system) {
  const int m = system->dim();
  return [system = std::move(system), m](double t, const Matrix& y, Matrix& dy) {
    const Matrix r = system->curvature(t);
    dy.topRows(m) = y.bottomRows(m);
    dy.bottomRows(m).noalias() = -r * y.topRows(m);
  };
}

void require_same_system(const FundamentalSolution& flow, const FieldSubspace& w) {
  if (flow.system() != w.system()) {
    throw ContractError("flow and subspace belong to different Jacobi systems");
  }
}

}  // namespace

FundamentalSolution::FundamentalSolution(SystemPtr system, double anchor, Span span,
                                         IntegratorOptions options)
    : system_(std::move(system)),
      anchor_(anchor),
      options_(options),
      flow_(jacobi_rhs(system_), anchor, Matrix::Identity(2 * system_->dim(), 2 * system_->dim()),
            span, options) {}

std::shared_ptr<FundamentalSolution> FundamentalSolution::make(SystemPtr system, double anchor,
                                                               Span span,
                                                               IntegratorOptions options) {
  return std::make_shared<FundamentalSolution>(std::move(system), anchor, span, options);
}

Matrix FundamentalSolution::at(double t) const { return flow_(t); }

Matrix FundamentalSolution::transition(double from, double to) const {
  if (from == anchor_) return at(to);
  // Phi^{-1} = -Omega Phi^T Omega for symplectic Phi; LU keeps it exact for
  // the computed (slightly non-symplectic) matrix.
  return at(to) * at(from).partialPivLu().inverse();
}

Matrix FundamentalSolution::generator(double t) const {
  const int m = system_->dim();
  Matrix g = Matrix::Zero(2 * m, 2 * m);
  g.topRightCorner(m, m) = Matrix::Identity(m, m);
  g.bottomLeftCorner(m, m) = -system_->curvature(t);
  return g;
}

double FundamentalSolution::symplectic_defect(double t) const {
  const Matrix phi = at(t);
  const Matrix omega = canonical_form(system_->dim());
  return (phi.transpose() * omega * phi - omega).cwiseAbs().maxCoeff();
}

Matrix state_matrix(const FundamentalSolution& flow, const FieldSubspace& w, double t) {
  require_same_system(flow, w);
  if (w.dim() == 0) return Matrix(2 * w.ambient_dim(), 0);
  if (w.anchor() == flow.anchor()) return flow.at(t) * w.basis();
  return flow.transition(w.anchor(), t) * w.basis();
}

Matrix evaluation_matrix(const FundamentalSolution& flow, const FieldSubspace& w, double t) {
  return state_matrix(flow, w, t).topRows(w.ambient_dim());
}

std::vector<FieldVector> evaluate_fields(const FundamentalSolution& flow, const FieldSubspace& w,
                                         double t) {
  const Matrix s = state_matrix(flow, w, t);
  std::vector<FieldVector> out;
  out.reserve(static_cast<std::size_t>(s.cols()));
  for (Eigen::Index j = 0; j < s.cols(); ++j) out.push_back(FieldVector::from_stacked(t, s.col(j)));
  return out;
}

std::vector<FieldVector> evaluate_fields(FundamentalSolution& flow, const FieldSubspace& w,
                                         double t) {
  const Span s = flow.span();
  if (!s.contains(t)) flow.extend({std::min(s.lo, t), std::max(s.hi, t)});
  return evaluate_fields(static_cast<const FundamentalSolution&>(flow), w, t);
}

FieldVector reanchor(const FundamentalSolution& flow, const FieldVector& x, double t) {
  if (x.dim() != flow.system()->dim()) throw ContractError("reanchor: dimension mismatch");
  return FieldVector::from_stacked(t, flow.transition(x.anchor, t) * x.stacked());
}

FieldSubspace reanchor(const FundamentalSolution& flow, const FieldSubspace& w, double t) {
  require_same_system(flow, w);
  if (w.anchor() == t) return w;
  const Matrix data = flow.transition(w.anchor(), t) * w.basis();
  return FieldSubspace::from_matrix(w.system(), t, data).with_id(w.id());
}

int intersection_dimension(const FundamentalSolution& flow, const FieldSubspace& l1,
                           const FieldSubspace& l2, const RankThresholds& rank) {
  require_same_system(flow, l1);
  require_same_system(flow, l2);
  return intersection_dimension_same_anchor(l1, reanchor(flow, l2, l1.anchor()), rank);
}

}  // namespace jacobi
