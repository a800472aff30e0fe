#include "jacobi/frame.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "jacobi/errors.hpp"

namespace jacobi {
namespace {

DenseFlow::Rhs transport_rhs(const ProjectorPath& path) {
  return [path](double t, const Matrix& f, Matrix& df) { df.noalias() = path(t).derivative * f; };
}

Matrix range_basis(const Matrix& projector, int expected_rank) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(projector));
  const auto n = projector.rows();
  return es.eigenvectors().rightCols(expected_rank).leftCols(std::min<Eigen::Index>(expected_rank, n));
}

}  // namespace

ParallelFrame::ParallelFrame(ProjectorPath path, Span span, double start, const Matrix& initial,
                             FrameOptions options)
    : path_(std::move(path)),
      rank_(static_cast<int>(initial.cols())),
      ambient_(static_cast<int>(initial.rows())),
      flow_(transport_rhs(path_), start, initial, span, options.integrator) {}

Matrix ParallelFrame::at(double t) const { return flow_(t); }

Matrix ParallelFrame::derivative(double t) const { return path_(t).derivative * flow_(t); }

double ParallelFrame::orthonormality_defect(double t) const {
  if (rank_ == 0) return 0.0;
  const Matrix f = at(t);
  return (f.transpose() * f - Matrix::Identity(rank_, rank_)).cwiseAbs().maxCoeff();
}

double ParallelFrame::parallelism_defect(double t, double /*h*/) const {
  if (rank_ == 0) return 0.0;
  const Matrix df = flow_.derivative(t);
  return (path_(t).projector * df).cwiseAbs().maxCoeff();
}

double ParallelFrame::containment_defect(double t) const {
  if (rank_ == 0) return 0.0;
  const Matrix f = at(t);
  return (f - path_(t).projector * f).cwiseAbs().maxCoeff();
}

ParallelFrame parallel_frame(ProjectorPath path, Span span, double start, FrameOptions options) {
  if (!span.contains(start)) throw ContractError("parallel_frame: start outside span");
  const ProjectorSample s0 = path(start);
  const double trace0 = s0.projector.trace();
  const int rank = static_cast<int>(std::lround(trace0));
  if (std::abs(trace0 - rank) > options.rank_tol) {
    throw RankJumpError("parallel_frame: projector trace is not an integer", start);
  }
  // Probe for rank jumps: the trace must stay at `rank` and consecutive
  // projectors must move no faster than their derivative allows.
  const int steps = std::max(1, static_cast<int>(std::ceil(span.length() / options.probe_step)));
  const double h = span.length() / steps;
  ProjectorSample prev = path(span.lo);
  for (int i = 0; i <= steps; ++i) {
    const double t = span.lo + h * i;
    const ProjectorSample cur = (i == 0) ? prev : path(t);
    if (std::abs(cur.projector.trace() - rank) > options.rank_tol) {
      throw RankJumpError("parallel_frame: subspace rank changes", t);
    }
    if (i > 0) {
      const double jump = (cur.projector - prev.projector).norm();
      const double allowed =
          0.5 * h * (cur.derivative.norm() + prev.derivative.norm()) * 1.5 + 1e-6;
      if (jump > allowed) {
        std::ostringstream os;
        os << "parallel_frame: projector discontinuity " << jump;
        throw RankJumpError(os.str(), t);
      }
    }
    prev = cur;
  }
  const Matrix initial = range_basis(s0.projector, rank);
  return ParallelFrame(std::move(path), span, start, initial, options);
}

ParallelFrame parallel_frame_from_basis(std::function<Matrix(double)> spanning, Span span,
                                        double start, FrameOptions options) {
  const auto projector_at = [spanning](double t, int expected) -> Matrix {
    const Matrix g = spanning(t);
    if (g.cols() == 0) return Matrix::Zero(g.rows(), g.rows());
    Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeThinU);
    const Vector& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > 1e-8 * s(0)) ++rank;
    }
    if (expected >= 0 && rank != expected) throw RankJumpError("spanning set changes rank", t);
    const Matrix u = svd.matrixU().leftCols(rank);
    return u * u.transpose();
  };
  const int rank = static_cast<int>(std::lround(projector_at(start, -1).trace()));
  constexpr double h = 1e-3;
  ProjectorPath path = [projector_at, rank](double t) {
    ProjectorSample s;
    s.projector = projector_at(t, rank);
    s.derivative = (-projector_at(t + 2 * h, rank) + 8.0 * projector_at(t + h, rank) -
                    8.0 * projector_at(t - h, rank) + projector_at(t - 2 * h, rank)) /
                   (12.0 * h);
    return s;
  };
  return parallel_frame(std::move(path), span, start, options);
}

}  // namespace jacobi
