#pragma once

#include <memory>
#include <vector>

#include "jacobi/frame.hpp"
#include "jacobi/index.hpp"

namespace jacobi {

struct TransverseOptions {
  IndexOptions index{};
  IntegratorOptions integrator{};
  /// Half-width of the window around a zero of W inside which vanishing
  /// fields are replaced by their divided difference J(t) / (t - t*).
  double window_radius = 0.05;
  /// Factor applied to the integrator tolerances for the horizontal frame
  /// and the reduced flow.
  double derived_tol_factor = 0.01;
  /// Gauss–Legendre nodes for the divided-difference integrals.
  int quadrature_nodes = 8;
  /// Relative smallest singular value of the spanning set of Wbar(t) below
  /// which Wbar is declared degenerate.
  double degenerate_tol = 1e-8;
  /// Tolerance on the A_t well-definedness residual.
  double consistency_tol = 1e-7;
};

/// Zero of W with the coefficient kernel (d x k) of the evaluation map.
struct KernelEvent {
  double time = 0.0;
  Matrix kernel;
  double radius = 0.0;
};

/// Wbar(t) = W(t) + {J'(t) : J in W, J(t) = 0} for an isotropic W, as a
/// smooth projector path over a span.
class WbarPath {
 public:
  WbarPath(FlowPtr flow, FieldSubspace w, Span span, const TransverseOptions& options = {});

  /// m x d spanning set and its derivative; smooth in t.
  std::pair<Matrix, Matrix> spanning(double t) const;
  /// Orthonormal basis of Wbar(t), m x d.
  Matrix basis(double t) const;
  /// Projector onto Wbar(t) and its derivative.
  ProjectorSample projector(double t) const;
  /// Projector onto H(t) = Wbar(t)^⊥ and its derivative.
  ProjectorSample horizontal_projector(double t) const;

  const std::vector<KernelEvent>& zeros() const noexcept { return zeros_; }
  const FieldSubspace& subspace() const noexcept { return w_; }
  const FlowPtr& flow() const noexcept { return flow_; }
  Span span() const noexcept { return span_; }

 private:
  FlowPtr flow_;
  FieldSubspace w_;
  Span span_;
  TransverseOptions options_;
  std::vector<KernelEvent> zeros_;
  Vector nodes_;
  Vector weights_;
};

/// Orthonormal basis of Wbar(t) from a one-off path around t.
Matrix wbar_basis(const FlowPtr& flow, const FieldSubspace& w, double t,
                  const TransverseOptions& options = {});

/// A_t : Wbar(t) -> H(t), A_t(J(t)) = (J'(t))^h, in orthonormal bases.
struct AOperator {
  Matrix wbar_basis;       ///< m x d
  Matrix horizontal_basis; ///< m x (m - d)
  Matrix matrix;           ///< (m - d) x d
  /// max over basis fields of |(J'(t))^h - A_t J(t)| and over kernel fields
  /// of |(J'(t))^h|.
  double residual = 0.0;
  double norm() const;
};

/// Wilking's transverse equation X'' + R^W X = 0 on H(t), in a parallel
/// frame: R^W = F^T (R + 3 (P_Wbar')^2) F.
class TransverseSystem {
 public:
  /// The parent flow must cover `span` plus the window radius. `frame_start`
  /// anchors the parallel frame and the reduced flow.
  TransverseSystem(FlowPtr parent, FieldSubspace w, Span span, double frame_start,
                   TransverseOptions options = {});

  const FlowPtr& parent() const noexcept { return state_->path.flow(); }
  const FieldSubspace& w() const noexcept { return state_->path.subspace(); }
  int rank() const noexcept { return state_->frame.rank(); }
  Span span() const noexcept { return state_->span; }
  double frame_start() const noexcept { return state_->frame.start(); }

  const SystemPtr& reduced() const noexcept { return reduced_; }
  /// Fundamental solution of the reduced system over the span.
  const FlowPtr& reduced_flow() const noexcept { return reduced_flow_; }
  const ParallelFrame& frame() const noexcept { return state_->frame; }
  const WbarPath& wbar() const noexcept { return state_->path; }

  Matrix reduced_curvature(double t) const;
  /// Operator norm of A_t.
  double a_norm(double t) const;
  AOperator a_operator(double t) const;
  /// min over unit v in H(t) of <R^W v, v> - <R v, v> (should be >= 0).
  double curvature_gain(double t) const;

  /// Horizontal part of a field state (value; derivative) at t, in frame
  /// coordinates: (F^T J, (F^T J)').
  Vector project_state(const Vector& state, double t) const;

 private:
  struct State {
    State(WbarPath p, Span s, ParallelFrame f) : path(std::move(p)), span(s), frame(std::move(f)) {}
    WbarPath path;
    Span span;
    ParallelFrame frame;
  };
  std::shared_ptr<const State> state_;
  SystemPtr reduced_;
  FlowPtr reduced_flow_;
  TransverseOptions options_;
};

/// Horizontal frame of W over a span (parallel frame of H = Wbar^⊥).
ParallelFrame horizontal_frame(const FlowPtr& flow, const FieldSubspace& w, Span span,
                               double start, const TransverseOptions& options = {});

AOperator a_operator(const FlowPtr& flow, const FieldSubspace& w, double t,
                     const TransverseOptions& options = {});

/// L/W: the Lagrangian of the reduced system obtained by projecting the
/// fields of L (which must contain W) onto H. Anchored at the frame start.
/// Each projected field is checked against the reduced flow on samples.
FieldSubspace project_subspace(const FieldSubspace& l, const TransverseSystem& t,
                               double residual_tol = 1e-7);

/// sup over samples of |F^T Y(t) - x(t)| where x solves the reduced equation
/// with Y's projected data. Y must be omega-orthogonal to W.
double projection_residual(const FieldVector& y, const TransverseSystem& t, int samples = 32);

}  // namespace jacobi
