#pragma once

#include <functional>
#include <memory>

#include "jacobi/integrator.hpp"

namespace jacobi {

/// Orthogonal projector onto a moving subspace and its time derivative.
struct ProjectorSample {
  Matrix projector;
  Matrix derivative;
};

using ProjectorPath = std::function<ProjectorSample(double)>;

struct FrameOptions {
  IntegratorOptions integrator{};
  /// Rank-jump detection: grid step for sampling the path before integrating.
  double probe_step = 0.02;
  /// Tolerance on |trace(P) - rank| at probe points.
  double rank_tol = 1e-6;
};

/// An orthonormal frame of H(t) that is parallel for X -> (X')^h, i.e. it
/// solves F' = P'(t) F. Identifies sections of H with maps into R^rank.
class ParallelFrame {
 public:
  ParallelFrame(ProjectorPath path, Span span, double start, const Matrix& initial,
                FrameOptions options = {});

  int rank() const noexcept { return rank_; }
  int ambient_dim() const noexcept { return ambient_; }
  Span span() const noexcept { return flow_.span(); }
  double start() const noexcept { return flow_.start(); }

  /// m x rank frame at t.
  Matrix at(double t) const;
  /// F'(t) = P'(t) F(t).
  Matrix derivative(double t) const;
  const ProjectorPath& path() const noexcept { return path_; }

  /// ||F^T F - I||_max.
  double orthonormality_defect(double t) const;
  /// ||P(t) F'(t)||_max where F' is taken from the dense output by a
  /// centred difference; zero for an exactly parallel frame.
  double parallelism_defect(double t, double h = 1e-4) const;
  /// ||(I - P(t)) F(t)||_max.
  double containment_defect(double t) const;

 private:
  ProjectorPath path_;
  int rank_;
  int ambient_;
  DenseFlow flow_;
};

/// Parallel frame of a path given with its derivative. The initial frame is
/// any orthonormal basis of range P(start). Rank jumps are detected on a probe
/// grid and raise RankJumpError.
ParallelFrame parallel_frame(ProjectorPath path, Span span, double start, FrameOptions options = {});

/// Convenience for paths given by a spanning-set function; the projector is
/// built by QR and differentiated by a fourth-order centred difference.
ParallelFrame parallel_frame_from_basis(std::function<Matrix(double)> spanning, Span span,
                                        double start, FrameOptions options = {});

}  // namespace jacobi
