#pragma once

#include <string>
#include <vector>

#include "jacobi/system.hpp"

namespace jacobi {

/// One Jacobi field, given by its value and derivative at an anchor time.
struct FieldVector {
  double anchor = 0.0;
  Vector value;
  Vector derivative;

  int dim() const noexcept { return static_cast<int>(value.size()); }
  /// value stacked over derivative, a 2m-vector.
  Vector stacked() const;
  static FieldVector from_stacked(double anchor, const Vector& state);
  bool is_zero() const;
};

/// omega(x, y) = <x, y'> - <x', y>. Anchors and dimensions must agree.
double symplectic_form(const FieldVector& x, const FieldVector& y);

enum class SubspaceKind { generic, isotropic, lagrangian };
const char* to_string(SubspaceKind kind);

/// Tolerances for certifying subspaces. Bases are orthonormal in R^{2m}, so
/// the symplectic tolerance is already relative to the basis scale.
struct SubspaceTolerances {
  double symplectic = 1e-9;
  RankThresholds rank{};
};

/// A subspace of Jac^R, stored as an orthonormal 2m x d basis of initial
/// data at a common anchor. Classification is certified on construction.
class FieldSubspace {
 public:
  FieldSubspace(SystemPtr system, double anchor, const std::vector<FieldVector>& spanning,
                const SubspaceTolerances& tol = {});
  /// Columns of `spanning` are stacked (value, derivative) initial data.
  static FieldSubspace from_matrix(SystemPtr system, double anchor, const Matrix& spanning,
                                   const SubspaceTolerances& tol = {});

  const SystemPtr& system() const noexcept { return system_; }
  double anchor() const noexcept { return anchor_; }
  int dim() const noexcept { return static_cast<int>(basis_.cols()); }
  int ambient_dim() const noexcept { return system_->dim(); }
  SubspaceKind kind() const noexcept { return kind_; }
  const Matrix& basis() const noexcept { return basis_; }
  FieldVector field(int i) const;
  /// Largest |omega| over basis pairs, recorded at classification time.
  double max_symplectic_pairing() const noexcept { return max_pairing_; }
  const std::string& id() const noexcept { return id_; }
  FieldSubspace with_id(std::string id) const;

 private:
  FieldSubspace() = default;
  void certify(const Matrix& spanning, const SubspaceTolerances& tol);

  SystemPtr system_;
  double anchor_ = 0.0;
  Matrix basis_;
  SubspaceKind kind_ = SubspaceKind::generic;
  double max_pairing_ = 0.0;
  std::string id_;
};

struct IsotropyWitness {
  bool isotropic = false;
  int i = -1;
  int j = -1;
  double pairing = 0.0;  ///< |omega(b_i, b_j)| of the worst pair
};

IsotropyWitness is_isotropic(const FieldSubspace& w, double tol = 1e-9);
bool is_lagrangian(const FieldSubspace& l, double tol = 1e-9);

/// L_a: fields vanishing at a, basis (0, e_i) anchored at a.
FieldSubspace vanishing_lagrangian(const SystemPtr& system, double a);

/// dim(L1 ∩ L2) for subspaces anchored at the same time, by banded rank of
/// the stacked bases. Re-anchoring lives with the flow (see flow.hpp).
int intersection_dimension_same_anchor(const FieldSubspace& l1, const FieldSubspace& l2,
                                       const RankThresholds& rank = {});

}  // namespace jacobi
