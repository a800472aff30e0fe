#include "jacobi/field_space.hpp"

#include <cmath>
#include <sstream>

#include "jacobi/errors.hpp"

namespace jacobi {

Vector FieldVector::stacked() const {
  Vector s(2 * dim());
  s << value, derivative;
  return s;
}

FieldVector FieldVector::from_stacked(double anchor, const Vector& state) {
  const auto m = state.size() / 2;
  return FieldVector{anchor, state.head(m), state.tail(m)};
}

bool FieldVector::is_zero() const { return value.isZero(0.0) && derivative.isZero(0.0); }

double symplectic_form(const FieldVector& x, const FieldVector& y) {
  if (x.value.size() != y.value.size() || x.derivative.size() != x.value.size() ||
      y.derivative.size() != y.value.size()) {
    throw ContractError("symplectic_form: fields belong to systems of different dimension");
  }
  if (x.anchor != y.anchor) {
    std::ostringstream os;
    os << "symplectic_form: anchors differ (" << x.anchor << " vs " << y.anchor << ")";
    throw ContractError(os.str());
  }
  return x.value.dot(y.derivative) - x.derivative.dot(y.value);
}

const char* to_string(SubspaceKind kind) {
  switch (kind) {
    case SubspaceKind::generic: return "generic";
    case SubspaceKind::isotropic: return "isotropic";
    case SubspaceKind::lagrangian: return "lagrangian";
  }
  return "?";
}

FieldSubspace::FieldSubspace(SystemPtr system, double anchor,
                             const std::vector<FieldVector>& spanning,
                             const SubspaceTolerances& tol)
    : system_(std::move(system)), anchor_(anchor) {
  if (!system_) throw ContractError("FieldSubspace: null system");
  const int m = system_->dim();
  Matrix cols(2 * m, static_cast<Eigen::Index>(spanning.size()));
  for (std::size_t i = 0; i < spanning.size(); ++i) {
    const auto& f = spanning[i];
    if (f.dim() != m || f.derivative.size() != m) {
      throw ContractError("FieldSubspace: field dimension does not match the system");
    }
    if (f.anchor != anchor) throw ContractError("FieldSubspace: fields must share the anchor time");
    cols.col(static_cast<Eigen::Index>(i)) = f.stacked();
  }
  certify(cols, tol);
}

FieldSubspace FieldSubspace::from_matrix(SystemPtr system, double anchor, const Matrix& spanning,
                                         const SubspaceTolerances& tol) {
  if (!system) throw ContractError("FieldSubspace: null system");
  if (spanning.rows() != 2 * system->dim()) {
    throw ContractError("FieldSubspace: spanning matrix must have 2m rows");
  }
  FieldSubspace s;
  s.system_ = std::move(system);
  s.anchor_ = anchor;
  s.certify(spanning, tol);
  return s;
}

void FieldSubspace::certify(const Matrix& spanning, const SubspaceTolerances& tol) {
  const int m = system_->dim();
  if (!spanning.allFinite()) throw ContractError("FieldSubspace: non-finite initial data");
  for (Eigen::Index j = 0; j < spanning.cols(); ++j) {
    if (spanning.col(j).isZero(0.0)) {
      throw ContractError("FieldSubspace: the zero field cannot be a spanning element");
    }
  }
  if (spanning.cols() > 2 * m) throw ContractError("FieldSubspace: more than 2m spanning fields");
  if (spanning.cols() > 0) {
    // Scale columns first so the rank test measures independence, not size.
    Matrix normalized = spanning;
    for (Eigen::Index j = 0; j < normalized.cols(); ++j) normalized.col(j).normalize();
    const int rank = banded_rank(normalized, tol.rank, "FieldSubspace basis");
    if (rank < spanning.cols()) {
      throw ConditioningError("FieldSubspace: spanning fields are linearly dependent");
    }
  }
  basis_ = orthonormal_columns(spanning);
  const Matrix pairing = basis_.transpose() * canonical_form(m) * basis_;
  max_pairing_ = pairing.size() ? pairing.cwiseAbs().maxCoeff() : 0.0;
  if (max_pairing_ <= tol.symplectic) {
    kind_ = (dim() == m) ? SubspaceKind::lagrangian : SubspaceKind::isotropic;
  } else {
    kind_ = SubspaceKind::generic;
  }
}

FieldVector FieldSubspace::field(int i) const {
  if (i < 0 || i >= dim()) throw ContractError("FieldSubspace::field: index out of range");
  return FieldVector::from_stacked(anchor_, basis_.col(i));
}

FieldSubspace FieldSubspace::with_id(std::string id) const {
  FieldSubspace copy = *this;
  copy.id_ = std::move(id);
  return copy;
}

IsotropyWitness is_isotropic(const FieldSubspace& w, double tol) {
  IsotropyWitness witness;
  witness.isotropic = true;
  const Matrix omega = canonical_form(w.ambient_dim());
  for (int i = 0; i < w.dim(); ++i) {
    for (int j = i + 1; j < w.dim(); ++j) {
      const double p = std::abs(w.basis().col(i).dot(omega * w.basis().col(j)));
      if (p > witness.pairing) {
        witness.pairing = p;
        witness.i = i;
        witness.j = j;
      }
    }
  }
  witness.isotropic = witness.pairing <= tol;
  return witness;
}

bool is_lagrangian(const FieldSubspace& l, double tol) {
  return l.dim() == l.ambient_dim() && is_isotropic(l, tol).isotropic;
}

FieldSubspace vanishing_lagrangian(const SystemPtr& system, double a) {
  const int m = system->dim();
  Matrix basis = Matrix::Zero(2 * m, m);
  basis.bottomRows(m) = Matrix::Identity(m, m);
  std::ostringstream id;
  id << "L_" << a;
  return FieldSubspace::from_matrix(system, a, basis).with_id(id.str());
}

int intersection_dimension_same_anchor(const FieldSubspace& l1, const FieldSubspace& l2,
                                       const RankThresholds& rank) {
  if (l1.system() != l2.system()) {
    throw ContractError("intersection_dimension: subspaces belong to different systems");
  }
  if (l1.anchor() != l2.anchor()) {
    throw ContractError("intersection_dimension: anchors differ; re-anchor through a flow first");
  }
  Matrix stacked(l1.basis().rows(), l1.dim() + l2.dim());
  stacked << l1.basis(), l2.basis();
  return l1.dim() + l2.dim() - banded_rank(stacked, rank, "intersection_dimension");
}

}  // namespace jacobi
