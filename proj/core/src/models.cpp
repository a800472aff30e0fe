#include "jacobi/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "jacobi/certificates.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/random.hpp"
#include "jacobi/transverse.hpp"

namespace jacobi {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

Matrix vertical_projector(const SubmersionModel& model, double t) {
  const Matrix v = model.vertical_basis(t);
  return v * v.transpose();
}

Matrix horizontal_projector(const SubmersionModel& model, double t) {
  const Matrix h = model.horizontal_basis(t);
  return h * h.transpose();
}

// Rows of the projectability condition Vert^T (Y' + S Y^v + A Y^h) = 0 at t,
// acting on the stacked state (Y; Y').
Matrix projectability_rows(const SubmersionModel& model, double t) {
  const int m = model.normal_dim();
  const Matrix vt = model.vertical_basis(t).transpose();
  Matrix rows(vt.rows(), 2 * m);
  rows.leftCols(m) = vt * (model.shape(t) * vertical_projector(model, t) +
                           model.oneill(t) * horizontal_projector(model, t));
  rows.rightCols(m) = vt;
  return rows;
}

FieldSubspace checked_lagrangian(const SystemPtr& system, const Matrix& data, const char* what) {
  FieldSubspace l = FieldSubspace::from_matrix(system, 0.0, data);
  if (!is_lagrangian(l)) {
    throw ConsistencyError(std::string(what) + ": generators do not span a Lagrangian");
  }
  return l;
}

}  // namespace

SystemPtr constant_curvature_system(double delta, int m) {
  if (m < 1) throw ContractError("constant_curvature_system: m must be positive");
  return JacobiSystem::periodic(
      m, [delta, m](double) -> Matrix { return delta * Matrix::Identity(m, m); }, 2.0 * kPi);
}

// ------------------------------------------------------------------ Hopf

SubmersionModel hopf_model(HopfKind which) {
  SubmersionModel model;
  switch (which) {
    case HopfKind::s3_s2:
      model.name = "s3_s2";
      model.n = 2;
      model.k = 1;
      break;
    case HopfKind::s7_s4:
      model.name = "s7_s4";
      model.n = 4;
      model.k = 3;
      break;
    case HopfKind::s15_s8:
      model.name = "s15_s8";
      model.n = 8;
      model.k = 7;
      break;
  }
  // Normal space of a horizontal great circle alpha(t) = cos t p + sin t q,
  // in the parallel frame (A_1..A_k, B_1..B_k) with A_j = I_j p, B_j = I_j q
  // for the complex structures I_j. The fiber direction is I_j alpha(t) and
  // the horizontal normal direction is I_j alpha'(t).
  const int k = model.k;
  const int m = 2 * k;
  const Matrix id = Matrix::Identity(k, k);
  model.vertical_basis = [k, id](double t) {
    Matrix v(2 * k, k);
    v << std::cos(t) * id, std::sin(t) * id;
    return v;
  };
  model.horizontal_basis = [k, id](double t) {
    Matrix h(2 * k, k);
    h << -std::sin(t) * id, std::cos(t) * id;
    return h;
  };
  model.horizontal_basis_derivative = [k, id](double t) {
    Matrix h(2 * k, k);
    h << -std::cos(t) * id, -std::sin(t) * id;
    return h;
  };
  const auto vb = model.vertical_basis;
  const auto hb = model.horizontal_basis;
  model.oneill = [vb, hb](double t) -> Matrix { return -vb(t) * hb(t).transpose(); };
  model.shape = [m](double) -> Matrix { return Matrix::Zero(m, m); };
  model.total = JacobiSystem::periodic(
      m, [m](double) -> Matrix { return Matrix::Identity(m, m); }, 2.0 * kPi);
  model.base = JacobiSystem::periodic(
      k, [k](double) -> Matrix { return 4.0 * Matrix::Identity(k, k); }, kPi);
  model.constants.conj_radius_base = kPi / 2.0;
  model.constants.shortest_closed_geodesic = kPi;
  model.constants.foliation_focal_radius = kPi / 2.0;
  model.constants.conj_budget = model.n - 1;
  model.constants.base_curvature_upper = 4.0;
  return model;
}

std::vector<std::string> model_names() { return {"s3_s2", "s7_s4", "s15_s8"}; }

SubmersionModel make_model(const std::string& name) {
  if (name == "s3_s2") return hopf_model(HopfKind::s3_s2);
  if (name == "s7_s4") return hopf_model(HopfKind::s7_s4);
  if (name == "s15_s8") return hopf_model(HopfKind::s15_s8);
  throw ContractError("unknown model '" + name + "'");
}

double oneill_defect(const SubmersionModel& model, Span span, int samples) {
  Rng rng(7);
  std::normal_distribution<double> g;
  const int b = model.n - 1;
  double worst = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = span.lo + span.length() * i / samples;
    Vector c(b);
    for (int j = 0; j < b; ++j) c(j) = g(rng);
    c.normalize();
    const Vector y = model.horizontal_basis(t) * c;
    const double k_total = y.dot(model.total->curvature(t) * y);
    const double k_base = c.dot(model.base->curvature(t) * c);
    const double a2 = (model.oneill(t) * y).squaredNorm();
    worst = std::max(worst, std::abs(k_base - (k_total + 3.0 * a2)));
  }
  return worst;
}

// ------------------------------------------------------- holonomy / lift

FieldSubspace holonomy_subspace(const SubmersionModel& model, Span check, double tol) {
  const int m = model.normal_dim();
  const auto minus_astar_s = [&model](double t) -> Matrix {
    return -(model.oneill(t).transpose() + model.shape(t));
  };
  const Matrix v0 = model.vertical_basis(0.0);
  Matrix data(2 * m, model.k);
  data.topRows(m) = v0;
  data.bottomRows(m) = minus_astar_s(0.0) * v0;

  // The first-order holonomy flow must agree with the Jacobi flow.
  const Span span{std::min(0.0, check.lo), std::max(0.0, check.hi)};
  const DenseFlow first_order(
      [minus_astar_s](double t, const Matrix& j, Matrix& dj) { dj.noalias() = minus_astar_s(t) * j; },
      0.0, v0, span);
  const FundamentalSolution jac(model.total, 0.0, span);
  double worst = 0.0;
  constexpr int kSamples = 64;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = check.lo + check.length() * i / kSamples;
    worst = std::max(worst, (first_order(t) - (jac.at(t) * data).topRows(m)).cwiseAbs().maxCoeff());
  }
  if (worst > tol) {
    throw ConsistencyError("holonomy_subspace: holonomy fields violate the Jacobi equation by " +
                           fmt(worst));
  }
  return FieldSubspace::from_matrix(model.total, 0.0, data).with_id("W_hol");
}

double projectability_residual(const SubmersionModel& model, const FundamentalSolution& flow,
                               const FieldVector& y, Span span, int samples) {
  const Vector y0 = flow.transition(y.anchor, flow.anchor()) * y.stacked();
  double worst = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = span.lo + span.length() * i / samples;
    const Vector st = flow.at(t) * y0;
    worst = std::max(worst, (projectability_rows(model, t) * st).cwiseAbs().maxCoeff());
  }
  return worst;
}

FieldSubspace submersion_lagrangian(const SubmersionModel& model, Span check, double tol) {
  const int m = model.normal_dim();
  const FieldSubspace w = holonomy_subspace(model, check, tol);
  const int b = model.n - 1;
  Matrix data(2 * m, model.k + b);
  data.leftCols(model.k) = w.basis();
  data.rightCols(b).topRows(m).setZero();
  data.rightCols(b).bottomRows(m) = model.horizontal_basis(0.0);
  const FundamentalSolution flow(model.total, 0.0,
                                 {std::min(0.0, check.lo), std::max(0.0, check.hi)});
  for (int j = 0; j < b; ++j) {
    const double r = projectability_residual(
        model, flow, FieldVector::from_stacked(0.0, data.col(model.k + j)), check);
    if (r > tol) {
      throw ConsistencyError("submersion_lagrangian: generator " + std::to_string(j) +
                             " is not projectable (residual " + fmt(r) + ")");
    }
  }
  return checked_lagrangian(model.total, data, "submersion_lagrangian").with_id("L_sub");
}

FieldVector projectable_lift(const SubmersionModel& model, const FieldVector& base_field,
                             const Vector& vertical) {
  const int m = model.normal_dim();
  const int b = model.n - 1;
  const int k = model.k;
  if (base_field.anchor != 0.0) throw ContractError("projectable_lift: base field must be anchored at 0");
  if (base_field.dim() != b) throw ContractError("projectable_lift: base field has the wrong dimension");
  const Matrix vb = model.vertical_basis(0.0);
  Vector vcoords;
  if (vertical.size() == k) {
    vcoords = vertical;
  } else if (vertical.size() == m) {
    vcoords = vb.transpose() * vertical;
    if ((vb * vcoords - vertical).cwiseAbs().maxCoeff() > 1e-9) {
      throw ContractError("projectable_lift: vector is not vertical");
    }
  } else {
    throw ContractError("projectable_lift: vertical part has the wrong size");
  }
  const Matrix hb = model.horizontal_basis(0.0);
  const Matrix dhb = model.horizontal_basis_derivative(0.0);
  Matrix c = Matrix::Zero(2 * m, 2 * m);
  Vector rhs = Vector::Zero(2 * m);
  c.block(0, 0, b, m) = hb.transpose();
  rhs.segment(0, b) = base_field.value;
  c.block(b, 0, k, m) = vb.transpose();
  rhs.segment(b, k) = vcoords;
  c.block(b + k, 0, b, m) = dhb.transpose();
  c.block(b + k, m, b, m) = hb.transpose();
  rhs.segment(b + k, b) = base_field.derivative;
  c.block(2 * b + k, 0, k, 2 * m) = projectability_rows(model, 0.0);
  Eigen::FullPivLU<Matrix> lu(c);
  lu.setThreshold(1e-10);
  if (lu.rank() < 2 * m) throw ConsistencyError("projectable_lift: constraint system is singular");
  return FieldVector::from_stacked(0.0, lu.solve(rhs));
}

double projection_mismatch(const SubmersionModel& model, const FieldVector& lift,
                           const FieldVector& base_field, Span span, int samples) {
  const FundamentalSolution total(model.total, 0.0, {std::min(0.0, span.lo), std::max(0.0, span.hi)});
  const FundamentalSolution base(model.base, 0.0, {std::min(0.0, span.lo), std::max(0.0, span.hi)});
  const int m = model.normal_dim();
  const int b = model.n - 1;
  const Vector y0 = total.transition(lift.anchor, 0.0) * lift.stacked();
  const Vector z0 = base.transition(base_field.anchor, 0.0) * base_field.stacked();
  double worst = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = span.lo + span.length() * i / samples;
    const Vector y = (total.at(t) * y0).head(m);
    const Vector z = (base.at(t) * z0).head(b);
    worst = std::max(worst, (model.horizontal_basis(t).transpose() * y - z).cwiseAbs().maxCoeff());
  }
  return worst;
}

// ------------------------------------------------------------ submanifold

FieldSubspace submanifold_lagrangian(const SystemPtr& system, const Matrix& tangent_projector,
                                     const Matrix& shape, double anchor) {
  const int m = system->dim();
  const Matrix& p = tangent_projector;
  if (p.rows() != m || p.cols() != m || shape.rows() != m || shape.cols() != m) {
    throw ContractError("submanifold_lagrangian: N data has the wrong shape");
  }
  constexpr double tol = 1e-9;
  if ((p - p.transpose()).cwiseAbs().maxCoeff() > tol || (p * p - p).cwiseAbs().maxCoeff() > tol) {
    throw ContractError("submanifold_lagrangian: tangent projector is not an orthogonal projector");
  }
  if ((shape - shape.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw ContractError("submanifold_lagrangian: shape operator is not symmetric");
  }
  if ((p * shape * p - shape).cwiseAbs().maxCoeff() > tol) {
    throw ContractError("submanifold_lagrangian: shape operator does not act on TN");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(p));
  const int dim_n = static_cast<int>(std::lround(p.trace()));
  const Matrix tangent = es.eigenvectors().rightCols(dim_n);
  const Matrix normal = es.eigenvectors().leftCols(m - dim_n);
  Matrix data(2 * m, m);
  data.topLeftCorner(m, dim_n) = tangent;
  data.bottomLeftCorner(m, dim_n) = -shape * tangent;
  data.topRightCorner(m, m - dim_n).setZero();
  data.bottomRightCorner(m, m - dim_n) = normal;
  FieldSubspace l = FieldSubspace::from_matrix(system, anchor, data);
  if (!is_lagrangian(l)) throw ContractError("submanifold_lagrangian: N data is inconsistent");
  return l.with_id("L^N");
}

VerdictRecord focal_count_check(const FundamentalSolution& flow, const FieldSubspace& l_n,
                                int ambient_dim, const IndexOptions& options) {
  const char* id = "focal_count";
  const double a = l_n.anchor();
  if (!rate_certificate(*flow.system(), 1.0, {a, a + kPi})) {
    return VerdictRecord::hypothesis_failure(id, "sec >= 1 certificate failed on [a, a + pi]");
  }
  try {
    const auto rep = index_on_interval(flow, l_n, IntervalSpec::left_open(a, a + kPi), options);
    auto v = VerdictRecord::lower(id, rep.total, ambient_dim - 1);
    std::string times;
    for (const auto& z : rep.zeros) {
      times += (times.empty() ? "" : ",") + fmt(z.time) + "x" + std::to_string(z.multiplicity);
    }
    v.notes = "focal points {" + times + "}";
    return v;
  } catch (const ConditioningError& e) {
    return VerdictRecord::numerical_failure(id, e.what());
  } catch (const IntegrationError& e) {
    return VerdictRecord::numerical_failure(id, e.what());
  }
}

// ------------------------------------------------------- dimension bounds

const char* to_string(DimensionTheorem t) {
  switch (t) {
    case DimensionTheorem::A: return "theorem_A";
    case DimensionTheorem::B: return "theorem_B";
    case DimensionTheorem::foliation: return "foliation";
    case DimensionTheorem::jimenez: return "jimenez";
  }
  return "?";
}

DimensionBound evaluate_dimension_bound(const SubmersionModel& model, DimensionTheorem theorem,
                                        const IndexOptions& options, double constant_tol) {
  const double k = model.k;
  const double b = model.n - 1;
  const ModelConstants& c = model.constants;
  const std::string id = to_string(theorem);
  DimensionBound out;
  const auto require_positive = [&](double v, const char* name) {
    if (!(v > 0.0)) throw ContractError(id + ": model constant " + name + " is missing");
  };
  switch (theorem) {
    case DimensionTheorem::A: {
      require_positive(c.conj_radius_base, "conj_radius_base");
      out.stored_constant = c.conj_radius_base;
      out.measured_constant =
          conjugate_radius(model.base, {0.0, 0.7, 1.9}, 4.0 * c.conj_radius_base, options);
      out.verdict = VerdictRecord::upper(id, k, (kPi / c.conj_radius_base - 1.0) * b);
      break;
    }
    case DimensionTheorem::foliation: {
      require_positive(c.foliation_focal_radius, "foliation_focal_radius");
      out.stored_constant = c.foliation_focal_radius;
      const double horizon = 4.0 * c.foliation_focal_radius;
      const FieldSubspace l = submersion_lagrangian(model);
      const FundamentalSolution flow(model.total, 0.0, {0.0, horizon + 0.5});
      const auto zeros = zero_times(flow, l, IntervalSpec::left_open(0.0, horizon), options);
      if (!zeros.empty()) out.measured_constant = zeros.front().time;
      out.verdict = VerdictRecord::upper(id, k, (kPi / c.foliation_focal_radius - 1.0) * b);
      break;
    }
    case DimensionTheorem::B: {
      require_positive(c.shortest_closed_geodesic, "shortest_closed_geodesic");
      const double l0 = c.shortest_closed_geodesic;
      out.stored_constant = l0;
      const FundamentalSolution flow(model.base, 0.0, {0.0, l0 + 0.5});
      const FieldSubspace lbar = vanishing_lagrangian(model.base, 0.0);
      const int count = index_on_interval(flow, lbar, IntervalSpec::open(0.0, l0), options).total;
      out.measured_conjugate_count = count;
      out.verdict = VerdictRecord::upper(id, k, (3.0 * kPi / l0 - 1.0) * b);
      if (count > c.conj_budget) {
        out.verdict.hypothesis_ok = false;
        out.verdict.notes = "measured conjugate count " + std::to_string(count) +
                            " exceeds the budget " + std::to_string(c.conj_budget);
        out.verdict.settle();
        return out;
      }
      out.verdict.notes = "conjugate points in (0, l0): " + std::to_string(count) +
                          " <= budget " + std::to_string(c.conj_budget) +
                          "; l0 is a stored model constant";
      return out;
    }
    case DimensionTheorem::jimenez: {
      require_positive(c.base_curvature_upper, "base_curvature_upper");
      out.stored_constant = c.base_curvature_upper;
      out.measured_constant = max_curvature_eigenvalue(*model.base, 0.0, 2.0 * kPi, 64);
      out.verdict = VerdictRecord::upper(id, k, (c.base_curvature_upper - 1.0) * b / 3.0);
      break;
    }
  }
  if (!out.measured_constant) {
    out.verdict.hypothesis_ok = false;
    out.verdict.notes = "model constant could not be re-derived within the search horizon";
    out.verdict.settle();
    return out;
  }
  out.discrepancy = std::abs(*out.measured_constant - out.stored_constant);
  out.verdict.notes = "stored " + fmt(out.stored_constant) + ", measured " +
                      fmt(*out.measured_constant) + ", discrepancy " + fmt(out.discrepancy);
  if (out.discrepancy > constant_tol) {
    out.verdict.hypothesis_ok = false;
    out.verdict.settle();
  }
  return out;
}

// ----------------------------------------------------------- index chains

namespace {

struct ChainIndices {
  int total_on = 0;   // ind_L[0, r pi]
  int total_at0 = 0;  // ind_L(0)
  int base_on = 0;    // ind_{Lbar0}[0, r pi]
  IndexReport base_report;
};

ChainIndices chain_indices(const SubmersionModel& model, double hi, double base_hi,
                           const IndexOptions& options) {
  ChainIndices ci;
  const FieldSubspace l = submersion_lagrangian(model);
  const FundamentalSolution total(model.total, 0.0, {0.0, hi + 0.5});
  ci.total_on = index_on_interval(total, l, IntervalSpec::closed(0.0, hi), options).total;
  ci.total_at0 = index_at_time(total, l, 0.0, options);
  const FundamentalSolution base(model.base, 0.0, {0.0, std::max(hi, base_hi) + 0.5});
  ci.base_report = index_on_interval(base, vanishing_lagrangian(model.base, 0.0),
                                     IntervalSpec::closed(0.0, std::max(hi, base_hi)), options);
  ci.base_on = ci.base_report.count(IntervalSpec::closed(0.0, hi));
  return ci;
}

}  // namespace

std::vector<VerdictRecord> theorem_a_chain(const SubmersionModel& model, int r, double c,
                                           const IndexOptions& options) {
  if (r < 1 || !(c > 0.0)) throw ContractError("theorem_a_chain: need r >= 1 and c > 0");
  const double hi = r * kPi;
  const int b = model.n - 1;
  std::vector<VerdictRecord> out;
  const std::string tag = " r=" + std::to_string(r);
  const auto first = first_conjugate_time(model.base, 0.0, c, options);
  const ChainIndices ci = chain_indices(model, hi, hi, options);
  out.push_back(VerdictRecord::upper("A.transfer" + tag, std::abs(ci.total_on - ci.base_on), 0));
  if (first) {
    out.push_back(VerdictRecord::hypothesis_failure(
        "A.upper" + tag, "c = " + fmt(c) + " is not below the base conjugate radius"));
  } else {
    out.push_back(VerdictRecord::upper("A.upper" + tag, ci.base_on,
                                       (std::floor(hi / c) + 1.0) * b));
  }
  out.push_back(
      VerdictRecord::lower("A.lower" + tag, ci.total_on, r * (b + model.k) + ci.total_at0));
  return out;
}

std::vector<VerdictRecord> theorem_b_chain(const SubmersionModel& model, int r,
                                           const IndexOptions& options) {
  if (r < 1) throw ContractError("theorem_b_chain: need r >= 1");
  const double l0 = model.constants.shortest_closed_geodesic;
  if (!(l0 > 0.0)) throw ContractError("theorem_b_chain: model has no closed geodesic length");
  const double hi = r * kPi;
  const int b = model.n - 1;
  const std::string tag = " r=" + std::to_string(r);
  const ChainIndices ci = chain_indices(model, hi, l0, options);
  const int base_period = ci.base_report.count(IntervalSpec::right_open(0.0, l0));
  std::vector<VerdictRecord> out;
  out.push_back(VerdictRecord::upper("B.transfer" + tag, std::abs(ci.total_on - ci.base_on), 0));
  out.push_back(
      VerdictRecord::lower("B.lower" + tag, ci.total_on, r * (b + model.k) + ci.total_at0));
  auto up = VerdictRecord::upper("B.upper" + tag, ci.base_on,
                                 (std::floor(hi / l0) + 1.0) * (b + base_period));
  up.notes = "ind_Lbar0[0, l0) = " + std::to_string(base_period);
  out.push_back(up);
  return out;
}

TransverseFidelity transverse_fidelity(const SubmersionModel& model,
                                       const std::vector<IntervalSpec>& intervals, double span_hi,
                                       const IndexOptions& options) {
  TransverseFidelity out;
  TransverseOptions topt;
  topt.index = options;
  const auto flow = FundamentalSolution::make(model.total, 0.0, {0.0, span_hi + 0.5});
  const FieldSubspace w = holonomy_subspace(model, {0.0, span_hi});
  const FieldSubspace l = submersion_lagrangian(model, {0.0, span_hi});
  const TransverseSystem tr(flow, w, {0.0, span_hi}, 0.0, topt);
  constexpr int kSamples = 48;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = span_hi * i / kSamples;
    const Matrix map = model.horizontal_basis(t).transpose() * tr.frame().at(t);
    const Matrix expected = map.transpose() * model.base->curvature(t) * map;
    out.curvature_error =
        std::max(out.curvature_error, (tr.reduced_curvature(t) - expected).cwiseAbs().maxCoeff());
  }
  const FieldSubspace lw = project_subspace(l, tr);
  for (const auto& iv : intervals) {
    const int il = index_on_interval(*flow, l, iv, options).total;
    const int iw = index_on_interval(*flow, w, iv, options).total;
    const int ir = index_on_interval(*tr.reduced_flow(), lw, iv, options).total;
    auto v = VerdictRecord::upper("index_sum " + iv.to_string(), std::abs(il - iw - ir), 0);
    v.notes = "ind_L=" + std::to_string(il) + " ind_W=" + std::to_string(iw) +
              " ind_L/W=" + std::to_string(ir);
    out.identities.push_back(v);
  }
  return out;
}

}  // namespace jacobi
