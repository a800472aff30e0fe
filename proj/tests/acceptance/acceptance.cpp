// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracle.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/inequalities.hpp"
#include "jacobi/models.hpp"
#include "jacobi/random.hpp"
#include "jacobi/suites.hpp"
#include "jacobi/transverse.hpp"

using namespace jacobi;
constexpr double pi = std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  double time_limit = 0.0;  // seconds; 0 means none

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

int failures(const std::vector<VerdictRecord>& vs, std::string* first = nullptr) {
  int n = 0;
  for (const auto& v : vs) {
    if (!v.pass) {
      if (n == 0 && first) *first = v.statement + " " + v.notes;
      ++n;
    }
  }
  return n;
}

// 1
void theorem_a(Outcome& o) {
  o.time_limit = 5.0;
  for (const auto& name : model_names()) {
    const auto model = make_model(name);
    const auto b = evaluate_dimension_bound(model, DimensionTheorem::A);
    const double measured = b.measured_constant.value_or(-1.0);
    o.detail << " " << name << ": k=" << b.verdict.lhs << " bound=" << b.verdict.rhs
             << " slack=" << b.verdict.slack << " conj=" << measured;
    o.require(b.verdict.pass && b.verdict.slack == 0.0, name + " slack 0");
    o.require(b.verdict.lhs == model.k, name + " k");
    o.require(std::abs(measured - pi / 2) <= 1e-6, name + " conj radius");
  }
}

// 2
void theorem_b(Outcome& o) {
  o.time_limit = 10.0;
  const auto model = hopf_model(HopfKind::s3_s2);
  const auto b = evaluate_dimension_bound(model, DimensionTheorem::B);
  o.detail << " bound=" << b.verdict.rhs << " k=" << b.verdict.lhs << " slack=" << b.verdict.slack;
  o.require(b.verdict.pass && b.verdict.rhs == 2.0 && b.verdict.lhs == 1.0 && b.verdict.slack == 1.0,
            "bound 2, k 1, slack 1");
  int checked = 0;
  for (int r = 1; r <= 6; ++r) {
    for (const auto& v : theorem_b_chain(model, r)) {
      ++checked;
      o.require(v.pass, v.statement);
      o.require(is_integer(v.lhs) && is_integer(v.rhs), v.statement + " integers");
    }
  }
  o.detail << " chain verdicts=" << checked;
}

// 3
void foliation(Outcome& o) {
  const auto model = hopf_model(HopfKind::s3_s2);
  const auto b = evaluate_dimension_bound(model, DimensionTheorem::foliation);
  const double measured = b.measured_constant.value_or(-1.0);
  o.detail << " focal radius=" << measured << " bound=" << b.verdict.rhs << " k=" << b.verdict.lhs;
  o.require(std::abs(measured - pi / 2) <= 1e-6, "focal radius");
  o.require(b.verdict.rhs == 1.0 && b.verdict.slack == 0.0 && b.verdict.pass, "equality");
}

// 4
void focal_counts(Outcome& o) {
  const auto model = hopf_model(HopfKind::s3_s2);
  const Matrix v = model.vertical_basis(0.0);
  const FieldSubspace fiber = submanifold_lagrangian(model.total, v * v.transpose(), Matrix::Zero(2, 2));
  const FundamentalSolution hf(model.total, 0.0, {0.0, pi + 0.5});
  const auto vf = focal_count_check(hf, fiber, 3);
  o.detail << " hopf fiber: " << vf.lhs << " >= " << vf.rhs;
  o.require(vf.pass && vf.slack == 0.0, "hopf fiber");

  const auto sys = constant_curvature_system(1.0, 2);
  const FieldSubspace point = submanifold_lagrangian(sys, Matrix::Zero(2, 2), Matrix::Zero(2, 2));
  const FundamentalSolution pf(sys, 0.0, {0.0, pi + 0.5});
  const auto vp = focal_count_check(pf, point, 3);
  o.detail << "; point: " << vp.lhs << " >= " << vp.rhs;
  o.require(vp.pass && vp.slack == 0.0, "point");
}

// 5
void index_tables(Outcome& o) {
  int cells = 0;
  for (double delta : {1.0, 4.0}) {
    for (int m = 1; m <= 3; ++m) {
      const auto sys = constant_curvature_system(delta, m);
      const FundamentalSolution flow(sys, 0.0, {0.0, 2 * pi});
      const FieldSubspace l0 = vanishing_lagrangian(sys, 0.0);
      for (const auto& iv : {IntervalSpec::closed(0, pi), IntervalSpec::open(0, pi),
                             IntervalSpec::left_open(0, pi), IntervalSpec::closed(0, 2 * pi)}) {
        const int expected =
            oracle::vanishing_index(delta, m, 0.0, iv.lo, iv.hi, iv.include_lo, iv.include_hi);
        IndexOptions opt;
        opt.scan_step = effective_scan_step(*sys, iv.lo, iv.hi, opt);
        const int coarse = index_on_interval(flow, l0, iv, opt).total;
        opt.scan_step /= 2;
        const int fine = index_on_interval(flow, l0, iv, opt).total;
        ++cells;
        std::ostringstream id;
        id << "delta=" << delta << " m=" << m << " " << iv.to_string() << " got " << coarse << "/"
           << fine << " want " << expected;
        o.require(coarse == expected && fine == expected, id.str());
      }
    }
  }
  o.detail << " cells=" << cells;
}

// 6
void lytchak(Outcome& o) {
  o.time_limit = 120.0;
  SuiteOptions so;
  so.trials = 1000;
  so.seed = 20241;
  so.max_dim = 5;
  so.norm_bound = 9.0;
  const auto vs = run_suite(SuiteKind::lytchak, so);
  std::string first;
  const int bad = failures(vs, &first);
  o.detail << " trials=" << vs.size() << " failures=" << bad;
  o.require(vs.size() == 1000 && bad == 0, "suite " + first);

  const auto sys = constant_curvature_system(1.0, 2);
  const FundamentalSolution flow(sys, 0.0, {0.0, pi});
  const FieldSubspace l0 = vanishing_lagrangian(sys, 0.0);
  const FieldSubspace sc(sys, 0.0,
                         {FieldVector{0.0, Vector::Zero(2), Vector::Unit(2, 0)},
                          FieldVector{0.0, Vector::Unit(2, 1), Vector::Zero(2)}});
  const auto iv = IntervalSpec::closed(0, pi);
  const int i1 = index_on_interval(flow, l0, iv).total;
  const int i2 = index_on_interval(flow, sc, iv).total;
  const auto v = verify_lytchak(flow, LytchakArgs{&l0, &sc, iv});
  o.detail << "; tight: |" << i1 << "-" << i2 << "| = " << v.lhs << " <= " << v.rhs;
  o.require(i1 == 4 && i2 == 3 && v.lhs == 1 && v.rhs == 1 && v.slack == 0 && v.pass, "tight example");
}

// 7
void bound_suites(Outcome& o) {
  SuiteOptions so;
  so.seed = 7007;
  so.max_dim = 5;
  so.trials = 200;
  std::string first;
  const auto dl = run_suite(SuiteKind::delta_lower, so);
  int bad = failures(dl, &first);
  o.detail << " delta_lower " << dl.size() << " verdicts, failures=" << bad;
  o.require(dl.size() == 600 && bad == 0, "delta_lower " + first);

  so.trials = 100;
  const auto cu = run_suite(SuiteKind::conj_upper, so);
  bad = failures(cu, &first);
  o.detail << "; conj_upper " << cu.size() << ", failures=" << bad;
  o.require(bad == 0, "conj_upper " + first);

  const auto pu = run_suite(SuiteKind::periodic_upper, so);
  bad = failures(pu, &first);
  o.detail << "; periodic_upper " << pu.size() << ", failures=" << bad;
  o.require(pu.size() == 500 && bad == 0, "periodic_upper " + first);
}

// 8
void transverse(Outcome& o) {
  const std::vector<IntervalSpec> ivs{IntervalSpec::left_open(0, pi), IntervalSpec::closed(0, pi),
                                      IntervalSpec::closed(0, 2 * pi),
                                      IntervalSpec::right_open(0.5, 5.0)};
  for (const auto& name : model_names()) {
    const auto model = make_model(name);
    const auto fid = transverse_fidelity(model, ivs);
    o.detail << " " << name << ": |R^W - R_base|=" << fid.curvature_error;
    o.require(fid.curvature_error <= 1e-7, name + " curvature");
    o.require(fid.identities.size() == ivs.size() && failures(fid.identities) == 0,
              name + " index sum");
  }
  SuiteOptions so;
  so.trials = 100;
  so.seed = 8008;
  so.max_dim = 5;
  const auto vs = run_suite(SuiteKind::transverse_identity, so);
  std::string first;
  const int bad = failures(vs, &first);
  o.detail << "; random pairs: " << vs.size() / 3 << " x 3 intervals, failures=" << bad;
  o.require(vs.size() == 300 && bad == 0, "random pairs " + first);
}

// 9
void engine_health(Outcome& o) {
  std::vector<std::pair<std::string, SystemPtr>> systems{
      {"delta=1", constant_curvature_system(1.0, 2)}, {"delta=4", constant_curvature_system(4.0, 3)}};
  for (const auto& name : model_names()) {
    const auto model = make_model(name);
    systems.emplace_back(name + ".total", model.total);
    systems.emplace_back(name + ".base", model.base);
  }
  Rng rng(909);
  systems.emplace_back("positive", random_positive_system(3, 1.0, rng));
  // Indefinite R: Phi grows like exp(3 t), so only the derivative check applies.
  systems.emplace_back("trig", random_trig_system(4, rng));
  double worst_defect = 0.0, worst_fd = 0.0;
  for (const auto& [name, sys] : systems) {
    const bool bounded = name != "trig";
    const FundamentalSolution flow(sys, 0.0, {0.0, 8 * pi});
    double defect = 0.0, fd = 0.0;
    for (double t = 0.0; t <= 8 * pi; t += 0.05) defect = std::max(defect, flow.symplectic_defect(t));
    const double h = 1e-4;
    for (double t = 0.1; t < 8 * pi - 0.1; t += 0.37) {
      const Matrix d = (flow.at(t + h) - flow.at(t - h)) / (2 * h);
      const Matrix g = flow.generator(t) * flow.at(t);
      fd = std::max(fd, (d - g).cwiseAbs().maxCoeff() / std::max(1.0, g.cwiseAbs().maxCoeff()));
    }
    if (bounded) {
      o.require(defect <= 1e-8, name + " symplectic defect");
      worst_defect = std::max(worst_defect, defect);
    }
    o.require(fd <= 1e-6, name + " dPhi/dt");
    worst_fd = std::max(worst_fd, fd);
  }
  o.detail << " systems=" << systems.size() << " max symplectic defect=" << worst_defect
           << " max dPhi/dt mismatch=" << worst_fd;
}

// 10
void span_property(Outcome& o) {
  for (int m = 1; m <= 3; ++m) {
    const auto sys = constant_curvature_system(1.0, m);
    const FundamentalSolution flow(sys, 0.0, {0.0, pi + 0.5});
    const auto v = verify_span_property(flow, vanishing_lagrangian(sys, 0.0), 0.0, 1.0);
    o.detail << " L_0(m=" << m << "): rank " << v.lhs;
    o.require(v.pass && v.lhs == m, "L_0 m=" + std::to_string(m));
  }
  for (const auto& name : model_names()) {
    const auto model = make_model(name);
    const FundamentalSolution flow(model.total, 0.0, {0.0, pi + 0.5});
    const auto v = verify_span_property(flow, submersion_lagrangian(model), 0.0, 1.0);
    o.detail << " " << name << ": rank " << v.lhs << "/" << model.normal_dim();
    o.require(v.pass && v.lhs == model.normal_dim(), name);
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"theorem A equality on Hopf models", theorem_a},
      {"theorem B on s3_s2 and index chain r=1..6", theorem_b},
      {"foliation corollary on s3_s2", foliation},
      {"focal counts (Hopf fiber, point)", focal_counts},
      {"constant-curvature index tables", index_tables},
      {"Lytchak suite (1000 trials) and tight example", lytchak},
      {"delta_lower / conj_upper / periodic_upper suites", bound_suites},
      {"transverse reduction fidelity", transverse},
      {"engine health over [0, 8 pi]", engine_health},
      {"span property", span_property},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.time_limit > 0.0 && secs > o.time_limit) {
      o.pass = false;
      o.detail << " [over time limit " << o.time_limit << " s]";
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s (%.2f s):%s\n", o.pass ? "PASS" : "FAIL", n, name, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
