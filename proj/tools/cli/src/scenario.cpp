#include "jacobi_cli/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

#include "jacobi/errors.hpp"
#include "jacobi/inequalities.hpp"
#include "jacobi/models.hpp"
#include "jacobi/suites.hpp"
#include "jacobi/transverse.hpp"
#include "jacobi_cli/builders.hpp"

namespace jacobi::cli {
namespace {

constexpr double kPi = std::numbers::pi;

using Body = std::function<void(RunReport&)>;

// Runs `fn`; a library error becomes a numerical_error verdict named `statement`.
void guarded(RunReport& report, const std::string& statement, const Body& fn) {
  try {
    fn(report);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    report.verdicts.push_back(VerdictRecord::numerical_failure(statement, e.what()));
  }
}

std::vector<int> int_list(const Json& obj, const std::string& key, const std::string& path) {
  std::vector<int> out;
  if (!obj.contains(key)) return out;
  const Json& v = obj.at(key);
  if (v.is_number_integer()) {
    out.push_back(v.get<int>());
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer()) throw ConfigError(path + "/" + key + "/" + std::to_string(i), "expected an integer");
      out.push_back(v[i].get<int>());
    }
  } else {
    throw ConfigError(path + "/" + key, "expected an integer or a list of integers");
  }
  return out;
}

double hi_of(const std::vector<IntervalSpec>& ivs) {
  double hi = ivs.front().hi;
  for (const auto& iv : ivs) hi = std::max(hi, iv.hi);
  return hi;
}

double lo_of(const std::vector<IntervalSpec>& ivs) {
  double lo = ivs.front().lo;
  for (const auto& iv : ivs) lo = std::min(lo, iv.lo);
  return lo;
}

// ------------------------------------------------------------- scenarios

void run_index(const ScenarioConfig& c, RunReport& report) {
  BuildContext ctx(c);
  const SystemPtr sys = scenario_system(ctx);
  const FieldSubspace l = build_subspace(object_field(c.body, "subspace", ""), "/subspace", sys, ctx);
  const auto ivs = read_intervals(c.body, "");
  const auto expect = int_list(c.body, "expect", "");
  if (!expect.empty() && expect.size() != ivs.size()) {
    throw ConfigError("/expect", "needs one value per interval");
  }
  const IndexOptions io = c.numerics.index();
  guarded(report, "index", [&](RunReport& r) {
    const auto flow = build_flow(sys, l.anchor(), lo_of(ivs), hi_of(ivs), c.numerics);
    for (std::size_t i = 0; i < ivs.size(); ++i) {
      IndexReport ix = index_on_interval(*flow, l, ivs[i], io);
      if (!expect.empty()) {
        auto v = VerdictRecord::upper("index_total " + ivs[i].to_string(),
                                      std::abs(ix.total - expect[i]), 0.0);
        v.notes = "total=" + std::to_string(ix.total) + " expected=" + std::to_string(expect[i]);
        r.verdicts.push_back(v);
      }
      r.indices.push_back(std::move(ix));
    }
  });
}

void run_inequality(const ScenarioConfig& c, RunReport& report) {
  BuildContext ctx(c);
  const SystemPtr sys = scenario_system(ctx);
  const FieldSubspace l = build_subspace(object_field(c.body, "subspace", ""), "/subspace", sys, ctx);
  const std::string kind = string_field(c.body, "kind", "");
  const IndexOptions io = c.numerics.index();
  const double a = number_field(c.body, "a", "", 0.0);
  const double anchor = l.anchor();
  if (kind == "lytchak") {
    const FieldSubspace l2 = build_subspace(object_field(c.body, "other", ""), "/other", sys, ctx);
    const IntervalSpec iv = read_interval(c.body.at("interval"), "/interval");
    guarded(report, "lytchak", [&](RunReport& r) {
      const auto flow = build_flow(sys, anchor, std::min(iv.lo, l2.anchor()),
                                   std::max(iv.hi, l2.anchor()), c.numerics);
      r.verdicts.push_back(verify_inequality(*flow, LytchakArgs{&l, &l2, iv}, io));
    });
    return;
  }
  const int rr = int_field(c.body, "r", "");
  if (rr < 1) throw ConfigError("/r", "must be >= 1");
  if (kind == "conj_upper") {
    const double cc = number_field(c.body, "c", "");
    if (!(cc > 0.0)) throw ConfigError("/c", "must be > 0");
    guarded(report, "conj_upper", [&](RunReport& r) {
      const auto flow = build_flow(sys, anchor, a, a + rr * cc, c.numerics);
      r.verdicts.push_back(verify_inequality(*flow, ConjUpperArgs{&l, a, rr, cc}, io));
    });
  } else if (kind == "delta_lower") {
    const double delta = number_field(c.body, "delta", "");
    if (!(delta > 0.0)) throw ConfigError("/delta", "must be > 0");
    guarded(report, "delta_lower", [&](RunReport& r) {
      const auto flow = build_flow(sys, anchor, a, a + rr * kPi / std::sqrt(delta), c.numerics);
      r.verdicts.push_back(verify_inequality(*flow, DeltaLowerArgs{&l, a, rr, delta}, io));
    });
  } else {
    double period = 0.0;
    if (c.body.contains("period")) {
      period = number_field(c.body, "period", "");
    } else if (sys->period()) {
      period = *sys->period();
    } else {
      throw ConfigError("/period", "the system has no period; give one");
    }
    if (!(period > 0.0)) throw ConfigError("/period", "must be > 0");
    guarded(report, "periodic_upper", [&](RunReport& r) {
      const auto flow = build_flow(sys, anchor, a, a + rr * period, c.numerics);
      r.verdicts.push_back(verify_inequality(*flow, PeriodicUpperArgs{&l, a, rr, period}, io));
    });
  }
}

void run_span(const ScenarioConfig& c, RunReport& report) {
  BuildContext ctx(c);
  const SystemPtr sys = scenario_system(ctx);
  const FieldSubspace l = build_subspace(object_field(c.body, "subspace", ""), "/subspace", sys, ctx);
  const double a = number_field(c.body, "a", "", 0.0);
  const double delta = number_field(c.body, "delta", "");
  if (!(delta > 0.0)) throw ConfigError("/delta", "must be > 0");
  guarded(report, "span_property", [&](RunReport& r) {
    const auto flow = build_flow(sys, l.anchor(), a, a + kPi / std::sqrt(delta), c.numerics);
    r.verdicts.push_back(verify_span_property(*flow, l, a, delta, c.numerics.index()));
  });
}

void run_transverse(const ScenarioConfig& c, RunReport& report) {
  BuildContext ctx(c);
  const IndexOptions io = c.numerics.index();
  if (ctx.model && !c.body.contains("w")) {
    auto ivs = read_intervals(c.body, "");
    if (ivs.empty()) {
      ivs = {IntervalSpec::closed(0.0, kPi), IntervalSpec::open(0.0, kPi),
             IntervalSpec::closed(0.0, 2.0 * kPi)};
    }
    if (lo_of(ivs) < 0.0) throw ConfigError("/intervals", "model intervals start at t >= 0");
    const double tol = number_field(c.body, "curvature_tol", "", 1e-7);
    guarded(report, "transverse_fidelity", [&](RunReport& r) {
      const auto fid = transverse_fidelity(*ctx.model, ivs, std::max(6.5, hi_of(ivs) + 0.25), io);
      r.metrics["curvature_error"] = fid.curvature_error;
      r.verdicts.push_back(VerdictRecord::upper("curvature_fidelity", fid.curvature_error, tol));
      for (const auto& v : fid.identities) r.verdicts.push_back(v);
    });
    return;
  }
  const SystemPtr sys = scenario_system(ctx);
  const FieldSubspace l = build_subspace(object_field(c.body, "subspace", ""), "/subspace", sys, ctx);
  const FieldSubspace w = build_subspace(object_field(c.body, "w", ""), "/w", sys, ctx);
  const auto ivs = read_intervals(c.body, "");
  const double lo = lo_of(ivs), hi = hi_of(ivs);
  guarded(report, "index_sum", [&](RunReport& r) {
    const auto flow = build_flow(sys, l.anchor(), std::min(lo, w.anchor()),
                                 std::max(hi, w.anchor()), c.numerics);
    TransverseOptions topt;
    topt.index = io;
    topt.integrator = c.numerics.integrator();
    const TransverseSystem tr(flow, w, {lo, hi}, lo, topt);
    const FieldSubspace lw = project_subspace(l, tr);
    for (const auto& iv : ivs) {
      IndexReport il = index_on_interval(*flow, l, iv, io);
      IndexReport iw = index_on_interval(*flow, w, iv, io);
      IndexReport ir = index_on_interval(*tr.reduced_flow(), lw, iv, io);
      auto v = VerdictRecord::upper("index_sum " + iv.to_string(),
                                    std::abs(il.total - iw.total - ir.total), 0.0);
      v.notes = "ind_L=" + std::to_string(il.total) + " ind_W=" + std::to_string(iw.total) +
                " ind_L/W=" + std::to_string(ir.total);
      r.verdicts.push_back(v);
      r.indices.push_back(std::move(il));
      r.indices.push_back(std::move(iw));
      r.indices.push_back(std::move(ir));
    }
  });
}

void record_bound(RunReport& r, const DimensionBound& b, const std::string& prefix) {
  r.verdicts.push_back(b.verdict);
  r.metrics[prefix + ".stored_constant"] = b.stored_constant;
  if (b.measured_constant) r.metrics[prefix + ".measured_constant"] = *b.measured_constant;
  r.metrics[prefix + ".discrepancy"] = b.discrepancy;
  if (b.measured_conjugate_count) {
    r.metrics[prefix + ".measured_conjugate_count"] = *b.measured_conjugate_count;
  }
}

void run_theorem(const ScenarioConfig& c, RunReport& report) {
  BuildContext ctx(c);
  const SubmersionModel& model = *ctx.model;
  const IndexOptions io = c.numerics.index();
  const double constant_tol = number_field(c.body, "constant_tol", "", 1e-6);
  const std::vector<int> rs = int_list(c.body, "r", "");
  for (int r : rs) {
    if (r < 1) throw ConfigError("/r", "scales must be >= 1");
  }
  if (c.scenario == "foliation") {
    guarded(report, "foliation", [&](RunReport& r) {
      record_bound(r, evaluate_dimension_bound(model, DimensionTheorem::foliation, io, constant_tol), "foliation");
    });
    return;
  }
  const bool theorem_a = c.scenario == "theorem_A";
  const DimensionTheorem which = theorem_a ? DimensionTheorem::A : DimensionTheorem::B;
  guarded(report, theorem_a ? "A" : "B", [&](RunReport& r) {
    record_bound(r, evaluate_dimension_bound(model, which, io, constant_tol), theorem_a ? "A" : "B");
  });
  if (c.body.contains("jimenez") && c.body.at("jimenez").get<bool>()) {
    guarded(report, "jimenez", [&](RunReport& r) {
      record_bound(r, evaluate_dimension_bound(model, DimensionTheorem::jimenez, io, constant_tol), "jimenez");
    });
  }
  const double chain_c =
      number_field(c.body, "c", "", 0.95 * model.constants.conj_radius_base);
  for (int r : rs) {
    guarded(report, (theorem_a ? "A.chain r=" : "B.chain r=") + std::to_string(r), [&](RunReport& rep) {
      const auto chain = theorem_a ? theorem_a_chain(model, r, chain_c, io) : theorem_b_chain(model, r, io);
      for (const auto& v : chain) rep.verdicts.push_back(v);
    });
  }
}

void run_submanifold(const ScenarioConfig& c, RunReport& report) {
  BuildContext ctx(c);
  const SystemPtr sys = scenario_system(ctx);
  const int m = sys->dim();
  const Matrix p = tangent_projector(c.body, "", m, ctx.model);
  const Matrix shape = c.body.contains("shape") ? read_matrix(c.body.at("shape"), "/shape")
                                                : Matrix(Matrix::Zero(m, m));
  const int n = int_field(c.body, "n", "", m + 1);
  FieldSubspace ln = [&] {
    try {
      return submanifold_lagrangian(sys, p, shape, 0.0).with_id("L^N");
    } catch (const ContractError& e) {
      throw ConfigError("/tangent", e.what());
    }
  }();
  guarded(report, "focal_count", [&](RunReport& r) {
    const auto flow = build_flow(sys, 0.0, 0.0, kPi, c.numerics);
    r.verdicts.push_back(focal_count_check(*flow, ln, n, c.numerics.index()));
    r.indices.push_back(index_on_interval(*flow, ln, IntervalSpec::left_open(0.0, kPi), c.numerics.index()));
  });
}

void run_random_suite(const ScenarioConfig& c, RunReport& report) {
  if (!c.seed) throw ConfigError("/seed", "random_suite requires a seed");
  const std::string kind_name = string_field(c.body, "kind", "");
  SuiteKind kind;
  try {
    kind = suite_kind_from_string(kind_name);
  } catch (const ContractError& e) {
    throw ConfigError("/kind", e.what());
  }
  SuiteOptions o;
  o.trials = int_field(c.body, "trials", "");
  if (o.trials < 0) throw ConfigError("/trials", "must be >= 0");
  o.seed = *c.seed;
  o.max_dim = int_field(c.body, "max_dim", "", o.max_dim);
  o.norm_bound = number_field(c.body, "norm_bound", "", o.norm_bound);
  o.threads = static_cast<unsigned>(std::max(0, int_field(c.body, "threads", "", 0)));
  o.index = c.numerics.index();
  o.integrator = c.numerics.integrator();
  if (o.max_dim < 1) throw ConfigError("/max_dim", "must be >= 1");
  report.verdicts = run_suite(kind, o);
  report.metrics["trials"] = o.trials;
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.version = tool_version();
  report.scenario = c.scenario;
  report.name = c.name;
  report.config = c.body;
  report.seed = c.seed;
  try {
    const std::string& s = c.scenario;
    if (s == "index") run_index(c, report);
    else if (s == "inequality") run_inequality(c, report);
    else if (s == "span") run_span(c, report);
    else if (s == "transverse") run_transverse(c, report);
    else if (s == "theorem_A" || s == "theorem_B" || s == "foliation") run_theorem(c, report);
    else if (s == "submanifold") run_submanifold(c, report);
    else if (s == "random_suite") run_random_suite(c, report);
    else throw ConfigError("/scenario", "unknown scenario '" + s + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const Json::exception& e) {
    throw ConfigError("", e.what());
  } catch (const Error& e) {
    report.errors.push_back(e.what());
  }
  report.exit_code = exit_code_for(report);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<std::pair<double, double>> sigma_trace(const ScenarioConfig& c, int samples) {
  BuildContext ctx(c);
  const SystemPtr sys = scenario_system(ctx);
  const FieldSubspace l = build_subspace(object_field(c.body, "subspace", ""), "/subspace", sys, ctx);
  IntervalSpec iv;
  int n = 401;
  if (c.body.contains("trace")) {
    const Json& t = object_field(c.body, "trace", "");
    iv = read_interval(t.at("interval"), "/trace/interval");
    n = int_field(t, "samples", "/trace", n);
  } else {
    const auto ivs = read_intervals(c.body, "");
    if (ivs.empty()) throw ConfigError("/trace", "trace needs \"trace\" or an interval");
    iv = ivs.front();
  }
  if (samples > 0) n = samples;
  if (n < 2) throw ConfigError("/trace/samples", "must be >= 2");
  const auto flow = build_flow(sys, l.anchor(), iv.lo, iv.hi, c.numerics);
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = i + 1 == n ? iv.hi : iv.lo + (iv.hi - iv.lo) * i / (n - 1);
    out.emplace_back(t, sigma_min(*flow, l, t));
  }
  return out;
}

std::string trace_csv(const std::vector<std::pair<double, double>>& trace) {
  std::string out = "t,sigma_min\n";
  char buf[64];
  for (const auto& [t, s] : trace) {
    auto r = std::to_chars(buf, buf + sizeof buf, t);
    out.append(buf, r.ptr);
    out += ',';
    r = std::to_chars(buf, buf + sizeof buf, s);
    out.append(buf, r.ptr);
    out += '\n';
  }
  return out;
}

}  // namespace jacobi::cli
