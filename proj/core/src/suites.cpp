#include "jacobi/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "jacobi/errors.hpp"
#include "jacobi/inequalities.hpp"
#include "jacobi/random.hpp"
#include "jacobi/transverse.hpp"

namespace jacobi {
namespace {

constexpr double kPi = std::numbers::pi;

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}
bool coin(Rng& rng) { return std::bernoulli_distribution(0.5)(rng); }

// Index options for one system and range; the tight variant quarters the
// scan step and divides the refinement tolerance by ten.
IndexOptions tuned(const IndexOptions& base, const JacobiSystem& sys, double lo, double hi,
                   bool tight) {
  IndexOptions o = base;
  if (tight) {
    o.scan_step = effective_scan_step(sys, lo, hi, base) / 4.0;
    o.refine_tol = base.refine_tol / 10.0;
  }
  return o;
}

std::string tag(int trial, int m) {
  return "trial=" + std::to_string(trial) + " m=" + std::to_string(m);
}

void annotate(std::vector<VerdictRecord>& vs, const std::string& prefix) {
  for (auto& v : vs) v.notes = prefix + (v.notes.empty() ? "" : " " + v.notes);
}

std::vector<VerdictRecord> lytchak_trial(const SuiteOptions& o, int trial, bool tight) {
  Rng rng(derive_seed(o.seed, trial));
  const int m = uniform_int(rng, 1, o.max_dim);
  const auto sys = random_trig_system(m, rng, o.norm_bound);
  const double hi = uniform(rng, 1.0, kPi);
  IntervalSpec iv{0.0, hi, coin(rng), coin(rng)};
  const FundamentalSolution flow(sys, 0.5 * hi, {0.0, hi}, o.integrator);
  const FieldSubspace l1 =
      coin(rng) ? vanishing_lagrangian(sys, 0.0) : random_lagrangian(sys, 0.5 * hi, rng);
  const FieldSubspace l2 = random_lagrangian_sharing(l1, uniform_int(rng, 0, m), rng);
  std::vector<VerdictRecord> out{
      verify_inequality(flow, LytchakArgs{&l1, &l2, iv}, tuned(o.index, *sys, 0.0, hi, tight))};
  annotate(out, tag(trial, m));
  return out;
}

std::vector<VerdictRecord> delta_lower_trial(const SuiteOptions& o, int trial, bool tight) {
  Rng rng(derive_seed(o.seed, trial));
  const int m = uniform_int(rng, 1, o.max_dim);
  const double delta = uniform(rng, 0.5, 2.0);
  const auto sys = random_positive_system(m, delta, rng);
  const double hi = 3.0 * kPi / std::sqrt(delta);
  const FundamentalSolution flow(sys, 0.0, {0.0, hi + 0.1}, o.integrator);
  const FieldSubspace l = coin(rng) ? vanishing_lagrangian(sys, 0.0) : random_lagrangian(sys, 0.0, rng);
  const IndexOptions io = tuned(o.index, *sys, 0.0, hi, tight);
  std::vector<VerdictRecord> out;
  for (int r = 1; r <= 3; ++r) {
    out.push_back(verify_inequality(flow, DeltaLowerArgs{&l, 0.0, r, delta}, io));
  }
  annotate(out, tag(trial, m) + " delta=" + std::to_string(delta));
  return out;
}

std::vector<VerdictRecord> conj_upper_trial(const SuiteOptions& o, int trial, bool tight) {
  Rng rng(derive_seed(o.seed, trial));
  const int m = uniform_int(rng, 1, o.max_dim);
  const double delta = uniform(rng, 0.5, 2.0);
  const auto sys = random_positive_system(m, delta, rng);
  const int r = uniform_int(rng, 1, 3);
  const double horizon = kPi / std::sqrt(delta);
  const double reach = r * horizon;
  const FundamentalSolution flow(sys, 0.0, {0.0, reach + horizon + 0.5}, o.integrator);
  const FieldSubspace l = coin(rng) ? vanishing_lagrangian(sys, 0.0) : random_lagrangian(sys, 0.0, rng);
  const IndexOptions io = tuned(o.index, *sys, 0.0, reach + horizon, tight);
  // Measured conjugate radius over base points in [0, reach].
  double radius = horizon;
  for (double s = 0.0; s <= reach; s += 0.25) {
    if (auto t = first_conjugate_time(flow, s, horizon, io)) radius = std::min(radius, *t - s);
  }
  double c = 0.95 * radius;
  VerdictRecord v;
  for (int attempt = 0; attempt < 5; ++attempt, c *= 0.8) {
    v = verify_inequality(flow, ConjUpperArgs{&l, 0.0, r, c}, io);
    if (v.status != VerdictStatus::hypothesis_not_met) break;
  }
  std::vector<VerdictRecord> out{v};
  annotate(out, tag(trial, m) + " measured_conj_radius=" + std::to_string(radius));
  return out;
}

std::vector<VerdictRecord> periodic_upper_trial(const SuiteOptions& o, int trial, bool tight) {
  Rng rng(derive_seed(o.seed, trial));
  const int m = uniform_int(rng, 1, o.max_dim);
  const double delta = uniform(rng, 0.1, 1.0);
  const auto sys = random_positive_system(m, delta, rng, 3.0, 2, 2.0);
  const double period = *sys->period();
  const double hi = 5.0 * period;
  const FundamentalSolution flow(sys, 0.0, {0.0, hi + 0.1}, o.integrator);
  const FieldSubspace l = coin(rng) ? vanishing_lagrangian(sys, 0.0) : random_lagrangian(sys, 0.0, rng);
  const IndexOptions io = tuned(o.index, *sys, 0.0, hi, tight);
  std::vector<VerdictRecord> out;
  for (int r = 1; r <= 5; ++r) {
    out.push_back(verify_inequality(flow, PeriodicUpperArgs{&l, 0.0, r, period}, io));
  }
  annotate(out, tag(trial, m));
  return out;
}

std::vector<VerdictRecord> transverse_trial(const SuiteOptions& o, int trial, bool tight) {
  Rng rng(derive_seed(o.seed, trial));
  const int m = uniform_int(rng, 2, std::max(2, o.max_dim));
  const double delta = uniform(rng, 0.5, 2.0);
  const auto sys = random_positive_system(m, delta, rng);
  const double len = uniform(rng, 2.0, 4.0);
  const auto flow = FundamentalSolution::make(sys, 0.0, {-0.5, len + 0.5}, o.integrator);
  const FieldSubspace l = coin(rng) ? vanishing_lagrangian(sys, 0.0) : random_lagrangian(sys, 0.0, rng);
  const int d = uniform_int(rng, 1, m - 1);
  const FieldSubspace w = random_subspace_of(l, d, rng);
  const double cut = uniform(rng, 0.0, len);
  const std::vector<IntervalSpec> intervals{IntervalSpec::closed(0.0, len),
                                            {0.0, cut, coin(rng), coin(rng)},
                                            {cut, len, coin(rng), coin(rng)}};
  TransverseOptions topt;
  topt.index = tuned(o.index, *sys, 0.0, len, tight);
  topt.integrator = o.integrator;
  const TransverseSystem tr(flow, w, {0.0, len}, 0.0, topt);
  const FieldSubspace lw = project_subspace(l, tr);
  std::vector<VerdictRecord> out;
  for (const auto& iv : intervals) {
    const int il = index_on_interval(*flow, l, iv, topt.index).total;
    const int iw = index_on_interval(*flow, w, iv, topt.index).total;
    const int ir = index_on_interval(*tr.reduced_flow(), lw, iv, topt.index).total;
    auto v = VerdictRecord::upper("index_sum", std::abs(il - iw - ir), 0);
    v.notes = "I=" + iv.to_string() + " ind_L=" + std::to_string(il) + " ind_W=" +
              std::to_string(iw) + " ind_L/W=" + std::to_string(ir);
    out.push_back(v);
  }
  annotate(out, tag(trial, m) + " d=" + std::to_string(d));
  return out;
}

std::vector<VerdictRecord> trial_once(SuiteKind kind, const SuiteOptions& o, int trial, bool tight) {
  try {
    switch (kind) {
      case SuiteKind::lytchak: return lytchak_trial(o, trial, tight);
      case SuiteKind::delta_lower: return delta_lower_trial(o, trial, tight);
      case SuiteKind::conj_upper: return conj_upper_trial(o, trial, tight);
      case SuiteKind::periodic_upper: return periodic_upper_trial(o, trial, tight);
      case SuiteKind::transverse_identity: return transverse_trial(o, trial, tight);
    }
  } catch (const Error& e) {
    auto v = VerdictRecord::numerical_failure(to_string(kind), e.what());
    v.notes = "trial=" + std::to_string(trial) + " " + v.notes;
    return {v};
  }
  return {};
}

}  // namespace

const char* to_string(SuiteKind k) {
  switch (k) {
    case SuiteKind::lytchak: return "lytchak";
    case SuiteKind::delta_lower: return "delta_lower";
    case SuiteKind::conj_upper: return "conj_upper";
    case SuiteKind::periodic_upper: return "periodic_upper";
    case SuiteKind::transverse_identity: return "transverse_identity";
  }
  return "?";
}

SuiteKind suite_kind_from_string(const std::string& name) {
  for (auto k : {SuiteKind::lytchak, SuiteKind::delta_lower, SuiteKind::conj_upper,
                 SuiteKind::periodic_upper, SuiteKind::transverse_identity}) {
    if (name == to_string(k)) return k;
  }
  throw ContractError("unknown suite kind '" + name + "'");
}

std::vector<VerdictRecord> run_trial(SuiteKind kind, const SuiteOptions& options, int trial) {
  auto first = trial_once(kind, options, trial, false);
  const bool clean = std::all_of(first.begin(), first.end(), [](const auto& v) { return v.pass; });
  if (clean) return first;
  auto second = trial_once(kind, options, trial, true);
  for (auto& v : second) v.notes += " (re-run at tightened tolerances)";
  return second;
}

std::vector<VerdictRecord> run_suite(SuiteKind kind, const SuiteOptions& options) {
  if (options.trials <= 0) return {};
  if (options.max_dim < 1) throw ContractError("run_suite: max_dim must be positive");
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(options.trials));
  std::vector<std::vector<VerdictRecord>> per_trial(options.trials);
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int i = next++; i < options.trials; i = next++) per_trial[i] = run_trial(kind, options, i);
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<VerdictRecord> out;
  for (auto& vs : per_trial) {
    for (auto& v : vs) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace jacobi
