#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jacobi/index.hpp"
#include "jacobi/verdict.hpp"

namespace jacobi {

enum class SuiteKind { lytchak, delta_lower, conj_upper, periodic_upper, transverse_identity };
const char* to_string(SuiteKind k);
/// Throws ContractError for unknown names.
SuiteKind suite_kind_from_string(const std::string& name);

struct SuiteOptions {
  int trials = 100;
  std::uint64_t seed = 1;
  int max_dim = 5;
  double norm_bound = 9.0;
  IndexOptions index{};
  IntegratorOptions integrator{};
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Randomized verification suites. Each trial draws its own system and
/// subspaces from derive_seed(seed, trial), so results do not depend on the
/// thread count. A failing verdict is re-run once at a quarter of the scan
/// step and a tenth of the refinement tolerance before it is reported.
std::vector<VerdictRecord> run_suite(SuiteKind kind, const SuiteOptions& options);

/// One trial of a suite (may produce several verdicts, e.g. r = 1, 2, 3).
std::vector<VerdictRecord> run_trial(SuiteKind kind, const SuiteOptions& options, int trial);

}  // namespace jacobi
