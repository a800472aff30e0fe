#include <doctest.h>

#include "jacobi/errors.hpp"
#include "jacobi/suites.hpp"

using namespace jacobi;

namespace {

bool same(const std::vector<VerdictRecord>& a, const std::vector<VerdictRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].statement != b[i].statement || a[i].lhs != b[i].lhs || a[i].rhs != b[i].rhs ||
        a[i].pass != b[i].pass || a[i].notes != b[i].notes) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("suites") {
  TEST_CASE("names round-trip") {
    for (auto k : {SuiteKind::lytchak, SuiteKind::delta_lower, SuiteKind::conj_upper,
                   SuiteKind::periodic_upper, SuiteKind::transverse_identity}) {
      CHECK(suite_kind_from_string(to_string(k)) == k);
    }
    CHECK_THROWS_AS(suite_kind_from_string("nope"), ContractError);
  }

  TEST_CASE("empty suite") {
    SuiteOptions o;
    o.trials = 0;
    CHECK(run_suite(SuiteKind::lytchak, o).empty());
  }

  TEST_CASE("results do not depend on the thread count") {
    SuiteOptions o;
    o.trials = 12;
    o.seed = 99;
    o.max_dim = 3;
    o.threads = 1;
    const auto one = run_suite(SuiteKind::lytchak, o);
    o.threads = 4;
    const auto four = run_suite(SuiteKind::lytchak, o);
    CHECK(one.size() == 12);
    CHECK(same(one, four));
    for (const auto& v : one) CHECK(v.pass);
  }

  TEST_CASE("small suites of every kind pass") {
    for (auto k : {SuiteKind::delta_lower, SuiteKind::conj_upper, SuiteKind::periodic_upper,
                   SuiteKind::transverse_identity}) {
      SuiteOptions o;
      o.trials = 4;
      o.seed = 7;
      o.max_dim = 3;
      for (const auto& v : run_suite(k, o)) CHECK_MESSAGE(v.pass, to_string(k) << ": " << v.notes);
    }
  }
}
