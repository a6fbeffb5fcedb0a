#include <doctest.h>

#include "latticeloop/verify.hpp"

using namespace latticeloop;

// Reduced-bound runs of the property suites; the acceptance binary runs them
// at the full documented bounds.

TEST_CASE("oracle suite (small bounds)") {
  SuiteResult r = suite_oracle(6, 2, 10, 4, 1, 7, EnumBudget{}, 2);
  for (auto& f : r.failures) MESSAGE(f);
  CHECK(r.ok());
  CHECK(r.checked > 0);
}

TEST_CASE("mle suite (small bounds)") {
  SuiteResult r = suite_mle(4, 2, EnumBudget{}, 2);
  for (auto& f : r.failures) MESSAGE(f);
  CHECK(r.ok());
  CHECK(r.checked > 0);
}

TEST_CASE("backtrack suite (small count)") {
  SuiteResult r = suite_backtrack(25, 3, EnumBudget{});
  for (auto& f : r.failures) MESSAGE(f);
  CHECK(r.ok());
  CHECK(r.checked == 25);
}

TEST_CASE("pinching suite (small bounds)") {
  PinchingStats stats;
  SuiteResult r = suite_pinching(8, 2, &stats, EnumBudget{});
  for (auto& f : r.failures) MESSAGE(f);
  CHECK(r.ok());
  CHECK(stats.faces_checked > 0);
}

TEST_CASE("pps suite (small bounds)") {
  SuiteResult r = suite_pps(4, 2, EnumBudget{});
  for (auto& f : r.failures) MESSAGE(f);
  CHECK(r.ok());
  CHECK(r.checked > 0);
}

TEST_CASE("cancellation suite (small bounds)") {
  SuiteResult r = suite_cancellation(4, 2, EnumBudget{});
  for (auto& f : r.failures) MESSAGE(f);
  CHECK(r.ok());
  CHECK(r.checked > 0);
}

TEST_CASE("random 3d loops close and avoid backtracks") {
  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    Loop l = random_loop(3, 6, rng);
    CHECK(is_valid_loop(l));
    CHECK(!has_backtrack(l));
    CHECK(l.size() >= 4);
    CHECK(l.size() <= 6);
  }
}
