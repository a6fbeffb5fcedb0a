#include <doctest.h>

#include <algorithm>

#include "latticeloop/enumerate.hpp"

using namespace latticeloop;

namespace {

const Plaquette P00{{0, 0}, 1, 2, +1};

Loop plaq() { return *parse_loop("+2 +1 -2 -1", 2); }

}  // namespace

TEST_CASE("single plaquette surface sums") {
  Loop p = plaq();
  PlaquetteAssignment k;
  k.add(inverse(P00), 1);
  CHECK(surface_sum(p, k, MapClass::all) == 1);
  CHECK(surface_sum(p, k, MapClass::pm) == 1);
  CHECK(surface_sum(p, k, MapClass::npm) == 1);
  CHECK(surface_sum(p, PlaquetteAssignment{}, MapClass::npm) == 0);
}

TEST_CASE("null and pure-backtrack boundaries") {
  CHECK(surface_sum(Loop{}, PlaquetteAssignment{}, MapClass::npm) == 1);
  PlaquetteAssignment k;
  k.add(P00, 1);
  CHECK(surface_sum(Loop{}, k, MapClass::npm) == 0);
  Loop bt = *parse_loop("+1 -1", 2);
  CHECK(surface_sum(bt, PlaquetteAssignment{}, MapClass::npm) == 1);
}

TEST_CASE("the area-3 census for the plaquette") {
  Loop p = plaq();
  auto ks = enumerate_balanced_assignments(p, 3);
  std::vector<Int> pm_sums, npm_sums;
  for (auto& k : ks) {
    if (area(k) != 3) continue;
    pm_sums.push_back(surface_sum(p, k, MapClass::pm));
    npm_sums.push_back(surface_sum(p, k, MapClass::npm));
  }
  REQUIRE(pm_sums.size() == 5);
  std::sort(pm_sums.begin(), pm_sums.end());
  CHECK(pm_sums == std::vector<Int>{-4, -1, -1, -1, -1});
  Int npm_total = 0;
  for (auto& v : npm_sums) npm_total += v;
  CHECK(npm_total == 0);
}

TEST_CASE("the canonical empty-NPM instance") {
  Loop p = plaq();
  PlaquetteAssignment k;
  k.add(inverse(P00), 1);
  Plaquette q{{1, 0}, 1, 2, +1};
  k.add(q, 1);
  k.add(inverse(q), 1);
  CHECK(enumerate_class(StringOfLoops{{p}}, k, MapClass::npm).empty());
  CHECK(surface_sum(p, k, MapClass::pm) != 0);
}

TEST_CASE("labeled gluing counts satisfy rooted rigidity") {
  Loop p = plaq();
  {
    PlaquetteAssignment k;
    k.add(inverse(P00), 1);
    auto res = enumerate_with_counts(StringOfLoops{{p}}, k, MapClass::npm);
    CHECK(res.maps.size() == 1);
    CHECK(res.labeled_gluings == 1);
  }
  {
    Loop pp = p;
    pp.edges.insert(pp.edges.end(), p.edges.begin(), p.edges.end());
    PlaquetteAssignment k;
    k.add(inverse(P00), 2);
    auto res = enumerate_with_counts(StringOfLoops{{pp}}, k, MapClass::npm);
    CHECK(res.labeled_gluings ==
          2 * static_cast<long long>(res.maps.size()));  // K! = 2! = 2
  }
}

TEST_CASE("budget guard throws instead of running away") {
  Loop p = plaq();
  Loop pp = p;
  pp.edges.insert(pp.edges.end(), p.edges.begin(), p.edges.end());
  PlaquetteAssignment k;
  k.add(inverse(P00), 2);
  CHECK_THROWS_AS(
      enumerate_with_counts(StringOfLoops{{pp}}, k, MapClass::npm, EnumBudget{3}),
      BudgetExceeded);
}

TEST_CASE("pps step on the disk is a negative deformation to the null instance") {
  Loop p = plaq();
  PlaquetteAssignment k;
  k.add(inverse(P00), 1);
  auto maps = enumerate_class(StringOfLoops{{p}}, k, MapClass::npm);
  REQUIRE(maps.size() == 1);
  PpsStep step = pps_step(maps[0], p, k);
  CHECK(step.half_degree == 1);
  CHECK(step.is_deformation);
  CHECK(step.p == inverse(P00));
  CHECK(step.new_loop.size() == p.size() + 2);
  CHECK(erase_backtracks(step.new_loop).is_null());
  auto rep = validate(step.result, StringOfLoops{{step.new_loop}},
                      PlaquetteAssignment{});
  for (auto& e : rep.errors) MESSAGE(e);
  CHECK(rep.ok);
  CHECK(weight_infinity(step.result) == weight_infinity(maps[0]));
}

TEST_CASE("deformed instances bookkeeping") {
  Loop p = plaq();
  PlaquetteAssignment k;
  k.add(inverse(P00), 1);
  DeformedInstance di =
      deformed_instance(p, 0, k, MergeMode::negative, inverse(P00));
  CHECK(di.loop.size() == 6);
  CHECK(di.assignment.empty());
}
