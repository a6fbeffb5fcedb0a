#include <doctest.h>

#include "latticeloop/assignments.hpp"
#include "latticeloop/verify.hpp"

using namespace latticeloop;

namespace {

const Plaquette P00{{0, 0}, 1, 2, +1};

Loop plaq() {
  return *parse_loop("+2 +1 -2 -1", 2);
}

}  // namespace

TEST_CASE("multiset bookkeeping") {
  PlaquetteAssignment k;
  CHECK(k.empty());
  k.add(P00, 2);
  k.add(inverse(P00), 1);
  CHECK(area(k) == 3);
  CHECK(k.count(P00) == 2);
  PlaquetteAssignment r = remove(k, P00);
  CHECK(area(r) == 2);
  CHECK(r.count(P00) == 1);
  k.add(P00, -2);
  CHECK(k.count(P00) == 0);
  CHECK(area(k) == 1);
}

TEST_CASE("decompositions enumerate prod(K(p)+1) ordered pairs") {
  PlaquetteAssignment k;
  k.add(P00, 2);
  k.add(inverse(P00), 1);
  auto dec = decompositions(k);
  CHECK(dec.size() == 6);
  for (auto& [k1, k2] : dec) {
    PlaquetteAssignment sum = k1;
    for (auto& [p, c] : k2.entries) sum.add(p, c);
    CHECK(sum == k);
  }
  // distinct
  for (size_t i = 0; i < dec.size(); ++i)
    for (size_t j = i + 1; j < dec.size(); ++j)
      CHECK(!(dec[i].first == dec[j].first));
}

TEST_CASE("balance of the plaquette instances") {
  Loop p = plaq();
  PlaquetteAssignment k1;
  k1.add(inverse(P00), 1);
  CHECK(is_balanced(p, k1));
  CHECK(is_ell_connected(p, k1));
  PlaquetteAssignment k2;
  k2.add(P00, 1);
  CHECK(!is_balanced(p, k2));
  // n_e: the left edge of the square
  Edge left_up{{0, 0}, 2, +1};
  StringOfLoops s{{p}};
  CHECK(n_e(s, k1, left_up) == 1);
  CHECK(n_e(s, k1, reverse_edge(left_up)) == 1);
  CHECK(n_e(s, PlaquetteAssignment{}, reverse_edge(left_up)) == 0);
}

TEST_CASE("assignment enumeration for the plaquette matches the known census") {
  Loop p = plaq();
  auto ks = enumerate_balanced_assignments(p, 3);
  std::map<int, int> by_area;
  for (auto& k : ks) {
    CHECK(is_balanced(p, k));
    CHECK(is_ell_connected(p, k));
    CHECK(area(k) >= 1);
    CHECK(area(k) <= 3);
    ++by_area[area(k)];
  }
  CHECK(by_area[1] == 1);  // {p^{-1}: 1}
  CHECK(by_area[2] == 0);
  CHECK(by_area[3] == 5);  // the five connected balanced area-3 assignments
  // no duplicates
  for (size_t i = 0; i < ks.size(); ++i)
    for (size_t j = i + 1; j < ks.size(); ++j)
      CHECK(!(ks[i] == ks[j]));
}

TEST_CASE("enumerated assignments are complete on a spot check") {
  Loop p = plaq();
  auto ks = enumerate_balanced_assignments(p, 3);
  // hand-built member of the area-3 family: p^{-1} plus a detached-but-attached
  // pair q, q^{-1} on the square to the right
  PlaquetteAssignment k;
  k.add(inverse(P00), 1);
  Plaquette q{{1, 0}, 1, 2, +1};
  k.add(q, 1);
  k.add(inverse(q), 1);
  bool found = false;
  for (auto& cand : ks)
    if (cand == k) found = true;
  CHECK(found);
}

TEST_CASE("ell-connectivity prunes detached clusters") {
  Loop p = plaq();
  PlaquetteAssignment k;
  k.add(inverse(P00), 1);
  Plaquette far{{5, 5}, 1, 2, +1};
  k.add(far, 1);
  k.add(inverse(far), 1);
  CHECK(is_balanced(p, k));
  CHECK(!is_ell_connected(p, k));
}
