#include <doctest.h>

#include "latticeloop/verify.hpp"
#include "latticeloop/weights.hpp"

using namespace latticeloop;

TEST_CASE("catalan values") {
  CHECK(catalan(0) == 1);
  CHECK(catalan(1) == 1);
  CHECK(catalan(2) == 2);
  CHECK(catalan(3) == 5);
  CHECK(catalan(10) == 16796);
}

TEST_CASE("blue face weights") {
  CHECK(blue_face_weight(1) == 1);
  CHECK(blue_face_weight(2) == -1);
  CHECK(blue_face_weight(3) == 2);
  CHECK(blue_face_weight(4) == -5);
  CHECK(blue_face_weight(5) == 14);
}

TEST_CASE("mobius is the product over cycles") {
  CHECK(mobius({}) == 1);
  CHECK(mobius({1}) == 1);
  CHECK(mobius({2, 2}) == 1);
  CHECK(mobius({3, 2}) == -2);
}

TEST_CASE("weights suite passes") {
  SuiteResult r = suite_weights(12);
  CHECK(r.ok());
  CHECK(r.checked > 0);
}

TEST_CASE("w2 mutation hook flips exactly w2") {
  set_w2_mutation(true);
  CHECK(w2_mutation_enabled());
  CHECK(blue_face_weight(2) == 1);
  CHECK(blue_face_weight(1) == 1);
  CHECK(blue_face_weight(3) == 2);
  CHECK(!suite_weights(12).ok());
  set_w2_mutation(false);
  CHECK(blue_face_weight(2) == -1);
}
