#include <doctest.h>

#include "latticeloop/lattice.hpp"

using namespace latticeloop;

TEST_CASE("plaquette boundary is a closed 4-walk with the fixed traversal") {
  Plaquette p{{0, 0}, 1, 2, +1};
  auto bd = plaquette_boundary(p);
  REQUIRE(bd.size() == 4);
  // base -> base+ej -> base+ei+ej -> base+ei -> base
  CHECK(bd[0] == Edge{{0, 0}, 2, +1});
  CHECK(bd[1] == Edge{{0, 1}, 1, +1});
  CHECK(bd[2] == Edge{{1, 1}, 2, -1});
  CHECK(bd[3] == Edge{{1, 0}, 1, -1});
  for (size_t i = 0; i < 4; ++i) CHECK(bd[i].head() == bd[(i + 1) % 4].tail);
}

TEST_CASE("inverse plaquette boundary reverses the traversal") {
  Plaquette p{{2, -1}, 1, 2, +1};
  auto bd = plaquette_boundary(p);
  auto ibd = plaquette_boundary(inverse(p));
  REQUIRE(ibd.size() == 4);
  for (size_t i = 0; i < 4; ++i)
    CHECK(ibd[i] == reverse_edge(bd[3 - i]));
}

TEST_CASE("edge head/reverse/positive basics") {
  Edge e{{1, 2, 3}, 2, -1};
  CHECK(e.head() == Vertex{1, 1, 3});
  CHECK(reverse_edge(reverse_edge(e)) == e);
  CHECK(positive_edge(e) == reverse_edge(e));
  CHECK(positive_edge(positive_edge(e)) == positive_edge(e));
  CHECK(!is_positively_oriented(e));
}

TEST_CASE("plaquettes_containing finds 2(d-1) oriented plaquettes") {
  for (int dim : {2, 3, 4}) {
    Vertex v(dim, 0);
    for (int axis = 1; axis <= dim; ++axis) {
      for (int sign : {+1, -1}) {
        Edge e{v, axis, sign};
        auto ps = plaquettes_containing(e);
        CHECK(ps.size() == static_cast<size_t>(2 * (dim - 1)));
        for (const Plaquette& p : ps) {
          auto bd = plaquette_boundary(p);
          bool found = false;
          for (const Edge& b : bd)
            if (b == e) found = true;
          CHECK(found);
        }
        // all distinct
        for (size_t i = 0; i < ps.size(); ++i)
          for (size_t j = i + 1; j < ps.size(); ++j)
            CHECK(!(ps[i] == ps[j]));
      }
    }
  }
}

TEST_CASE("translation acts coherently") {
  Vertex off{3, -2};
  Edge e{{0, 1}, 1, +1};
  CHECK(translated(e, off).head() == translated(e.head(), off));
  Plaquette p{{0, 0}, 1, 2, -1};
  auto bd = plaquette_boundary(translated(p, off));
  auto bd0 = plaquette_boundary(p);
  for (size_t i = 0; i < 4; ++i) CHECK(bd[i] == translated(bd0[i], off));
}
