#include <doctest.h>

#include <json.hpp>

#include "latticeloop/enumerate.hpp"
#include "latticeloop/maps.hpp"

using namespace latticeloop;

namespace {

// The one-plaquette disk: boundary = plaquette loop, K = one inverse copy.
struct Disk {
  Loop l;
  PlaquetteAssignment k;
  EmbeddedMap m;
};

Disk make_disk() {
  Disk d;
  d.l = *parse_loop("+2 +1 -2 -1", 2);
  d.k.add(inverse(Plaquette{{0, 0}, 1, 2, +1}), 1);
  auto maps = enumerate_class(StringOfLoops{{d.l}}, d.k, MapClass::all);
  REQUIRE(maps.size() == 1);
  d.m = maps[0];
  return d;
}

}  // namespace

TEST_CASE("one-plaquette disk structure") {
  Disk d = make_disk();
  const EmbeddedMap& m = d.m;
  CHECK(m.darts.size() == 16);

  auto rep = validate(m, StringOfLoops{{d.l}}, d.k);
  for (auto& e : rep.errors) MESSAGE(e);
  CHECK(rep.ok);

  MapTopology t = topology(m);
  CHECK(t.V == 4);
  CHECK(t.E == 8);
  CHECK(t.F_internal == 5);  // 1 internal plaquette + 4 blue 2-gons
  CHECK(t.chi == 1);
  CHECK(t.components == 1);
  CHECK(t.boundary_components == 1);
  REQUIRE(t.genus_per_component.size() == 1);
  CHECK(t.genus_per_component[0] == 0);
  CHECK(t.genus_ok);

  CHECK(weight_infinity(m) == 1);
  CHECK(is_non_separable(m));
  for (const Edge& e : d.l.edges)
    CHECK(enclosure_loops(m, e).empty());
}

TEST_CASE("dual graph of the disk is connected and bipartite-adjacent") {
  Disk d = make_disk();
  auto dual = dual_graph(d.m);
  CHECK(dual.size() == d.m.faces.size());
  // every blue face touches the external and the internal yellow face
  int blue = 0;
  for (size_t i = 0; i < d.m.faces.size(); ++i) {
    if (d.m.faces[i].kind != FaceKind::blue) continue;
    ++blue;
    CHECK(dual[i].size() == 2);
    for (int nb : dual[i])
      CHECK(d.m.faces[nb].kind != FaceKind::blue);
  }
  CHECK(blue == 4);
}

TEST_CASE("canonical code is stable and discriminating") {
  Disk d = make_disk();
  std::string code = canonical_code(d.m);
  CHECK(!code.empty());
  EmbeddedMap copy = d.m;
  copy.finalize();
  CHECK(canonical_code(copy) == code);

  // a different instance yields a different code
  PlaquetteAssignment k2 = d.k;
  k2.add(inverse(Plaquette{{0, 0}, 1, 2, +1}), 1);
  k2.add(Plaquette{{0, 0}, 1, 2, +1}, 1);
  auto maps = enumerate_class(StringOfLoops{{d.l}}, k2, MapClass::all);
  for (const EmbeddedMap& m : maps) CHECK(canonical_code(m) != code);
}

TEST_CASE("map dump parses as JSON with one entry per dart") {
  Disk d = make_disk();
  auto j = nlohmann::json::parse(map_dump_json(d.m));
  CHECK(j["darts"].size() == d.m.darts.size());
}

TEST_CASE("extract_component of a connected map is the map itself") {
  Disk d = make_disk();
  EmbeddedMap c = extract_component(d.m, d.m.boundary_roots[0]);
  CHECK(c.darts.size() == d.m.darts.size());
  CHECK(canonical_code(c) == canonical_code(d.m));
}

TEST_CASE("validation catches broken partner involutions") {
  Disk d = make_disk();
  EmbeddedMap broken = d.m;
  broken.darts[0].partner = 0;
  auto rep = validate(broken, StringOfLoops{{d.l}}, d.k);
  CHECK(!rep.ok);
}
