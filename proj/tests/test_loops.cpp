#include <doctest.h>

#include <map>
#include <set>

#include "latticeloop/loops.hpp"
#include "latticeloop/verify.hpp"

using namespace latticeloop;

namespace {

Loop L(const std::string& text, int dim = 2) {
  std::string err;
  auto l = parse_loop(text, dim, &err);
  REQUIRE_MESSAGE(l.has_value(), err);
  return *l;
}

std::multiset<Edge> edge_multiset(const Loop& l) {
  return {l.edges.begin(), l.edges.end()};
}

}  // namespace

TEST_CASE("parse/print round trip") {
  Loop p = L("+1 +2 -1 -2");
  CHECK(p.size() == 4);
  CHECK(is_valid_loop(p));
  CHECK(!has_backtrack(p));
  CHECK(loop_to_text(p) == "+1 +2 -1 -2");
  Loop q = L("@1,-1 +2 +1 -2 -1");
  CHECK(q.edges[0].tail == Vertex{1, -1});
  CHECK(loop_to_text(q) == "@1,-1 +2 +1 -2 -1");
  CHECK(L(loop_to_text(q)) == q);
}

TEST_CASE("parse rejects open walks and bad tokens") {
  std::string err;
  CHECK(!parse_loop("+1 +2", 2, &err));
  CHECK(!parse_loop("+3", 2, &err));
  CHECK(!parse_loop("banana", 2, &err));
  CHECK(parse_loop("", 2, &err).has_value());  // null loop
  CHECK(parse_loop("+1 -1", 2, &err).has_value());  // backtracks allowed
}

TEST_CASE("erase_backtracks handles nesting and the cyclic wrap") {
  CHECK(erase_backtracks(L("+1 -1")).is_null());
  CHECK(erase_backtracks(L("+1 +2 -2 -1")).is_null());
  Loop p = L("+1 +2 -1 -2");
  Loop padded = L("+1 +2 -2 +2 -1 -2");
  CHECK(erase_backtracks(padded) == p);
  // wrap-around pair: last edge cancels the first
  Loop wrap = L("-2 +1 +2 -1");
  Loop reduced = erase_backtracks(wrap);
  CHECK((reduced.size() == wrap.size() || reduced.size() == wrap.size() - 2 ||
         reduced.is_null()));
  CHECK(!has_backtrack(reduced));
  CHECK(canonicalize(erase_backtracks(L("+2 +2 -2 +1 -2 -1"))).key ==
        canonicalize(L("+2 +1 -2 -1")).key);
}

TEST_CASE("rotation and translation basics") {
  Loop p = L("+1 +2 -1 -2");
  Loop r = rotated(p, 2);
  CHECK(r.edges[0] == p.edges[2]);
  CHECK(is_valid_loop(r));
  CHECK(edge_multiset(r) == edge_multiset(p));
  Loop t = translated(p, {5, 7});
  CHECK(t.edges[0].tail == Vertex{5, 7});
}

TEST_CASE("splitting counts and edge conservation on the window corpus") {
  for (const Loop& l : window_loops_2d(8)) {
    for (size_t at = 0; at < l.size(); ++at) {
      const Edge e = l.edges[at];
      int copies = 0, rev_copies = 0;
      for (const Edge& f : l.edges) {
        if (f == e) ++copies;
        if (f == reverse_edge(e)) ++rev_copies;
      }
      auto pos = positive_splittings(l, at);
      auto neg = negative_splittings(l, at);
      CHECK(pos.size() == static_cast<size_t>(copies - 1));
      CHECK(neg.size() == static_cast<size_t>(rev_copies));
      for (auto& [l1, l2] : pos) {
        CHECK(l1.size() + l2.size() == l.size());
        CHECK(is_valid_loop(l1));
        CHECK(is_valid_loop(l2));
        std::multiset<Edge> merged = edge_multiset(l1);
        for (const Edge& f : l2.edges) merged.insert(f);
        CHECK(merged == edge_multiset(l));
      }
      for (auto& [l1, l2] : neg) {
        CHECK(l1.size() + l2.size() == l.size() - 2);
        CHECK(is_valid_loop(l1));
        CHECK(is_valid_loop(l2));
        std::multiset<Edge> merged = edge_multiset(l1);
        for (const Edge& f : l2.edges) merged.insert(f);
        merged.insert(e);
        merged.insert(reverse_edge(e));
        CHECK(merged == edge_multiset(l));
      }
    }
  }
}

TEST_CASE("doubled plaquette splits into two plaquettes") {
  Loop p = L("+1 +2 -1 -2");
  Loop pp = p;
  pp.edges.insert(pp.edges.end(), p.edges.begin(), p.edges.end());
  auto pos = positive_splittings(pp, 0);
  REQUIRE(pos.size() == 1);
  CHECK(pos[0].first.size() == 4);
  CHECK(pos[0].second.size() == 4);
  CHECK(canonicalize(pos[0].first).key == canonicalize(p).key);
  CHECK(canonicalize(pos[0].second).key == canonicalize(p).key);
}

TEST_CASE("deformations change length by +4 (positive) and +2 (negative)") {
  for (const Loop& l : window_loops_2d(6)) {
    for (size_t at = 0; at < l.size(); ++at) {
      auto dpos = deformations(l, at, MergeMode::positive);
      auto dneg = deformations(l, at, MergeMode::negative);
      CHECK(dpos.size() == 2);
      CHECK(dneg.size() == 2);
      for (auto& [dl, q] : dpos) {
        CHECK(dl.size() == l.size() + 4);
        CHECK(is_valid_loop(dl));
      }
      for (auto& [dl, q] : dneg) {
        CHECK(dl.size() == l.size() + 2);
        CHECK(is_valid_loop(dl));
      }
    }
  }
}

TEST_CASE("merge inverts splitting") {
  Loop p = L("+1 +2 -1 -2");
  Loop q = translated(p, {1, 0});  // shares the edge between the squares
  // q contains the reverse of p's edge at position 2? locate a shared pair
  bool merged_any = false;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) {
      if (q.edges[j] == reverse_edge(p.edges[i])) {
        Loop m = merge(p, i, q, j, MergeMode::negative);
        CHECK(m.size() == 6);
        CHECK(is_valid_loop(m));
        merged_any = true;
      }
      if (q.edges[j] == p.edges[i]) {
        Loop m = merge(p, i, q, j, MergeMode::positive);
        CHECK(m.size() == 8);
        CHECK(is_valid_loop(m));
        merged_any = true;
      }
    }
  CHECK(merged_any);
}

TEST_CASE("canonicalize is rotation and translation invariant") {
  for (const Loop& l : window_loops_2d(6)) {
    LoopCanon c = canonicalize(l);
    CHECK(!c.tied_rotations.empty());
    bool has_rot = false;
    for (size_t r : c.tied_rotations)
      if (r == c.rotation) has_rot = true;
    CHECK(has_rot);
    for (size_t r = 0; r < l.size(); ++r)
      CHECK(canonicalize(rotated(l, r)).key == c.key);
    CHECK(canonicalize(translated(l, {-4, 9})).key == c.key);
  }
  CHECK(canonicalize(L("+1 +2 -1 -2")).key !=
        canonicalize(L("+2 +1 -2 -1")).key);
}

TEST_CASE("window corpus looks sane") {
  auto w4 = window_loops_2d(4);
  CHECK(w4.size() == 2);  // plaquette and its reverse
  auto w6 = window_loops_2d(6);
  CHECK(w6.size() > w4.size());
  std::set<std::string> keys;
  for (const Loop& l : window_loops_2d(8)) {
    CHECK(!has_backtrack(l));
    CHECK(is_valid_loop(l));
    CHECK(keys.insert(canonicalize(l).key).second);
  }
}
