#include "latticeloop/pinching.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <unordered_set>

namespace latticeloop {

bool has_disjoint_vertices(const EmbeddedMap& m, int face) {
  const Face& f = m.faces[face];
  std::set<int> classes;
  for (int d : f.darts) classes.insert(m.vertex_of[d]);
  return classes.size() == f.darts.size();
}

int corner_position(const EmbeddedMap& m, int face, int corner) {
  const Face& f = m.faces[face];
  auto it = std::find(f.darts.begin(), f.darts.end(), corner);
  assert(it != f.darts.end());
  return static_cast<int>(it - f.darts.begin());
}

EmbeddedMap pinch(const EmbeddedMap& m, int corner_u, int corner_v) {
  assert(corner_u != corner_v);
  const int face = m.face_of[corner_u];
  assert(m.face_of[corner_v] == face);
  assert(m.darts[corner_u].kind == FaceKind::blue);
  const int pu = corner_position(m, face, corner_u);
  const int pv = corner_position(m, face, corner_v);
  assert((pu - pv) % 2 == 0 && "pinched corners must share the partite class");
  assert(m.vertex_of[corner_u] != m.vertex_of[corner_v]);
  EmbeddedMap out = m;
  std::swap(out.darts[corner_u].next, out.darts[corner_v].next);
  out.extra_vertex_unions.emplace_back(corner_u, corner_v);
  out.finalize();
  return out;
}

std::vector<EmbeddedMap> single_vertex_pinch_set(const EmbeddedMap& m,
                                                 int face, int corner_v) {
  assert(has_disjoint_vertices(m, face));
  const Face& f = m.faces[face];
  assert(f.darts.size() >= 4);
  const int pv = corner_position(m, face, corner_v);
  std::vector<EmbeddedMap> out;
  for (size_t i = 0; i < f.darts.size(); ++i) {
    if (static_cast<int>(i) == pv) continue;
    if ((static_cast<int>(i) - pv) % 2 != 0) continue;
    out.push_back(pinch(m, f.darts[i], corner_v));
  }
  return out;
}

namespace {

// Do two disjoint position sets on a cycle of size n interleave?
bool blocks_cross(std::vector<int> x, std::vector<int> y, int n) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  if (x.size() < 2 || y.empty()) return false;
  // arcs of the circle cut by x; y crosses x iff it meets >= 2 arcs
  auto arc_of = [&](int p) {
    // index of the largest x element <= p, cyclically
    auto it = std::upper_bound(x.begin(), x.end(), p);
    if (it == x.begin()) return static_cast<int>(x.size()) - 1;
    return static_cast<int>(it - x.begin()) - 1;
  };
  (void)n;
  int first = arc_of(y.front());
  for (int p : y)
    if (arc_of(p) != first) return true;
  return false;
}

}  // namespace

ClassifiedCollection classify_collection(const EmbeddedMap& m, int face,
                                         const PinchingCollection& coll) {
  const Face& f = m.faces[face];
  const int n = static_cast<int>(f.darts.size());
  std::map<int, int> pos;  // corner -> position
  for (int i = 0; i < n; ++i) pos[f.darts[i]] = i;

  // union-find over involved corners
  std::map<int, int> parent;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto& [u, v] : coll) {
    assert(pos.count(u) && pos.count(v));
    assert((pos[u] - pos[v]) % 2 == 0);
    parent.try_emplace(u, u);
    parent.try_emplace(v, v);
    parent[find(u)] = find(v);
  }

  bool was_resolved = false;
  while (true) {
    // gather blocks
    std::map<int, std::vector<int>> blocks;
    for (auto& [c, _] : parent) blocks[find(c)].push_back(c);
    std::vector<std::vector<int>> bl;
    for (auto& [root, members] : blocks) bl.push_back(members);
    // find a crossing pair
    bool merged = false;
    for (size_t i = 0; i < bl.size() && !merged; ++i) {
      for (size_t j = i + 1; j < bl.size() && !merged; ++j) {
        std::vector<int> xi, xj;
        for (int c : bl[i]) xi.push_back(pos[c]);
        for (int c : bl[j]) xj.push_back(pos[c]);
        if (blocks_cross(xi, xj, n) || blocks_cross(xj, xi, n)) {
          if ((xi.front() - xj.front()) % 2 != 0) {
            return ClassifiedCollection{CollectionStatus::non_feasible, {}};
          }
          parent[find(bl[i].front())] = find(bl[j].front());
          merged = true;
          was_resolved = true;
        }
      }
    }
    if (!merged) {
      ClassifiedCollection out;
      out.status = was_resolved ? CollectionStatus::resolved
                                : CollectionStatus::feasible;
      for (auto& b : bl) {
        std::sort(b.begin(), b.end(),
                  [&](int a, int c) { return pos[a] < pos[c]; });
        out.blocks.push_back(b);
      }
      std::sort(out.blocks.begin(), out.blocks.end(),
                [&](const std::vector<int>& a, const std::vector<int>& b) {
                  return pos[a.front()] < pos[b.front()];
                });
      return out;
    }
  }
}

EmbeddedMap apply_collection(const EmbeddedMap& m, int face,
                             const std::vector<std::vector<int>>& blocks) {
  EmbeddedMap cur = m;
  (void)face;
  for (const auto& block : blocks) {
    assert(block.size() >= 2);
    for (size_t i = 1; i < block.size(); ++i) {
      assert(cur.face_of[block[0]] == cur.face_of[block[i]]);
      cur = pinch(cur, block[0], block[i]);
    }
  }
  return cur;
}

AllCollections all_collections(const EmbeddedMap& m, int face) {
  assert(m.faces[face].kind == FaceKind::blue);
  assert(has_disjoint_vertices(m, face));
  const Face& f = m.faces[face];
  const int n = static_cast<int>(f.darts.size());
  assert(n <= 12 && "pinching collection enumeration bounded for oracle use");

  // Enumerate partial partitions of positions 0..n-1 into same-parity blocks
  // of size >= 2, pairwise non-crossing; positions map to corners f.darts[i].
  std::vector<std::vector<std::vector<int>>> partitions;
  std::vector<std::vector<int>> blocks;
  auto record = [&]() {
    for (auto& b : blocks)
      if (b.size() < 2) return;
    for (size_t i = 0; i < blocks.size(); ++i)
      for (size_t j = i + 1; j < blocks.size(); ++j)
        if (blocks_cross(blocks[i], blocks[j], n) ||
            blocks_cross(blocks[j], blocks[i], n))
          return;
    partitions.push_back(blocks);
  };
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      record();
      return;
    }
    // skip position i
    self(self, i + 1);
    // join an existing block of matching parity
    for (auto& b : blocks) {
      if ((b.front() - i) % 2 == 0) {
        b.push_back(i);
        self(self, i + 1);
        b.pop_back();
      }
    }
    // open a new block
    blocks.push_back({i});
    self(self, i + 1);
    blocks.pop_back();
  };
  rec(rec, 0);

  AllCollections out;
  std::unordered_set<std::string> seen;
  for (const auto& part : partitions) {
    std::vector<std::vector<int>> corner_blocks;
    for (const auto& b : part) {
      std::vector<int> cb;
      for (int p : b) cb.push_back(f.darts[p]);
      corner_blocks.push_back(std::move(cb));
    }
    EmbeddedMap res = apply_collection(m, face, corner_blocks);
    std::string code = canonical_code(res);
    if (!seen.insert(code).second) continue;
    if (is_non_separable(res)) {
      out.non_separable.push_back(std::move(res));
    } else {
      out.separable.push_back(std::move(res));
    }
  }
  return out;
}

std::vector<std::pair<int, int>> arcs(const EmbeddedMap& m, int face) {
  const Face& f = m.faces[face];
  assert(f.kind == FaceKind::blue);
  const int n = static_cast<int>(f.darts.size());

  std::set<Edge> other_edges;
  for (const Face& g : m.faces)
    if (g.kind == FaceKind::blue && !(g.lattice_edge == f.lattice_edge))
      other_edges.insert(g.lattice_edge);

  std::set<std::pair<int, int>> found;
  for (const Edge& e : other_edges) {
    std::vector<int> fs;
    for (size_t i = 0; i < m.faces.size(); ++i)
      if (m.faces[i].kind == FaceKind::blue && m.faces[i].lattice_edge == e)
        fs.push_back(static_cast<int>(i));
    // cluster the faces at e by shared vertex classes
    std::vector<int> comp(fs.size());
    for (size_t i = 0; i < fs.size(); ++i) comp[i] = static_cast<int>(i);
    auto croot = [&](int x) {
      while (comp[x] != x) x = comp[x] = comp[comp[x]];
      return x;
    };
    auto classes_of = [&](int fi) {
      std::set<int> cl;
      for (int d : m.faces[fi].darts) cl.insert(m.vertex_of[d]);
      return cl;
    };
    std::vector<std::set<int>> cls;
    for (int fi : fs) cls.push_back(classes_of(fi));
    for (size_t i = 0; i < fs.size(); ++i)
      for (size_t j = i + 1; j < fs.size(); ++j) {
        bool share = false;
        for (int c : cls[i])
          if (cls[j].count(c)) share = true;
        if (share) comp[croot(static_cast<int>(i))] = croot(static_cast<int>(j));
      }
    std::map<int, std::set<int>> cluster_classes;
    for (size_t i = 0; i < fs.size(); ++i)
      cluster_classes[croot(static_cast<int>(i))].insert(cls[i].begin(),
                                                         cls[i].end());
    for (auto& [root, classes] : cluster_classes) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 2; j < n; ++j) {
          if ((j - i) % 2 != 0) continue;
          int cu = f.darts[i], cv = f.darts[j];
          if (m.vertex_of[cu] == m.vertex_of[cv]) continue;
          if (classes.count(m.vertex_of[cu]) && classes.count(m.vertex_of[cv]))
            found.insert({cu, cv});
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace latticeloop
