#include "latticeloop/maps.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace latticeloop {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

void EmbeddedMap::finalize() {
  const int n = static_cast<int>(darts.size());
  prev.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    assert(darts[d].next >= 0 && darts[d].next < n);
    assert(prev[darts[d].next] == -1 && "next must be a permutation");
    prev[darts[d].next] = d;
  }

  faces.clear();
  face_of.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    if (face_of[d] >= 0) continue;
    Face f;
    f.kind = darts[d].kind;
    int cur = d;
    do {
      face_of[cur] = static_cast<int>(faces.size());
      f.darts.push_back(cur);
      cur = darts[cur].next;
    } while (cur != d);
    if (f.kind == FaceKind::blue) f.lattice_edge = positive_edge(darts[d].label);
    if (f.kind == FaceKind::yellow_internal) f.plaquette = darts[d].plaquette;
    if (f.kind == FaceKind::yellow_external) f.loop_index = darts[d].loop_index;
    faces.push_back(std::move(f));
  }

  // Vertex classes: corner c = end of dart c. The start corner of a dart x is
  // the end corner of prev[x]; dart d and partner(d) run the same map edge in
  // opposite directions, so end(d) = start(partner(d)) = end(prev[partner(d)]).
  UnionFind uf(n);
  for (int d = 0; d < n; ++d) {
    if (darts[d].partner >= 0) uf.unite(d, prev[darts[d].partner]);
  }
  for (auto& [a, b] : extra_vertex_unions) uf.unite(a, b);
  vertex_of.assign(n, -1);
  vertex_count = 0;
  for (int d = 0; d < n; ++d) {
    int r = uf.find(d);
    if (vertex_of[r] < 0) vertex_of[r] = vertex_count++;
    vertex_of[d] = vertex_of[r];
  }

  // Components over darts via next and partner (pinch unions do not join
  // components: a pinch point shared by two components would be a wedge, which
  // never arises from our constructions).
  UnionFind cf(n);
  for (int d = 0; d < n; ++d) {
    cf.unite(d, darts[d].next);
    if (darts[d].partner >= 0) cf.unite(d, darts[d].partner);
  }
  component_of.assign(n, -1);
  component_count = 0;
  for (int d = 0; d < n; ++d) {
    int r = cf.find(d);
    if (component_of[r] < 0) component_of[r] = component_count++;
    component_of[d] = component_of[r];
  }
}

MapTopology topology(const EmbeddedMap& m) {
  MapTopology t;
  const int n = static_cast<int>(m.darts.size());
  t.E = n / 2;
  t.components = m.component_count;
  std::vector<long long> vc(m.component_count, 0), ec(m.component_count, 0),
      fc(m.component_count, 0), bc(m.component_count, 0);
  std::vector<int> vertex_comp(m.vertex_count, -1);
  for (int d = 0; d < n; ++d) {
    if (vertex_comp[m.vertex_of[d]] < 0) {
      vertex_comp[m.vertex_of[d]] = m.component_of[d];
      vc[m.component_of[d]] += 1;
    }
  }
  for (int d = 0; d < n; ++d)
    if (d < m.darts[d].partner) ec[m.component_of[d]] += 1;
  for (const Face& f : m.faces) {
    int c = m.component_of[f.darts.front()];
    if (f.kind == FaceKind::yellow_external) {
      bc[c] += 1;
    } else {
      fc[c] += 1;
    }
  }
  t.V = std::accumulate(vc.begin(), vc.end(), 0LL);
  t.F_internal = std::accumulate(fc.begin(), fc.end(), 0LL);
  for (int c = 0; c < m.component_count; ++c) {
    t.boundary_per_component.push_back(bc[c]);
    long long chi = vc[c] - ec[c] + fc[c];
    t.chi += chi;
    t.boundary_components += bc[c];
    long long twice_genus = 2 - bc[c] - chi;
    if (twice_genus < 0 || twice_genus % 2 != 0) {
      t.genus_ok = false;
      t.genus_per_component.push_back(-1);
    } else {
      t.genus_per_component.push_back(twice_genus / 2);
    }
  }
  t.eta = t.chi - t.boundary_components;
  return t;
}

Int weight_infinity(const EmbeddedMap& m) {
  Int w = 1;
  for (const Face& f : m.faces) {
    if (f.kind != FaceKind::blue) continue;
    assert(f.darts.size() % 2 == 0);
    w *= blue_face_weight(static_cast<int>(f.darts.size()) / 2);
  }
  return w;
}

std::vector<std::vector<int>> dual_graph(const EmbeddedMap& m) {
  std::vector<std::set<int>> adj(m.faces.size());
  for (int d = 0; d < static_cast<int>(m.darts.size()); ++d) {
    int a = m.face_of[d], b = m.face_of[m.darts[d].partner];
    if (a != b) {
      adj[a].insert(b);
      adj[b].insert(a);
    }
  }
  std::vector<std::vector<int>> out(m.faces.size());
  for (size_t i = 0; i < adj.size(); ++i)
    out[i].assign(adj[i].begin(), adj[i].end());
  return out;
}

namespace {

// Is the dual graph minus the faces in `removed` connected?
bool dual_connected_without(const EmbeddedMap& m,
                            const std::vector<std::vector<int>>& dual,
                            const std::vector<char>& removed) {
  int start = -1, remaining = 0;
  for (size_t i = 0; i < m.faces.size(); ++i) {
    if (!removed[i]) {
      if (start < 0) start = static_cast<int>(i);
      ++remaining;
    }
  }
  if (remaining <= 1) return true;
  std::vector<char> seen(m.faces.size(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int visited = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : dual[u]) {
      if (!removed[v] && !seen[v]) {
        seen[v] = 1;
        ++visited;
        stack.push_back(v);
      }
    }
  }
  return visited == remaining;
}

}  // namespace

bool is_non_separable(const EmbeddedMap& m) {
  auto dual = dual_graph(m);
  std::set<Edge> blue_edges;
  for (const Face& f : m.faces)
    if (f.kind == FaceKind::blue) blue_edges.insert(f.lattice_edge);
  for (const Edge& e : blue_edges) {
    std::vector<char> removed(m.faces.size(), 0);
    for (size_t i = 0; i < m.faces.size(); ++i)
      if (m.faces[i].kind == FaceKind::blue && m.faces[i].lattice_edge == e)
        removed[i] = 1;
    if (!dual_connected_without(m, dual, removed)) return false;
  }
  return true;
}

std::vector<std::vector<int>> enclosure_loops(const EmbeddedMap& m,
                                              const Edge& e) {
  const Edge pe = positive_edge(e);
  std::vector<int> at_e;
  for (size_t i = 0; i < m.faces.size(); ++i)
    if (m.faces[i].kind == FaceKind::blue && m.faces[i].lattice_edge == pe)
      at_e.push_back(static_cast<int>(i));
  auto dual = dual_graph(m);
  std::vector<std::vector<int>> disconnecting;
  const size_t k = at_e.size();
  for (size_t mask = 1; mask < (size_t{1} << k); ++mask) {
    std::vector<char> removed(m.faces.size(), 0);
    std::vector<int> fam;
    for (size_t i = 0; i < k; ++i) {
      if (mask & (size_t{1} << i)) {
        removed[at_e[i]] = 1;
        fam.push_back(at_e[i]);
      }
    }
    if (!dual_connected_without(m, dual, removed))
      disconnecting.push_back(std::move(fam));
  }
  // keep inclusion-minimal families
  std::vector<std::vector<int>> minimal;
  for (const auto& a : disconnecting) {
    bool min = true;
    for (const auto& b : disconnecting) {
      if (b.size() < a.size() &&
          std::includes(a.begin(), a.end(), b.begin(), b.end())) {
        min = false;
        break;
      }
    }
    if (min) minimal.push_back(a);
  }
  return minimal;
}

ValidationReport validate(const EmbeddedMap& m, const StringOfLoops& s,
                          const PlaquetteAssignment& k) {
  ValidationReport r;
  const int n = static_cast<int>(m.darts.size());
  for (int d = 0; d < n; ++d) {
    const Dart& dd = m.darts[d];
    if (dd.partner < 0 || dd.partner >= n || dd.partner == d ||
        m.darts[dd.partner].partner != d) {
      r.fail("dart " + std::to_string(d) + ": partner is not an involution");
      return r;
    }
    if (m.darts[dd.partner].label != reverse_edge(dd.label))
      r.fail("dart " + std::to_string(d) + ": partner label not reversed");
  }

  for (size_t fi = 0; fi < m.faces.size(); ++fi) {
    const Face& f = m.faces[fi];
    for (int d : f.darts) {
      if (m.darts[d].kind != f.kind)
        r.fail("face " + std::to_string(fi) + ": mixed dart kinds");
    }
    if (f.kind == FaceKind::blue) {
      if (f.darts.size() % 2 != 0) {
        r.fail("face " + std::to_string(fi) + ": odd blue degree");
        continue;
      }
      const Edge pe = f.lattice_edge;
      for (size_t i = 0; i < f.darts.size(); ++i) {
        const Edge& a = m.darts[f.darts[i]].label;
        const Edge& b = m.darts[f.darts[(i + 1) % f.darts.size()]].label;
        if (positive_edge(a) != pe)
          r.fail("face " + std::to_string(fi) + ": blue labels not one edge");
        if (b != reverse_edge(a))
          r.fail("face " + std::to_string(fi) + ": blue labels not alternating");
      }
    } else if (f.kind == FaceKind::yellow_internal) {
      if (f.darts.size() != 4) {
        r.fail("face " + std::to_string(fi) + ": internal yellow not a 4-gon");
        continue;
      }
      auto bd = plaquette_boundary(f.plaquette);
      bool match = false;
      for (size_t rot = 0; rot < 4 && !match; ++rot) {
        match = true;
        for (size_t i = 0; i < 4; ++i) {
          if (m.darts[f.darts[i]].label != bd[(rot + i) % 4]) {
            match = false;
            break;
          }
        }
      }
      if (!match)
        r.fail("face " + std::to_string(fi) +
               ": labels do not traverse the tagged plaquette");
    }
    // dual bipartiteness: each map edge joins a blue and a yellow face
    for (int d : f.darts) {
      bool self_blue = m.darts[d].kind == FaceKind::blue;
      bool other_blue = m.darts[m.darts[d].partner].kind == FaceKind::blue;
      if (self_blue == other_blue)
        r.fail("map edge at dart " + std::to_string(d) +
               ": does not join blue to yellow");
    }
  }

  // plaquette counts per Def 2.3
  PlaquetteAssignment found;
  for (const Face& f : m.faces)
    if (f.kind == FaceKind::yellow_internal) found.add(f.plaquette, 1);
  if (!(found == k)) r.fail("internal yellow faces do not realize K");

  // boundary: one external face per loop, reading the loop from its root
  size_t externals = 0;
  for (const Face& f : m.faces)
    if (f.kind == FaceKind::yellow_external) ++externals;
  if (externals != s.loops.size())
    r.fail("external face count != loop count");
  if (m.boundary_roots.size() != s.loops.size()) {
    r.fail("boundary root count != loop count");
  } else {
    std::set<int> root_faces;
    for (int d : m.boundary_roots)
      if (d >= 0 && d < n) root_faces.insert(m.face_of[d]);
    if (root_faces.size() != s.loops.size())
      r.fail("boundary roots do not lie in distinct external faces");
    for (size_t li = 0; li < s.loops.size(); ++li) {
      int d = m.boundary_roots[li];
      const Loop& l = s.loops[li];
      if (d < 0 || d >= n || m.darts[d].kind != FaceKind::yellow_external) {
        r.fail("boundary root " + std::to_string(li) + " invalid");
        continue;
      }
      int cur = d;
      bool ok = true;
      for (size_t i = 0; i < l.size(); ++i) {
        if (m.darts[cur].label != l.edges[i]) ok = false;
        cur = m.darts[cur].next;
      }
      if (cur != d) ok = false;
      if (!ok)
        r.fail("external face " + std::to_string(li) +
               " does not read its loop");
    }
  }

  // vertex lattice labels consistent within classes, classes bipartite
  std::vector<Vertex> label_of_class(m.vertex_count);
  std::vector<char> have(m.vertex_count, 0);
  for (int d = 0; d < n; ++d) {
    Vertex v = m.vertex_label(d);
    int c = m.vertex_of[d];
    if (!have[c]) {
      label_of_class[c] = v;
      have[c] = 1;
    } else if (label_of_class[c] != v) {
      r.fail("vertex class " + std::to_string(c) +
             " has inconsistent lattice labels");
    }
  }

  if (r.ok) {
    MapTopology t = topology(m);
    if (!t.genus_ok) r.fail("component with non-integer or negative genus");
  }
  return r;
}

namespace {

void bfs_component(const EmbeddedMap& m, int root, std::vector<int>& canon_id,
                   std::vector<int>& order, int& next_id) {
  assert(canon_id[root] < 0);
  std::vector<int> queue{root};
  canon_id[root] = next_id++;
  order.push_back(root);
  size_t qi = 0;
  while (qi < queue.size()) {
    int d = queue[qi++];
    for (int nb : {m.darts[d].next, m.darts[d].partner}) {
      if (canon_id[nb] < 0) {
        canon_id[nb] = next_id++;
        order.push_back(nb);
        queue.push_back(nb);
      }
    }
  }
}

std::string code_from_order(const EmbeddedMap& m,
                            const std::vector<int>& canon_id,
                            const std::vector<int>& order) {
  std::ostringstream os;
  std::map<int, int> vclass;
  for (int d : order) {
    const Dart& dd = m.darts[d];
    char kc = dd.kind == FaceKind::blue
                  ? 'B'
                  : (dd.kind == FaceKind::yellow_internal ? 'Y' : 'X');
    os << kc << canon_id[dd.next] << ',' << canon_id[dd.partner] << ','
       << to_string(dd.label);
    auto [it, fresh] =
        vclass.try_emplace(m.vertex_of[d], static_cast<int>(vclass.size()));
    os << 'v' << it->second << ';';
  }
  return os.str();
}

}  // namespace

std::string canonical_code(const EmbeddedMap& m) {
  const int n = static_cast<int>(m.darts.size());
  std::vector<int> canon_id(n, -1), order;
  int next_id = 0;
  for (int root : m.boundary_roots)
    if (canon_id[root] < 0) bfs_component(m, root, canon_id, order, next_id);
  std::string code = code_from_order(m, canon_id, order);

  // Closed components: canonical root = the one minimizing the component code.
  std::vector<char> done_comp(m.component_count, 0);
  for (int d = 0; d < n; ++d)
    if (canon_id[d] >= 0) done_comp[m.component_of[d]] = 1;
  std::vector<std::string> closed_codes;
  for (int c = 0; c < m.component_count; ++c) {
    if (done_comp[c]) continue;
    std::string best;
    for (int root = 0; root < n; ++root) {
      if (m.component_of[root] != c) continue;
      std::vector<int> cid(n, -1), ord;
      int nid = 0;
      bfs_component(m, root, cid, ord, nid);
      std::string cc = code_from_order(m, cid, ord);
      if (best.empty() || cc < best) best = std::move(cc);
    }
    closed_codes.push_back(std::move(best));
    done_comp[c] = 1;
  }
  std::sort(closed_codes.begin(), closed_codes.end());
  for (auto& cc : closed_codes) code += "|" + cc;
  return code;
}

std::string map_dump_json(const EmbeddedMap& m) {
  nlohmann::json j;
  j["darts"] = nlohmann::json::array();
  for (const Dart& d : m.darts) {
    nlohmann::json dj;
    dj["next"] = d.next;
    dj["partner"] = d.partner;
    dj["label"] = {{"tail", d.label.tail}, {"axis", d.label.axis},
                   {"sign", d.label.sign}};
    dj["kind"] = d.kind == FaceKind::blue
                     ? "blue"
                     : (d.kind == FaceKind::yellow_internal ? "yellow"
                                                            : "external");
    j["darts"].push_back(std::move(dj));
  }
  j["boundary_roots"] = m.boundary_roots;
  return j.dump();
}

void remove_darts(EmbeddedMap& m, std::vector<int> to_remove) {
  std::sort(to_remove.begin(), to_remove.end());
  const int n = static_cast<int>(m.darts.size());
  std::vector<int> remap(n, -1);
  int nid = 0;
  for (int d = 0; d < n; ++d) {
    if (!std::binary_search(to_remove.begin(), to_remove.end(), d))
      remap[d] = nid++;
  }
  std::vector<Dart> nd;
  nd.reserve(nid);
  for (int d = 0; d < n; ++d) {
    if (remap[d] < 0) continue;
    Dart dd = m.darts[d];
    assert(remap[dd.next] >= 0 && remap[dd.partner] >= 0 &&
           "removed darts must be rewired away first");
    dd.next = remap[dd.next];
    dd.partner = remap[dd.partner];
    nd.push_back(std::move(dd));
  }
  m.darts = std::move(nd);
  for (auto& [a, b] : m.extra_vertex_unions) {
    assert(remap[a] >= 0 && remap[b] >= 0);
    a = remap[a];
    b = remap[b];
  }
  for (int& r : m.boundary_roots) {
    assert(remap[r] >= 0);
    r = remap[r];
  }
  m.finalize();
}

EmbeddedMap extract_component(const EmbeddedMap& m, int dart) {
  const int comp = m.component_of[dart];
  const int n = static_cast<int>(m.darts.size());
  std::vector<int> remap(n, -1);
  int nid = 0;
  for (int d = 0; d < n; ++d)
    if (m.component_of[d] == comp) remap[d] = nid++;
  EmbeddedMap out;
  for (int d = 0; d < n; ++d) {
    if (remap[d] < 0) continue;
    Dart dd = m.darts[d];
    dd.next = remap[dd.next];
    dd.partner = remap[dd.partner];
    out.darts.push_back(std::move(dd));
  }
  for (auto& [a, b] : m.extra_vertex_unions)
    if (remap[a] >= 0 && remap[b] >= 0)
      out.extra_vertex_unions.emplace_back(remap[a], remap[b]);
  for (int r : m.boundary_roots)
    if (remap[r] >= 0) out.boundary_roots.push_back(remap[r]);
  out.finalize();
  return out;
}

}  // namespace latticeloop
