#include "latticeloop/enumerate.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "latticeloop/pinching.hpp"

namespace latticeloop {

namespace {

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct EdgeSlot {
  std::vector<int> a_darts;  // blue darts labeled e^{-1} (over e-sides)
  std::vector<int> b_darts;  // blue darts labeled e (over e^{-1}-sides)
  std::vector<std::vector<int>> perms;  // all permutations of 0..n-1
  size_t fi = 0, gi = 0;                // current choice
};

// Yellow polygons plus unglued blue partner darts.
struct BaseComplex {
  EmbeddedMap base;
  std::vector<EdgeSlot> slots;
  long long total_gluings = 1;
};

BaseComplex build_base(const StringOfLoops& s, const PlaquetteAssignment& k,
                       const EnumBudget& budget) {
  BaseComplex bc;
  EmbeddedMap& m = bc.base;
  auto add_polygon = [&](const std::vector<Edge>& labels, FaceKind kind,
                         const Plaquette* plq, int loop_index) {
    const int start = static_cast<int>(m.darts.size());
    const int n = static_cast<int>(labels.size());
    for (int i = 0; i < n; ++i) {
      Dart y;
      y.label = labels[i];
      y.kind = kind;
      if (plq) y.plaquette = *plq;
      y.loop_index = loop_index;
      y.next = start + 2 * ((i + 1) % n);
      y.partner = start + 2 * i + 1;
      m.darts.push_back(y);
      Dart b;
      b.label = reverse_edge(labels[i]);
      b.kind = FaceKind::blue;
      b.partner = start + 2 * i;
      b.next = -1;  // chosen by the gluing
      m.darts.push_back(b);
    }
    return start;
  };

  for (size_t li = 0; li < s.loops.size(); ++li) {
    int start = add_polygon(s.loops[li].edges, FaceKind::yellow_external,
                            nullptr, static_cast<int>(li));
    m.boundary_roots.push_back(start);
  }
  for (auto& [p, c] : k.entries) {
    auto bd = plaquette_boundary(p);
    for (int i = 0; i < c; ++i)
      add_polygon(bd, FaceKind::yellow_internal, &p, -1);
  }

  // Group the blue darts by unoriented lattice edge.
  std::map<Edge, EdgeSlot> slots;
  for (int d = 0; d < static_cast<int>(m.darts.size()); ++d) {
    if (m.darts[d].kind != FaceKind::blue) continue;
    const Edge yellow_label = m.darts[m.darts[d].partner].label;
    const Edge pe = positive_edge(yellow_label);
    if (is_positively_oriented(yellow_label)) {
      slots[pe].a_darts.push_back(d);
    } else {
      slots[pe].b_darts.push_back(d);
    }
  }
  long long cost_sum = 0;
  for (auto& [pe, slot] : slots) {
    assert(slot.a_darts.size() == slot.b_darts.size() && "unbalanced input");
    const int n = static_cast<int>(slot.a_darts.size());
    long long per_edge = factorial(n) * factorial(n);
    cost_sum += per_edge;
    if (cost_sum > budget.max_cost ||
        bc.total_gluings > budget.max_cost / per_edge)
      throw BudgetExceeded("gluing enumeration over budget");
    bc.total_gluings *= per_edge;
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    do {
      slot.perms.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    bc.slots.push_back(std::move(slot));
  }
  return bc;
}

bool in_class(const EmbeddedMap& m, size_t n_loops, MapClass cls) {
  if (cls == MapClass::all) return true;
  MapTopology t = topology(m);
  if (t.components != static_cast<long long>(n_loops)) return false;
  for (int c = 0; c < t.components; ++c) {
    if (t.boundary_per_component[c] != 1) return false;
    if (t.genus_per_component[c] != 0) return false;
  }
  if (cls == MapClass::pm) return true;
  // npm: every component non-separable
  if (t.components == 1) return is_non_separable(m);
  for (int root : m.boundary_roots) {
    if (!is_non_separable(extract_component(m, root))) return false;
  }
  return true;
}

}  // namespace

EnumerationResult enumerate_with_counts(const StringOfLoops& s,
                                        const PlaquetteAssignment& k,
                                        MapClass cls,
                                        const EnumBudget& budget) {
  EnumerationResult out;
  if (!is_balanced(s, k)) return out;
  if (s.loops.empty() && k.empty()) return out;
  for (const Loop& l : s.loops) assert(!l.is_null());

  BaseComplex bc = build_base(s, k, budget);
  std::unordered_set<std::string> seen;

  while (true) {
    EmbeddedMap m = bc.base;
    for (const EdgeSlot& slot : bc.slots) {
      const auto& f = slot.perms[slot.fi];
      const auto& g = slot.perms[slot.gi];
      const int n = static_cast<int>(slot.a_darts.size());
      for (int i = 0; i < n; ++i) {
        m.darts[slot.a_darts[i]].next = slot.b_darts[f[i]];
        m.darts[slot.b_darts[i]].next = slot.a_darts[g[i]];
      }
    }
    m.finalize();
    if (in_class(m, s.loops.size(), cls)) {
      out.labeled_gluings += 1;
      std::string code = canonical_code(m);
      if (seen.insert(code).second) out.maps.push_back(std::move(m));
    }
    // advance the odometer
    size_t si = 0;
    for (; si < bc.slots.size(); ++si) {
      EdgeSlot& slot = bc.slots[si];
      if (++slot.fi < slot.perms.size()) break;
      slot.fi = 0;
      if (++slot.gi < slot.perms.size()) break;
      slot.gi = 0;
    }
    if (si == bc.slots.size()) break;
  }

  std::sort(out.maps.begin(), out.maps.end(),
            [](const EmbeddedMap& a, const EmbeddedMap& b) {
              return canonical_code(a) < canonical_code(b);
            });
  return out;
}

std::vector<EmbeddedMap> enumerate_class(const StringOfLoops& s,
                                         const PlaquetteAssignment& k,
                                         MapClass cls,
                                         const EnumBudget& budget) {
  return enumerate_with_counts(s, k, cls, budget).maps;
}

Int surface_sum_string(const StringOfLoops& s, const PlaquetteAssignment& k,
                       MapClass cls, const EnumBudget& budget) {
  Int sum = 0;
  for (const EmbeddedMap& m : enumerate_class(s, k, cls, budget))
    sum += weight_infinity(m);
  return sum;
}

Int surface_sum(const Loop& l, const PlaquetteAssignment& k, MapClass cls,
                const EnumBudget& budget) {
  if (l.is_null()) return k.empty() ? Int(1) : Int(0);
  return surface_sum_string(StringOfLoops{{l}}, k, cls, budget);
}

namespace {

PlaquetteAssignment internal_assignment(const EmbeddedMap& m) {
  PlaquetteAssignment k;
  for (const Face& f : m.faces)
    if (f.kind == FaceKind::yellow_internal) k.add(f.plaquette, 1);
  return k;
}

// Retags the yellow face of dart y (internal 4-gon) as part of boundary 0.
void retag_external(EmbeddedMap& m, int y) {
  int cur = y;
  do {
    m.darts[cur].kind = FaceKind::yellow_external;
    m.darts[cur].loop_index = 0;
    cur = m.darts[cur].next;
  } while (cur != y);
}

}  // namespace

PpsStep pps_step(const EmbeddedMap& m, const Loop& l,
                 const PlaquetteAssignment& k) {
  assert(!k.empty());
  PpsStep step;
  const int r0 = m.boundary_roots.at(0);
  assert(m.darts[r0].label == l.edges.at(0));
  const int b1 = m.darts[r0].partner;
  const Face& bf = m.faces[m.face_of[b1]];
  step.half_degree = static_cast<int>(bf.darts.size()) / 2;

  if (step.half_degree == 1) {
    const int b2 = m.darts[b1].next;
    const int y2 = m.darts[b2].partner;
    if (m.darts[y2].kind == FaceKind::yellow_internal) {
      // Case 1a: peel the 2-gon, fold the plaquette face into the boundary.
      step.is_deformation = true;
      step.p = m.darts[y2].plaquette;
      EmbeddedMap res = m;
      const int after_y2 = res.darts[y2].next;
      res.darts[res.prev[r0]].next = after_y2;
      res.darts[res.prev[y2]].next = res.darts[r0].next;
      // retag the three surviving plaquette darts
      int cur = after_y2;
      for (int i = 0; i < 3; ++i) {
        res.darts[cur].kind = FaceKind::yellow_external;
        res.darts[cur].loop_index = 0;
        cur = res.darts[cur].next;
      }
      res.boundary_roots[0] = after_y2;
      remove_darts(res, {r0, b1, b2, y2});
      step.result = std::move(res);
      step.new_loop = deform_with(l, 0, step.p, MergeMode::negative);
    } else {
      // Case 1b: peel the 2-gon and split the boundary in two.
      step.is_deformation = false;
      EmbeddedMap res = m;
      const int after_r0 = res.darts[r0].next;
      const int after_y2 = res.darts[y2].next;
      const int before_r0 = res.prev[r0];
      const int before_y2 = res.prev[y2];
      // boundary position of y2 (walked on the untouched map)
      size_t j = 1;
      {
        int cur = m.darts[r0].next;
        while (cur != y2) {
          cur = m.darts[cur].next;
          ++j;
          assert(j < l.size());
        }
      }
      Loop rl = rotated(l, 0);
      assert(rl.edges[j] == reverse_edge(rl.edges[0]));
      // close the two boundary cycles: p2 (after r0 .. before y2) and
      // p3 (after y2 .. before r0)
      res.darts[before_y2].next = after_r0;
      res.darts[before_r0].next = after_y2;
      Loop loop1, loop2;
      loop2.edges.insert(loop2.edges.end(), rl.edges.begin() + 1,
                         rl.edges.begin() + j);
      loop1.edges.insert(loop1.edges.end(), rl.edges.begin() + j + 1,
                         rl.edges.end());
      res.boundary_roots.clear();
      if (!loop1.is_null()) res.boundary_roots.push_back(after_y2);
      if (!loop2.is_null()) res.boundary_roots.push_back(after_r0);
      remove_darts(res, {r0, b1, b2, y2});
      step.part1.loop = std::move(loop1);
      step.part2.loop = std::move(loop2);
      if (!step.part1.loop.is_null())
        step.part1.map = extract_component(res, res.boundary_roots[0]);
      if (!step.part2.loop.is_null())
        step.part2.map = extract_component(
            res, res.boundary_roots[step.part1.loop.is_null() ? 0 : 1]);
    }
    return step;
  }

  // Case 2: half_degree >= 2. Pinch the end corner of b1 (the start vertex of
  // the root edge) with each other same-class corner of the blue face.
  for (int bp : bf.darts) {
    if (bp == b1) continue;
    if (!(m.darts[bp].label == m.darts[b1].label)) continue;  // same class
    PpsPinchedBranch branch;
    branch.pinched = pinch(m, b1, bp);
    const int yp = m.darts[bp].partner;
    EmbeddedMap res = branch.pinched;
    res.extra_vertex_unions.pop_back();  // separate the pinch point again
    std::swap(res.darts[r0].next, res.darts[yp].next);
    if (m.darts[yp].kind == FaceKind::yellow_internal) {
      // Case 2a: positive deformation with the plaquette of yp.
      branch.is_deformation = true;
      branch.q = m.darts[yp].plaquette;
      retag_external(res, yp);
      res.finalize();
      branch.result = std::move(res);
      branch.new_loop = deform_with(l, 0, branch.q, MergeMode::positive);
    } else {
      // Case 2b: positive splitting at the boundary copy yp of the root edge.
      branch.is_deformation = false;
      res.finalize();
      // boundary position of yp in l
      size_t j = 1;
      {
        int cur = m.darts[r0].next;
        while (cur != yp) {
          cur = m.darts[cur].next;
          ++j;
          assert(j < l.size());
        }
      }
      Loop rl = rotated(l, 0);
      assert(rl.edges[j] == rl.edges[0]);
      Loop loop1, loop2;  // (e p3, p2 e')
      loop1.edges.push_back(rl.edges[0]);
      loop1.edges.insert(loop1.edges.end(), rl.edges.begin() + j + 1,
                         rl.edges.end());
      loop2.edges.insert(loop2.edges.end(), rl.edges.begin() + 1,
                         rl.edges.begin() + j + 1);
      assert(j >= 2 && "consecutive equal copies cannot close a walk");
      const int root2 = m.darts[r0].next;
      res.boundary_roots = {r0, root2};
      branch.part1.loop = std::move(loop1);
      branch.part2.loop = std::move(loop2);
      branch.part1.map = extract_component(res, r0);
      branch.part2.map = extract_component(res, root2);
    }
    step.branches.push_back(std::move(branch));
  }
  return step;
}

DeformedInstance deformed_instance(const Loop& l, size_t at,
                                   const PlaquetteAssignment& k,
                                   MergeMode mode, const Plaquette& plq) {
  DeformedInstance out;
  out.loop = deform_with(l, at, plq, mode);
  out.assignment = remove(k, plq);
  return out;
}

bool is_bad(const EmbeddedMap& m, const Loop& l, size_t at, MergeMode mode) {
  const Edge e = l.edges.at(at);
  const Edge pe = positive_edge(e);
  std::vector<int> blue_at_e;
  for (size_t i = 0; i < m.faces.size(); ++i)
    if (m.faces[i].kind == FaceKind::blue && m.faces[i].lattice_edge == pe)
      blue_at_e.push_back(static_cast<int>(i));

  // cluster blue faces at e by shared vertex classes
  std::vector<int> comp(blue_at_e.size());
  std::iota(comp.begin(), comp.end(), 0);
  auto root = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  std::vector<std::set<int>> cls(blue_at_e.size());
  for (size_t i = 0; i < blue_at_e.size(); ++i)
    for (int d : m.faces[blue_at_e[i]].darts) cls[i].insert(m.vertex_of[d]);
  for (size_t i = 0; i < blue_at_e.size(); ++i)
    for (size_t j = i + 1; j < blue_at_e.size(); ++j) {
      bool share = false;
      for (int c : cls[i])
        if (cls[j].count(c)) share = true;
      if (share) comp[root(static_cast<int>(i))] = root(static_cast<int>(j));
    }

  const int r0 = m.boundary_roots.at(0);
  if (mode == MergeMode::negative) {
    // boundary reads e_a e_b e_c pi; the chain must join the start vertex of
    // pi (end of the e_c dart) with its final vertex (end of the dart before
    // the root).
    int d2 = m.darts[m.darts[r0].next].next;  // e_c dart
    const int u = m.vertex_of[d2];
    const int v = m.vertex_of[m.prev[r0]];
    for (size_t i = 0; i < blue_at_e.size(); ++i) {
      if (!cls[i].count(u)) continue;
      for (size_t j = 0; j < blue_at_e.size(); ++j) {
        if (root(static_cast<int>(i)) != root(static_cast<int>(j))) continue;
        if (cls[j].count(v)) return true;
      }
    }
    return false;
  }
  // positive: boundary reads e e_d e_f e_g e' pi; the chain must join the blue
  // faces holding the two boundary copies of e.
  int d4 = r0;
  for (int i = 0; i < 4; ++i) d4 = m.darts[d4].next;
  assert(m.darts[d4].label == m.darts[r0].label);
  int f1 = m.face_of[m.darts[r0].partner];
  int f2 = m.face_of[m.darts[d4].partner];
  int i1 = -1, i2 = -1;
  for (size_t i = 0; i < blue_at_e.size(); ++i) {
    if (blue_at_e[i] == f1) i1 = static_cast<int>(i);
    if (blue_at_e[i] == f2) i2 = static_cast<int>(i);
  }
  assert(i1 >= 0 && i2 >= 0);
  return root(i1) == root(i2);
}

std::vector<EmbeddedMap> bad_set(const Loop& l, size_t at,
                                 const PlaquetteAssignment& k, MergeMode mode,
                                 const Plaquette& plq,
                                 const EnumBudget& budget) {
  DeformedInstance di = deformed_instance(l, at, k, mode, plq);
  // Enumerated maps are rooted at the deformed loop's first edge, matching the
  // rooting conventions used by is_bad.
  std::vector<EmbeddedMap> out;
  for (EmbeddedMap& m :
       enumerate_class(StringOfLoops{{di.loop}}, di.assignment, MapClass::npm,
                       budget)) {
    // is_bad expects the pivot edge of the *original* loop; when mode is
    // negative the pivot copy is implicit in the rooting, so pass l/at through.
    Loop pivot_rooted = rotated(l, at);
    if (is_bad(m, pivot_rooted, 0, mode)) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace latticeloop
