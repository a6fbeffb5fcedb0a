#include "latticeloop/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "latticeloop/pinching.hpp"

namespace latticeloop {

namespace {

void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& body) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      body(i);
    }
  };
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

std::string instance_name(const Loop& l, const PlaquetteAssignment& k) {
  return "l=" + loop_to_text(l) + " K=" + to_string(k);
}

}  // namespace

std::vector<Loop> window_loops_2d(int max_len) {
  std::vector<Loop> out;
  std::set<std::string> seen;
  auto in_window = [](const Vertex& v) {
    return v[0] >= 0 && v[0] <= 2 && v[1] >= 0 && v[1] <= 2;
  };
  std::vector<Edge> walk;
  auto rec = [&](auto&& self, const Vertex& start, const Vertex& cur) -> void {
    if (!walk.empty() && cur == start && !has_backtrack(Loop{walk})) {
      Loop l{walk};
      LoopCanon canon = canonicalize(l);
      if (seen.insert(canon.key).second) {
        out.push_back(translated(rotated(l, canon.rotation), negated(canon.offset)));
      }
    }
    if (static_cast<int>(walk.size()) >= max_len) return;
    for (int axis = 1; axis <= 2; ++axis) {
      for (int sign : {+1, -1}) {
        Edge e{cur, axis, sign};
        if (!walk.empty() && e == reverse_edge(walk.back())) continue;
        Vertex h = e.head();
        if (!in_window(h)) continue;
        walk.push_back(e);
        self(self, start, h);
        walk.pop_back();
      }
    }
  };
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      Vertex v{x, y};
      rec(rec, v, v);
    }
  std::sort(out.begin(), out.end(), [](const Loop& a, const Loop& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return canonicalize(a).key < canonicalize(b).key;
  });
  return out;
}

Loop random_loop(int dim, int max_len, std::mt19937& rng) {
  std::uniform_int_distribution<int> len_dist(2, max_len / 2);
  std::uniform_int_distribution<int> axis_dist(1, dim);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  while (true) {
    const int len = 2 * len_dist(rng);
    std::vector<Edge> walk;
    Vertex cur(dim, 0);
    bool dead = false;
    for (int i = 0; i < len; ++i) {
      Edge e;
      int tries = 0;
      do {
        e = Edge{cur, axis_dist(rng), sign_dist(rng) ? +1 : -1};
        if (++tries > 64) {
          dead = true;
          break;
        }
      } while (!walk.empty() && e == reverse_edge(walk.back()));
      if (dead) break;
      walk.push_back(e);
      cur = e.head();
    }
    if (dead) continue;
    Loop l{walk};
    if (cur == Vertex(dim, 0) && !has_backtrack(l)) return l;
  }
}

std::vector<std::pair<Loop, PlaquetteAssignment>> corpus_instances(
    int max_len, int max_area) {
  std::vector<std::pair<Loop, PlaquetteAssignment>> out;
  for (const Loop& l : window_loops_2d(max_len))
    for (const PlaquetteAssignment& k : enumerate_balanced_assignments(l, max_area))
      out.emplace_back(l, k);
  return out;
}

SuiteResult suite_weights(int max_k) {
  SuiteResult r;
  const Int expected[] = {0, 1, -1, 2, -5, 14};
  for (int i = 1; i <= 5; ++i) {
    ++r.checked;
    if (blue_face_weight(i) != expected[i])
      r.fail("w_" + std::to_string(i) + " != " + expected[i].str());
  }
  for (int k = 2; k <= max_k; ++k) {
    // w_k + sum_{h=1}^{k-1} w_h w_{k-h} = 0
    Int s = blue_face_weight(k);
    for (int h = 1; h < k; ++h) s += blue_face_weight(h) * blue_face_weight(k - h);
    ++r.checked;
    if (s != 0) r.fail("weight recursion fails at k=" + std::to_string(k));
  }
  for (int k = 0; k <= max_k; ++k) {
    // Catalan convolution C_{k+1} = sum C_i C_{k-i}
    Int s = 0;
    for (int i = 0; i <= k; ++i) s += catalan(i) * catalan(k - i);
    ++r.checked;
    if (s != catalan(k + 1))
      r.fail("catalan recursion fails at k=" + std::to_string(k));
  }
  ++r.checked;
  if (mobius({2, 3}) != blue_face_weight(2) * blue_face_weight(3))
    r.fail("mobius is not multiplicative over cycles");
  return r;
}

SuiteResult suite_oracle(int max_len_2d, int max_area_2d, int random_3d,
                         int max_len_3d, int max_area_3d, unsigned seed,
                         const EnumBudget& budget, int jobs) {
  SuiteResult r;
  auto instances = corpus_instances(max_len_2d, max_area_2d);
  Solver solver2(2);
  std::mutex mu;
  parallel_for(instances.size(), jobs, [&](size_t i) {
    const auto& [l, k] = instances[i];
    Int phi = solver2.phi_K(l, k);
    Int ss = surface_sum(l, k, MapClass::npm, budget);
    std::lock_guard<std::mutex> lock(mu);
    ++r.checked;
    if (phi != ss)
      r.fail("phi_K=" + phi.str() + " surface_sum=" + ss.str() + " at " +
             instance_name(l, k));
  });

  if (random_3d > 0) {
    Solver solver3(3);
    std::mt19937 rng(seed);
    int done = 0, attempts = 0;
    while (done < random_3d) {
      assert(++attempts < 100000);
      Loop l = random_loop(3, max_len_3d, rng);
      for (const PlaquetteAssignment& k :
           enumerate_balanced_assignments(l, max_area_3d)) {
        Int phi = solver3.phi_K(l, k);
        Int ss = surface_sum(l, k, MapClass::npm, budget);
        ++r.checked;
        ++done;
        if (phi != ss)
          r.fail("3d phi_K=" + phi.str() + " surface_sum=" + ss.str() + " at " +
                 instance_name(l, k));
        if (done >= random_3d) break;
      }
    }
  }
  return r;
}

SuiteResult suite_mle(int max_len, int max_area, const EnumBudget& budget,
                      int jobs) {
  SuiteResult r;
  auto instances = corpus_instances(max_len, max_area);
  {
    // the canonical NPM-empty instance: area-3 assignment on the plaquette
    Loop p = *parse_loop("+2 +1 -2 -1", 2);
    PlaquetteAssignment k;
    k.add(inverse(Plaquette{{0, 0}, 1, 2, +1}), 1);
    k.add(Plaquette{{1, 0}, 1, 2, +1}, 1);
    k.add(inverse(Plaquette{{1, 0}, 1, 2, +1}), 1);
    instances.emplace_back(p, k);
  }
  std::mutex mu;
  Solver solver(2);
  parallel_for(instances.size(), jobs, [&](size_t i) {
    const auto& [l, k] = instances[i];
    std::vector<std::string> local;
    int local_checked = 0;
    Int phi_canon = solver.phi_K(l, k);
    for (size_t at = 0; at < l.size(); ++at) {
      MleReport rep = verify_mle(l, k, at, budget);
      ++local_checked;
      if (!rep.ok)
        local.push_back("mle lhs=" + rep.lhs.str() + " rhs=" + rep.rhs.str() +
                        " at pos " + std::to_string(at) + " of " +
                        instance_name(l, k));
      Int phi_at = solver.phi_K_at(l, at, k);
      ++local_checked;
      if (phi_at != phi_canon)
        local.push_back("pivot dependence: " + phi_at.str() + " vs " +
                        phi_canon.str() + " at pos " + std::to_string(at) +
                        " of " + instance_name(l, k));
    }
    std::lock_guard<std::mutex> lock(mu);
    r.checked += local_checked;
    for (auto& f : local) r.fail(std::move(f));
  });
  return r;
}

SuiteResult suite_backtrack(int count, unsigned seed, const EnumBudget& budget) {
  SuiteResult r;
  std::mt19937 rng(seed);
  auto loops = window_loops_2d(6);
  Solver solver(2);
  int attempts = 0;
  while (r.checked < count) {
    assert(++attempts < 100000);
    const Loop& l = loops[std::uniform_int_distribution<size_t>(
        0, loops.size() - 1)(rng)];
    auto ks = enumerate_balanced_assignments(l, 2);
    if (ks.empty()) continue;
    const PlaquetteAssignment& k =
        ks[std::uniform_int_distribution<size_t>(0, ks.size() - 1)(rng)];

    Loop lb = l;
    const int injections =
        1 + std::uniform_int_distribution<int>(0, 1)(rng);  // 1 or 2
    for (int t = 0; t < injections; ++t) {
      size_t at = std::uniform_int_distribution<size_t>(0, lb.size() - 1)(rng);
      Vertex v = lb.edges[at].tail;
      Edge f{v, std::uniform_int_distribution<int>(1, 2)(rng),
             std::uniform_int_distribution<int>(0, 1)(rng) ? +1 : -1};
      lb.edges.insert(lb.edges.begin() + at, reverse_edge(f));
      lb.edges.insert(lb.edges.begin() + at, f);
    }
    assert(is_valid_loop(lb) && has_backtrack(lb));
    ++r.checked;
    if (erase_backtracks(lb) != l) {
      r.fail("erase_backtracks does not recover " + instance_name(l, k));
      continue;
    }
    Int a = surface_sum(l, k, MapClass::npm, budget);
    Int b = surface_sum(lb, k, MapClass::npm, budget);
    if (a != b)
      r.fail("surface sums " + a.str() + " vs " + b.str() +
             " after backtrack injection at " + instance_name(l, k));
    if (solver.phi_K(l, k) != solver.phi_K(lb, k))
      r.fail("phi_K changed after backtrack injection at " + instance_name(l, k));
  }
  return r;
}

SuiteResult suite_pinching(int max_len, int max_area, PinchingStats* stats,
                           const EnumBudget& budget) {
  SuiteResult r;
  PinchingStats local_stats;
  for (const auto& [l, k] : corpus_instances(max_len, max_area)) {
    for (const EmbeddedMap& m :
         enumerate_class(StringOfLoops{{l}}, k, MapClass::npm, budget)) {
      const Int wm = weight_infinity(m);
      for (size_t fi = 0; fi < m.faces.size(); ++fi) {
        const Face& f = m.faces[fi];
        if (f.kind != FaceKind::blue || f.darts.size() < 4) continue;
        if (f.darts.size() > 12) continue;
        if (!has_disjoint_vertices(m, static_cast<int>(fi))) continue;
        ++local_stats.faces_checked;

        // single-vertex pinch sets: sum of pinched weights = -w(M)
        for (int corner : f.darts) {
          auto ps = single_vertex_pinch_set(m, static_cast<int>(fi), corner);
          ++r.checked;
          if (ps.size() != f.darts.size() / 2 - 1)
            r.fail("pinch set size at " + instance_name(l, k));
          Int s = 0;
          for (const EmbeddedMap& mp : ps) s += weight_infinity(mp);
          ++r.checked;
          if (s + wm != 0)
            r.fail("single-vertex pinch sum " + s.str() + " vs -w(M)=" +
                   Int(-wm).str() + " at " + instance_name(l, k));
        }

        // all collections: total sum equals the product without this face
        Int rest = 1;
        for (size_t gi = 0; gi < m.faces.size(); ++gi)
          if (gi != fi && m.faces[gi].kind == FaceKind::blue)
            rest *= blue_face_weight(
                static_cast<int>(m.faces[gi].darts.size()) / 2);
        AllCollections ac = all_collections(m, static_cast<int>(fi));
        Int sum_all = 0, sum_vm = 0;
        for (const EmbeddedMap& mp : ac.non_separable) {
          Int w = weight_infinity(mp);
          sum_all += w;
          sum_vm += w;
        }
        for (const EmbeddedMap& mp : ac.separable) sum_all += weight_infinity(mp);
        ++r.checked;
        if (sum_all != rest)
          r.fail("collection sum " + sum_all.str() + " != rest product " +
                 rest.str() + " at " + instance_name(l, k));
        ++r.checked;
        if (ac.separable.empty()) {
          if (sum_vm != rest)
            r.fail("valid-collection sum " + sum_vm.str() +
                   " != rest product with no invalid pinching at " +
                   instance_name(l, k));
        } else {
          ++local_stats.invalid_instances;
          if (sum_vm != 0)
            r.fail("valid-collection sum " + sum_vm.str() +
                   " != 0 despite invalid pinchings at " + instance_name(l, k));
        }

        // arcs characterize exactly the separating single pinches
        auto arc_list = arcs(m, static_cast<int>(fi));
        std::set<std::pair<int, int>> arc_set(arc_list.begin(), arc_list.end());
        const int n = static_cast<int>(f.darts.size());
        for (int i = 0; i < n; ++i)
          for (int j = i + 2; j < n; ++j) {
            if ((j - i) % 2 != 0) continue;
            int cu = f.darts[i], cv = f.darts[j];
            if (m.vertex_of[cu] == m.vertex_of[cv]) continue;
            EmbeddedMap mp = pinch(m, cu, cv);
            bool separates = !is_non_separable(mp);
            bool is_arc = arc_set.count({std::min(cu, cv), std::max(cu, cv)}) ||
                          arc_set.count({std::max(cu, cv), std::min(cu, cv)});
            ++r.checked;
            if (separates != is_arc)
              r.fail(std::string("arc test mismatch (separates=") +
                     (separates ? "yes" : "no") + ") at " + instance_name(l, k));
          }
      }
    }
  }
  if (stats) *stats = local_stats;
  return r;
}

namespace {

EmbeddedMap combine(const EmbeddedMap& a, const EmbeddedMap& b) {
  EmbeddedMap out = a;
  const int off = static_cast<int>(a.darts.size());
  for (Dart d : b.darts) {
    d.next += off;
    d.partner += off;
    out.darts.push_back(d);
  }
  for (auto [u, v] : b.extra_vertex_unions)
    out.extra_vertex_unions.emplace_back(u + off, v + off);
  for (int rdart : b.boundary_roots) out.boundary_roots.push_back(rdart + off);
  out.finalize();
  return out;
}

PlaquetteAssignment internal_faces_of(const EmbeddedMap& m) {
  PlaquetteAssignment k;
  for (const Face& f : m.faces)
    if (f.kind == FaceKind::yellow_internal) k.add(f.plaquette, 1);
  return k;
}

std::vector<std::string> npm_codes(const StringOfLoops& s,
                                   const PlaquetteAssignment& k,
                                   const EnumBudget& budget) {
  std::vector<std::string> out;
  for (const EmbeddedMap& m : enumerate_class(s, k, MapClass::npm, budget))
    out.push_back(canonical_code(m));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SuiteResult suite_pps(int max_len, int max_area, const EnumBudget& budget) {
  SuiteResult r;
  for (const auto& [l, k] : corpus_instances(max_len, max_area)) {
    auto maps = enumerate_class(StringOfLoops{{l}}, k, MapClass::npm, budget);

    // buckets keyed by the target instance
    std::map<std::string, std::multiset<std::string>> split_got;
    std::map<std::string, std::multiset<std::string>> def_got;
    for (const EmbeddedMap& m : maps) {
      PpsStep step = pps_step(m, l, k);
      const Int wm = weight_infinity(m);
      if (step.half_degree == 1) {
        if (step.is_deformation) {
          ++r.checked;
          if (weight_infinity(step.result) != wm)
            r.fail("deformation weight changed at " + instance_name(l, k));
          auto rep = validate(step.result, StringOfLoops{{step.new_loop}},
                              remove(k, step.p));
          ++r.checked;
          if (!rep.ok)
            r.fail("invalid deformed map (" + rep.errors.front() + ") at " +
                   instance_name(l, k));
          def_got["-" + to_string(step.p)].insert(canonical_code(step.result));
        } else {
          assert(!step.part1.loop.is_null() && !step.part2.loop.is_null());
          Int w1 = weight_infinity(step.part1.map);
          Int w2 = weight_infinity(step.part2.map);
          ++r.checked;
          if (w1 * w2 != wm)
            r.fail("negative splitting weight " + Int(w1 * w2).str() + " vs " +
                   wm.str() + " at " + instance_name(l, k));
          EmbeddedMap c = combine(step.part1.map, step.part2.map);
          auto rep = validate(
              c, StringOfLoops{{step.part1.loop, step.part2.loop}}, k);
          ++r.checked;
          if (!rep.ok)
            r.fail("invalid split pair (" + rep.errors.front() + ") at " +
                   instance_name(l, k));
          split_got["-" + to_string(step.part1.loop) + "||" +
                    to_string(step.part2.loop)]
              .insert(canonical_code(c));
        }
      } else {
        Int pinched_sum = 0;
        for (const PpsPinchedBranch& br : step.branches) {
          Int wi = weight_infinity(br.pinched);
          pinched_sum += wi;
          if (br.is_deformation) {
            ++r.checked;
            if (weight_infinity(br.result) != wi)
              r.fail("positive deformation weight changed at " +
                     instance_name(l, k));
            auto rep = validate(br.result, StringOfLoops{{br.new_loop}},
                                remove(k, br.q));
            ++r.checked;
            if (!rep.ok)
              r.fail("invalid positively deformed map (" + rep.errors.front() +
                     ") at " + instance_name(l, k));
            def_got["+" + to_string(br.q)].insert(canonical_code(br.result));
          } else {
            Int w1 = weight_infinity(br.part1.map);
            Int w2 = weight_infinity(br.part2.map);
            ++r.checked;
            if (w1 * w2 != wi)
              r.fail("positive splitting weight " + Int(w1 * w2).str() + " vs " +
                     wi.str() + " at " + instance_name(l, k));
            EmbeddedMap c = combine(br.part1.map, br.part2.map);
            auto rep = validate(
                c, StringOfLoops{{br.part1.loop, br.part2.loop}}, k);
            ++r.checked;
            if (!rep.ok)
              r.fail("invalid positive split pair (" + rep.errors.front() +
                     ") at " + instance_name(l, k));
            split_got["+" + to_string(br.part1.loop) + "||" +
                      to_string(br.part2.loop)]
                .insert(canonical_code(c));
          }
        }
        ++r.checked;
        if (wm + pinched_sum != 0)
          r.fail("pinched branch weights sum to " + pinched_sum.str() +
                 ", expected -w(M)=" + Int(-wm).str() + " at " +
                 instance_name(l, k));
      }
    }

    // splitting images are exactly the NPM sets of the split strings
    std::map<std::string, std::multiset<std::string>> split_want;
    const Edge e = l.edges[0];
    for (auto& [l1, l2] : negative_splittings(l, 0)) {
      std::string key = "-" + to_string(l1) + "||" + to_string(l2);
      if (split_want.count(key)) continue;
      auto codes = npm_codes(StringOfLoops{{l1, l2}}, k, budget);
      split_want[key] = {codes.begin(), codes.end()};
    }
    for (auto& [l1, l2] : positive_splittings(l, 0)) {
      std::string key = "+" + to_string(l1) + "||" + to_string(l2);
      if (split_want.count(key)) continue;
      auto codes = npm_codes(StringOfLoops{{l1, l2}}, k, budget);
      split_want[key] = {codes.begin(), codes.end()};
    }
    for (auto& [key, want] : split_want) {
      ++r.checked;
      if (split_got[key] != want)
        r.fail("splitting image mismatch (got " +
               std::to_string(split_got[key].size()) + ", want " +
               std::to_string(want.size()) + ") for " + key + " at " +
               instance_name(l, k));
      split_got.erase(key);
    }
    ++r.checked;
    if (!split_got.empty())
      r.fail("splitting image outside the splitting family at " +
             instance_name(l, k));

    // deformation images are exactly the non-bad NPM maps of the target
    std::map<std::string, std::multiset<std::string>> def_want;
    for (const Plaquette& p : plaquettes_containing(reverse_edge(e))) {
      if (k.count(p) < 1) continue;
      DeformedInstance di = deformed_instance(l, 0, k, MergeMode::negative, p);
      auto codes = npm_codes(StringOfLoops{{di.loop}}, di.assignment, budget);
      std::set<std::string> bad;
      for (const EmbeddedMap& bm :
           bad_set(l, 0, k, MergeMode::negative, p, budget))
        bad.insert(canonical_code(bm));
      std::multiset<std::string> want;
      for (auto& c : codes)
        if (!bad.count(c)) want.insert(c);
      def_want["-" + to_string(p)] = std::move(want);
    }
    for (const Plaquette& q : plaquettes_containing(e)) {
      if (k.count(q) < 1) continue;
      DeformedInstance di = deformed_instance(l, 0, k, MergeMode::positive, q);
      auto codes = npm_codes(StringOfLoops{{di.loop}}, di.assignment, budget);
      std::set<std::string> bad;
      for (const EmbeddedMap& bm :
           bad_set(l, 0, k, MergeMode::positive, q, budget))
        bad.insert(canonical_code(bm));
      std::multiset<std::string> want;
      for (auto& c : codes)
        if (!bad.count(c)) want.insert(c);
      def_want["+" + to_string(q)] = std::move(want);
    }
    for (auto& [key, want] : def_want) {
      ++r.checked;
      if (def_got[key] != want)
        r.fail("deformation image mismatch (got " +
               std::to_string(def_got[key].size()) + ", want " +
               std::to_string(want.size()) + ") for " + key + " at " +
               instance_name(l, k));
      def_got.erase(key);
    }
    ++r.checked;
    if (!def_got.empty())
      r.fail("deformation image outside the deformation family at " +
             instance_name(l, k));
  }
  return r;
}

SuiteResult suite_cancellation(int max_len, int max_area,
                               const EnumBudget& budget) {
  SuiteResult r;
  for (const auto& [l, k] : corpus_instances(max_len, max_area)) {
    const Edge e = l.edges[0];
    Int neg = 0, pos = 0;
    for (const Plaquette& p : plaquettes_containing(reverse_edge(e))) {
      if (k.count(p) < 1) continue;
      for (const EmbeddedMap& m :
           bad_set(l, 0, k, MergeMode::negative, p, budget))
        neg += weight_infinity(m);
    }
    for (const Plaquette& q : plaquettes_containing(e)) {
      if (k.count(q) < 1) continue;
      for (const EmbeddedMap& m :
           bad_set(l, 0, k, MergeMode::positive, q, budget))
        pos += weight_infinity(m);
    }
    ++r.checked;
    if (neg != pos)
      r.fail("bad-set sums differ: negative " + neg.str() + " vs positive " +
             pos.str() + " at " + instance_name(l, k));
  }
  return r;
}

}  // namespace latticeloop
