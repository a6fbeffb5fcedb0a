#include "latticeloop/assignments.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace latticeloop {

int area(const PlaquetteAssignment& k) {
  int a = 0;
  for (auto& [p, c] : k.entries) a += c;
  return a;
}

PlaquetteAssignment remove(const PlaquetteAssignment& k, const Plaquette& p) {
  assert(k.count(p) >= 1);
  PlaquetteAssignment out = k;
  out.add(p, -1);
  return out;
}

PlaquetteAssignment translated(const PlaquetteAssignment& k,
                               const Vertex& offset) {
  PlaquetteAssignment out;
  for (auto& [p, c] : k.entries) out.entries[translated(p, offset)] = c;
  return out;
}

std::vector<std::pair<PlaquetteAssignment, PlaquetteAssignment>> decompositions(
    const PlaquetteAssignment& k) {
  std::vector<std::pair<PlaquetteAssignment, PlaquetteAssignment>> out;
  std::vector<std::pair<Plaquette, int>> items(k.entries.begin(),
                                               k.entries.end());
  std::vector<int> take(items.size(), 0);
  while (true) {
    PlaquetteAssignment k1, k2;
    for (size_t i = 0; i < items.size(); ++i) {
      k1.add(items[i].first, take[i]);
      k2.add(items[i].first, items[i].second - take[i]);
    }
    out.emplace_back(std::move(k1), std::move(k2));
    size_t i = 0;
    for (; i < items.size(); ++i) {
      if (take[i] < items[i].second) {
        ++take[i];
        break;
      }
      take[i] = 0;
    }
    if (i == items.size()) break;
  }
  return out;
}

int n_e(const StringOfLoops& s, const PlaquetteAssignment& k, const Edge& e) {
  int n = 0;
  for (const Loop& l : s.loops)
    n += static_cast<int>(std::count(l.edges.begin(), l.edges.end(), e));
  for (auto& [p, c] : k.entries) {
    auto bd = plaquette_boundary(p);
    if (std::find(bd.begin(), bd.end(), e) != bd.end()) n += c;
  }
  return n;
}

bool is_balanced(const StringOfLoops& s, const PlaquetteAssignment& k) {
  std::set<Edge> positive;
  for (const Loop& l : s.loops)
    for (const Edge& e : l.edges) positive.insert(positive_edge(e));
  for (auto& [p, c] : k.entries)
    for (const Edge& e : plaquette_boundary(p))
      positive.insert(positive_edge(e));
  for (const Edge& e : positive) {
    if (n_e(s, k, e) != n_e(s, k, reverse_edge(e))) return false;
  }
  return true;
}

bool is_balanced(const Loop& l, const PlaquetteAssignment& k) {
  return is_balanced(StringOfLoops{{l}}, k);
}

namespace {

std::vector<Edge> unoriented_boundary(const Plaquette& p) {
  std::vector<Edge> out;
  for (const Edge& e : plaquette_boundary(p)) out.push_back(positive_edge(e));
  std::sort(out.begin(), out.end());
  return out;
}

bool share_edge(const std::vector<Edge>& a, const std::vector<Edge>& b) {
  for (const Edge& e : a)
    if (std::binary_search(b.begin(), b.end(), e)) return true;
  return false;
}

}  // namespace

bool is_ell_connected(const Loop& l, const PlaquetteAssignment& k) {
  std::vector<Plaquette> support;
  for (auto& [p, c] : k.entries) support.push_back(positive_plaquette(p));
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  if (support.empty()) return true;

  std::vector<std::vector<Edge>> bds;
  for (const Plaquette& p : support) bds.push_back(unoriented_boundary(p));
  std::vector<Edge> loop_edges;
  for (const Edge& e : l.edges) loop_edges.push_back(positive_edge(e));
  std::sort(loop_edges.begin(), loop_edges.end());

  const size_t n = support.size();
  std::vector<int> comp(n, -1);
  for (size_t s0 = 0; s0 < n; ++s0) {
    if (comp[s0] >= 0) continue;
    std::vector<size_t> stack{s0};
    comp[s0] = static_cast<int>(s0);
    bool touches = false;
    std::vector<size_t> members;
    while (!stack.empty()) {
      size_t u = stack.back();
      stack.pop_back();
      members.push_back(u);
      if (share_edge(bds[u], loop_edges)) touches = true;
      for (size_t v = 0; v < n; ++v) {
        if (comp[v] < 0 && share_edge(bds[u], bds[v])) {
          comp[v] = static_cast<int>(s0);
          stack.push_back(v);
        }
      }
    }
    if (!touches) return false;
  }
  return true;
}

std::vector<PlaquetteAssignment> enumerate_balanced_assignments(const Loop& l,
                                                                int a_max) {
  assert(!l.is_null() && a_max >= 1);
  // Candidate unoriented plaquettes: breadth-first ball of radius a_max-1 in
  // the plaquette adjacency graph around the plaquettes touching l.
  std::vector<Plaquette> frontier;
  std::set<Plaquette> seen;
  for (const Edge& e : l.edges) {
    for (const Plaquette& p : plaquettes_containing(positive_edge(e))) {
      Plaquette u = positive_plaquette(p);
      if (seen.insert(u).second) frontier.push_back(u);
    }
  }
  std::vector<Plaquette> candidates(frontier.begin(), frontier.end());
  for (int depth = 1; depth < a_max; ++depth) {
    std::vector<Plaquette> next;
    for (const Plaquette& p : frontier) {
      for (const Edge& e : unoriented_boundary(p)) {
        for (const Plaquette& q : plaquettes_containing(e)) {
          Plaquette u = positive_plaquette(q);
          if (seen.insert(u).second) {
            next.push_back(u);
            candidates.push_back(u);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(candidates.begin(), candidates.end());

  std::vector<PlaquetteAssignment> out;
  std::vector<size_t> chosen;

  // For a chosen support, distribute area and orientations, filter balance.
  auto expand_support = [&]() {
    PlaquetteAssignment base;
    {
      // Quick reject: every support component must touch l.
      for (size_t i : chosen) base.entries[candidates[i]] = 1;
      if (!is_ell_connected(l, base)) return;
    }
    const size_t m = chosen.size();
    // counts[i] >= 1 summing to <= a_max
    std::vector<int> counts(m, 1);
    while (true) {
      int total = 0;
      for (int c : counts) total += c;
      if (total <= a_max) {
        // orientation split: positive copies a_i in 0..counts[i]
        std::vector<int> pos(m, 0);
        while (true) {
          PlaquetteAssignment k;
          for (size_t i = 0; i < m; ++i) {
            k.add(candidates[chosen[i]], pos[i]);
            k.add(inverse(candidates[chosen[i]]), counts[i] - pos[i]);
          }
          if (is_balanced(l, k)) out.push_back(std::move(k));
          size_t i = 0;
          for (; i < m; ++i) {
            if (pos[i] < counts[i]) {
              ++pos[i];
              break;
            }
            pos[i] = 0;
          }
          if (i == m) break;
        }
      }
      // next counts vector (odometer with per-slot cap a_max)
      size_t i = 0;
      for (; i < m; ++i) {
        if (counts[i] < a_max) {
          ++counts[i];
          break;
        }
        counts[i] = 1;
      }
      if (i == m) break;
    }
  };

  // Enumerate supports: subsets of candidates of size 1..a_max.
  auto rec = [&](auto&& self, size_t start) -> void {
    if (!chosen.empty()) expand_support();
    if (chosen.size() == static_cast<size_t>(a_max)) return;
    for (size_t i = start; i < candidates.size(); ++i) {
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);

  std::sort(out.begin(), out.end(), [](const PlaquetteAssignment& a,
                                       const PlaquetteAssignment& b) {
    int aa = area(a), ab = area(b);
    if (aa != ab) return aa < ab;
    return a.entries < b.entries;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_string(const PlaquetteAssignment& k) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto& [p, c] : k.entries) {
    if (!first) os << ", ";
    first = false;
    os << to_string(p) << ':' << c;
  }
  os << '}';
  return os.str();
}

}  // namespace latticeloop
