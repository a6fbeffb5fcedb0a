#include "latticeloop/loops.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace latticeloop {

bool is_closed_walk(const std::vector<Edge>& edges) {
  const size_t n = edges.size();
  if (n == 0) return true;
  for (size_t i = 0; i < n; ++i) {
    if (edges[i].head() != edges[(i + 1) % n].tail) return false;
  }
  return true;
}

bool is_valid_loop(const Loop& l) {
  if (l.edges.empty()) return true;
  const size_t d = l.edges.front().tail.size();
  for (const Edge& e : l.edges) {
    if (e.tail.size() != d) return false;
    if (e.axis < 1 || e.axis > static_cast<int>(d)) return false;
    if (e.sign != 1 && e.sign != -1) return false;
  }
  return is_closed_walk(l.edges);
}

bool has_backtrack(const Loop& l) {
  const size_t n = l.size();
  if (n < 2) return false;
  for (size_t i = 0; i < n; ++i) {
    if (l.edges[(i + 1) % n] == reverse_edge(l.edges[i])) return true;
  }
  return false;
}

Loop rotated(const Loop& l, size_t at) {
  assert(at < l.size() || l.is_null());
  Loop out;
  out.edges.reserve(l.size());
  for (size_t i = 0; i < l.size(); ++i)
    out.edges.push_back(l.edges[(at + i) % l.size()]);
  return out;
}

Loop translated(const Loop& l, const Vertex& offset) {
  Loop out;
  out.edges.reserve(l.size());
  for (const Edge& e : l.edges) out.edges.push_back(translated(e, offset));
  return out;
}

Loop erase_backtracks(const Loop& l) {
  std::vector<Edge> cur = l.edges;
  bool changed = true;
  while (changed && cur.size() >= 2) {
    changed = false;
    const size_t n = cur.size();
    for (size_t i = 0; i < n; ++i) {
      const size_t j = (i + 1) % n;
      if (cur[j] == reverse_edge(cur[i])) {
        if (j > i) {
          cur.erase(cur.begin() + j);
          cur.erase(cur.begin() + i);
        } else {  // wrap-around pair (last, first)
          cur.erase(cur.begin() + i);
          cur.erase(cur.begin());
        }
        changed = true;
        break;
      }
    }
  }
  return Loop{cur};
}

std::vector<std::pair<Loop, Loop>> positive_splittings(const Loop& l,
                                                       size_t at) {
  assert(at < l.size());
  const Loop r = rotated(l, at);
  const Edge e = r.edges[0];
  std::vector<std::pair<Loop, Loop>> out;
  for (size_t j = 1; j < r.size(); ++j) {
    if (r.edges[j] != e) continue;
    // r = e p2 e' p3, parts (e p3, p2 e')
    Loop part1, part2;
    part1.edges.push_back(e);
    part1.edges.insert(part1.edges.end(), r.edges.begin() + j + 1,
                       r.edges.end());
    part2.edges.insert(part2.edges.end(), r.edges.begin() + 1,
                       r.edges.begin() + j + 1);
    out.emplace_back(std::move(part1), std::move(part2));
  }
  return out;
}

std::vector<std::pair<Loop, Loop>> negative_splittings(const Loop& l,
                                                       size_t at) {
  assert(at < l.size());
  const Loop r = rotated(l, at);
  const Edge erev = reverse_edge(r.edges[0]);
  std::vector<std::pair<Loop, Loop>> out;
  for (size_t j = 1; j < r.size(); ++j) {
    if (r.edges[j] != erev) continue;
    // r = e p2 e^{-1} p3, parts (p3, p2)
    Loop part1, part2;
    part1.edges.insert(part1.edges.end(), r.edges.begin() + j + 1,
                       r.edges.end());
    part2.edges.insert(part2.edges.end(), r.edges.begin() + 1,
                       r.edges.begin() + j);
    out.emplace_back(std::move(part1), std::move(part2));
  }
  return out;
}

Loop merge(const Loop& l1, size_t at1, const Loop& l2, size_t at2,
           MergeMode mode) {
  assert(at1 < l1.size() && at2 < l2.size());
  const Loop r1 = rotated(l1, at1);  // e p2
  const Loop r2 = rotated(l2, at2);  // e' p4  (or e^{-1} p4)
  const Edge e = r1.edges[0];
  Loop out;
  if (mode == MergeMode::positive) {
    assert(r2.edges[0] == e);
    // e p4 e' p2
    out.edges.push_back(e);
    out.edges.insert(out.edges.end(), r2.edges.begin() + 1, r2.edges.end());
    out.edges.push_back(r2.edges[0]);
    out.edges.insert(out.edges.end(), r1.edges.begin() + 1, r1.edges.end());
  } else {
    assert(r2.edges[0] == reverse_edge(e));
    // p4 p2
    out.edges.insert(out.edges.end(), r2.edges.begin() + 1, r2.edges.end());
    out.edges.insert(out.edges.end(), r1.edges.begin() + 1, r1.edges.end());
  }
  assert(is_closed_walk(out.edges));
  return out;
}

Loop deform_with(const Loop& l, size_t at, const Plaquette& q,
                 MergeMode mode) {
  const Edge e = l.edges[at];
  const Edge want = mode == MergeMode::positive ? e : reverse_edge(e);
  auto bd = plaquette_boundary(q);
  auto it = std::find(bd.begin(), bd.end(), want);
  assert(it != bd.end());
  Loop pl{bd};
  return merge(l, at, pl, static_cast<size_t>(it - bd.begin()), mode);
}

std::vector<std::pair<Loop, Plaquette>> deformations(const Loop& l, size_t at,
                                                     MergeMode mode) {
  const Edge e = l.edges[at];
  const Edge target = mode == MergeMode::positive ? e : reverse_edge(e);
  std::vector<std::pair<Loop, Plaquette>> out;
  for (const Plaquette& q : plaquettes_containing(target)) {
    out.emplace_back(deform_with(l, at, q, mode), q);
  }
  return out;
}

namespace {
std::string step_key(const Loop& l, size_t rot) {
  std::string k;
  k.reserve(l.size() * 3);
  for (size_t i = 0; i < l.size(); ++i) {
    const Edge& e = l.edges[(rot + i) % l.size()];
    k += e.sign > 0 ? '+' : '-';
    k += std::to_string(e.axis);
    k += ' ';
  }
  return k;
}
}  // namespace

LoopCanon canonicalize(const Loop& l) {
  LoopCanon c;
  if (l.is_null()) return c;
  std::string best;
  for (size_t r = 0; r < l.size(); ++r) {
    std::string k = step_key(l, r);
    if (r == 0 || k < best) {
      best = std::move(k);
      c.rotation = r;
      c.tied_rotations.clear();
      c.tied_rotations.push_back(r);
    } else if (k == best) {
      c.tied_rotations.push_back(r);
    }
  }
  c.key = best;
  c.offset = l.edges[c.rotation].tail;
  return c;
}

std::optional<Loop> parse_loop(const std::string& text, int dim,
                               std::string* error) {
  auto fail = [&](const std::string& msg) -> std::optional<Loop> {
    if (error) *error = msg;
    return std::nullopt;
  };
  if (dim < 2) return fail("dimension must be >= 2");
  std::istringstream is(text);
  std::string tok;
  Vertex base(dim, 0);
  std::vector<Edge> edges;
  Vertex cur = base;
  bool first = true;
  while (is >> tok) {
    if (first && tok.size() > 1 && tok[0] == '@') {
      Vertex v;
      std::istringstream cs(tok.substr(1));
      std::string part;
      while (std::getline(cs, part, ',')) {
        try {
          v.push_back(std::stoi(part));
        } catch (...) {
          return fail("bad base coordinate: " + part);
        }
      }
      if (static_cast<int>(v.size()) != dim)
        return fail("base vertex has wrong dimension");
      base = cur = v;
      first = false;
      continue;
    }
    first = false;
    if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
      return fail("bad step token: " + tok);
    int axis = 0;
    try {
      axis = std::stoi(tok.substr(1));
    } catch (...) {
      return fail("bad step token: " + tok);
    }
    if (axis < 1 || axis > dim)
      return fail("axis out of range in token: " + tok);
    const int sign = tok[0] == '+' ? +1 : -1;
    Edge e{cur, axis, sign};
    cur = e.head();
    edges.push_back(std::move(e));
  }
  if (cur != base) return fail("walk does not close");
  return Loop{edges};
}

std::string loop_to_text(const Loop& l) {
  std::ostringstream os;
  if (!l.is_null()) {
    bool at_origin = true;
    for (int x : l.edges.front().tail)
      if (x != 0) at_origin = false;
    if (!at_origin) {
      os << '@';
      const Vertex& b = l.edges.front().tail;
      for (size_t i = 0; i < b.size(); ++i) {
        if (i) os << ',';
        os << b[i];
      }
      os << ' ';
    }
  }
  for (size_t i = 0; i < l.size(); ++i) {
    if (i) os << ' ';
    os << (l.edges[i].sign > 0 ? '+' : '-') << l.edges[i].axis;
  }
  return os.str();
}

std::string to_string(const Loop& l) {
  if (l.is_null()) return "<null>";
  return loop_to_text(l);
}

}  // namespace latticeloop
