#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace latticeloop {

// A lattice vertex is a point of Z^d. The dimension is implicit in the
// coordinate count and must agree across all objects of one computation.
using Vertex = std::vector<int>;

inline Vertex translated(const Vertex& v, const Vertex& offset) {
  assert(v.size() == offset.size());
  Vertex out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] + offset[i];
  return out;
}

inline Vertex negated(const Vertex& v) {
  Vertex out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

// Oriented nearest-neighbour edge. head = tail + sign * unit(axis).
// axis is 1-based to match the usual convention.
struct Edge {
  Vertex tail;
  int axis = 1;
  int sign = +1;

  Vertex head() const {
    Vertex h = tail;
    h[axis - 1] += sign;
    return h;
  }
  auto operator<=>(const Edge&) const = default;
};

inline Edge reverse_edge(const Edge& e) {
  return Edge{e.head(), e.axis, -e.sign};
}

// True iff head > tail lexicographically, which for a unit step means sign=+1.
inline bool is_positively_oriented(const Edge& e) { return e.sign > 0; }

// The unoriented edge underlying e: its positively oriented representative.
inline Edge positive_edge(const Edge& e) {
  return e.sign > 0 ? e : reverse_edge(e);
}

inline Edge translated(const Edge& e, const Vertex& offset) {
  return Edge{translated(e.tail, offset), e.axis, e.sign};
}

// Oriented unit square. base is the lexicographically smallest corner,
// axes (i,j) with i<j span the plane, sign +1 means positively oriented:
// the edge joining the two lexicographically smallest corners (base and
// base+unit(j)) is traversed in its positive direction.
struct Plaquette {
  Vertex base;
  int axis_i = 1;
  int axis_j = 2;
  int sign = +1;

  auto operator<=>(const Plaquette&) const = default;
};

inline Plaquette inverse(const Plaquette& p) {
  return Plaquette{p.base, p.axis_i, p.axis_j, -p.sign};
}

inline Plaquette translated(const Plaquette& p, const Vertex& offset) {
  return Plaquette{translated(p.base, offset), p.axis_i, p.axis_j, p.sign};
}

// The unoriented plaquette underlying p (positive representative).
inline Plaquette positive_plaquette(const Plaquette& p) {
  return p.sign > 0 ? p : inverse(p);
}

// Closed 4-cycle of oriented edges. For sign=+1 the traversal is
// base -> base+ej -> base+ei+ej -> base+ei -> base; in 2d this sends the
// leftmost edge of the square upwards.
std::vector<Edge> plaquette_boundary(const Plaquette& p);

// All oriented plaquettes whose boundary contains e (with orientation).
// Exactly 2(d-1) results, in a deterministic order.
std::vector<Plaquette> plaquettes_containing(const Edge& e);

std::string to_string(const Vertex& v);
std::string to_string(const Edge& e);
std::string to_string(const Plaquette& p);

}  // namespace latticeloop
