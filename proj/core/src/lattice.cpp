#include "latticeloop/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace latticeloop {

std::vector<Edge> plaquette_boundary(const Plaquette& p) {
  const int i = p.axis_i, j = p.axis_j;
  Vertex b = p.base;
  Vertex bj = b, bi = b, bij = b;
  bj[j - 1] += 1;
  bi[i - 1] += 1;
  bij[i - 1] += 1;
  bij[j - 1] += 1;
  if (p.sign > 0) {
    // base -> base+ej -> base+ei+ej -> base+ei -> base
    return {Edge{b, j, +1}, Edge{bj, i, +1}, Edge{bij, j, -1}, Edge{bi, i, -1}};
  }
  // reverse traversal: base -> base+ei -> base+ei+ej -> base+ej -> base
  return {Edge{b, i, +1}, Edge{bi, j, +1}, Edge{bij, i, -1}, Edge{bj, j, -1}};
}

std::vector<Plaquette> plaquettes_containing(const Edge& e) {
  const int d = static_cast<int>(e.tail.size());
  std::vector<Plaquette> out;
  for (int a = 1; a <= d; ++a) {
    if (a == e.axis) continue;
    const int i = std::min(a, e.axis);
    const int j = std::max(a, e.axis);
    // The two unit squares in the (i,j) plane containing the segment of e.
    for (int off = -1; off <= 0; ++off) {
      Vertex base = e.tail;
      if (e.sign < 0) base[e.axis - 1] -= 1;  // lower corner along e's axis
      base[a - 1] += off;
      for (int sign : {+1, -1}) {
        Plaquette p{base, i, j, sign};
        auto bd = plaquette_boundary(p);
        if (std::find(bd.begin(), bd.end(), e) != bd.end()) out.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const Vertex& v) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

std::string to_string(const Edge& e) {
  std::ostringstream os;
  os << to_string(e.tail) << (e.sign > 0 ? "+" : "-") << e.axis;
  return os.str();
}

std::string to_string(const Plaquette& p) {
  std::ostringstream os;
  os << to_string(p.base) << '[' << p.axis_i << ',' << p.axis_j << ']'
     << (p.sign > 0 ? '+' : '-');
  return os.str();
}

}  // namespace latticeloop
