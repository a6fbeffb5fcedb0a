#pragma once

#include <map>
#include <string>
#include <vector>

#include "latticeloop/lattice.hpp"
#include "latticeloop/loops.hpp"

namespace latticeloop {

// Finite-support multiset of oriented plaquettes. No zero counts stored.
struct PlaquetteAssignment {
  std::map<Plaquette, int> entries;

  int count(const Plaquette& p) const {
    auto it = entries.find(p);
    return it == entries.end() ? 0 : it->second;
  }
  void add(const Plaquette& p, int k) {
    if (k == 0) return;
    int& c = entries[p];
    c += k;
    assert(c >= 0);
    if (c == 0) entries.erase(p);
  }
  bool empty() const { return entries.empty(); }
  auto operator<=>(const PlaquetteAssignment&) const = default;
};

int area(const PlaquetteAssignment& k);

// K with one copy of p removed; requires K(p) >= 1.
PlaquetteAssignment remove(const PlaquetteAssignment& k, const Plaquette& p);

PlaquetteAssignment translated(const PlaquetteAssignment& k,
                               const Vertex& offset);

// All ordered pairs (K1, K2) with K1 + K2 = K; exactly prod(K(p)+1) of them,
// in a deterministic order.
std::vector<std::pair<PlaquetteAssignment, PlaquetteAssignment>> decompositions(
    const PlaquetteAssignment& k);

// Number of copies of the oriented edge e in s plus the contributions of K:
// each plaquette whose oriented boundary contains e contributes its count.
int n_e(const StringOfLoops& s, const PlaquetteAssignment& k, const Edge& e);

bool is_balanced(const StringOfLoops& s, const PlaquetteAssignment& k);
bool is_balanced(const Loop& l, const PlaquetteAssignment& k);

// Support components over unoriented plaquettes sharing an unoriented edge;
// true iff every component contains an unoriented edge of l.
bool is_ell_connected(const Loop& l, const PlaquetteAssignment& k);

// All K with 1 <= area(K) <= a_max, (l, K) balanced and K l-connected.
// Deterministic order, no duplicates.
std::vector<PlaquetteAssignment> enumerate_balanced_assignments(const Loop& l,
                                                                int a_max);

std::string to_string(const PlaquetteAssignment& k);

}  // namespace latticeloop
