#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latticeloop/lattice.hpp"

namespace latticeloop {

// A loop is a rooted closed walk: a concrete sequence of oriented edges with
// head(edges[i]) == tail(edges[i+1 mod n]). The empty sequence is the null
// loop. Cyclic equivalence is only taken at canonicalization time.
struct Loop {
  std::vector<Edge> edges;

  size_t size() const { return edges.size(); }
  bool is_null() const { return edges.empty(); }
  auto operator<=>(const Loop&) const = default;
};

// A string of loops: a multiset of loops with null loops removed.
struct StringOfLoops {
  std::vector<Loop> loops;
};

struct EdgePosition {
  size_t loop_index = 0;
  size_t edge_index = 0;
};

bool is_closed_walk(const std::vector<Edge>& edges);
bool is_valid_loop(const Loop& l);
bool has_backtrack(const Loop& l);

// Rotate so that edges[at] comes first.
Loop rotated(const Loop& l, size_t at);
Loop translated(const Loop& l, const Vertex& offset);

// Repeatedly removes cyclically adjacent e e^{-1} pairs until none remain.
// The result is independent of removal order.
Loop erase_backtracks(const Loop& l);

// Positive splitting at the copy of e sitting at `at`: for every other copy
// e' of the same oriented lattice edge, writing l = p1 e p2 e' p3, yields the
// ordered pair (p1 e p3, p2 e').
std::vector<std::pair<Loop, Loop>> positive_splittings(const Loop& l, size_t at);

// Negative splitting: for every copy of e^{-1}, writing l = p1 e p2 e^{-1} p3,
// yields (p1 p3, p2). Parts may be null.
std::vector<std::pair<Loop, Loop>> negative_splittings(const Loop& l, size_t at);

enum class MergeMode { positive, negative };

// Positive merger at copies of the same oriented edge e in both loops:
// l1 = p1 e p2, l2 = p3 e' p4 -> p1 e p4 p3 e' p2.
// Negative merger (at2 carries e^{-1}): l2 = p3 e^{-1} p4 -> p1 p4 p3 p2.
Loop merge(const Loop& l1, size_t at1, const Loop& l2, size_t at2,
           MergeMode mode);

// Deformations at position `at`: positive mode merges l with each oriented
// plaquette q whose boundary contains e; negative mode with each plaquette p
// containing e^{-1}. Returns 2(d-1) results each.
std::vector<std::pair<Loop, Plaquette>> deformations(const Loop& l, size_t at,
                                                     MergeMode mode);

// Merge l with the boundary of q at the copy of e (positive) or e^{-1}
// (negative) in the plaquette boundary; q's boundary must contain it.
Loop deform_with(const Loop& l, size_t at, const Plaquette& q, MergeMode mode);

// Canonical form of a loop up to cyclic rotation and lattice translation.
struct LoopCanon {
  std::string key;        // translation+rotation invariant encoding
  size_t rotation = 0;    // first rotation index realizing the key
  Vertex offset;          // base vertex of the chosen rotation
  std::vector<size_t> tied_rotations;  // all rotations realizing the key
};

LoopCanon canonicalize(const Loop& l);

// Text format: whitespace separated "+k"/"-k" step tokens, optional leading
// "@x,y,..." base vertex (default origin). Rejects walks that do not close.
std::optional<Loop> parse_loop(const std::string& text, int dim,
                               std::string* error = nullptr);
std::string loop_to_text(const Loop& l);

std::string to_string(const Loop& l);

}  // namespace latticeloop
