#pragma once

#include <utility>
#include <vector>

#include "latticeloop/maps.hpp"

namespace latticeloop {

// Corners are identified with dart ids: corner c sits at the end of dart c.
// A pinching identifies two same-partite-class corners of one blue face,
// splitting the face in two at the shared vertex.

// True iff every corner of the face lies in a distinct vertex class.
bool has_disjoint_vertices(const EmbeddedMap& m, int face);

// Positions of a corner within its face cycle; same partite class on a blue
// face means equal position parity (equivalently equal lattice endpoint).
int corner_position(const EmbeddedMap& m, int face, int corner);

EmbeddedMap pinch(const EmbeddedMap& m, int corner_u, int corner_v);

// All maps from pinching the corner v of blue face `face` with another
// same-class corner: deg/2 - 1 results when the face has disjoint vertices.
std::vector<EmbeddedMap> single_vertex_pinch_set(const EmbeddedMap& m,
                                                 int face, int corner_v);

using PinchingCollection = std::vector<std::pair<int, int>>;  // corner pairs

enum class CollectionStatus { feasible, resolved, non_feasible };

struct ClassifiedCollection {
  CollectionStatus status = CollectionStatus::feasible;
  // Resolved form: groups of corners pinched to a single point, each group
  // same parity, groups pairwise non-crossing. Empty for non_feasible.
  std::vector<std::vector<int>> blocks;
};

// Applies the crossing-resolution rules: crossing same-class groups are merged
// (the triple rule); a crossing opposite-class pair makes the collection
// non-feasible.
ClassifiedCollection classify_collection(const EmbeddedMap& m, int face,
                                         const PinchingCollection& coll);

// Applies a resolved collection; blocks must be pairwise non-crossing.
EmbeddedMap apply_collection(const EmbeddedMap& m, int face,
                             const std::vector<std::vector<int>>& blocks);

struct AllCollections {
  std::vector<EmbeddedMap> non_separable;  // VM
  std::vector<EmbeddedMap> separable;      // IM
};

// Every feasible collection on `face` (including the empty one), applied once,
// deduplicated by resulting canonical map, partitioned by non-separability.
AllCollections all_collections(const EmbeddedMap& m, int face);

// Same-class corner pairs of `face` joined by a connected chain of blue faces
// all mapped to a single lattice edge different from the face's own edge.
std::vector<std::pair<int, int>> arcs(const EmbeddedMap& m, int face);

}  // namespace latticeloop
