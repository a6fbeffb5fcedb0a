#pragma once

#include <string>
#include <vector>

#include "latticeloop/assignments.hpp"
#include "latticeloop/lattice.hpp"
#include "latticeloop/loops.hpp"
#include "latticeloop/weights.hpp"

namespace latticeloop {

enum class FaceKind { blue, yellow_internal, yellow_external };

// One side of a map edge, belonging to exactly one face. Traversal order
// around each face is given by `next`; `partner` is the dart of the adjacent
// face across the same map edge, read in the opposite direction.
struct Dart {
  int next = -1;
  int partner = -1;
  Edge label;
  FaceKind kind = FaceKind::blue;
  // Meaningful for yellow_internal darts only: the plaquette of their face.
  Plaquette plaquette;
  // Meaningful for yellow_external darts only: which boundary loop.
  int loop_index = -1;
};

struct Face {
  FaceKind kind = FaceKind::blue;
  std::vector<int> darts;  // in cycle order
  // blue faces: the positive representative of their lattice edge.
  Edge lattice_edge;
  Plaquette plaquette;  // yellow_internal only
  int loop_index = -1;  // yellow_external only
};

struct MapTopology {
  long long V = 0, E = 0, F_internal = 0;
  long long chi = 0;
  long long boundary_components = 0;
  long long components = 0;
  std::vector<long long> genus_per_component;
  std::vector<long long> boundary_per_component;
  long long eta = 0;  // chi - b
  bool genus_ok = true;  // every component genus is a non-negative integer
};

// Combinatorial embedded map. The dart arrays are the source of truth; faces,
// vertex classes and components are caches rebuilt by finalize().
struct EmbeddedMap {
  std::vector<Dart> darts;
  // Corner c is the corner at the end of dart c (between c and next(c)).
  // Pinch points identify corners beyond what next/partner imply.
  std::vector<std::pair<int, int>> extra_vertex_unions;
  // Per boundary loop: the external dart carrying the loop's first edge.
  std::vector<int> boundary_roots;

  // caches (valid after finalize)
  std::vector<Face> faces;
  std::vector<int> face_of;    // dart -> face index
  std::vector<int> prev;       // inverse of next
  std::vector<int> vertex_of;  // corner (= dart id) -> vertex class id
  int vertex_count = 0;
  std::vector<int> component_of;  // dart -> component id
  int component_count = 0;

  void finalize();
  Vertex vertex_label(int corner) const { return darts[corner].label.head(); }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> errors;
  void fail(std::string msg) {
    ok = false;
    errors.push_back(std::move(msg));
  }
};

ValidationReport validate(const EmbeddedMap& m, const StringOfLoops& s,
                          const PlaquetteAssignment& k);

MapTopology topology(const EmbeddedMap& m);

Int weight_infinity(const EmbeddedMap& m);

// Dual adjacency: one vertex per face (external included), an edge whenever
// two faces share a map edge (multi-adjacency collapsed).
std::vector<std::vector<int>> dual_graph(const EmbeddedMap& m);

// No family of blue faces over a single unoriented lattice edge disconnects
// the dual graph. Expects a finalized connected map.
bool is_non_separable(const EmbeddedMap& m);

// All inclusion-minimal disconnecting families of blue faces mapped to the
// unoriented edge of `e`. Families are given as lists of face indices.
std::vector<std::vector<int>> enclosure_loops(const EmbeddedMap& m,
                                              const Edge& e);

// Isomorphism-invariant code from a deterministic traversal rooted at the
// boundary roots (components without boundary are canonically re-rooted).
std::string canonical_code(const EmbeddedMap& m);

// JSON object (single line) in the dump format: darts with next/partner/label
// plus face tags.
std::string map_dump_json(const EmbeddedMap& m);

// Removes the given darts (ids), compacting and re-finalizing.
void remove_darts(EmbeddedMap& m, std::vector<int> to_remove);

// Extracts the connected component containing the given dart.
EmbeddedMap extract_component(const EmbeddedMap& m, int dart);

}  // namespace latticeloop
