#pragma once

#include <stdexcept>
#include <vector>

#include "latticeloop/assignments.hpp"
#include "latticeloop/maps.hpp"

namespace latticeloop {

enum class MapClass { all, pm, npm };

struct EnumBudget {
  // Cap on the sum over unoriented edges of (n_e!)^2.
  long long max_cost = 100'000'000;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnumerationResult {
  std::vector<EmbeddedMap> maps;     // deduplicated, canonical-code-sorted
  long long labeled_gluings = 0;     // gluing choices realizing this class
};

// All embedded maps with boundary s and plaquette assignment K, built by
// gluing yellow polygons through blue faces and deduplicated by canonical
// code. pm: every component a genus-0 disk holding exactly one boundary loop;
// npm: pm and non-separable components.
EnumerationResult enumerate_with_counts(const StringOfLoops& s,
                                        const PlaquetteAssignment& k,
                                        MapClass cls,
                                        const EnumBudget& budget = {});

std::vector<EmbeddedMap> enumerate_class(const StringOfLoops& s,
                                         const PlaquetteAssignment& k,
                                         MapClass cls,
                                         const EnumBudget& budget = {});

Int surface_sum(const Loop& l, const PlaquetteAssignment& k, MapClass cls,
                const EnumBudget& budget = {});
Int surface_sum_string(const StringOfLoops& s, const PlaquetteAssignment& k,
                       MapClass cls, const EnumBudget& budget = {});

// ----- pinching-peeling-separating step at the boundary root edge -----

struct PpsSplitPart {
  EmbeddedMap map;
  Loop loop;
};

struct PpsPinchedBranch {
  EmbeddedMap pinched;  // M_i, before separating
  bool is_deformation = false;
  // positive deformation branch
  Plaquette q;
  EmbeddedMap result;
  Loop new_loop;
  // positive splitting branch
  PpsSplitPart part1, part2;
};

struct PpsStep {
  int half_degree = 0;  // of the blue face holding the root edge
  // half_degree == 1:
  bool is_deformation = false;
  Plaquette p;          // negative deformation plaquette
  EmbeddedMap result;   // deformed map M'
  Loop new_loop;
  PpsSplitPart part1, part2;  // negative splitting parts
  // half_degree >= 2: one branch per pinch partner
  std::vector<PpsPinchedBranch> branches;
};

// M must lie in NPM(l, K) with K != 0; the step is taken at l's first edge.
PpsStep pps_step(const EmbeddedMap& m, const Loop& l,
                 const PlaquetteAssignment& k);

// ----- deformation targets and bad sets -----

// The deformed instance for a target: negative mode with p containing e^{-1}
// gives (l (-) p, K \ p); positive mode with q containing e gives
// (l (+) q, K \ q). `at` indexes the pivot copy of e in l.
struct DeformedInstance {
  Loop loop;
  PlaquetteAssignment assignment;
};
DeformedInstance deformed_instance(const Loop& l, size_t at,
                                   const PlaquetteAssignment& k,
                                   MergeMode mode, const Plaquette& plq);

// The subset of NPM(l', K') carrying the obstructing chain of blue faces over
// the pivot's lattice edge (the complement of the deformation's image).
std::vector<EmbeddedMap> bad_set(const Loop& l, size_t at,
                                 const PlaquetteAssignment& k, MergeMode mode,
                                 const Plaquette& plq,
                                 const EnumBudget& budget = {});

// Same obstruction test on one already-enumerated map of NPM(l', K').
bool is_bad(const EmbeddedMap& m, const Loop& l, size_t at, MergeMode mode);

}  // namespace latticeloop
