#pragma once

#include <random>
#include <string>
#include <vector>

#include "latticeloop/enumerate.hpp"
#include "latticeloop/solver.hpp"

namespace latticeloop {

struct SuiteResult {
  int checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  void fail(std::string msg) { failures.push_back(std::move(msg)); }
  void merge(const SuiteResult& other) {
    checked += other.checked;
    failures.insert(failures.end(), other.failures.begin(),
                    other.failures.end());
  }
};

// All backtrack-free loops inside the 3x3 vertex window of Z^2 with length at
// most max_len, one representative per rotation+translation class.
std::vector<Loop> window_loops_2d(int max_len);

// Random backtrack-free closed walk of length <= max_len (rejection sampled).
Loop random_loop(int dim, int max_len, std::mt19937& rng);

// criterion-style instance corpus: every window loop with every balanced
// l-connected assignment up to max_area.
std::vector<std::pair<Loop, PlaquetteAssignment>> corpus_instances(
    int max_len, int max_area);

// weight table and the Catalan recursion
SuiteResult suite_weights(int max_k = 12);

// phi_K == NPM surface sum, exhaustively on the 2d corpus plus randomized 3d
SuiteResult suite_oracle(int max_len_2d, int max_area_2d, int random_3d,
                         int max_len_3d, int max_area_3d, unsigned seed,
                         const EnumBudget& budget = {}, int jobs = 1);

// master loop equation by double enumeration at every edge position
SuiteResult suite_mle(int max_len, int max_area, const EnumBudget& budget = {},
                      int jobs = 1);

// backtrack erasure invariance at fixed K on randomized instances
SuiteResult suite_backtrack(int count, unsigned seed,
                            const EnumBudget& budget = {});

// Pinching identities: single-vertex pinch sets, all-collection sums, the
// valid/invalid dichotomy, and arc structure.
struct PinchingStats {
  int faces_checked = 0;
  int invalid_instances = 0;  // faces whose collection sum hit the zero branch
};
SuiteResult suite_pinching(int max_len, int max_area, PinchingStats* stats,
                           const EnumBudget& budget = {});

// PPS: splitting bijectivity, deformation injectivity with bad-set
// complements, and the per-step weight relations.
SuiteResult suite_pps(int max_len, int max_area, const EnumBudget& budget = {});

// Master cancellation: weighted negative bad sets equal positive bad sets.
SuiteResult suite_cancellation(int max_len, int max_area,
                               const EnumBudget& budget = {});

}  // namespace latticeloop
