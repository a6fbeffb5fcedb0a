#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace latticeloop {

using Int = boost::multiprecision::cpp_int;

// Catalan(k) = (2k)! / (k!(k+1)!)
Int catalan(int k);

// Large-N weight of a blue 2i-gon: w_i = (-1)^{i-1} Catalan(i-1).
// Subject to the test-only mutation hook below.
Int blue_face_weight(int half_degree);

// Mobius weight of a permutation with the given cycle type:
// prod (-1)^{C_i - 1} Catalan(C_i - 1).
Int mobius(const std::vector<int>& cycle_type);

// Testing hook: when enabled, w_2 is reported as +1 instead of -1. Used by the
// mutation sensitivity checks only; never enable in production paths.
void set_w2_mutation(bool enabled);
bool w2_mutation_enabled();

}  // namespace latticeloop
