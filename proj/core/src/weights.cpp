#include "latticeloop/weights.hpp"

#include <atomic>
#include <cassert>

namespace latticeloop {

namespace {
std::atomic<bool> g_w2_mutation{false};
}

void set_w2_mutation(bool enabled) { g_w2_mutation = enabled; }
bool w2_mutation_enabled() { return g_w2_mutation; }

Int catalan(int k) {
  assert(k >= 0);
  Int c = 1;
  for (int i = 0; i < k; ++i) {
    c = c * 2 * (2 * i + 1) / (i + 2);
  }
  return c;
}

Int blue_face_weight(int half_degree) {
  assert(half_degree >= 1);
  if (half_degree == 2 && g_w2_mutation) return 1;
  Int w = catalan(half_degree - 1);
  return (half_degree % 2 == 1) ? w : -w;
}

Int mobius(const std::vector<int>& cycle_type) {
  Int m = 1;
  for (int c : cycle_type) {
    assert(c >= 1);
    Int f = catalan(c - 1);
    m *= (c % 2 == 1) ? f : -f;
  }
  return m;
}

}  // namespace latticeloop
