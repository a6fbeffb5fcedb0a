#include <benchmark/benchmark.h>

#include "latticeloop/enumerate.hpp"
#include "latticeloop/solver.hpp"
#include "latticeloop/verify.hpp"

using namespace latticeloop;

namespace {

const Plaquette P00{{0, 0}, 1, 2, +1};

Loop rect() { return *parse_loop("+1 +1 +2 -1 -1 -2", 2); }

void BM_canonicalize(benchmark::State& state) {
  Loop l = rect();
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize(l));
}
BENCHMARK(BM_canonicalize);

void BM_enumerate_assignments(benchmark::State& state) {
  Loop l = rect();
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_balanced_assignments(l, 3));
}
BENCHMARK(BM_enumerate_assignments);

void BM_surface_sum_doubled(benchmark::State& state) {
  Loop p = *parse_loop("+1 +2 -1 -2", 2);
  Loop pp = p;
  pp.edges.insert(pp.edges.end(), p.edges.begin(), p.edges.end());
  PlaquetteAssignment k;
  k.add(inverse(P00), 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(surface_sum(pp, k, MapClass::npm));
}
BENCHMARK(BM_surface_sum_doubled);

void BM_phi_series_rect(benchmark::State& state) {
  for (auto _ : state) {
    Solver s(2);  // fresh memo: measure the full recursion
    benchmark::DoNotOptimize(s.phi_series(rect(), 3));
  }
}
BENCHMARK(BM_phi_series_rect);

}  // namespace

BENCHMARK_MAIN();
