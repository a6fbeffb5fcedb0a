// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "latticeloop/enumerate.hpp"
#include "latticeloop/solver.hpp"
#include "latticeloop/verify.hpp"

using namespace latticeloop;

namespace {

const Plaquette P00{{0, 0}, 1, 2, +1};

int g_jobs = 1;
bool g_all_ok = true;

void report(int id, bool ok, const std::string& name,
            const std::string& detail = "") {
  g_all_ok = g_all_ok && ok;
  std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << " - "
            << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
}

void parallel_for(size_t n, const std::function<void(size_t)>& body) {
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      body(i);
    }
  };
  std::vector<std::thread> threads;
  for (int t = 0; t < g_jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

struct CmdResult {
  int status = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  CmdResult r;
  std::string cmd = std::string(LATTICELOOP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  int rc = pclose(f);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(is), {});
}

Loop plaq() { return *parse_loop("+2 +1 -2 -1", 2); }

PlaquetteAssignment empty_npm_assignment() {
  PlaquetteAssignment k;
  k.add(inverse(P00), 1);
  Plaquette q{{1, 0}, 1, 2, +1};
  k.add(q, 1);
  k.add(inverse(q), 1);
  return k;
}

std::vector<PlaquetteAssignment> area3_census() {
  std::vector<PlaquetteAssignment> out;
  for (auto& k : enumerate_balanced_assignments(plaq(), 3))
    if (area(k) == 3) out.push_back(k);
  return out;
}

void criterion_1() {
  SuiteResult r = suite_weights(12);
  report(1, r.ok(), "weight table and Catalan recursion",
         std::to_string(r.checked) + " checks");
}

void criterion_2() {
  auto census = area3_census();
  bool ok = census.size() == 5;
  std::vector<Int> sums;
  Int total = 0;
  for (auto& k : census) {
    Int s = surface_sum(plaq(), k, MapClass::pm);
    sums.push_back(s);
    total += s;
  }
  std::sort(sums.begin(), sums.end());
  ok = ok && sums == std::vector<Int>{-4, -1, -1, -1, -1} && total == -8;
  report(2, ok, "area-3 planar-map census for the plaquette",
         "5 assignments, PM sums {-4,-1,-1,-1,-1}, total -8");
}

void criterion_3() {
  Int npm_total = 0;
  for (auto& k : area3_census()) npm_total += surface_sum(plaq(), k, MapClass::npm);
  Solver s(2);
  BetaSeries series = s.phi_series(plaq(), 4, g_jobs);
  bool ok = npm_total == 0 && series.coeff(1) == 1;
  for (int a = 2; a <= 4; ++a) ok = ok && series.coeff(a) == 0;
  report(3, ok, "non-separable correction: series of the plaquette is beta",
         "NPM area-3 total 0, coefficients {1,0,0,0} up to a_max 4");
}

void criterion_4() {
  PlaquetteAssignment k = empty_npm_assignment();
  bool ok = enumerate_class(StringOfLoops{{plaq()}}, k, MapClass::npm).empty();
  Solver s(2);
  ok = ok && s.phi_K(plaq(), k) == 0;
  report(4, ok, "known empty-NPM instance yields no maps and phi_K = 0");
}

bool g_rigidity_ok = false;
std::string g_rigidity_detail;

void criterion_5_and_11() {
  auto instances = corpus_instances(8, 3);
  std::mutex mu;
  bool oracle_ok = true, rigidity_ok = true;
  std::string detail5, detail11;
  Solver solver(2);
  parallel_for(instances.size(), [&](size_t i) {
    const auto& [l, k] = instances[i];
    EnumerationResult res =
        enumerate_with_counts(StringOfLoops{{l}}, k, MapClass::npm);
    Int ss = 0;
    for (const EmbeddedMap& m : res.maps) ss += weight_infinity(m);
    Int phi = solver.phi_K(l, k);
    long long kfact = 1;
    for (auto& [p, c] : k.entries)
      for (int j = 2; j <= c; ++j) kfact *= j;
    std::lock_guard<std::mutex> lock(mu);
    if (phi != ss && oracle_ok) {
      oracle_ok = false;
      detail5 = "mismatch at l=" + loop_to_text(l) + " K=" + to_string(k);
    }
    if (res.labeled_gluings !=
            kfact * static_cast<long long>(res.maps.size()) &&
        rigidity_ok) {
      rigidity_ok = false;
      detail11 = "count mismatch at l=" + loop_to_text(l) + " K=" + to_string(k);
    }
  });
  SuiteResult r3d = suite_oracle(4, 1, 100, 6, 2, 17, EnumBudget{}, g_jobs);
  if (!r3d.ok()) {
    oracle_ok = false;
    detail5 = r3d.failures.front();
  }
  if (detail5.empty())
    detail5 = std::to_string(instances.size()) + " 2d instances + " +
              std::to_string(r3d.checked) + " randomized 3d checks";
  report(5, oracle_ok, "oracle equivalence phi_K = NPM surface sum", detail5);
  if (detail11.empty())
    detail11 = std::to_string(instances.size()) + " instances";
  g_rigidity_ok = rigidity_ok;
  g_rigidity_detail = detail11;
}

void criterion_11() {
  report(11, g_rigidity_ok, "rooted rigidity of labeled gluing counts",
         g_rigidity_detail);
}

void criterion_6() {
  SuiteResult r = suite_mle(6, 2, EnumBudget{}, g_jobs);
  report(6, r.ok(), "master loop equation by double enumeration",
         r.ok() ? std::to_string(r.checked) + " checks" : r.failures.front());
}

void criterion_7() {
  SuiteResult r = suite_backtrack(200, 23, EnumBudget{});
  report(7, r.ok(), "backtrack-erasure invariance at fixed K",
         r.ok() ? std::to_string(r.checked) + " randomized instances"
                : r.failures.front());
}

void criterion_8() {
  PinchingStats stats;
  SuiteResult r = suite_pinching(8, 3, &stats, EnumBudget{});
  bool ok = r.ok() && stats.invalid_instances >= 1;
  report(8, ok, "pinching identities and the valid/invalid dichotomy",
         r.ok() ? std::to_string(stats.faces_checked) + " faces, " +
                      std::to_string(stats.invalid_instances) +
                      " with invalid pinchings"
                : r.failures.front());
}

void criterion_9() {
  SuiteResult r = suite_pps(6, 2, EnumBudget{});
  report(9, r.ok(), "pps splitting bijections and deformation complements",
         r.ok() ? std::to_string(r.checked) + " checks" : r.failures.front());
}

void criterion_10() {
  SuiteResult r = suite_cancellation(6, 2, EnumBudget{});
  report(10, r.ok(), "bad-set weight cancellation",
         r.ok() ? std::to_string(r.checked) + " instances" : r.failures.front());
}

void criterion_12() {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "latticeloop_acceptance";
  fs::create_directories(tmp);
  std::string detail;
  bool ok = true;

  const std::string series_args = "series --dim 2 --loop \"+1 +2 -1 -2\" --amax 3";
  CmdResult a = run_cli(series_args + " --jobs 1");
  CmdResult b = run_cli(series_args + " --jobs 4");
  CmdResult c = run_cli(series_args + " --jobs 1");
  if (a.status != 0 || a.out != b.out || a.out != c.out) {
    ok = false;
    detail = "series output not byte-stable across runs/jobs";
  }

  fs::path cache = tmp / "cache.jsonl";
  fs::remove(cache);
  std::string rect_args =
      "series --dim 2 --loop \"+1 +1 +2 -1 -1 -2\" --amax 3 --cache " +
      cache.string();
  CmdResult c1 = run_cli(rect_args);
  std::string bytes1 = slurp(cache.string());
  CmdResult c2 = run_cli(rect_args);  // load + recompute + save
  std::string bytes2 = slurp(cache.string());
  if (ok && (c1.status != 0 || c2.status != 0 || bytes1.empty() ||
             bytes1 != bytes2 || c1.out != c2.out)) {
    ok = false;
    detail = "cache round trip not bit-identical";
  }

  CmdResult mw = run_cli("verify --suite weights --mutate-w2");
  if (ok && mw.status != 4) {
    ok = false;
    detail = "w2 mutation not caught by the weights suite";
  }
  set_w2_mutation(true);
  Int npm_total = 0;
  for (auto& k : area3_census()) npm_total += surface_sum(plaq(), k, MapClass::npm);
  bool mut3 = npm_total != 0;
  SuiteResult mut5 = suite_oracle(8, 2, 0, 0, 0, 1, EnumBudget{}, g_jobs);
  set_w2_mutation(false);
  if (ok && (!mut3 || mut5.ok())) {
    ok = false;
    detail = "w2 mutation not caught by suites 3/5";
  }
  if (detail.empty()) detail = "byte-stable output, cache round trip, mutation caught";
  report(12, ok, "determinism, persistence and mutation sensitivity", detail);
}

}  // namespace

int main() {
  unsigned hw = std::thread::hardware_concurrency();
  g_jobs = hw ? static_cast<int>(hw) : 1;
  auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5_and_11();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  auto dt = std::chrono::duration_cast<std::chrono::seconds>(
      std::chrono::steady_clock::now() - t0);
  std::cout << (g_all_ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << " ("
            << dt.count() << "s)" << std::endl;
  return g_all_ok ? 0 : 1;
}
