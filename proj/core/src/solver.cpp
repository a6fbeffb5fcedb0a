#include "latticeloop/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

namespace latticeloop {

EvalReport eval_series(const BetaSeries& s, const Rational& beta) {
  EvalReport r;
  r.value = 0;
  Rational pow = 1;
  int cur = 0;
  for (auto& [a, c] : s.coefficients) {
    while (cur < a) {
      pow *= beta;
      ++cur;
    }
    Rational term = Rational(c) * pow;
    r.value += term;
    r.last_area = a;
    r.last_term_magnitude = term < 0 ? Rational(-term) : term;
  }
  return r;
}

namespace {

std::string serialize_assignment(const PlaquetteAssignment& k) {
  std::ostringstream os;
  for (auto& [p, c] : k.entries) os << to_string(p) << ':' << c << ';';
  return os.str();
}

// Key of a loop under cyclic rotation only (absolute position kept); used for
// the set semantics of the splitting families.
std::string cyclic_abs_key(const Loop& l) {
  if (l.is_null()) return "";
  std::string best;
  for (size_t r = 0; r < l.size(); ++r) {
    std::ostringstream os;
    for (size_t i = 0; i < l.size(); ++i)
      os << to_string(l.edges[(r + i) % l.size()]) << ' ';
    std::string s = os.str();
    if (r == 0 || s < best) best = std::move(s);
  }
  return best;
}

std::string pair_key(const Loop& a, const Loop& b) {
  std::string ka = cyclic_abs_key(a), kb = cyclic_abs_key(b);
  if (kb < ka) std::swap(ka, kb);
  return ka + "&" + kb;
}

// Canonical rotation choice shared by memo_key and the pivot: among the
// rotations minimizing the step key, the one whose translated assignment
// serializes smallest.
size_t choose_rotation(const LoopCanon& canon, const Loop& l,
                       const PlaquetteAssignment& k, std::string* kser_out) {
  size_t best_rot = canon.rotation;
  std::string best_kser;
  bool first = true;
  for (size_t r : canon.tied_rotations) {
    Vertex off = negated(l.edges[r].tail);
    std::string kser = serialize_assignment(translated(k, off));
    if (first || kser < best_kser) {
      best_kser = std::move(kser);
      best_rot = r;
      first = false;
    }
  }
  if (kser_out) *kser_out = best_kser;
  return best_rot;
}

}  // namespace

std::string memo_key(const Loop& l, const PlaquetteAssignment& k) {
  LoopCanon canon = canonicalize(l);
  if (l.is_null()) return "@|" + serialize_assignment(k);
  std::string kser;
  choose_rotation(canon, l, k, &kser);
  return canon.key + "|" + kser;
}

Int Solver::phi_K(const Loop& l, const PlaquetteAssignment& k) {
  return phi_K_pivot(l, std::nullopt, k);
}

Int Solver::phi_K_at(const Loop& l, size_t at, const PlaquetteAssignment& k) {
  assert(!has_backtrack(l));
  return phi_K_pivot(l, at, k);
}

Int Solver::phi_K_pivot(const Loop& l, std::optional<size_t> at,
                        const PlaquetteAssignment& k) {
  Loop lr = erase_backtracks(l);
  if (lr.is_null()) return k.empty() ? Int(1) : Int(0);
  if (k.empty()) return 0;
  if (!is_balanced(lr, k)) return 0;
  if (!is_ell_connected(lr, k)) return 0;

  std::string key;
  if (!at) {
    key = memo_key(lr, k);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  size_t pivot;
  if (at) {
    assert(lr == l && "pivot override requires a backtrack-free loop");
    pivot = *at;
  } else {
    pivot = choose_rotation(canonicalize(lr), lr, k, nullptr);
  }
  const Edge e = lr.edges[pivot];

  Int c = 0;
  auto convolve = [&](const Loop& l1, const Loop& l2) {
    Int sum = 0;
    for (auto& [k1, k2] : decompositions(k)) {
      Int a = phi_K(l1, k1);
      if (a == 0) continue;
      sum += a * phi_K(l2, k2);
    }
    return sum;
  };

  std::set<std::string> seen;
  for (auto& [l1, l2] : negative_splittings(lr, pivot)) {
    if (!seen.insert(pair_key(l1, l2)).second) continue;
    c += convolve(l1, l2);
  }
  seen.clear();
  for (auto& [l1, l2] : positive_splittings(lr, pivot)) {
    if (!seen.insert(pair_key(l1, l2)).second) continue;
    c -= convolve(l1, l2);
  }
  for (const Plaquette& p : plaquettes_containing(reverse_edge(e))) {
    if (k.count(p) < 1) continue;
    c += phi_K(deform_with(lr, pivot, p, MergeMode::negative), remove(k, p));
  }
  for (const Plaquette& q : plaquettes_containing(e)) {
    if (k.count(q) < 1) continue;
    c -= phi_K(deform_with(lr, pivot, q, MergeMode::positive), remove(k, q));
  }

  if (!at) {
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(key, c);
  }
  return c;
}

Int Solver::phi_K_string(const StringOfLoops& s, const PlaquetteAssignment& k) {
  if (s.loops.empty()) return k.empty() ? Int(1) : Int(0);
  // ordered decompositions K1+...+Kn = K of the product formula
  Int total = 0;
  auto rec = [&](auto&& self, size_t i, const PlaquetteAssignment& rest,
                 const Int& acc) -> void {
    if (acc == 0) return;
    if (i + 1 == s.loops.size()) {
      Int v = phi_K(s.loops[i], rest);
      if (v != 0) total += acc * v;
      return;
    }
    for (auto& [k1, k2] : decompositions(rest)) {
      if (!is_balanced(s.loops[i], k1)) continue;
      Int v = phi_K(s.loops[i], k1);
      if (v != 0) self(self, i + 1, k2, acc * v);
    }
  };
  rec(rec, 0, k, Int(1));
  return total;
}

BetaSeries Solver::phi_series(const Loop& l, int a_max, int jobs) {
  assert(!erase_backtracks(l).is_null() && a_max >= 1);
  BetaSeries out;
  out.a_max = a_max;
  for (int a = 1; a <= a_max; ++a) out.coefficients[a] = 0;

  std::vector<PlaquetteAssignment> ks = enumerate_balanced_assignments(l, a_max);
  std::vector<Int> vals(ks.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < ks.size(); ++i) vals[i] = phi_K(l, ks[i]);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= ks.size()) return;
        vals[i] = phi_K(l, ks[i]);
      }
    };
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  for (size_t i = 0; i < ks.size(); ++i) out.coefficients[area(ks[i])] += vals[i];
  return out;
}

size_t Solver::cache_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

std::map<std::string, Int> Solver::cache_snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return {memo_.begin(), memo_.end()};
}

bool Solver::save_cache(const std::string& path, std::string* error) const {
  std::ofstream os(path);
  if (!os) {
    if (error) *error = "cannot open " + path + " for writing";
    return false;
  }
  nlohmann::json header{{"schema", "latticeloop/cache/v1"}, {"dim", dim_}};
  os << header.dump() << "\n";
  for (auto& [key, val] : cache_snapshot()) {
    nlohmann::json line{{"key", key}, {"coeff", val.str()}};
    os << line.dump() << "\n";
  }
  return true;
}

bool Solver::load_cache(const std::string& path, std::string* error) {
  std::ifstream is(path);
  if (!is) {
    if (error) *error = "cannot open " + path;
    return false;
  }
  std::string line;
  if (!std::getline(is, line)) {
    if (error) *error = "empty cache file";
    return false;
  }
  nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
  if (header.is_discarded() ||
      header.value("schema", "") != "latticeloop/cache/v1") {
    if (error) *error = "unrecognized cache schema";
    return false;
  }
  if (header.value("dim", -1) != dim_) {
    if (error) *error = "cache dimension mismatch";
    return false;
  }
  std::lock_guard<std::mutex> lock(mu_);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("key") || !j.contains("coeff")) {
      if (error) *error = "malformed cache line";
      return false;
    }
    memo_[j["key"].get<std::string>()] = Int(j["coeff"].get<std::string>());
  }
  return true;
}

MleReport verify_mle(const Loop& l, const PlaquetteAssignment& k, size_t at,
                     const EnumBudget& budget) {
  MleReport rep;
  rep.lhs = surface_sum(l, k, MapClass::npm, budget);

  Int rhs = 0;
  auto convolve = [&](const Loop& l1, const Loop& l2) {
    Int sum = 0;
    for (auto& [k1, k2] : decompositions(k)) {
      Int a = surface_sum(l1, k1, MapClass::npm, budget);
      if (a == 0) continue;
      sum += a * surface_sum(l2, k2, MapClass::npm, budget);
    }
    return sum;
  };
  std::set<std::string> seen;
  for (auto& [l1, l2] : negative_splittings(l, at)) {
    if (!seen.insert(pair_key(l1, l2)).second) continue;
    rhs += convolve(l1, l2);
  }
  seen.clear();
  for (auto& [l1, l2] : positive_splittings(l, at)) {
    if (!seen.insert(pair_key(l1, l2)).second) continue;
    rhs -= convolve(l1, l2);
  }
  const Edge e = l.edges[at];
  for (const Plaquette& p : plaquettes_containing(reverse_edge(e))) {
    if (k.count(p) < 1) continue;
    rhs += surface_sum(deform_with(l, at, p, MergeMode::negative),
                       remove(k, p), MapClass::npm, budget);
  }
  for (const Plaquette& q : plaquettes_containing(e)) {
    if (k.count(q) < 1) continue;
    rhs -= surface_sum(deform_with(l, at, q, MergeMode::positive),
                       remove(k, q), MapClass::npm, budget);
  }
  rep.rhs = rhs;
  rep.ok = rep.lhs == rep.rhs;
  return rep;
}

}  // namespace latticeloop
