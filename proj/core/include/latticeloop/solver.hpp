#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "latticeloop/assignments.hpp"
#include "latticeloop/enumerate.hpp"
#include "latticeloop/loops.hpp"
#include "latticeloop/weights.hpp"

namespace latticeloop {

using Rational = boost::multiprecision::cpp_rational;

struct BetaSeries {
  std::map<int, Int> coefficients;  // area -> coefficient
  int a_max = 0;

  Int coeff(int a) const {
    auto it = coefficients.find(a);
    return it == coefficients.end() ? Int(0) : it->second;
  }
};

struct EvalReport {
  Rational value;
  int last_area = 0;
  Rational last_term_magnitude;  // truncation heuristic; beta0(d) is unknown
};

EvalReport eval_series(const BetaSeries& s, const Rational& beta);

// Translation- and rotation-invariant key for a (loop, assignment) pair.
std::string memo_key(const Loop& l, const PlaquetteAssignment& k);

struct MleReport {
  bool ok = false;
  Int lhs, rhs;
};

class Solver {
 public:
  explicit Solver(int dim) : dim_(dim) {}

  // The integer c with phi^K(l) = c * beta^{area(K)}.
  Int phi_K(const Loop& l, const PlaquetteAssignment& k);

  // Same, recursing at the given edge position instead of the canonical pivot
  // (the master loop equation holds at every fixed edge).
  Int phi_K_at(const Loop& l, size_t at, const PlaquetteAssignment& k);

  Int phi_K_string(const StringOfLoops& s, const PlaquetteAssignment& k);

  BetaSeries phi_series(const Loop& l, int a_max, int jobs = 1);

  int dim() const { return dim_; }
  size_t cache_size() const;
  std::map<std::string, Int> cache_snapshot() const;

  bool save_cache(const std::string& path, std::string* error = nullptr) const;
  bool load_cache(const std::string& path, std::string* error = nullptr);

 private:
  Int phi_K_pivot(const Loop& l, std::optional<size_t> at,
                  const PlaquetteAssignment& k);

  int dim_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, Int> memo_;
};

// Both sides of the master loop equation at one edge position, each term
// evaluated by the brute-force enumerator.
MleReport verify_mle(const Loop& l, const PlaquetteAssignment& k, size_t at,
                     const EnumBudget& budget = {});

}  // namespace latticeloop
