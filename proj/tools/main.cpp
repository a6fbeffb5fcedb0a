#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "latticeloop/enumerate.hpp"
#include "latticeloop/solver.hpp"
#include "latticeloop/verify.hpp"

using namespace latticeloop;
using ordered_json = nlohmann::ordered_json;

namespace {

// Exit statuses shared with the test harness.
enum ExitCode {
  exit_ok = 0,
  exit_parse = 2,
  exit_budget = 3,
  exit_verification = 4,
  exit_cache_conflict = 5,
};

struct Options {
  int dim = 2;
  int amax = 3;
  std::string loop_text;
  std::string beta_text;
  std::string cache_path;
  int jobs = 0;  // 0: hardware default
  std::string format = "json";
  long long budget = 100'000'000;
  unsigned seed = 1;
  std::string dump_path;
  bool mutate_w2 = false;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--dim", opt.dim, "lattice dimension")->check(CLI::Range(2, 16));
  cmd->add_option("--amax,--max-area", opt.amax, "series/assignment area bound")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--loop", opt.loop_text, "loop in step-token text format");
  cmd->add_option("--beta", opt.beta_text, "evaluate the series at this beta");
  cmd->add_option("--cache", opt.cache_path, "memo cache file");
  cmd->add_option("--jobs", opt.jobs, "worker threads (default: hardware)");
  cmd->add_option("--format", opt.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--budget", opt.budget, "gluing enumeration cost budget");
  cmd->add_option("--seed", opt.seed, "seed for randomized suites");
  cmd->add_option("--dump", opt.dump_path, "write per-map JSON lines here");
  cmd->add_flag("--mutate-w2", opt.mutate_w2, "testing hook: flip w_2's sign")
      ->group("");  // hidden
}

int effective_jobs(const Options& opt) {
  if (opt.jobs > 0) return opt.jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::string effective_cache(const Options& opt) {
  if (!opt.cache_path.empty()) return opt.cache_path;
  const char* env = std::getenv("LATTICELOOP_CACHE");
  return env ? env : "";
}

std::optional<Rational> parse_beta(const std::string& text, std::string* err) {
  try {
    if (text.find('.') == std::string::npos) return Rational(text);
    // decimal form: digits '.' digits
    size_t dot = text.find('.');
    std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (neg) head = head.substr(1);
    Int num(head.empty() ? "0" : head), den = 1;
    for (char c : tail) {
      if (c < '0' || c > '9') throw std::runtime_error("bad digit");
      num = num * 10 + (c - '0');
      den *= 10;
    }
    Rational r(num, den);
    return neg ? Rational(-r) : r;
  } catch (const std::exception&) {
    *err = "cannot parse beta value '" + text + "'";
    return std::nullopt;
  }
}

std::vector<std::string> loop_tokens(const Loop& l) {
  std::vector<std::string> out;
  std::istringstream is(loop_to_text(l));
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

int load_cache_checked(Solver& solver, const std::string& path) {
  std::ifstream probe(path);
  if (!probe) return exit_ok;  // fresh cache
  probe.close();
  std::string err;
  if (!solver.load_cache(path, &err)) {
    std::cerr << "cache error: " << err << "\n";
    return exit_cache_conflict;
  }
  return exit_ok;
}

int cmd_series(const Options& opt) {
  std::string err;
  auto l = parse_loop(opt.loop_text, opt.dim, &err);
  if (!l) {
    std::cerr << "loop parse error: " << err << "\n";
    return exit_parse;
  }
  Solver solver(opt.dim);
  const std::string cache = effective_cache(opt);
  if (!cache.empty()) {
    int rc = load_cache_checked(solver, cache);
    if (rc != exit_ok) return rc;
  }
  BetaSeries s = solver.phi_series(*l, opt.amax, effective_jobs(opt));
  if (!cache.empty() && !solver.save_cache(cache, &err)) {
    std::cerr << "cache error: " << err << "\n";
    return exit_cache_conflict;
  }

  std::optional<Rational> beta;
  if (!opt.beta_text.empty()) {
    beta = parse_beta(opt.beta_text, &err);
    if (!beta) {
      std::cerr << err << "\n";
      return exit_parse;
    }
  }

  if (opt.format == "table") {
    for (auto& [a, c] : s.coefficients)
      std::cout << a << "\t" << c.str() << "\n";
    if (beta) {
      EvalReport rep = eval_series(s, *beta);
      std::cout << "eval\t" << rep.value.str() << "\n";
    }
    return exit_ok;
  }
  ordered_json out;
  out["schema"] = "latticeloop/series/v1";
  out["dim"] = opt.dim;
  out["loop"] = loop_tokens(*l);
  out["a_max"] = opt.amax;
  out["coefficients"] = ordered_json::array();
  for (auto& [a, c] : s.coefficients)
    out["coefficients"].push_back({{"area", a}, {"coeff", c.str()}});
  if (beta) {
    EvalReport rep = eval_series(s, *beta);
    out["eval"] = {{"beta", opt.beta_text},
                   {"value", rep.value.str()},
                   {"last_area", rep.last_area},
                   {"last_term", rep.last_term_magnitude.str()}};
  }
  std::cout << out.dump() << "\n";
  return exit_ok;
}

int cmd_verify(const std::string& suite, const Options& opt) {
  const EnumBudget budget{opt.budget};
  const int jobs = effective_jobs(opt);
  SuiteResult r;
  PinchingStats stats;
  if (suite == "weights") {
    r = suite_weights(12);
  } else if (suite == "oracle") {
    r = suite_oracle(8, opt.amax, 100, 6, std::min(opt.amax, 2), opt.seed,
                     budget, jobs);
  } else if (suite == "mle") {
    r = suite_mle(6, std::min(opt.amax, 2), budget, jobs);
  } else if (suite == "backtrack") {
    r = suite_backtrack(200, opt.seed, budget);
  } else if (suite == "pinching") {
    r = suite_pinching(8, opt.amax, &stats, budget);
  } else if (suite == "pps") {
    r = suite_pps(6, std::min(opt.amax, 2), budget);
  } else if (suite == "cancellation") {
    r = suite_cancellation(6, std::min(opt.amax, 2), budget);
  } else {
    std::cerr << "unknown suite '" << suite << "'\n";
    return exit_parse;
  }

  if (opt.format == "table") {
    std::cout << suite << ": " << r.checked << " checks, "
              << r.failures.size() << " failures\n";
    for (auto& f : r.failures) std::cout << "  " << f << "\n";
  } else {
    ordered_json out;
    out["schema"] = "latticeloop/verify/v1";
    out["suite"] = suite;
    out["checked"] = r.checked;
    out["failures"] = r.failures;
    if (suite == "pinching") {
      out["faces_checked"] = stats.faces_checked;
      out["invalid_instances"] = stats.invalid_instances;
    }
    std::cout << out.dump() << "\n";
  }
  return r.ok() ? exit_ok : exit_verification;
}

std::optional<PlaquetteAssignment> parse_assignment_file(
    const std::string& path, int dim, std::string* err) {
  std::ifstream is(path);
  if (!is) {
    *err = "cannot open " + path;
    return std::nullopt;
  }
  nlohmann::json j = nlohmann::json::parse(is, nullptr, false);
  if (j.is_discarded() || !j.is_array()) {
    *err = "assignment file must be a JSON array";
    return std::nullopt;
  }
  PlaquetteAssignment k;
  for (auto& entry : j) {
    if (!entry.contains("base") || !entry.contains("axes")) {
      *err = "assignment entry needs base and axes";
      return std::nullopt;
    }
    Plaquette p;
    p.base = entry["base"].get<std::vector<int>>();
    auto axes = entry["axes"].get<std::vector<int>>();
    if (static_cast<int>(p.base.size()) != dim || axes.size() != 2 ||
        axes[0] < 1 || axes[1] <= axes[0] || axes[1] > dim) {
      *err = "bad assignment entry dimensions";
      return std::nullopt;
    }
    p.axis_i = axes[0];
    p.axis_j = axes[1];
    p.sign = entry.value("sign", +1);
    if (p.sign != 1 && p.sign != -1) {
      *err = "sign must be +1 or -1";
      return std::nullopt;
    }
    int count = entry.value("count", 1);
    if (count < 1) {
      *err = "count must be positive";
      return std::nullopt;
    }
    k.add(p, count);
  }
  return k;
}

int cmd_enumerate(const Options& opt, const std::string& assignment_path,
                  const std::string& cls_name) {
  std::string err;
  auto l = parse_loop(opt.loop_text, opt.dim, &err);
  if (!l) {
    std::cerr << "loop parse error: " << err << "\n";
    return exit_parse;
  }
  auto k = parse_assignment_file(assignment_path, opt.dim, &err);
  if (!k) {
    std::cerr << "assignment parse error: " << err << "\n";
    return exit_parse;
  }
  MapClass cls = cls_name == "all"  ? MapClass::all
                 : cls_name == "pm" ? MapClass::pm
                                    : MapClass::npm;
  EnumerationResult res;
  try {
    res = enumerate_with_counts(StringOfLoops{{*l}}, *k, cls,
                                EnumBudget{opt.budget});
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return exit_budget;
  }

  std::ofstream dump_file;
  std::ostream* dump = nullptr;
  if (!opt.dump_path.empty()) {
    dump_file.open(opt.dump_path);
    dump = &dump_file;
  } else if (opt.format == "json") {
    dump = &std::cout;
  }
  Int total = 0;
  for (const EmbeddedMap& m : res.maps) {
    Int w = weight_infinity(m);
    total += w;
    if (dump) {
      MapTopology t = topology(m);
      ordered_json line;
      line["weight"] = w.str();
      line["topology"] = {{"V", t.V},
                          {"E", t.E},
                          {"F_internal", t.F_internal},
                          {"chi", t.chi},
                          {"components", t.components},
                          {"genus", t.genus_per_component}};
      line["map"] = ordered_json::parse(map_dump_json(m));
      *dump << line.dump() << "\n";
    }
  }
  ordered_json summary;
  summary["schema"] = "latticeloop/enumerate/v1";
  summary["class"] = cls_name;
  summary["count"] = res.maps.size();
  summary["labeled_gluings"] = res.labeled_gluings;
  summary["sum"] = total.str();
  if (opt.format == "table") {
    std::cout << "count " << res.maps.size() << ", labeled gluings "
              << res.labeled_gluings << ", sum " << total.str() << "\n";
  } else {
    std::cout << summary.dump() << "\n";
  }
  return exit_ok;
}

struct CacheFile {
  int dim = -1;
  std::map<std::string, std::string> entries;
};

std::optional<CacheFile> read_cache_file(const std::string& path,
                                         std::string* err) {
  std::ifstream is(path);
  if (!is) {
    *err = "cannot open " + path;
    return std::nullopt;
  }
  CacheFile cf;
  std::string line;
  if (!std::getline(is, line)) {
    *err = "empty cache file " + path;
    return std::nullopt;
  }
  nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
  if (header.is_discarded() ||
      header.value("schema", "") != "latticeloop/cache/v1") {
    *err = "unrecognized cache schema in " + path;
    return std::nullopt;
  }
  cf.dim = header.value("dim", -1);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("key") || !j.contains("coeff")) {
      *err = "malformed cache line in " + path;
      return std::nullopt;
    }
    cf.entries[j["key"].get<std::string>()] = j["coeff"].get<std::string>();
  }
  return cf;
}

int cmd_cache(const std::string& op, const std::vector<std::string>& paths,
              const std::string& out_path) {
  std::string err;
  if (op == "inspect") {
    if (paths.size() != 1) {
      std::cerr << "inspect takes exactly one path\n";
      return exit_parse;
    }
    auto cf = read_cache_file(paths[0], &err);
    if (!cf) {
      std::cerr << err << "\n";
      return exit_cache_conflict;
    }
    ordered_json out{{"schema", "latticeloop/cache-report/v1"},
                     {"dim", cf->dim},
                     {"entries", cf->entries.size()}};
    std::cout << out.dump() << "\n";
    return exit_ok;
  }
  if (op == "clear") {
    for (const auto& p : paths) std::remove(p.c_str());
    std::cout << "cleared " << paths.size() << " file(s)\n";
    return exit_ok;
  }
  if (op == "merge") {
    if (paths.size() < 2 || out_path.empty()) {
      std::cerr << "merge needs --out and at least two inputs\n";
      return exit_parse;
    }
    CacheFile merged;
    for (const auto& p : paths) {
      auto cf = read_cache_file(p, &err);
      if (!cf) {
        std::cerr << err << "\n";
        return exit_cache_conflict;
      }
      if (merged.dim == -1) merged.dim = cf->dim;
      if (merged.dim != cf->dim) {
        std::cerr << "cache dimension mismatch between inputs\n";
        return exit_cache_conflict;
      }
      for (auto& [key, val] : cf->entries) {
        auto [it, inserted] = merged.entries.emplace(key, val);
        if (!inserted && it->second != val) {
          std::cerr << "conflicting values for key " << key << "\n";
          return exit_cache_conflict;
        }
      }
    }
    std::ofstream os(out_path);
    if (!os) {
      std::cerr << "cannot open " << out_path << "\n";
      return exit_parse;
    }
    ordered_json header{{"schema", "latticeloop/cache/v1"}, {"dim", merged.dim}};
    os << header.dump() << "\n";
    for (auto& [key, val] : merged.entries) {
      ordered_json line{{"key", key}, {"coeff", val}};
      os << line.dump() << "\n";
    }
    std::cout << "merged " << merged.entries.size() << " entries\n";
    return exit_ok;
  }
  std::cerr << "unknown cache operation '" << op << "'\n";
  return exit_parse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact large-N lattice Yang-Mills loop expectations"};
  app.require_subcommand(1);
  Options opt;

  auto* series = app.add_subcommand("series", "beta series of a Wilson loop");
  add_common(series, opt);

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "run a property suite");
  add_common(verify_cmd, opt);
  verify_cmd->add_option("--suite", suite, "suite name")->required();

  std::string assignment_path, cls_name = "npm";
  auto* enum_cmd = app.add_subcommand("enumerate", "enumerate embedded maps");
  add_common(enum_cmd, opt);
  enum_cmd->add_option("--assignment", assignment_path, "assignment JSON file")
      ->required();
  enum_cmd->add_option("--class", cls_name, "map class")
      ->check(CLI::IsMember({"all", "pm", "npm"}));

  std::string cache_op, cache_out;
  std::vector<std::string> cache_paths;
  auto* cache_cmd = app.add_subcommand("cache", "inspect/clear/merge caches");
  cache_cmd->add_option("op", cache_op, "inspect, clear or merge")->required();
  cache_cmd->add_option("paths", cache_paths, "cache files");
  cache_cmd->add_option("--out", cache_out, "merge output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_parse;
  }

  if (opt.mutate_w2) set_w2_mutation(true);
  try {
    if (series->parsed()) return cmd_series(opt);
    if (verify_cmd->parsed()) return cmd_verify(suite, opt);
    if (enum_cmd->parsed()) return cmd_enumerate(opt, assignment_path, cls_name);
    if (cache_cmd->parsed()) return cmd_cache(cache_op, cache_paths, cache_out);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return exit_budget;
  }
  return exit_parse;
}
