#pragma once

// Fixed-seed suites that hold the algorithms against exact optima.

#include <atomic>
#include <filesystem>
#include <functional>
#include <random>
#include <thread>

#include "stp12/exact.hpp"
#include "stp12/harness/oracles.hpp"
#include "stp12/heuristics.hpp"
#include "stp12/io/generators.hpp"
#include "stp12/io/report.hpp"
#include "stp12/io/stp.hpp"
#include "stp12/sixphase.hpp"

namespace stp12::harness {

struct CorpusEntry {
  std::string id;
  Instance instance;
};

using Corpus = std::vector<CorpusEntry>;
using Algorithm = std::function<Solution(const Instance&)>;
using ExactSolver = std::function<OptResult(const Instance&)>;

// Node cap for the brute-force oracle inside the harness: corpus instances
// stay small in Steiner nodes, so 2^(n-k) remains cheap even when n > 20.
inline constexpr std::size_t kHarnessNodeCap = 32;

// Runs fn(i) for i in [0, count) on `jobs` threads; results keep index order.
template <typename Fn>
auto parallel_map(std::size_t count, std::size_t jobs, Fn fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> out(count);
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < count; i = next++) out[i] = fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// Random instances with 1..max_nodes nodes, 1..max_terminals terminals and
// density in {1/10, ..., 6/10}.
inline Corpus random_corpus(std::uint64_t seed, std::size_t count, std::size_t max_nodes = 12,
                            std::size_t max_terminals = 6) {
  std::mt19937_64 rng(seed);
  Corpus out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    GeneratorSpec spec;
    spec.family = Family::RandomGnp;
    spec.n = 1 + detail::uniform_below(rng, max_nodes);
    spec.r = 1 + detail::uniform_below(rng, std::min(max_terminals, spec.n));
    spec.p = Ratio(static_cast<std::int64_t>(1 + detail::uniform_below(rng, 6)), 10);
    spec.seed = rng();
    out.push_back({"gnp-" + std::to_string(i), generate(spec)});
  }
  return out;
}

inline Instance path_instance(std::size_t length) {
  Instance inst(length + 1);
  for (NodeId v = 0; v < length; ++v) inst.add_edge(v, v + 1);
  inst.add_terminal(0);
  inst.add_terminal(static_cast<NodeId>(length));
  return inst;
}

// Hand-built and structured gadgets (all within both exact caps).
inline Corpus gadget_corpus() {
  Corpus out;
  {
    Instance single(1);
    single.add_terminal(0);
    out.push_back({"single-terminal", single});
  }
  {
    Instance pair(2);
    pair.add_edge(0, 1);
    pair.add_terminal(0);
    pair.add_terminal(1);
    out.push_back({"adjacent-terminals", pair});
  }
  {
    Instance far(2);
    far.add_terminal(0);
    far.add_terminal(1);
    out.push_back({"distant-terminals", far});
  }
  out.push_back({"p3", path_instance(2)});
  out.push_back({"path-5", path_instance(5)});
  {
    Instance clique(5);
    for (NodeId u = 0; u < 5; ++u) {
      clique.add_terminal(u);
      for (NodeId v = u + 1; v < 5; ++v) clique.add_edge(u, v);
    }
    out.push_back({"terminal-clique-5", clique});
  }
  {
    // non-terminal 0 reaches four terminals; 5 and 6 share a fork 7 with 0
    Instance fork_conflict(9);
    for (NodeId t = 1; t <= 4; ++t) fork_conflict.add_terminal(t);
    fork_conflict.add_terminal(5);
    fork_conflict.add_terminal(6);
    fork_conflict.add_terminal(8);
    fork_conflict.add_edge(0, 1);
    fork_conflict.add_edge(0, 2);
    fork_conflict.add_edge(0, 7);
    for (NodeId t : {5u, 6u, 8u, 3u}) fork_conflict.add_edge(7, t);
    fork_conflict.add_edge(4, 3);
    out.push_back({"fork-conflict", fork_conflict});
  }
  {
    // 6-node (1,2)-comet: center 0, direct 1 2, fork 3 with terminals 4 5
    Instance comet(6);
    for (NodeId t : {1u, 2u, 4u, 5u}) comet.add_terminal(t);
    comet.add_edge(0, 1);
    comet.add_edge(0, 2);
    comet.add_edge(0, 3);
    comet.add_edge(3, 4);
    comet.add_edge(3, 5);
    out.push_back({"comet-1-2", comet});
  }
  for (std::size_t k = 3; k <= 5; ++k)
    for (std::size_t m = 1; m <= 2; ++m)
      for (std::size_t bridges = 0; bridges < m || bridges == 0; ++bridges) {
        GeneratorSpec spec;
        spec.family = Family::StarCluster;
        spec.k = k;
        spec.m = m;
        spec.bridges = bridges;
        out.push_back({"star-cluster-k" + std::to_string(k) + "-m" + std::to_string(m) + "-b" +
                           std::to_string(bridges),
                       generate(spec)});
        if (m == 1) break;
      }
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t b = 0; b <= 3; ++b)
      for (std::size_t count = 1; count <= 2; ++count) {
        if (2 * a + b < 2 || count * (2 * a + b) > 12) continue;
        GeneratorSpec spec;
        spec.family = Family::CometChain;
        spec.a = a;
        spec.b = b;
        spec.count = count;
        out.push_back({"comet-chain-a" + std::to_string(a) + "-b" + std::to_string(b) + "-c" +
                           std::to_string(count),
                       generate(spec)});
      }
  for (std::size_t depth = 1; depth <= 4; ++depth) {
    GeneratorSpec spec;
    spec.family = Family::BpAdversarial;
    spec.depth = depth;
    spec.shuffle = true;
    spec.seed = depth;
    out.push_back({"bp-shuffled-" + std::to_string(depth), generate(spec)});
  }
  return out;
}

inline Corpus bp_sweep(std::size_t max_depth = 9) {
  Corpus out;
  for (std::size_t depth = 1; depth <= max_depth; ++depth) {
    GeneratorSpec spec;
    spec.family = Family::BpAdversarial;
    spec.depth = depth;
    out.push_back({"bp-adversarial-" + std::to_string(depth), generate(spec)});
  }
  return out;
}

// Corpus of the ratio suites: the oracle-agreement corpus plus the
// adversarial sweep.
inline Corpus ratio_corpus(std::uint64_t seed, std::size_t random_count = 1000) {
  Corpus out = random_corpus(seed, random_count);
  for (auto& e : gadget_corpus()) out.push_back(std::move(e));
  for (auto& e : bp_sweep()) out.push_back(std::move(e));
  return out;
}

inline OptResult harness_opt(const Instance& instance) { return brute_force_opt(instance, kHarnessNodeCap); }

inline std::vector<Cost> optima(const Corpus& corpus, std::size_t jobs = 1) {
  return parallel_map(corpus.size(), jobs, [&](std::size_t i) { return harness_opt(corpus[i].instance).cost; });
}

// Repeatedly deletes single nodes while `still_bad` holds and at least one
// terminal remains. Deterministic: lowest node id first.
inline Instance minimize_counterexample(Instance instance, const std::function<bool(const Instance&)>& still_bad) {
  bool shrunk = true;
  while (shrunk && instance.node_count() > 1) {
    shrunk = false;
    for (NodeId drop = 0; drop < instance.node_count(); ++drop) {
      std::vector<NodeId> keep;
      for (NodeId v = 0; v < instance.node_count(); ++v)
        if (v != drop) keep.push_back(v);
      Instance smaller = instance.induced(keep);
      if (smaller.terminals().empty()) continue;
      if (still_bad(smaller)) {
        instance = std::move(smaller);
        shrunk = true;
        break;
      }
    }
  }
  return instance;
}

// cost / opt, with 0/0 read as 1 and c/0 (c > 0) as c + 1 so that any
// positive cost over a zero optimum is a violation of every bound.
inline Ratio ratio_of(Cost value, Cost optimum) {
  if (optimum == 0) return value == 0 ? Ratio(1) : Ratio(value + 1);
  return Ratio(value, optimum);
}

struct Violation {
  std::string id;
  Cost cost = 0;
  Cost opt = 0;
  Ratio ratio{0};
  std::string minimized_stp;
  std::string dump_path;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t instances = 0;
  Ratio max_ratio{1};
  std::string max_ratio_id;
  std::vector<Violation> violations;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
};

inline Json to_json(const SuiteResult& s) {
  Json j;
  j["suite"] = s.name;
  j["passed"] = s.passed;
  j["instances"] = s.instances;
  j["max_ratio"] = stp12::to_json(s.max_ratio);
  j["max_ratio_id"] = s.max_ratio_id;
  Json violations = Json::array();
  for (const auto& v : s.violations) {
    Json jv;
    jv["id"] = v.id;
    jv["cost"] = v.cost;
    jv["opt"] = v.opt;
    jv["ratio"] = stp12::to_json(v.ratio);
    jv["dump"] = v.dump_path;
    jv["minimized_stp"] = v.minimized_stp;
    violations.push_back(std::move(jv));
  }
  j["violations"] = std::move(violations);
  j["failures"] = s.failures;
  j["warnings"] = s.warnings;
  return j;
}

struct RatioSuiteConfig {
  Ratio bound{4, 3};
  std::size_t jobs = 1;
  std::string dump_dir;  // counterexamples are written here when non-empty
};

// Every instance must satisfy opt <= cost <= bound * opt with a valid solution.
inline SuiteResult suite_ratio(const std::string& name, const Corpus& corpus, const std::vector<Cost>& opt,
                               const Algorithm& algorithm, const RatioSuiteConfig& config) {
  SuiteResult result;
  result.name = name;
  result.instances = corpus.size();
  if (corpus.empty()) result.warnings.push_back("empty corpus: vacuous pass");

  struct Outcome {
    Solution solution;
    bool valid = false;
  };
  auto outcomes = parallel_map(corpus.size(), config.jobs, [&](std::size_t i) {
    Solution s = algorithm(corpus[i].instance);
    bool valid = is_valid_solution(corpus[i].instance, s.connections) &&
                 cost(corpus[i].instance, s.connections) == s.cost;
    return Outcome{std::move(s), valid};
  });

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [solution, valid] = outcomes[i];
    if (!valid) {
      result.failures.push_back(corpus[i].id + ": invalid solution or misreported cost");
      continue;
    }
    if (solution.cost < opt[i])
      result.failures.push_back(corpus[i].id + ": cost " + std::to_string(solution.cost) + " below optimum " +
                                std::to_string(opt[i]));
    Ratio ratio = ratio_of(solution.cost, opt[i]);
    if (result.max_ratio_id.empty() || ratio > result.max_ratio) {
      result.max_ratio = ratio;
      result.max_ratio_id = corpus[i].id;
    }
    if (ratio <= config.bound) continue;

    Violation v{corpus[i].id, solution.cost, opt[i], ratio, {}, {}};
    Instance small = minimize_counterexample(corpus[i].instance, [&](const Instance& candidate) {
      Cost o = harness_opt(candidate).cost;
      return ratio_of(algorithm(candidate).cost, o) > config.bound;
    });
    v.minimized_stp = write_stp(small, name + "-" + corpus[i].id);
    if (!config.dump_dir.empty()) {
      std::filesystem::create_directories(config.dump_dir);
      v.dump_path = (std::filesystem::path(config.dump_dir) / (name + "-" + corpus[i].id + ".stp")).string();
      write_stp_file(small, v.dump_path, name + "-" + corpus[i].id);
    }
    result.violations.push_back(std::move(v));
  }
  result.passed = result.violations.empty() && result.failures.empty();
  return result;
}

struct OracleSuiteConfig {
  std::uint64_t seed = 20240611;
  std::size_t steiner_instances = 1000;
  std::size_t matching_graphs = 500;
  std::size_t comet_instances = 300;
  std::size_t jobs = 1;
};

inline SimpleGraph petersen_graph() {
  SimpleGraph g(10);
  for (std::size_t i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

inline std::vector<std::pair<std::string, SimpleGraph>> matching_corpus(std::uint64_t seed, std::size_t count) {
  std::vector<std::pair<std::string, SimpleGraph>> out;
  out.emplace_back("petersen", petersen_graph());
  for (std::size_t len = 3; len <= 11; len += 2) {
    SimpleGraph cycle(len);
    for (std::size_t i = 0; i < len; ++i) cycle.add_edge(i, (i + 1) % len);
    out.emplace_back("cycle-" + std::to_string(len), cycle);
  }
  {
    // two triangles joined by a path: blossoms on both ends
    SimpleGraph g(8);
    for (auto [a, b] : std::initializer_list<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 5}})
      g.add_edge(a, b);
    out.emplace_back("two-blossoms", g);
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t n = 1 + detail::uniform_below(rng, 12);
    std::size_t density = 1 + detail::uniform_below(rng, 9);
    SimpleGraph g(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (detail::uniform_below(rng, 10) < density) g.add_edge(a, b);
    out.emplace_back("random-" + std::to_string(i), g);
  }
  return out;
}

inline SuiteResult collect(std::string name, std::size_t instances,
                           const std::vector<std::string>& failures) {
  SuiteResult result;
  result.name = std::move(name);
  result.instances = instances;
  for (const auto& f : failures)
    if (!f.empty()) result.failures.push_back(f);
  if (instances == 0) result.warnings.push_back("empty corpus: vacuous pass");
  result.passed = result.failures.empty();
  return result;
}

// `exact` agrees with brute force on the random corpus plus the gadgets, and
// both witnesses realise the optimum.
inline SuiteResult suite_exact_agreement(const OracleSuiteConfig& config,
                                         const ExactSolver& exact = [](const Instance& i) { return dreyfus_wagner(i); }) {
  Corpus steiner = random_corpus(config.seed, config.steiner_instances);
  for (auto& e : gadget_corpus()) steiner.push_back(std::move(e));
  auto failures = parallel_map(steiner.size(), config.jobs, [&](std::size_t i) -> std::string {
    const Instance& inst = steiner[i].instance;
    OptResult fast = exact(inst);
    OptResult brute = brute_force_opt(inst, kHarnessNodeCap);
    if (fast.cost != brute.cost)
      return steiner[i].id + ": exact " + std::to_string(fast.cost) + " vs brute force " +
             std::to_string(brute.cost) + "\n" + write_stp(inst, steiner[i].id);
    for (const auto* r : {&fast, &brute})
      if (!is_valid_solution(inst, r->witness) || cost(inst, r->witness) != r->cost)
        return steiner[i].id + ": witness does not realise the optimum";
    return {};
  });
  return collect("exact-agreement", steiner.size(), failures);
}

inline SuiteResult suite_matching(const OracleSuiteConfig& config) {
  auto graphs = matching_corpus(config.seed + 1, config.matching_graphs);
  auto failures = parallel_map(graphs.size(), config.jobs, [&](std::size_t i) -> std::string {
    const auto& [id, g] = graphs[i];
    Matching m = max_matching(g);
    for (std::size_t v = 0; v < g.size(); ++v) {
      std::size_t w = m.mate[v];
      if (w == kUnmatched) continue;
      auto nb = g.neighbors(v);
      if (m.mate[w] != v || std::find(nb.begin(), nb.end(), w) == nb.end())
        return "matching " + id + ": not a matching";
    }
    std::size_t expected = oracle::matching_size(g);
    if (m.size() != expected)
      return "matching " + id + ": size " + std::to_string(m.size()) + " vs " + std::to_string(expected);
    return {};
  });
  return collect("matching", graphs.size(), failures);
}

// best_comet against exhaustive enumeration, on the untouched partition and
// again after the terminal edges are collapsed.
inline SuiteResult suite_comet_search(const OracleSuiteConfig& config) {
  Corpus corpus = random_corpus(config.seed + 2, config.comet_instances);
  auto failures = parallel_map(corpus.size(), config.jobs, [&](std::size_t i) -> std::string {
    const Instance& inst = corpus[i].instance;
    PartitionState state(inst);
    for (int round = 0; round < 2; ++round) {
      auto found = best_comet(state);
      auto expected = oracle::min_cost_index(state);
      bool same = found.has_value() == expected.has_value() && (!found || cost_index(*found) == *expected);
      if (!same)
        return "comet " + corpus[i].id + " round " + std::to_string(round) + "\n" + write_stp(inst, corpus[i].id);
      preprocess_terminal_edges(state);
    }
    return {};
  });
  return collect("comet-search", corpus.size(), failures);
}

// Exact solvers agree, matching is maximum, and the comet search finds the
// least cost index.
inline SuiteResult suite_oracles(const OracleSuiteConfig& config,
                                 const ExactSolver& exact = [](const Instance& i) { return dreyfus_wagner(i); }) {
  SuiteResult result;
  result.name = "oracles";
  for (const auto& part : {suite_exact_agreement(config, exact), suite_matching(config), suite_comet_search(config)}) {
    result.instances += part.instances;
    result.failures.insert(result.failures.end(), part.failures.begin(), part.failures.end());
  }
  result.passed = result.failures.empty();
  return result;
}

}  // namespace stp12::harness
