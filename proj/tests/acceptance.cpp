// Acceptance suite: one PASS/FAIL line per criterion. Exits 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "stp12/harness/harness.hpp"
#include "stp12/stp12.hpp"

using namespace stp12;
using Clock = std::chrono::steady_clock;

namespace {

// Time limits in seconds.
constexpr double kLimitCostIndex = 1;
constexpr double kLimitOracle = 120;
constexpr double kLimitMatching = 60;
constexpr double kLimitComet = 120;
constexpr double kLimitRs = 300;
constexpr double kLimitSixPhase = 600;
constexpr double kLimitNormalize = 120;

// Minimum corpus sizes.
constexpr std::size_t kRandomInstances = 1000;
constexpr std::size_t kMatchingGraphs = 500;
constexpr std::size_t kCometInstances = 300;
constexpr std::size_t kReferences = 200;

const Ratio kRsBound(4, 3);
const Ratio kSixPhaseBound(5, 4);
const Ratio kNearTight(13, 10);

struct Verdict {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit = 0;  // 0: no limit
};

std::string ratio_text(const Ratio& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%lld/%lld (%.4f)", static_cast<long long>(r.numerator()),
                static_cast<long long>(r.denominator()),
                static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()));
  return buf;
}

void print(const Verdict& v) {
  char timing[64];
  if (v.limit > 0)
    std::snprintf(timing, sizeof timing, "[%.2f s / limit %.0f s]", v.seconds, v.limit);
  else
    std::snprintf(timing, sizeof timing, "[%.2f s]", v.seconds);
  std::cout << "AC" << v.id << " " << (v.pass ? "PASS" : "FAIL") << "  " << v.name << ": " << v.detail << "  "
            << timing << std::endl;
}

template <typename Body>
Verdict timed(int id, std::string name, double limit, Body body) {
  Verdict v{id, std::move(name), false, {}, 0, limit};
  auto start = Clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail += std::string(" exception: ") + e.what();
  }
  // the body may charge earlier shared work to this criterion
  v.seconds += std::chrono::duration<double>(Clock::now() - start).count();
  if (limit > 0 && v.seconds > limit) {
    v.pass = false;
    v.detail += " (over time limit)";
  }
  return v;
}

std::string first_failures(const harness::SuiteResult& s, std::size_t n = 3) {
  std::string out;
  for (std::size_t i = 0; i < std::min(n, s.failures.size()); ++i) out += "\n    " + s.failures[i];
  return out;
}

struct Config {
  std::uint64_t seed = 20240611;
  std::size_t jobs = 1;
  std::string dump_dir = "counterexamples";
  std::string json_dir;
};

Solution rs_cheapest(const Instance& i) { return rayward_smith(i, {FinishingMode::Cheapest}).solution; }
Solution rs_strict(const Instance& i) { return rayward_smith(i, {FinishingMode::StrictPaper}).solution; }
Solution six(const Instance& i, FinishingMode f, Pack3Strategy p) {
  SixPhaseOptions o;
  o.finishing = f;
  o.pack3 = p;
  return six_phase(i, o).solution;
}

// Per-instance ratio reports for the whole corpus, as the CLI writes them.
Json ratio_document(const harness::Corpus& corpus, const std::vector<Cost>& opt, std::size_t jobs) {
  auto reports = harness::parallel_map(corpus.size(), jobs, [&](std::size_t i) {
    const auto& [id, inst] = corpus[i];
    RatioReport r{id, inst.node_count(), inst.terminals().size(), opt[i], "brute-force", {}};
    for (auto f : {FinishingMode::Cheapest, FinishingMode::StrictPaper}) {
      RunResult a = rayward_smith(inst, {f});
      r.outcomes.push_back({"rs", to_string(f), "", a.solution.cost, harness::ratio_of(a.solution.cost, opt[i]),
                            a.phases});
      SixPhaseOptions o;
      o.finishing = f;
      RunResult b = six_phase(inst, o);
      r.outcomes.push_back({"six-phase", to_string(f), b.pack3_strategy, b.solution.cost,
                            harness::ratio_of(b.solution.cost, opt[i]), b.phases});
    }
    return r;
  });
  return write_report(reports);
}

// Everything the suites report, as one document.
Json suite_document(const Config& cfg, std::size_t jobs) {
  harness::OracleSuiteConfig oc{cfg.seed, kRandomInstances, kMatchingGraphs, kCometInstances, jobs};
  auto corpus = harness::ratio_corpus(cfg.seed, kRandomInstances);
  auto opt = harness::optima(corpus, jobs);
  Json doc;
  doc["seed"] = cfg.seed;
  doc["suites"] = Json::array({harness::to_json(harness::suite_oracles(oc)),
                               harness::to_json(harness::suite_ratio("rs", corpus, opt, rs_cheapest,
                                                                     {kRsBound, jobs, {}})),
                               harness::to_json(harness::suite_ratio(
                                   "six-phase", corpus, opt,
                                   [](const Instance& i) { return six(i, FinishingMode::Cheapest, Pack3Strategy::Exact); },
                                   {kSixPhaseBound, jobs, {}}))});
  doc["ratios"] = ratio_document(corpus, opt, jobs);
  Json audits = Json::array();
  for (std::size_t i = 0; i < corpus.size(); i += 25) {
    const auto& [id, inst] = corpus[i];
    OptResult o = harness::harness_opt(inst);
    auto result = normalize(ReferenceSolution(inst, o.witness), NormalizationMode::StarComet);
    audits.push_back(audit_to_json(id, NormalizationMode::StarComet, o.cost, result));
  }
  doc["audits"] = std::move(audits);
  return doc;
}

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::ofstream(std::filesystem::path(dir) / name, std::ios::binary) << text;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"stp12 acceptance suite"};
  app.add_option("--seed", cfg.seed, "Corpus seed")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--dump-dir", cfg.dump_dir, "Where ratio violations are written")->capture_default_str();
  app.add_option("--json-dir", cfg.json_dir, "Where suite reports are written");
  CLI11_PARSE(app, argc, argv);

  std::vector<Verdict> verdicts;
  auto record = [&](Verdict v) {
    print(v);
    verdicts.push_back(std::move(v));
  };
  Json suites = Json::array();

  record(timed(1, "cost-index closed forms", kLimitCostIndex, [&](Verdict& v) {
    std::size_t stars = 0, comets = 0, bad = 0;
    for (std::int64_t s = 2; s <= 50; ++s, ++stars)
      if (cost_index(s, s) != Ratio(1, s - 1)) ++bad;
    for (std::int64_t a = 0; a <= 20; ++a)
      for (std::int64_t b = 0; b <= 20; ++b) {
        if (2 * a + b < 2) continue;
        ++comets;
        if (cost_index(2 * a + b, 3 * a + b) != Ratio(a + 1, 2 * a + b - 1)) ++bad;
      }
    v.pass = bad == 0 && stars == 49 && comets == 439;
    v.detail = std::to_string(stars) + " stars, " + std::to_string(comets) + " comets, " + std::to_string(bad) +
               " mismatches";
  }));

  harness::OracleSuiteConfig oc{cfg.seed, kRandomInstances, kMatchingGraphs, kCometInstances, cfg.jobs};
  record(timed(2, "Dreyfus-Wagner = brute force", kLimitOracle, [&](Verdict& v) {
    auto s = harness::suite_exact_agreement(oc);
    suites.push_back(harness::to_json(s));
    const std::size_t gadgets = harness::gadget_corpus().size();
    v.pass = s.passed && s.instances >= kRandomInstances + gadgets;
    v.detail = std::to_string(s.instances - gadgets) + " random + " + std::to_string(gadgets) + " gadgets, " +
               std::to_string(s.failures.size()) + " mismatches" + first_failures(s);
  }));

  record(timed(3, "blossom matching = exhaustive maximum", kLimitMatching, [&](Verdict& v) {
    auto s = harness::suite_matching(oc);
    suites.push_back(harness::to_json(s));
    const std::size_t petersen = max_matching(harness::petersen_graph()).size();
    v.pass = s.passed && s.instances >= kMatchingGraphs && petersen == 5;
    v.detail = std::to_string(s.instances) + " graphs (odd cycles, Petersen -> " + std::to_string(petersen) + "), " +
               std::to_string(s.failures.size()) + " mismatches" + first_failures(s);
  }));

  record(timed(4, "best_comet = exhaustive structure search", kLimitComet, [&](Verdict& v) {
    auto s = harness::suite_comet_search(oc);
    suites.push_back(harness::to_json(s));
    v.pass = s.passed && s.instances >= kCometInstances;
    v.detail = std::to_string(s.instances) + " instances x 2 partitions, " + std::to_string(s.failures.size()) +
               " mismatches" + first_failures(s);
  }));

  // Ratio corpus: the criterion-2 instances plus the adversarial sweep.
  auto corpus_start = Clock::now();
  const auto corpus = harness::ratio_corpus(cfg.seed, kRandomInstances);
  const auto opt = harness::optima(corpus, cfg.jobs);
  const double optima_seconds = std::chrono::duration<double>(Clock::now() - corpus_start).count();
  const std::string dump_dir = cfg.dump_dir;

  record(timed(5, "Rayward-Smith ratio <= 4/3", kLimitRs, [&](Verdict& v) {
    v.seconds = optima_seconds;  // optima are computed once, before this criterion
    harness::RatioSuiteConfig rc{kRsBound, cfg.jobs, dump_dir};
    auto cheap = harness::suite_ratio("rs-cheapest", corpus, opt, rs_cheapest, rc);
    auto strict = harness::suite_ratio("rs-strict-paper", corpus, opt, rs_strict, rc);
    suites.push_back(harness::to_json(cheap));
    suites.push_back(harness::to_json(strict));
    Ratio sweep_max(0);
    std::string sweep_id;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].id.rfind("bp-adversarial-", 0) != 0) continue;
      Ratio r = harness::ratio_of(rs_cheapest(corpus[i].instance).cost, opt[i]);
      if (r > sweep_max) {
        sweep_max = r;
        sweep_id = corpus[i].id;
      }
    }
    v.pass = cheap.passed && strict.passed && sweep_max >= kNearTight;
    v.detail = std::to_string(corpus.size()) + " instances, max " + ratio_text(cheap.max_ratio) + " at " +
               cheap.max_ratio_id + " (strict-paper max " + ratio_text(strict.max_ratio) + "), sweep max " +
               ratio_text(sweep_max) + " at " + sweep_id + " >= 13/10, " +
               std::to_string(cheap.violations.size() + strict.violations.size()) + " violations" +
               first_failures(cheap) + first_failures(strict);
  }));

  record(timed(6, "Six-Phase ratio <= 5/4", kLimitSixPhase, [&](Verdict& v) {
    harness::RatioSuiteConfig rc{kSixPhaseBound, cfg.jobs, dump_dir};
    struct Variant {
      std::string name;
      FinishingMode f;
      Pack3Strategy p;
    };
    const Variant variants[] = {{"six-phase-cheapest", FinishingMode::Cheapest, Pack3Strategy::Exact},
                                {"six-phase-strict-paper", FinishingMode::StrictPaper, Pack3Strategy::Exact},
                                {"six-phase-greedy-pack3", FinishingMode::Cheapest, Pack3Strategy::Greedy}};
    v.pass = true;
    v.detail = std::to_string(corpus.size()) + " instances";
    for (const auto& var : variants) {
      auto s = harness::suite_ratio(var.name, corpus, opt,
                                    [&](const Instance& i) { return six(i, var.f, var.p); }, rc);
      suites.push_back(harness::to_json(s));
      v.pass = v.pass && s.passed;
      v.detail += ", " + var.name + " max " + ratio_text(s.max_ratio) + " (" + std::to_string(s.violations.size()) +
                  " violations)";
      for (const auto& viol : s.violations)
        v.detail += "\n    " + viol.id + " cost " + std::to_string(viol.cost) + " opt " + std::to_string(viol.opt) +
                    " -> " + viol.dump_path;
      v.detail += first_failures(s);
    }
  }));

  record(timed(7, "dominance: cheapest <= strict-paper, cost >= opt", 0, [&](Verdict& v) {
    struct Check {
      std::size_t broken = 0;
      std::string first;
    };
    auto checks = harness::parallel_map(corpus.size(), cfg.jobs, [&](std::size_t i) {
      const Instance& inst = corpus[i].instance;
      Check c;
      auto flag = [&](bool ok, const std::string& what) {
        if (ok) return;
        if (c.broken++ == 0) c.first = corpus[i].id + ": " + what;
      };
      Cost rc = rs_cheapest(inst).cost, rsx = rs_strict(inst).cost;
      flag(rc <= rsx, "rs cheapest > strict");
      for (auto p : {Pack3Strategy::Exact, Pack3Strategy::Greedy}) {
        Cost sc = six(inst, FinishingMode::Cheapest, p).cost;
        Cost ss = six(inst, FinishingMode::StrictPaper, p).cost;
        flag(sc <= ss, "six-phase cheapest > strict (" + to_string(p) + ")");
        flag(sc >= opt[i] && ss >= opt[i], "six-phase below optimum");
      }
      flag(rc >= opt[i] && rsx >= opt[i], "rs below optimum");
      return c;
    });
    std::size_t broken = 0;
    std::string first;
    for (const auto& c : checks) {
      if (c.broken && first.empty()) first = c.first;
      broken += c.broken;
    }
    v.pass = broken == 0;
    v.detail = std::to_string(corpus.size()) + " instances x 6 runs, " + std::to_string(broken) + " breaches" +
               (first.empty() ? "" : "\n    " + first);
  }));

  record(timed(8, "normalization postconditions (s3, s4)", kLimitNormalize, [&](Verdict& v) {
    struct Check {
      std::size_t references = 0;
      std::size_t steps = 0;
      std::vector<std::string> problems;
    };
    auto checks = harness::parallel_map(corpus.size(), cfg.jobs, [&](std::size_t i) {
      const auto& [id, inst] = corpus[i];
      Check c;
      if (inst.terminals().size() < 2) return c;
      std::vector<std::vector<Connection>> witnesses{harness::harness_opt(inst).witness};
      if (inst.terminals().size() <= kDefaultDreyfusWagnerTerminalCap) {
        auto dw = dreyfus_wagner(inst).witness;
        if (dw != witnesses.front()) witnesses.push_back(std::move(dw));
      }
      for (const auto& w : witnesses) {
        ++c.references;
        for (auto mode : {NormalizationMode::Greedy, NormalizationMode::StarComet}) {
          Cost running = opt[i];
          auto result = normalize(ReferenceSolution(inst, w), mode, [&](const ReferenceSolution& ref, const TraceStep& s) {
            ++c.steps;
            running += s.cost_delta;
            if (!ref.valid()) c.problems.push_back(id + ": invalid after " + s.kind);
            if (ref.cost() != running) c.problems.push_back(id + ": cost delta mismatch");
            if (ref.cost() < opt[i]) c.problems.push_back(id + ": normalization beat the optimum");
          });
          if (!is_normal(decompose(result.reference), mode)) {
            std::string labels;
            for (const auto& [label, n] : classification_histogram(decompose(result.reference))) labels += " " + label;
            c.problems.push_back(id + " " + to_string(mode) + ": not normal:" + labels);
          }
        }
      }
      return c;
    });
    std::size_t references = 0, steps = 0, problems = 0;
    std::string first;
    for (const auto& c : checks) {
      references += c.references;
      steps += c.steps;
      problems += c.problems.size();
      if (first.empty() && !c.problems.empty()) first = c.problems.front();
    }
    v.pass = problems == 0 && references >= kReferences;
    v.detail = std::to_string(references) + " optimal references x 2 modes, " + std::to_string(steps) +
               " steps checked, " + std::to_string(problems) + " problems" + (first.empty() ? "" : "\n    " + first);
  }));

  record(timed(9, "determinism: byte-identical JSON", 0, [&](Verdict& v) {
    std::string a = suite_document(cfg, cfg.jobs).dump(2);
    std::string b = suite_document(cfg, 1).dump(2);
    write_file(cfg.json_dir, "run-1.json", a);
    write_file(cfg.json_dir, "run-2.json", b);
    v.pass = a == b && !a.empty();
    v.detail = "two runs (" + std::to_string(cfg.jobs) + " and 1 threads), " + std::to_string(a.size()) + " bytes, " +
               (a == b ? "identical" : "DIFFERENT");
  }));

  Json summary;
  summary["seed"] = cfg.seed;
  summary["suites"] = suites;
  Json criteria = Json::array();
  for (const auto& v : verdicts) criteria.push_back({{"id", v.id}, {"name", v.name}, {"pass", v.pass}});
  summary["criteria"] = std::move(criteria);
  write_file(cfg.json_dir, "suites.json", summary.dump(2));

  std::size_t failed = 0;
  for (const auto& v : verdicts) failed += v.pass ? 0 : 1;
  std::cout << (failed == 0 ? "ALL CRITERIA PASS" : std::to_string(failed) + " CRITERIA FAIL") << std::endl;
  return failed == 0 ? 0 : 1;
}
