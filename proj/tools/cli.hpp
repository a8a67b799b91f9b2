#pragma once

// stp12 command line: solve, compare, audit, gen.
//
// Exit status: 0 success, 1 compare found a ratio violation, 2 bad
// arguments or malformed input, 3 an exact method refused (size cap),
// 4 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stp12/harness/harness.hpp"
#include "stp12/stp12.hpp"

namespace stp12::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitInternal = 4;

struct RunConfig {
  std::string subcommand;
  // input: STP files or a generator family, never both
  std::vector<std::string> files;
  std::string family;
  GeneratorSpec spec;
  std::string density = "3/10";
  std::size_t instances = 1;
  std::uint64_t seed = 1;

  std::string alg;
  std::string finishing = "cheapest";
  std::string pack3 = "exact";
  std::string mode = "s3";
  std::string out;
  std::string dump_dir = "counterexamples";
  std::size_t jobs = 1;
  bool witness = false;
};

// "3/10" or "0.3".
inline Ratio parse_ratio(const std::string& text) {
  auto fail = [&] { return InputError("density '" + text + "' is not a fraction or decimal in [0, 1]"); };
  auto digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  Ratio r;
  try {
    if (auto slash = text.find('/'); slash != std::string::npos) {
      std::string num = text.substr(0, slash), den = text.substr(slash + 1);
      if (!digits(num) || !digits(den) || num.size() > 9 || den.size() > 9 || std::stoll(den) == 0) throw fail();
      r = Ratio(std::stoll(num), std::stoll(den));
    } else {
      auto dot = text.find('.');
      std::string whole = text.substr(0, dot);
      std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
      if (whole.empty() && frac.empty()) throw fail();
      if (whole.empty()) whole = "0";
      if (!digits(whole) || (!frac.empty() && !digits(frac)) || whole.size() > 9 || frac.size() > 9) throw fail();
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      r = Ratio(std::stoll(whole) * scale + (frac.empty() ? 0 : std::stoll(frac)), scale);
    }
  } catch (const std::logic_error&) {
    throw fail();
  }
  if (r < 0 || r > 1) throw fail();
  return r;
}

struct LoadedInstance {
  std::string id;
  Instance instance;
};

inline std::vector<LoadedInstance> load_inputs(const RunConfig& cfg) {
  std::vector<LoadedInstance> out;
  if (!cfg.files.empty()) {
    for (const auto& f : cfg.files) out.push_back({std::filesystem::path(f).stem().string(), read_stp_file(f)});
    return out;
  }
  if (cfg.family.empty()) throw InputError("no input: give STP files or --family");
  if (cfg.instances == 0) throw InputError("--instances must be >= 1");
  GeneratorSpec spec = cfg.spec;
  spec.family = family_from_string(cfg.family);
  spec.p = parse_ratio(cfg.density);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    spec.seed = cfg.seed + i;
    out.push_back({cfg.family + "-s" + std::to_string(spec.seed), generate(spec)});
  }
  return out;
}

inline FinishingMode finishing_of(const RunConfig& cfg) {
  return cfg.finishing == "strict-paper" ? FinishingMode::StrictPaper : FinishingMode::Cheapest;
}

inline SixPhaseOptions six_phase_options(const RunConfig& cfg) {
  SixPhaseOptions o;
  o.finishing = finishing_of(cfg);
  o.pack3 = cfg.pack3 == "greedy" ? Pack3Strategy::Greedy : Pack3Strategy::Exact;
  return o;
}

inline std::string witness_text(const std::vector<Connection>& connections) {
  std::string s;
  for (const auto& c : connections) s += (s.empty() ? "" : " ") + std::to_string(c.u + 1) + "-" + std::to_string(c.v + 1);
  return s;
}

inline Json connections_json(const std::vector<Connection>& connections) {
  Json list = Json::array();
  for (const auto& c : connections) list.push_back(to_json(c));
  return list;
}

inline void write_json(const Json& doc, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  file << doc.dump(2) << "\n";
}

inline std::string opt_method(const Instance& instance, std::size_t terminal_cap) {
  return instance.terminals().size() <= terminal_cap ? "dreyfus-wagner" : "brute-force";
}

inline int solve(const RunConfig& cfg, std::ostream& out) {
  auto inputs = load_inputs(cfg);
  const bool all = cfg.alg == "all";
  Json instances = Json::array();
  for (const auto& [id, inst] : inputs) {
    Json results = Json::array();
    auto emit = [&](const std::string& alg, const Solution& s, Json extra) {
      out << id << "  " << alg << "  cost " << s.cost << "\n";
      if (cfg.witness) out << "  witness " << witness_text(s.connections) << "\n";
      Json j;
      j["algorithm"] = alg;
      for (auto& [k, v] : extra.items()) j[k] = v;
      j["cost"] = s.cost;
      j["connections"] = connections_json(s.connections);
      results.push_back(std::move(j));
    };
    auto phases_json = [](const RunResult& r) {
      Json list = Json::array();
      for (const auto& p : r.phases) list.push_back(to_json(p));
      return list;
    };
    if (all || cfg.alg == "rs") {
      RunResult r = rayward_smith(inst, {finishing_of(cfg)});
      emit("rs", r.solution, {{"finishing", cfg.finishing}, {"phases", phases_json(r)}});
    }
    if (all || cfg.alg == "six-phase") {
      RunResult r = six_phase(inst, six_phase_options(cfg));
      emit("six-phase", r.solution,
           {{"finishing", cfg.finishing}, {"pack3", r.pack3_strategy}, {"phases", phases_json(r)}});
    }
    if (all || cfg.alg == "exact") {
      OptResult r = exact_opt(inst);
      emit("exact", Solution::from(inst, r.witness),
           {{"method", opt_method(inst, kDefaultDreyfusWagnerTerminalCap)}});
    }
    Json j;
    j["id"] = id;
    j["nodes"] = inst.node_count();
    j["terminals"] = inst.terminals().size();
    j["results"] = std::move(results);
    instances.push_back(std::move(j));
  }
  if (!cfg.out.empty()) {
    Json doc;
    doc["schema"] = "stp12.solve-report";
    doc["version"] = kReportSchemaVersion;
    doc["instances"] = std::move(instances);
    write_json(doc, cfg.out);
  }
  return kExitOk;
}

inline int compare(const RunConfig& cfg, std::ostream& out) {
  if (cfg.alg == "exact") throw InputError("compare measures heuristics against the exact optimum; use rs, six-phase or all");
  auto inputs = load_inputs(cfg);

  struct Contender {
    std::string name;
    Ratio bound;
    harness::Algorithm run;
    std::function<RunResult(const Instance&)> full;
  };
  std::vector<Contender> contenders;
  const auto six_options = six_phase_options(cfg);
  const RaywardSmithOptions rs_options{finishing_of(cfg)};
  if (cfg.alg != "six-phase")
    contenders.push_back({"rs", Ratio(4, 3), {}, [=](const Instance& i) { return rayward_smith(i, rs_options); }});
  if (cfg.alg != "rs")
    contenders.push_back({"six-phase", Ratio(5, 4), {}, [=](const Instance& i) { return six_phase(i, six_options); }});
  for (auto& c : contenders)
    c.run = [full = c.full](const Instance& i) { return full(i).solution; };

  // Exact optimum: Dreyfus-Wagner up to its terminal cap, brute force above.
  auto exact = [](const Instance& i) { return exact_opt(i, kDefaultDreyfusWagnerTerminalCap, harness::kHarnessNodeCap); };

  struct Row {
    std::optional<RatioReport> report;
    std::optional<SkippedInstance> skipped;
  };
  auto rows = harness::parallel_map(inputs.size(), cfg.jobs, [&](std::size_t i) {
    const auto& [id, inst] = inputs[i];
    Row row;
    OptResult opt;
    try {
      opt = exact(inst);
    } catch (const CapExceeded& e) {
      row.skipped = SkippedInstance{id, e.what()};
      return row;
    }
    RatioReport r{id, inst.node_count(), inst.terminals().size(), opt.cost,
                  opt_method(inst, kDefaultDreyfusWagnerTerminalCap), {}};
    for (const auto& c : contenders) {
      RunResult run = c.full(inst);
      AlgorithmOutcome o{c.name, cfg.finishing, c.name == "six-phase" ? run.pack3_strategy : "",
                         run.solution.cost, harness::ratio_of(run.solution.cost, opt.cost), run.phases};
      r.outcomes.push_back(std::move(o));
    }
    row.report = std::move(r);
    return row;
  });

  std::vector<RatioReport> reports;
  std::vector<SkippedInstance> skipped;
  std::vector<const Instance*> measured;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].skipped) skipped.push_back(*rows[i].skipped);
    if (rows[i].report) {
      reports.push_back(std::move(*rows[i].report));
      measured.push_back(&inputs[i].instance);
    }
  }

  std::vector<AlgorithmSummary> summary;
  bool violated = false;
  for (std::size_t a = 0; a < contenders.size(); ++a) {
    const auto& c = contenders[a];
    AlgorithmSummary s{c.name, cfg.finishing, c.bound, Ratio(1), {}, {}, {}};
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& o = reports[i].outcomes[a];
      if (s.max_ratio_id.empty() || o.ratio > s.max_ratio) {
        s.max_ratio = o.ratio;
        s.max_ratio_id = reports[i].id;
      }
      if (o.ratio <= c.bound) continue;
      violated = true;
      s.violations.push_back(reports[i].id);
      Instance small = harness::minimize_counterexample(*measured[i], [&](const Instance& candidate) {
        return harness::ratio_of(c.run(candidate).cost, exact(candidate).cost) > c.bound;
      });
      std::filesystem::create_directories(cfg.dump_dir);
      auto path = (std::filesystem::path(cfg.dump_dir) / (c.name + "-" + reports[i].id + ".stp")).string();
      write_stp_file(small, path, c.name + "-" + reports[i].id);
      s.dumps.push_back(path);
    }
    out << c.name << "  instances " << reports.size() << "  max ratio " << s.max_ratio.numerator() << "/"
        << s.max_ratio.denominator() << (s.max_ratio_id.empty() ? "" : " (" + s.max_ratio_id + ")")
        << "  bound " << c.bound.numerator() << "/" << c.bound.denominator() << "  violations "
        << s.violations.size() << "\n";
    for (const auto& d : s.dumps) out << "  counterexample " << d << "\n";
    summary.push_back(std::move(s));
  }
  if (!skipped.empty()) out << "skipped " << skipped.size() << " instance(s) over the exact caps\n";
  if (!cfg.out.empty()) write_json(write_report(reports, summary, skipped), cfg.out);
  return violated ? kExitViolation : kExitOk;
}

inline int audit(const RunConfig& cfg, std::ostream& out) {
  auto inputs = load_inputs(cfg);
  if (inputs.size() != 1) throw InputError("audit takes exactly one instance");
  const auto& [id, inst] = inputs.front();
  const NormalizationMode mode = cfg.mode == "s4" ? NormalizationMode::StarComet : NormalizationMode::Greedy;
  OptResult opt = exact_opt(inst);
  ReferenceSolution reference(inst, opt.witness);
  NormalizationResult result = normalize(reference, mode);
  out << id << "  mode " << to_string(mode) << "  opt " << opt.cost << "  final cost " << result.reference.cost()
      << "  steps " << result.trace.size() << "\n";
  for (const auto& step : result.trace)
    out << "  " << step.kind << "  removed " << witness_text(step.removed) << "  added " << witness_text(step.added)
        << "  delta " << step.cost_delta << "\n";
  for (const auto& [label, count] : classification_histogram(decompose(result.reference)))
    out << "  " << label << " x" << count << "\n";
  if (!cfg.out.empty()) write_json(audit_to_json(id, mode, opt.cost, result), cfg.out);
  return kExitOk;
}

inline int gen(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.files.empty()) throw InputError("gen takes a generator family, not files");
  auto inputs = load_inputs(cfg);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& [id, inst] = inputs[i];
    if (cfg.out.empty()) {
      out << write_stp(inst, id);
      continue;
    }
    std::filesystem::path path(cfg.out);
    if (inputs.size() > 1)
      path = path.parent_path() / (path.stem().string() + "-" + std::to_string(i + 1) + path.extension().string());
    write_stp_file(inst, path.string(), id);
    out << path.string() << "\n";
  }
  return kExitOk;
}

inline void add_input_options(CLI::App* sub, RunConfig& cfg, bool files) {
  CLI::Option* family =
      sub->add_option("--family", cfg.family, "Generator: random-gnp | star-cluster | comet-chain | bp-adversarial")
          ->check(CLI::IsMember({"random-gnp", "star-cluster", "comet-chain", "bp-adversarial"}));
  if (files) sub->add_option("files", cfg.files, "STP instance files")->check(CLI::ExistingFile)->excludes(family);
  sub->add_option("-n,--nodes", cfg.spec.n, "random-gnp: node count")->capture_default_str();
  sub->add_option("-p,--density", cfg.density, "random-gnp: edge probability, e.g. 3/10 or 0.3")->capture_default_str();
  sub->add_option("-r,--terminals", cfg.spec.r, "random-gnp: terminal count")->capture_default_str();
  sub->add_option("-k,--star-size", cfg.spec.k, "star-cluster: terminals per star")->capture_default_str();
  sub->add_option("-m,--stars", cfg.spec.m, "star-cluster: number of stars")->capture_default_str();
  sub->add_option("--bridges", cfg.spec.bridges, "star-cluster: center-center edges")->capture_default_str();
  sub->add_option("-a,--forks", cfg.spec.a, "comet-chain: forks per comet")->capture_default_str();
  sub->add_option("-b,--direct", cfg.spec.b, "comet-chain: direct terminals per comet")->capture_default_str();
  sub->add_option("--count", cfg.spec.count, "comet-chain: number of comets")->capture_default_str();
  sub->add_option("--depth", cfg.spec.depth, "bp-adversarial: spine length")->capture_default_str();
  sub->add_flag("--shuffle", cfg.spec.shuffle, "Relabel structured families with a seeded permutation");
  sub->add_option("--seed", cfg.seed, "Seed of the first generated instance")->capture_default_str();
  sub->add_option("--instances", cfg.instances, "Number of generated instances (seeds seed, seed+1, ...)")
      ->capture_default_str();
}

inline void add_algorithm_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--finishing", cfg.finishing, "Finishing: strict-paper | cheapest")
      ->check(CLI::IsMember({"strict-paper", "cheapest"}))
      ->capture_default_str();
  sub->add_option("--pack3", cfg.pack3, "Six-phase 3-star packing: exact | greedy")
      ->check(CLI::IsMember({"exact", "greedy"}))
      ->capture_default_str();
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig cfg;
  CLI::App app{"Steiner trees in metrics with distances 1 and 2"};
  app.name("stp12");
  app.require_subcommand(1);

  auto* solve_cmd = app.add_subcommand("solve", "Run algorithms and print costs");
  add_input_options(solve_cmd, cfg, true);
  add_algorithm_options(solve_cmd, cfg);
  solve_cmd->add_option("--alg", cfg.alg, "rs | six-phase | exact | all")
      ->check(CLI::IsMember({"rs", "six-phase", "exact", "all"}))
      ->default_val("six-phase");
  solve_cmd->add_flag("--witness", cfg.witness, "Print the connections of each solution (1-based)");
  solve_cmd->add_option("--out", cfg.out, "Write a JSON report");

  auto* compare_cmd = app.add_subcommand("compare", "Ratios against the exact optimum");
  add_input_options(compare_cmd, cfg, true);
  add_algorithm_options(compare_cmd, cfg);
  compare_cmd->add_option("--alg", cfg.alg, "rs | six-phase | all")
      ->check(CLI::IsMember({"rs", "six-phase", "exact", "all"}))
      ->default_val("all");
  compare_cmd->add_option("--out", cfg.out, "Write a JSON ratio report");
  compare_cmd->add_option("--dump-dir", cfg.dump_dir, "Directory for minimized counterexamples")
      ->capture_default_str();
  compare_cmd->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  auto* audit_cmd = app.add_subcommand("audit", "Normalize an optimal reference solution");
  add_input_options(audit_cmd, cfg, true);
  audit_cmd->add_option("--mode", cfg.mode, "s3 (stars) | s4 (stars and comets)")
      ->check(CLI::IsMember({"s3", "s4"}))
      ->capture_default_str();
  audit_cmd->add_option("--out", cfg.out, "Write a JSON audit report");

  auto* gen_cmd = app.add_subcommand("gen", "Write generated instances as STP");
  add_input_options(gen_cmd, cfg, false);
  gen_cmd->add_option("--out", cfg.out, "Output file; numbered when --instances > 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve_cmd) return solve(cfg, out);
    if (*compare_cmd) return compare(cfg, out);
    if (*audit_cmd) return audit(cfg, out);
    return gen(cfg, out);
  } catch (const CapExceeded& e) {
    err << "stp12: " << e.what() << "\n";
    return kExitCap;
  } catch (const InputError& e) {
    err << "stp12: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "stp12: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace stp12::cli
