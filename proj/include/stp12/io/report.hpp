#pragma once

// JSON report documents (schema version 1). Field order is fixed,
// rationals are written as {"num": p, "den": q} and node ids are 1-based
// like the STP files.

#include <string>

#include <nlohmann/json.hpp>

#include "stp12/audit.hpp"
#include "stp12/heuristics.hpp"

namespace stp12 {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

struct AlgorithmOutcome {
  std::string algorithm;      // rs | six-phase
  std::string finishing;      // strict-paper | cheapest
  std::string pack3;          // six-phase only
  Cost cost = 0;
  Ratio ratio{1};
  std::vector<PhaseRecord> phases;
};

struct RatioReport {
  std::string id;
  std::size_t nodes = 0;
  std::size_t terminals = 0;
  Cost opt = 0;
  std::string opt_method;
  std::vector<AlgorithmOutcome> outcomes;
};

inline Json to_json(const Ratio& r) {
  Json j;
  j["num"] = r.numerator();
  j["den"] = r.denominator();
  return j;
}

inline Json to_json(const Connection& c) { return Json::array({c.u + 1, c.v + 1}); }

inline Json to_json(const PhaseRecord& p) {
  Json j;
  j["name"] = p.name;
  j["collapses"] = p.collapses;
  j["cost_added"] = p.cost_added;
  j["selections"] = p.selections;
  return j;
}

inline Json to_json(const AlgorithmOutcome& o) {
  Json j;
  j["algorithm"] = o.algorithm;
  j["finishing"] = o.finishing;
  if (!o.pack3.empty()) j["pack3"] = o.pack3;
  j["cost"] = o.cost;
  j["ratio"] = to_json(o.ratio);
  Json phases = Json::array();
  for (const auto& p : o.phases) phases.push_back(to_json(p));
  j["phases"] = std::move(phases);
  return j;
}

inline Json to_json(const RatioReport& r) {
  Json j;
  j["id"] = r.id;
  j["nodes"] = r.nodes;
  j["terminals"] = r.terminals;
  j["opt"] = r.opt;
  j["opt_method"] = r.opt_method;
  Json outcomes = Json::array();
  for (const auto& o : r.outcomes) outcomes.push_back(to_json(o));
  j["outcomes"] = std::move(outcomes);
  return j;
}

// Suite-level view of one algorithm over a batch.
struct AlgorithmSummary {
  std::string algorithm;
  std::string finishing;
  Ratio bound{1};
  Ratio max_ratio{1};
  std::string max_ratio_id;
  std::vector<std::string> violations;  // instance ids with ratio > bound
  std::vector<std::string> dumps;       // counterexample files
};

struct SkippedInstance {
  std::string id;
  std::string reason;
};

inline Json to_json(const AlgorithmSummary& s) {
  Json j;
  j["algorithm"] = s.algorithm;
  j["finishing"] = s.finishing;
  j["bound"] = to_json(s.bound);
  j["max_ratio"] = to_json(s.max_ratio);
  j["max_ratio_id"] = s.max_ratio_id;
  j["violations"] = s.violations;
  j["dumps"] = s.dumps;
  return j;
}

inline Json write_report(std::span<const RatioReport> reports, std::span<const AlgorithmSummary> summary = {},
                         std::span<const SkippedInstance> skipped = {}) {
  Json doc;
  doc["schema"] = "stp12.ratio-report";
  doc["version"] = kReportSchemaVersion;
  Json list = Json::array();
  for (const auto& r : reports) list.push_back(to_json(r));
  doc["reports"] = std::move(list);
  Json sums = Json::array();
  for (const auto& s : summary) sums.push_back(to_json(s));
  doc["summary"] = std::move(sums);
  Json skips = Json::array();
  for (const auto& s : skipped) skips.push_back({{"id", s.id}, {"reason", s.reason}});
  doc["skipped"] = std::move(skips);
  return doc;
}

inline Json to_json(const TraceStep& s) {
  Json j;
  j["kind"] = s.kind;
  Json removed = Json::array();
  for (const auto& c : s.removed) removed.push_back(to_json(c));
  Json added = Json::array();
  for (const auto& c : s.added) added.push_back(to_json(c));
  j["removed"] = std::move(removed);
  j["added"] = std::move(added);
  j["cost_delta"] = s.cost_delta;
  return j;
}

inline Json audit_to_json(const std::string& id, NormalizationMode mode, Cost opt,
                          const NormalizationResult& result) {
  Json doc;
  doc["schema"] = "stp12.audit-report";
  doc["version"] = kReportSchemaVersion;
  doc["id"] = id;
  doc["mode"] = to_string(mode);
  doc["opt"] = opt;
  doc["final_cost"] = result.reference.cost();
  Json trace = Json::array();
  for (const auto& s : result.trace) trace.push_back(to_json(s));
  doc["trace"] = std::move(trace);
  Json histogram = Json::object();
  for (const auto& [label, count] : classification_histogram(decompose(result.reference)))
    histogram[label] = count;
  doc["classification"] = std::move(histogram);
  return doc;
}

}  // namespace stp12
