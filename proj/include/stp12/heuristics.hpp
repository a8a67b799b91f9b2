#pragma once

// Greedy star contraction in the style of Rayward-Smith:
//   1. collapse every edge between two terminals;
//   2. repeatedly collapse a largest s-star while s >= 3;
//   3. connect what is left.

#include <optional>
#include <string>

#include "stp12/structures.hpp"

namespace stp12 {

enum class FinishingMode {
  StrictPaper,  // k-1 non-edges between the remaining terminal components
  Cheapest,     // edges between terminal components first, non-edges after
};

inline std::string to_string(FinishingMode mode) {
  return mode == FinishingMode::StrictPaper ? "strict-paper" : "cheapest";
}

// One phase of a greedy run.
struct PhaseRecord {
  std::string name;
  std::size_t collapses = 0;
  Cost cost_added = 0;
  std::vector<std::string> selections;  // e.g. "4-star@7"

  friend bool operator==(const PhaseRecord&, const PhaseRecord&) = default;
};

struct RunResult {
  Solution solution;
  std::vector<PhaseRecord> phases;
  std::string pack3_strategy;  // six-phase only
};

// Largest star over all terminal-free centers; ties go to the smallest
// center. Empty when no center touches a terminal component.
inline std::optional<Star> find_max_star(const PartitionState& state) {
  std::optional<Star> best;
  for (NodeId center : steiner_components(state)) {
    Star star = star_at(state, center);
    if (star.size() == 0) continue;
    if (!best || star.size() > best->size()) best = std::move(star);
  }
  return best;
}

// Collapses every original terminal–terminal edge, in lex order. Returns
// the number of collapses.
inline std::size_t preprocess_terminal_edges(PartitionState& state) {
  const Instance& instance = state.instance();
  std::size_t collapses = 0;
  for (NodeId u : instance.terminals()) {
    for (NodeId v : instance.neighbors(u)) {
      if (v < u || !instance.is_terminal(v)) continue;
      NodeId ru = state.find(u);
      NodeId rv = state.find(v);
      if (ru == rv) continue;
      NodeId comps[] = {ru, rv};
      Connection link(u, v);
      state.collapse(comps, std::span<const Connection>(&link, 1));
      ++collapses;
    }
  }
  return collapses;
}

// Smallest terminal of a terminal component.
inline NodeId min_terminal(const PartitionState& state, NodeId root) {
  for (NodeId v : state.members(root))
    if (state.instance().is_terminal(v)) return v;
  throw ContractViolation("component " + std::to_string(root) + " has no terminal");
}

// Connects the remaining terminal components and returns the final solution.
inline Solution finishing(PartitionState& state, FinishingMode mode) {
  if (mode == FinishingMode::Cheapest) {
    for (const auto& e : induced_graph(state).edges) {
      NodeId a = state.find(e.a);
      NodeId b = state.find(e.b);
      if (a == b || !state.has_terminal(a) || !state.has_terminal(b)) continue;
      NodeId comps[] = {a, b};
      state.collapse(comps, std::span<const Connection>(&e.representative, 1));
    }
  }
  auto remaining = state.terminal_components();
  if (remaining.size() > 1) {
    NodeId anchor = min_terminal(state, remaining.front());
    std::vector<Connection> links;
    for (std::size_t i = 1; i < remaining.size(); ++i)
      links.emplace_back(anchor, min_terminal(state, remaining[i]));
    state.collapse(remaining, links);
  }
  return state.solution();
}

struct RaywardSmithOptions {
  FinishingMode finishing = FinishingMode::Cheapest;
};

inline RunResult rayward_smith(const Instance& instance, const RaywardSmithOptions& options = {}) {
  if (instance.terminals().empty()) throw InputError("instance has no terminals");
  PartitionState state(instance);
  RunResult run;

  Cost before = state.cost();
  PhaseRecord pre{"preprocess", preprocess_terminal_edges(state), 0, {}};
  pre.cost_added = state.cost() - before;
  run.phases.push_back(std::move(pre));

  before = state.cost();
  PhaseRecord greedy{"greedy-stars", 0, 0, {}};
  while (auto star = find_max_star(state)) {
    if (!star->proper()) break;
    greedy.selections.push_back(describe(Comet::from_star(*star)));
    collapse(state, *star);
    ++greedy.collapses;
  }
  greedy.cost_added = state.cost() - before;
  run.phases.push_back(std::move(greedy));

  before = state.cost();
  std::size_t parts = state.terminal_component_count();
  run.solution = finishing(state, options.finishing);
  run.phases.push_back({"finishing", parts > 0 ? parts - 1 : 0, state.cost() - before, {}});
  return run;
}

}  // namespace stp12
