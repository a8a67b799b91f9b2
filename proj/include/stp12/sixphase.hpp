#pragma once

// Six-phase star/comet algorithm:
//   1. collapse edges between terminals;
//   2. greedily collapse s-stars with s > 4;
//   3. greedily collapse 4-stars;
//   4. pick a maximum set of disjoint 3-stars;
//   5. greedily upgrade selected 3-stars to (1,3)-comets;
//   6. greedily collapse the structure of least cost index while it is < 1;
// then connect what is left.

#include <functional>
#include <set>
#include <tuple>

#include "stp12/heuristics.hpp"
#include "stp12/matching.hpp"

namespace stp12 {

namespace detail {

// Ranking: smaller cost index, then more terminals, then smaller center.
inline bool better_comet(const Comet& a, const Ratio& ci_a, const Comet& b, const Ratio& ci_b) {
  if (ci_a != ci_b) return ci_a < ci_b;
  if (a.terminal_count() != b.terminal_count()) return a.terminal_count() > b.terminal_count();
  return a.center < b.center;
}

// Best comet around one center whose star has at most two leaves: keep all
// direct terminals and add a maximum fork packing over the rest.
inline Comet comet_at(const PartitionState& state, const Star& star) {
  Comet comet = Comet::from_star(star);
  const NodeId center = star.center;
  auto around = adjacent_components(state, center);

  AuxGraph aux;
  std::map<NodeId, std::map<NodeId, Connection>> fork_terminals;
  for (const auto& [fork, link] : around) {
    if (state.has_terminal(fork)) continue;
    auto& reach = fork_terminals[fork];
    for (const auto& [comp, rep] : adjacent_components(state, fork)) {
      if (!state.has_terminal(comp) || around.contains(comp)) continue;
      reach.emplace(comp, rep);
    }
    std::vector<NodeId> ids;
    for (const auto& [comp, rep] : reach) ids.push_back(comp);
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) aux.edges.push_back({ids[i], ids[j], fork});
  }
  for (const auto& e : max_fork_packing(aux)) {
    const auto& reach = fork_terminals.at(e.fork);
    comet.forks.push_back({e.fork, e.t1, e.t2, around.at(e.fork), reach.at(e.t1), reach.at(e.t2)});
  }
  std::sort(comet.forks.begin(), comet.forks.end(),
            [](const Fork& x, const Fork& y) { return x.node < y.node; });
  return comet;
}

}  // namespace detail

// Star or comet of least cost index. Stars with s >= 3 dominate every comet
// with at most two direct terminals, so the largest star is taken when one
// exists; otherwise each center is tried with a maximum fork packing.
inline std::optional<Comet> best_comet(const PartitionState& state) {
  auto star = find_max_star(state);
  if (star && star->proper()) return Comet::from_star(*star);

  std::optional<Comet> best;
  Ratio best_ci;
  for (NodeId center : steiner_components(state)) {
    Comet comet = detail::comet_at(state, star_at(state, center));
    if (comet.terminal_count() < 2) continue;
    Ratio ci = cost_index(comet);
    if (!best || detail::better_comet(comet, ci, *best, best_ci)) {
      best = std::move(comet);
      best_ci = ci;
    }
  }
  return best;
}

enum class Pack3Strategy { Exact, Greedy };

inline std::string to_string(Pack3Strategy s) { return s == Pack3Strategy::Exact ? "exact" : "greedy"; }

inline constexpr std::size_t kDefaultPack3CandidateCap = 40;

// Every 3-star candidate: one per center and triple of adjacent terminal
// components, in (center, leaves) lex order.
inline std::vector<Star> three_star_candidates(const PartitionState& state) {
  std::vector<Star> out;
  for (NodeId center : steiner_components(state)) {
    Star full = star_at(state, center);
    const std::size_t s = full.size();
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j)
        for (std::size_t k = j + 1; k < s; ++k)
          out.push_back({center,
                         {full.leaves[i], full.leaves[j], full.leaves[k]},
                         {full.edges[i], full.edges[j], full.edges[k]}});
  }
  return out;
}

namespace detail {

class ThreeStarPacker {
 public:
  explicit ThreeStarPacker(const std::vector<Star>& candidates) : candidates_(candidates) {
    for (const auto& c : candidates_) {
      for (NodeId leaf : c.leaves) ids_.push_back(leaf);
      ids_.push_back(c.center);
    }
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    used_.assign(ids_.size(), false);
    for (const auto& c : candidates_) {
      std::vector<std::size_t> idx;
      idx.push_back(index(c.center));
      for (NodeId leaf : c.leaves) idx.push_back(index(leaf));
      touched_.push_back(std::move(idx));
    }
  }

  std::vector<std::size_t> solve() {
    search(0);
    return best_;
  }

 private:
  std::size_t index(NodeId id) const {
    return static_cast<std::size_t>(std::lower_bound(ids_.begin(), ids_.end(), id) - ids_.begin());
  }

  bool fits(std::size_t c) const {
    return std::none_of(touched_[c].begin(), touched_[c].end(), [&](std::size_t i) { return used_[i]; });
  }

  void mark(std::size_t c, bool value) {
    for (std::size_t i : touched_[c]) used_[i] = value;
  }

  void search(std::size_t next) {
    if (chosen_.size() > best_.size()) best_ = chosen_;
    std::size_t room = 0;
    for (std::size_t c = next; c < candidates_.size(); ++c)
      if (fits(c)) ++room;
    if (chosen_.size() + room <= best_.size()) return;
    for (std::size_t c = next; c < candidates_.size(); ++c) {
      if (!fits(c)) continue;
      chosen_.push_back(c);
      mark(c, true);
      search(c + 1);
      mark(c, false);
      chosen_.pop_back();
      // Remaining candidates alone cannot beat the incumbent.
      std::size_t rest = 0;
      for (std::size_t d = c + 1; d < candidates_.size(); ++d)
        if (fits(d)) ++rest;
      if (chosen_.size() + rest <= best_.size()) return;
    }
  }

  const std::vector<Star>& candidates_;
  std::vector<NodeId> ids_;
  std::vector<bool> used_;
  std::vector<std::vector<std::size_t>> touched_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
};

}  // namespace detail

// Disjoint 3-stars (no shared center, no shared terminal component).
// Exact: maximum cardinality by branch and bound, refusing above
// `candidate_cap` candidates. Greedy: maximal, in candidate order.
inline std::vector<Star> max_3star_set(const PartitionState& state, Pack3Strategy strategy,
                                       std::size_t candidate_cap = kDefaultPack3CandidateCap) {
  std::vector<Star> candidates = three_star_candidates(state);
  std::vector<Star> chosen;
  if (strategy == Pack3Strategy::Exact) {
    if (candidates.size() > candidate_cap)
      throw CapExceeded("3-star packing: " + std::to_string(candidates.size()) +
                        " candidates exceed cap " + std::to_string(candidate_cap) +
                        "; use the greedy strategy");
    for (std::size_t i : detail::ThreeStarPacker(candidates).solve()) chosen.push_back(candidates[i]);
    return chosen;
  }
  std::set<NodeId> used;
  for (auto& c : candidates) {
    if (used.contains(c.center) ||
        std::any_of(c.leaves.begin(), c.leaves.end(), [&](NodeId l) { return used.contains(l); }))
      continue;
    used.insert(c.center);
    used.insert(c.leaves.begin(), c.leaves.end());
    chosen.push_back(std::move(c));
  }
  return chosen;
}

// Scans the selection in order and turns a 3-star into a (1,3)-comet when its
// center reaches an unused terminal-free component that touches two
// terminal components untouched by the current selection.
inline std::vector<Comet> upgrade_to_comets(const PartitionState& state, const std::vector<Star>& selected) {
  std::set<NodeId> touched;
  for (const auto& s : selected) {
    touched.insert(s.center);
    touched.insert(s.leaves.begin(), s.leaves.end());
  }
  std::vector<Comet> out;
  for (const auto& s : selected) {
    Comet comet = Comet::from_star(s);
    for (const auto& [fork, link] : adjacent_components(state, s.center)) {
      if (state.has_terminal(fork) || touched.contains(fork)) continue;
      std::vector<std::pair<NodeId, Connection>> fresh;
      for (const auto& [comp, rep] : adjacent_components(state, fork)) {
        if (!state.has_terminal(comp) || touched.contains(comp)) continue;
        fresh.emplace_back(comp, rep);
        if (fresh.size() == 2) break;
      }
      if (fresh.size() < 2) continue;
      comet.forks.push_back({fork, fresh[0].first, fresh[1].first, link, fresh[0].second, fresh[1].second});
      touched.insert({fork, fresh[0].first, fresh[1].first});
      break;
    }
    out.push_back(std::move(comet));
  }
  return out;
}

struct SixPhaseOptions {
  FinishingMode finishing = FinishingMode::Cheapest;
  Pack3Strategy pack3 = Pack3Strategy::Exact;
  std::size_t pack3_candidate_cap = kDefaultPack3CandidateCap;
};

inline RunResult six_phase(const Instance& instance, const SixPhaseOptions& options = {}) {
  if (instance.terminals().empty()) throw InputError("instance has no terminals");
  PartitionState state(instance);
  RunResult run;

  auto phase = [&](std::string name, const std::function<void(PhaseRecord&)>& body) {
    PhaseRecord record{std::move(name), 0, 0, {}};
    Cost before = state.cost();
    body(record);
    record.cost_added = state.cost() - before;
    run.phases.push_back(std::move(record));
  };
  auto take = [&](PhaseRecord& record, const Comet& comet) {
    record.selections.push_back(describe(comet));
    collapse(state, comet);
    ++record.collapses;
  };
  auto greedy_stars = [&](PhaseRecord& record, auto accept) {
    while (auto star = find_max_star(state)) {
      if (!accept(star->size())) break;
      take(record, Comet::from_star(*star));
    }
  };

  phase("terminal-edges", [&](PhaseRecord& r) { r.collapses = preprocess_terminal_edges(state); });
  phase("stars>4", [&](PhaseRecord& r) { greedy_stars(r, [](std::size_t s) { return s > 4; }); });
  phase("stars=4", [&](PhaseRecord& r) { greedy_stars(r, [](std::size_t s) { return s == 4; }); });

  std::vector<Star> packed;
  phase("max-3-stars", [&](PhaseRecord& r) {
    Pack3Strategy strategy = options.pack3;
    if (strategy == Pack3Strategy::Exact &&
        three_star_candidates(state).size() > options.pack3_candidate_cap)
      strategy = Pack3Strategy::Greedy;
    run.pack3_strategy = to_string(strategy);
    packed = max_3star_set(state, strategy, options.pack3_candidate_cap);
    r.selections.push_back(std::to_string(packed.size()) + " selected (" + run.pack3_strategy + ")");
  });
  phase("comet-upgrade", [&](PhaseRecord& r) {
    for (const auto& comet : upgrade_to_comets(state, packed)) take(r, comet);
  });
  phase("least-cost-index", [&](PhaseRecord& r) {
    while (auto comet = best_comet(state)) {
      if (cost_index(*comet) >= 1) break;
      take(r, *comet);
    }
  });
  phase("finishing", [&](PhaseRecord& r) {
    std::size_t parts = state.terminal_component_count();
    r.collapses = parts > 0 ? parts - 1 : 0;
    run.solution = finishing(state, options.finishing);
  });
  return run;
}

}  // namespace stp12
