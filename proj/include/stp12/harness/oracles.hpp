#pragma once

// Exhaustive oracles used by the test suites. They share no code path with
// the algorithms they check beyond the instance and partition types.

#include <functional>
#include <map>
#include <optional>

#include "stp12/matching.hpp"
#include "stp12/partition.hpp"
#include "stp12/structures.hpp"

namespace stp12::oracle {

// Maximum matching size by memoised recursion over vertex subsets (n <= 24).
inline std::size_t matching_size(const SimpleGraph& graph) {
  const std::size_t n = graph.size();
  if (n > 24) throw CapExceeded("matching oracle: more than 24 vertices");
  std::vector<std::uint32_t> adj(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w : graph.neighbors(v)) adj[v] |= std::uint32_t{1} << w;
  std::map<std::uint32_t, std::size_t> memo;
  std::function<std::size_t(std::uint32_t)> best = [&](std::uint32_t mask) -> std::size_t {
    if (mask == 0) return 0;
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const int v = std::countr_zero(mask);
    const std::uint32_t rest = mask & ~(std::uint32_t{1} << v);
    std::size_t value = best(rest);
    for (std::uint32_t options = adj[v] & rest; options; options &= options - 1) {
      const int w = std::countr_zero(options);
      value = std::max(value, 1 + best(rest & ~(std::uint32_t{1} << w)));
    }
    memo.emplace(mask, value);
    return value;
  };
  return best(n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);
}

// Minimum cost index over every star and comet of the component graph
// (any center, any subset of its terminal components as direct terminals,
// any disjoint choice of forks and fork pairs). Empty when no structure has
// two or more terminals.
inline std::optional<Ratio> min_cost_index(const PartitionState& state) {
  const Instance& instance = state.instance();
  auto comps = state.components();
  auto comp_adjacent = [&](NodeId a, NodeId b) {
    for (NodeId u : state.members(a))
      for (NodeId v : state.members(b))
        if (instance.adjacent(u, v)) return true;
    return false;
  };

  std::optional<Ratio> best;
  for (NodeId center : comps) {
    if (state.has_terminal(center)) continue;
    std::vector<NodeId> direct;
    std::vector<NodeId> forks;
    for (NodeId c : comps) {
      if (c == center || !comp_adjacent(center, c)) continue;
      (state.has_terminal(c) ? direct : forks).push_back(c);
    }
    std::vector<std::vector<NodeId>> reach(forks.size());
    for (std::size_t f = 0; f < forks.size(); ++f)
      for (NodeId c : comps)
        if (state.has_terminal(c) && comp_adjacent(forks[f], c)) reach[f].push_back(c);

    std::vector<NodeId> used;
    auto taken = [&](NodeId x) { return std::find(used.begin(), used.end(), x) != used.end(); };
    std::function<void(std::size_t, std::size_t, std::size_t)> assign = [&](std::size_t f, std::size_t a,
                                                                            std::size_t b) {
      if (f == forks.size()) {
        if (2 * a + b < 2) return;
        Ratio ci = cost_index(static_cast<std::int64_t>(2 * a + b), static_cast<std::int64_t>(3 * a + b));
        if (!best || ci < *best) best = ci;
        return;
      }
      assign(f + 1, a, b);
      const auto& r = reach[f];
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (taken(r[i])) continue;
        for (std::size_t j = i + 1; j < r.size(); ++j) {
          if (taken(r[j])) continue;
          used.push_back(r[i]);
          used.push_back(r[j]);
          assign(f + 1, a + 1, b);
          used.pop_back();
          used.pop_back();
        }
      }
    };
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << direct.size()); ++mask) {
      used.clear();
      for (std::size_t i = 0; i < direct.size(); ++i)
        if ((mask >> i) & 1U) used.push_back(direct[i]);
      assign(0, 0, used.size());
    }
  }
  return best;
}

// Size of a largest pairwise-disjoint subset of 3-star candidates.
inline std::size_t max_disjoint_3stars(const std::vector<Star>& candidates) {
  if (candidates.size() > 24) throw CapExceeded("3-star oracle: more than 24 candidates");
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << candidates.size()); ++mask) {
    std::vector<NodeId> ids;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if ((mask >> i) & 1U) {
        ids.push_back(candidates[i].center);
        ids.insert(ids.end(), candidates[i].leaves.begin(), candidates[i].leaves.end());
      }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) == ids.end())
      best = std::max<std::size_t>(best, std::popcount(mask));
  }
  return best;
}

}  // namespace stp12::oracle
