#pragma once

// Exact optima for small instances. Two independent routes:
//  - brute_force_opt enumerates Steiner node subsets and takes the minimum
//    spanning tree of the 1/2 metric on terminals ∪ subset;
//  - dreyfus_wagner runs the subset DP over the metric closure.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "stp12/core.hpp"

namespace stp12 {

struct OptResult {
  Cost cost = 0;
  std::vector<Connection> witness;  // sorted
};

inline constexpr std::size_t kDefaultBruteForceNodeCap = 20;
inline constexpr std::size_t kDefaultDreyfusWagnerTerminalCap = 12;

namespace detail {

inline void require_terminals(const Instance& instance) {
  if (instance.terminals().empty()) throw InputError("instance has no terminals");
}

// MST of the metric restricted to `nodes` (sorted): edges first in lex
// order, then non-edges joining the edge-components by their smallest nodes.
inline std::vector<Connection> metric_mst(const Instance& instance, std::span<const NodeId> nodes,
                                          DisjointSets& sets) {
  std::vector<Connection> tree;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (instance.adjacent(nodes[i], nodes[j]) && sets.unite(nodes[i], nodes[j]))
        tree.emplace_back(nodes[i], nodes[j]);
  // Roots are smallest members, so nodes.front() roots its own component.
  const NodeId anchor = nodes.front();
  for (NodeId v : nodes)
    if (v != anchor && sets.find(v) == v) {
      sets.unite(anchor, v);
      tree.emplace_back(anchor, v);
    }
  std::sort(tree.begin(), tree.end());
  return tree;
}

}  // namespace detail

// Exhaustive over subsets of non-terminals; refuses above `node_cap` nodes.
inline OptResult brute_force_opt(const Instance& instance,
                                 std::size_t node_cap = kDefaultBruteForceNodeCap) {
  detail::require_terminals(instance);
  if (instance.node_count() > node_cap)
    throw CapExceeded("brute force: " + std::to_string(instance.node_count()) +
                      " nodes exceeds cap " + std::to_string(node_cap));
  auto terminals = instance.terminals();
  if (terminals.size() == 1) return {};

  std::vector<NodeId> steiner;
  for (NodeId v = 0; v < instance.node_count(); ++v)
    if (!instance.is_terminal(v)) steiner.push_back(v);
  if (steiner.size() >= 63) throw CapExceeded("brute force: too many Steiner nodes");

  OptResult best;
  best.cost = std::numeric_limits<Cost>::max();
  std::vector<NodeId> nodes;
  nodes.reserve(instance.node_count());
  const std::uint64_t subsets = std::uint64_t{1} << steiner.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    nodes.assign(terminals.begin(), terminals.end());
    for (std::size_t i = 0; i < steiner.size(); ++i)
      if ((mask >> i) & 1U) nodes.push_back(steiner[i]);
    std::sort(nodes.begin(), nodes.end());

    // Cost first: the MST has |nodes|-1 links, one extra unit per
    // additional edge-component.
    DisjointSets sets(instance.node_count());
    std::size_t parts = nodes.size();
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j = i + 1; j < nodes.size(); ++j)
        if (instance.adjacent(nodes[i], nodes[j]) && sets.unite(nodes[i], nodes[j])) --parts;
    Cost value = static_cast<Cost>(nodes.size() - 1) + static_cast<Cost>(parts - 1);
    if (value > best.cost) continue;

    DisjointSets fresh(instance.node_count());
    auto tree = detail::metric_mst(instance, nodes, fresh);
    if (value < best.cost || tree < best.witness) {
      best.cost = value;
      best.witness = std::move(tree);
    }
  }
  return best;
}

// Dreyfus–Wagner over the 1/2 metric closure; refuses above
// `terminal_cap` terminals.
inline OptResult dreyfus_wagner(const Instance& instance,
                                std::size_t terminal_cap = kDefaultDreyfusWagnerTerminalCap) {
  detail::require_terminals(instance);
  auto terminals = instance.terminals();
  const std::size_t k = terminals.size();
  if (k > terminal_cap)
    throw CapExceeded("Dreyfus-Wagner: " + std::to_string(k) + " terminals exceeds cap " +
                      std::to_string(terminal_cap));
  if (k == 1) return {};
  if (k > 30) throw CapExceeded("Dreyfus-Wagner: terminal count too large");

  const std::size_t n = instance.node_count();
  const std::size_t sets = std::size_t{1} << (k - 1);
  constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;
  constexpr std::uint32_t kBase = std::numeric_limits<std::uint32_t>::max();

  // dp[mask][v]: cheapest tree spanning terminals in mask plus v.
  // merged[mask][v]: same, restricted to trees where v joins two sub-trees.
  std::vector<Cost> dp(sets * n, kInf);
  std::vector<Cost> merged(sets * n, kInf);
  std::vector<std::uint32_t> split(sets * n, kBase);  // submask realising merged
  std::vector<NodeId> relay(sets * n, 0);             // u with dp = merged[u] + d(u, v)
  auto at = [n](std::size_t mask, NodeId v) { return mask * n + v; };

  for (std::size_t i = 0; i + 1 < k; ++i) {
    std::size_t mask = std::size_t{1} << i;
    merged[at(mask, terminals[i])] = 0;
    for (NodeId v = 0; v < n; ++v) {
      dp[at(mask, v)] = instance.distance(terminals[i], v);
      relay[at(mask, v)] = terminals[i];
    }
  }

  for (std::size_t mask = 1; mask < sets; ++mask) {
    if ((mask & (mask - 1)) == 0) continue;
    const std::size_t low = mask & (~mask + 1);
    for (NodeId v = 0; v < n; ++v) {
      Cost best = kInf;
      std::uint32_t best_sub = kBase;
      // Submasks containing the lowest bit, so each split is seen once.
      for (std::size_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
        if (!(sub & low)) continue;
        Cost value = dp[at(sub, v)] + dp[at(mask ^ sub, v)];
        if (value < best) {
          best = value;
          best_sub = static_cast<std::uint32_t>(sub);
        }
      }
      merged[at(mask, v)] = best;
      split[at(mask, v)] = best_sub;
    }
    // d is a metric, so one relaxation round closes the table.
    for (NodeId v = 0; v < n; ++v) {
      Cost best = kInf;
      NodeId from = v;
      for (NodeId u = 0; u < n; ++u) {
        Cost value = merged[at(mask, u)] + instance.distance(u, v);
        if (value < best) {
          best = value;
          from = u;
        }
      }
      dp[at(mask, v)] = best;
      relay[at(mask, v)] = from;
    }
  }

  const std::size_t full = sets - 1;
  const NodeId root = terminals[k - 1];
  OptResult result;
  result.cost = dp[at(full, root)];

  std::vector<Connection> links;
  std::vector<std::pair<std::size_t, NodeId>> stack{{full, root}};
  while (!stack.empty()) {
    auto [mask, v] = stack.back();
    stack.pop_back();
    NodeId u = relay[at(mask, v)];
    if (u != v) links.emplace_back(u, v);
    std::uint32_t sub = split[at(mask, u)];
    if (sub == kBase) continue;  // singleton mask anchored at its terminal
    stack.emplace_back(sub, u);
    stack.emplace_back(mask ^ sub, u);
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
  result.witness = std::move(links);
  return result;
}

// Dreyfus–Wagner when the terminal count allows it, brute force otherwise.
inline OptResult exact_opt(const Instance& instance,
                           std::size_t terminal_cap = kDefaultDreyfusWagnerTerminalCap,
                           std::size_t node_cap = kDefaultBruteForceNodeCap) {
  if (instance.terminals().size() <= terminal_cap) return dreyfus_wagner(instance, terminal_cap);
  if (instance.node_count() <= node_cap) return brute_force_opt(instance, node_cap);
  throw CapExceeded("exact: instance exceeds both the terminal cap (" + std::to_string(terminal_cap) +
                    ") and the node cap (" + std::to_string(node_cap) + ")");
}

}  // namespace stp12
