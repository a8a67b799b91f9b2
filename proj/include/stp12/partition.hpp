#pragma once

// Partial solutions as partitions of the node set. A partial solution F
// induces components Π(F); collapsing a connected set of components adds
// representative connections forming a spanning tree over them.

#include <map>
#include <optional>
#include <utility>

#include "stp12/core.hpp"

namespace stp12 {

class PartitionState {
 public:
  explicit PartitionState(const Instance& instance)
      : instance_(&instance),
        sets_(instance.node_count()),
        members_(instance.node_count()),
        has_terminal_(instance.node_count(), false),
        component_count_(instance.node_count()) {
    for (NodeId v = 0; v < instance.node_count(); ++v) {
      members_[v] = {v};
      has_terminal_[v] = instance.is_terminal(v);
    }
    terminal_components_ = instance.terminals().size();
  }

  const Instance& instance() const noexcept { return *instance_; }

  NodeId find(NodeId v) const { return sets_.find(v); }

  // `root` must be a component id (as returned by find).
  bool has_terminal(NodeId root) const { return has_terminal_.at(root); }
  std::span<const NodeId> members(NodeId root) const { return members_.at(root); }

  std::size_t component_count() const noexcept { return component_count_; }
  std::size_t terminal_component_count() const noexcept { return terminal_components_; }

  std::vector<NodeId> components() const {
    std::vector<NodeId> out;
    out.reserve(component_count_);
    for (NodeId v = 0; v < instance_->node_count(); ++v)
      if (find(v) == v) out.push_back(v);
    return out;
  }

  std::vector<NodeId> terminal_components() const {
    std::vector<NodeId> out;
    for (NodeId t : instance_->terminals()) out.push_back(find(t));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  const std::vector<Connection>& connections() const noexcept { return connections_; }
  Cost cost() const noexcept { return cost_; }

  // Merge `components` into one by adding `tree_edges`, which must form a
  // spanning tree over the selected components.
  void collapse(std::span<const NodeId> components, std::span<const Connection> tree_edges) {
    std::vector<NodeId> selected(components.begin(), components.end());
    std::sort(selected.begin(), selected.end());
    if (std::adjacent_find(selected.begin(), selected.end()) != selected.end())
      throw ContractViolation("collapse: duplicate component id");
    for (NodeId c : selected)
      if (c >= instance_->node_count() || find(c) != c)
        throw ContractViolation("collapse: " + std::to_string(c) + " is not a component id");
    if (selected.empty()) throw ContractViolation("collapse: empty component set");
    if (tree_edges.size() + 1 != selected.size())
      throw ContractViolation("collapse: tree edge count does not match component count");

    auto selected_index = [&](NodeId v) -> std::optional<NodeId> {
      auto it = std::lower_bound(selected.begin(), selected.end(), find(v));
      if (it == selected.end() || *it != find(v)) return std::nullopt;
      return static_cast<NodeId>(it - selected.begin());
    };
    DisjointSets local(selected.size());
    for (const auto& e : tree_edges) {
      if (e.v >= instance_->node_count())
        throw ContractViolation("collapse: edge " + to_string(e) + " out of range");
      auto a = selected_index(e.u);
      auto b = selected_index(e.v);
      if (!a || !b) throw ContractViolation("collapse: edge " + to_string(e) + " leaves the selection");
      if (!local.unite(*a, *b))
        throw ContractViolation("collapse: edge " + to_string(e) + " closes a cycle");
    }

    NodeId root = selected.front();
    bool terminal = false;
    std::size_t terminal_parts = 0;
    for (NodeId c : selected) {
      if (has_terminal_[c]) {
        terminal = true;
        ++terminal_parts;
      }
    }
    for (NodeId c : selected) {
      if (c == root) continue;
      sets_.unite(root, c);
      auto& dst = members_[root];
      dst.insert(dst.end(), members_[c].begin(), members_[c].end());
      members_[c].clear();
      members_[c].shrink_to_fit();
      has_terminal_[c] = false;
    }
    std::sort(members_[root].begin(), members_[root].end());
    has_terminal_[root] = terminal;
    component_count_ -= selected.size() - 1;
    if (terminal_parts > 1) terminal_components_ -= terminal_parts - 1;

    for (const auto& e : tree_edges) {
      connections_.push_back(e);
      cost_ += instance_->distance(e.u, e.v);
    }
  }

  Solution solution() const { return Solution::from(*instance_, connections_); }

 private:
  const Instance* instance_;
  DisjointSets sets_;
  std::vector<std::vector<NodeId>> members_;
  std::vector<bool> has_terminal_;
  std::size_t component_count_ = 0;
  std::size_t terminal_components_ = 0;
  std::vector<Connection> connections_;
  Cost cost_ = 0;
};

// Edge (A, B) of the induced component graph with its representative pair.
struct ComponentEdge {
  NodeId a = 0;
  NodeId b = 0;
  Connection representative;

  friend auto operator<=>(const ComponentEdge&, const ComponentEdge&) = default;
};

struct ComponentGraph {
  std::vector<NodeId> components;     // sorted component ids
  std::vector<ComponentEdge> edges;   // sorted by (a, b), a < b
};

// (Π, E(Π)); each edge carries the lexicographically smallest (u, v) ∈ E.
inline ComponentGraph induced_graph(const PartitionState& state) {
  const Instance& instance = state.instance();
  ComponentGraph graph;
  graph.components = state.components();
  std::map<std::pair<NodeId, NodeId>, Connection> reps;
  for (NodeId u = 0; u < instance.node_count(); ++u) {
    NodeId ru = state.find(u);
    for (NodeId v : instance.neighbors(u)) {
      if (v < u) continue;
      NodeId rv = state.find(v);
      if (ru == rv) continue;
      reps.try_emplace({std::min(ru, rv), std::max(ru, rv)}, Connection(u, v));
    }
  }
  graph.edges.reserve(reps.size());
  for (const auto& [key, rep] : reps) graph.edges.push_back({key.first, key.second, rep});
  return graph;
}

// For every component adjacent to `root`, the lexicographically smallest
// edge joining them. Keys are component ids.
inline std::map<NodeId, Connection> adjacent_components(const PartitionState& state, NodeId root) {
  std::map<NodeId, Connection> out;
  const Instance& instance = state.instance();
  for (NodeId u : state.members(root)) {
    for (NodeId v : instance.neighbors(u)) {
      NodeId rv = state.find(v);
      if (rv == root) continue;
      Connection c(u, v);
      auto [it, inserted] = out.try_emplace(rv, c);
      if (!inserted && c < it->second) it->second = c;
    }
  }
  return out;
}

// Lexicographically smallest edge between two distinct components.
inline std::optional<Connection> representative(const PartitionState& state, NodeId a, NodeId b) {
  std::optional<Connection> best;
  const Instance& instance = state.instance();
  for (NodeId u : state.members(a))
    for (NodeId v : instance.neighbors(u))
      if (state.find(v) == b) {
        Connection c(u, v);
        if (!best || c < *best) best = c;
      }
  return best;
}

}  // namespace stp12
