#pragma once

// Stars, forks and comets over the component graph, and the cost index
// that ranks them.

#include <optional>
#include <string>

#include "stp12/partition.hpp"

namespace stp12 {

// s-star: a terminal-free component (the center) joined by one edge to each
// of s distinct terminal components. Proper when s >= 3.
struct Star {
  NodeId center = 0;
  std::vector<NodeId> leaves;        // terminal component ids, ascending
  std::vector<Connection> edges;     // edges[i] joins center and leaves[i]

  std::size_t size() const noexcept { return leaves.size(); }
  bool proper() const noexcept { return leaves.size() >= 3; }
};

// Fork: a terminal-free component joined to the comet center and to two
// terminal components.
struct Fork {
  NodeId node = 0;
  NodeId t1 = 0;
  NodeId t2 = 0;
  Connection to_center;
  Connection to_t1;
  Connection to_t2;
};

// (a,b)-comet: a center with a forks and b direct terminal components.
// A comet without forks is a b-star.
struct Comet {
  NodeId center = 0;
  std::vector<Fork> forks;
  std::vector<NodeId> direct;             // terminal component ids, ascending
  std::vector<Connection> direct_edges;   // direct_edges[i] joins center and direct[i]

  static Comet from_star(const Star& star) {
    Comet c;
    c.center = star.center;
    c.direct = star.leaves;
    c.direct_edges = star.edges;
    return c;
  }

  std::size_t fork_count() const noexcept { return forks.size(); }
  std::size_t direct_count() const noexcept { return direct.size(); }
  std::size_t terminal_count() const noexcept { return 2 * forks.size() + direct.size(); }
  std::size_t edge_count() const noexcept { return 3 * forks.size() + direct.size(); }
  bool is_star() const noexcept { return forks.empty(); }

  std::vector<NodeId> components() const {
    std::vector<NodeId> out{center};
    for (const auto& f : forks) out.insert(out.end(), {f.node, f.t1, f.t2});
    out.insert(out.end(), direct.begin(), direct.end());
    return out;
  }

  std::vector<Connection> tree_edges() const {
    std::vector<Connection> out = direct_edges;
    for (const auto& f : forks) out.insert(out.end(), {f.to_center, f.to_t1, f.to_t2});
    return out;
  }
};

// Label for reports; the center is printed 1-based like the STP files.
inline std::string describe(const Comet& c) {
  const std::string at = "@" + std::to_string(c.center + 1);
  if (c.is_star()) return std::to_string(c.direct_count()) + "-star" + at;
  return "(" + std::to_string(c.fork_count()) + "," + std::to_string(c.direct_count()) + ")-comet" + at;
}

// ci = c/(t-1) - 1 for a structure with t terminals and c edges.
inline Ratio cost_index(std::int64_t terminals, std::int64_t edges) {
  if (terminals < 2) throw InputError("cost index needs at least two terminals");
  if (edges < 1) throw InputError("cost index needs at least one edge");
  return Ratio(edges, terminals - 1) - 1;
}

inline Ratio cost_index(const Comet& c) {
  return cost_index(static_cast<std::int64_t>(c.terminal_count()),
                    static_cast<std::int64_t>(c.edge_count()));
}

inline void collapse(PartitionState& state, const Star& star) {
  std::vector<NodeId> comps{star.center};
  comps.insert(comps.end(), star.leaves.begin(), star.leaves.end());
  state.collapse(comps, star.edges);
}

inline void collapse(PartitionState& state, const Comet& comet) {
  state.collapse(comet.components(), comet.tree_edges());
}

// The star centred at `center` using every adjacent terminal component.
inline Star star_at(const PartitionState& state, NodeId center) {
  Star star;
  star.center = center;
  for (const auto& [comp, rep] : adjacent_components(state, center)) {
    if (!state.has_terminal(comp)) continue;
    star.leaves.push_back(comp);
    star.edges.push_back(rep);
  }
  return star;
}

// Terminal-free components, i.e. candidate centers and fork nodes.
inline std::vector<NodeId> steiner_components(const PartitionState& state) {
  std::vector<NodeId> out;
  for (NodeId c : state.components())
    if (!state.has_terminal(c)) out.push_back(c);
  return out;
}

}  // namespace stp12
