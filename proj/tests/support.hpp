#pragma once

// Small instance builders shared by the unit tests.

#include <initializer_list>
#include <utility>

#include "stp12/stp12.hpp"

namespace stp12::testing {

inline Instance make_instance(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> edges,
                              std::initializer_list<NodeId> terminals) {
  Instance inst(n);
  for (auto [u, v] : edges) inst.add_edge(u, v);
  for (NodeId t : terminals) inst.add_terminal(t);
  return inst;
}

// Center 0 joined to terminals 1..s.
inline Instance star_instance(std::size_t s) {
  Instance inst(s + 1);
  for (NodeId t = 1; t <= s; ++t) {
    inst.add_edge(0, t);
    inst.add_terminal(t);
  }
  return inst;
}

// Terminals at both ends of a path with `length` edges.
inline Instance path_instance(std::size_t length) {
  Instance inst(length + 1);
  for (NodeId v = 0; v < length; ++v) inst.add_edge(v, v + 1);
  inst.add_terminal(0);
  inst.add_terminal(static_cast<NodeId>(length));
  return inst;
}

// (1,3)-comet: center 0, fork 1 with terminals 2 3, direct terminals 4 5 6.
inline Instance comet13_instance() {
  return make_instance(7, {{0, 1}, {1, 2}, {1, 3}, {0, 4}, {0, 5}, {0, 6}}, {2, 3, 4, 5, 6});
}

}  // namespace stp12::testing
