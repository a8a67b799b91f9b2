#pragma once

// Reference-solution audit: split a reference solution T* into C-comps
// (components of T = T* ∩ E) and S-comps (subtrees of T whose internal
// nodes are non-terminals), classify the S-comps, and normalize T* with
// Path and Bridge steps until every S-comp is a star, a comet or a
// terminal–terminal edge.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "stp12/core.hpp"

namespace stp12 {

class ReferenceSolution {
 public:
  ReferenceSolution(const Instance& instance, std::vector<Connection> connections)
      : instance_(&instance) {
    std::sort(connections.begin(), connections.end());
    connections.erase(std::unique(connections.begin(), connections.end()), connections.end());
    for (const auto& c : connections)
      if (c.v >= instance.node_count()) throw InputError("reference connection " + to_string(c) + " out of range");
    connections_ = std::move(connections);
  }

  const Instance& instance() const noexcept { return *instance_; }

  // T*
  const std::vector<Connection>& connections() const noexcept { return connections_; }

  // T = T* ∩ E
  std::vector<Connection> tree_edges() const {
    std::vector<Connection> out;
    for (const auto& c : connections_)
      if (instance_->adjacent(c.u, c.v)) out.push_back(c);
    return out;
  }

  Cost cost() const { return stp12::cost(*instance_, connections_); }
  bool valid() const { return is_valid_solution(*instance_, connections_); }

  void remove(const Connection& c) {
    auto it = std::lower_bound(connections_.begin(), connections_.end(), c);
    if (it != connections_.end() && *it == c) connections_.erase(it);
  }
  void add(const Connection& c) {
    auto it = std::lower_bound(connections_.begin(), connections_.end(), c);
    if (it == connections_.end() || *it != c) connections_.insert(it, c);
  }

 private:
  const Instance* instance_;
  std::vector<Connection> connections_;
};

enum class ComponentKind { TerminalEdge, Star, Comet, Other };

struct Classification {
  ComponentKind kind = ComponentKind::Other;
  std::size_t stars = 0;  // s for a star
  std::size_t forks = 0;  // a for a comet
  std::size_t direct = 0; // b for a comet

  std::string label() const {
    switch (kind) {
      case ComponentKind::TerminalEdge: return "terminal-edge";
      case ComponentKind::Star: return "star(" + std::to_string(stars) + ")";
      case ComponentKind::Comet: return "comet(" + std::to_string(forks) + "," + std::to_string(direct) + ")";
      case ComponentKind::Other: break;
    }
    return "other";
  }

  friend bool operator==(const Classification&, const Classification&) = default;
};

struct SteinerComponent {
  std::vector<NodeId> nodes;       // sorted
  std::vector<Connection> edges;   // sorted
  NodeId center = 0;               // meaningful for stars and comets
  Classification classification;
};

struct Decomposition {
  std::vector<SteinerComponent> steiner_components;
  std::vector<std::vector<NodeId>> connected_components;  // C-comps, node sets
};

namespace detail {

inline std::map<NodeId, std::vector<NodeId>> adjacency_of(std::span<const Connection> edges) {
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& [v, list] : adj) std::sort(list.begin(), list.end());
  return adj;
}

inline std::optional<Classification> comet_centered(const Instance& instance,
                                                    const std::map<NodeId, std::vector<NodeId>>& adj,
                                                    NodeId center) {
  Classification c{ComponentKind::Comet, 0, 0, 0};
  for (NodeId w : adj.at(center)) {
    if (instance.is_terminal(w)) {
      ++c.direct;
      continue;
    }
    const auto& around = adj.at(w);
    if (around.size() != 3) return std::nullopt;
    std::size_t terminal_leaves = 0;
    for (NodeId x : around)
      if (x != center && instance.is_terminal(x) && adj.at(x).size() == 1) ++terminal_leaves;
    if (terminal_leaves != 2) return std::nullopt;
    ++c.forks;
  }
  return c;
}

}  // namespace detail

// Classifies one S-comp from its edges. Sets `center` for stars and comets.
inline Classification classify(const Instance& instance, std::span<const Connection> edges,
                               NodeId* center = nullptr) {
  auto adj = detail::adjacency_of(edges);
  std::vector<NodeId> inner;
  for (const auto& [v, list] : adj)
    if (!instance.is_terminal(v)) inner.push_back(v);
  if (edges.size() == 1 && inner.empty()) return {ComponentKind::TerminalEdge, 0, 0, 0};
  std::size_t node_count = adj.size();
  if (inner.empty() || edges.size() + 1 != node_count) return {};  // not a tree
  for (const auto& [v, list] : adj)
    if (instance.is_terminal(v) && list.size() != 1) return {};
  if (inner.size() == 1) {
    if (center) *center = inner.front();
    return {ComponentKind::Star, adj.at(inner.front()).size(), 0, 0};
  }
  for (NodeId candidate : inner) {
    auto comet = detail::comet_centered(instance, adj, candidate);
    if (comet && comet->forks + 1 == inner.size()) {
      if (center) *center = candidate;
      return *comet;
    }
  }
  return {};
}

// S-comps partition T: edges meeting at a non-terminal belong together.
inline Decomposition decompose(const ReferenceSolution& reference) {
  const Instance& instance = reference.instance();
  auto edges = reference.tree_edges();
  Decomposition out;

  DisjointSets by_edge(edges.size());
  std::map<NodeId, std::size_t> first_edge_at;
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (NodeId x : {edges[i].u, edges[i].v}) {
      if (instance.is_terminal(x)) continue;
      auto [it, inserted] = first_edge_at.try_emplace(x, i);
      if (!inserted) by_edge.unite(static_cast<NodeId>(it->second), static_cast<NodeId>(i));
    }
  std::map<NodeId, std::vector<Connection>> groups;
  for (std::size_t i = 0; i < edges.size(); ++i) groups[by_edge.find(static_cast<NodeId>(i))].push_back(edges[i]);
  for (auto& [root, group] : groups) {
    SteinerComponent s;
    s.edges = std::move(group);
    for (const auto& e : s.edges) s.nodes.insert(s.nodes.end(), {e.u, e.v});
    std::sort(s.nodes.begin(), s.nodes.end());
    s.nodes.erase(std::unique(s.nodes.begin(), s.nodes.end()), s.nodes.end());
    s.classification = classify(instance, s.edges, &s.center);
    out.steiner_components.push_back(std::move(s));
  }

  DisjointSets by_node(instance.node_count());
  std::vector<bool> touched(instance.node_count(), false);
  for (const auto& e : edges) {
    by_node.unite(e.u, e.v);
    touched[e.u] = touched[e.v] = true;
  }
  std::map<NodeId, std::vector<NodeId>> comps;
  for (NodeId v = 0; v < instance.node_count(); ++v)
    if (touched[v]) comps[by_node.find(v)].push_back(v);
  for (auto& [root, nodes] : comps) out.connected_components.push_back(std::move(nodes));
  return out;
}

enum class NormalizationMode {
  Greedy,      // every S-comp ends as a proper star or a terminal edge
  StarComet,   // stars (s > 2) and comets survive
};

inline std::string to_string(NormalizationMode m) { return m == NormalizationMode::Greedy ? "s3" : "s4"; }

struct TraceStep {
  std::string kind;  // cleanup | detach | path | bridge
  std::vector<Connection> removed;
  std::vector<Connection> added;
  Cost cost_delta = 0;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

namespace detail {

inline std::vector<std::size_t> degrees(std::size_t n, std::span<const Connection> links) {
  std::vector<std::size_t> deg(n, 0);
  for (const auto& c : links) {
    ++deg[c.u];
    ++deg[c.v];
  }
  return deg;
}

// Removes `removed` from T*, reconnects the parts that hold terminals by
// joining their smallest terminals to the first part's smallest terminal,
// and drops terminal-free parts and non-terminal leaves.
inline TraceStep remove_and_reconnect(ReferenceSolution& ref, std::string kind,
                                      std::span<const Connection> removed) {
  const Instance& instance = ref.instance();
  TraceStep step{std::move(kind), {}, {}, 0};
  const Cost before = ref.cost();
  for (const auto& c : removed) {
    ref.remove(c);
    step.removed.push_back(c);
  }

  DisjointSets parts(instance.node_count());
  for (const auto& c : ref.connections()) parts.unite(c.u, c.v);
  std::map<NodeId, NodeId> smallest_terminal;  // part root -> terminal
  for (NodeId t : instance.terminals()) smallest_terminal.try_emplace(parts.find(t), t);
  std::vector<NodeId> anchors;
  for (const auto& [root, t] : smallest_terminal) anchors.push_back(t);
  std::sort(anchors.begin(), anchors.end());
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    Connection link(anchors.front(), anchors[i]);
    ref.add(link);
    step.added.push_back(link);
  }

  // Drop terminal-free parts, then peel non-terminal leaves.
  DisjointSets joined(instance.node_count());
  for (const auto& c : ref.connections()) joined.unite(c.u, c.v);
  std::vector<bool> has_terminal(instance.node_count(), false);
  for (NodeId t : instance.terminals()) has_terminal[joined.find(t)] = true;
  std::vector<Connection> dropped;
  for (const auto& c : ref.connections())
    if (!has_terminal[joined.find(c.u)]) dropped.push_back(c);
  for (const auto& c : dropped) ref.remove(c);
  bool changed = true;
  while (changed) {
    changed = false;
    auto deg = degrees(instance.node_count(), ref.connections());
    std::vector<Connection> leaves;
    for (const auto& c : ref.connections())
      if ((!instance.is_terminal(c.u) && deg[c.u] == 1) || (!instance.is_terminal(c.v) && deg[c.v] == 1))
        leaves.push_back(c);
    for (const auto& c : leaves) {
      ref.remove(c);
      dropped.push_back(c);
      changed = true;
    }
  }
  std::sort(dropped.begin(), dropped.end());
  step.removed.insert(step.removed.end(), dropped.begin(), dropped.end());
  std::sort(step.removed.begin(), step.removed.end());
  step.cost_delta = ref.cost() - before;
  return step;
}

inline bool has_cycle(std::size_t n, std::span<const Connection> links) {
  DisjointSets sets(n);
  for (const auto& c : links)
    if (!sets.unite(c.u, c.v)) return true;
  return false;
}

}  // namespace detail

// Maximal paths of T with k > 1 edges whose interior nodes are
// non-terminals of T-degree 2 and whose ends are terminals or nodes of
// T-degree other than 2. Each path is listed once, smaller end first.
inline std::vector<std::vector<NodeId>> path_candidates(const ReferenceSolution& ref) {
  const Instance& instance = ref.instance();
  auto edges = ref.tree_edges();
  auto adj = detail::adjacency_of(edges);
  auto interior = [&](NodeId v) { return !instance.is_terminal(v) && adj.at(v).size() == 2; };

  std::vector<std::vector<NodeId>> out;
  std::set<Connection> walked;
  for (const auto& [start, around] : adj) {
    if (interior(start)) continue;
    for (NodeId first : around) {
      if (walked.contains(Connection(start, first))) continue;
      std::vector<NodeId> path{start, first};
      walked.insert(Connection(start, first));
      while (interior(path.back())) {
        const auto& two = adj.at(path.back());
        NodeId next = two[0] == path[path.size() - 2] ? two[1] : two[0];
        walked.insert(Connection(path.back(), next));
        path.push_back(next);
      }
      if (path.size() < 3) continue;
      if (path.back() < path.front()) std::reverse(path.begin(), path.end());
      out.push_back(std::move(path));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Replaces a path of k > 1 edges of T by a reconnection of its sides.
inline TraceStep path_step(ReferenceSolution& ref, std::span<const NodeId> path) {
  const Instance& instance = ref.instance();
  if (path.size() < 3) throw ContractViolation("path step needs a path with more than one edge");
  auto edges = ref.tree_edges();
  auto adj = detail::adjacency_of(edges);
  std::vector<Connection> removed;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i] == path[i + 1] || !instance.adjacent(path[i], path[i + 1]) ||
        !std::binary_search(edges.begin(), edges.end(), Connection(path[i], path[i + 1])))
      throw ContractViolation("path step: consecutive nodes are not joined in T");
    removed.emplace_back(path[i], path[i + 1]);
  }
  for (std::size_t i = 1; i + 1 < path.size(); ++i)
    if (instance.is_terminal(path[i]) || adj.at(path[i]).size() != 2)
      throw ContractViolation("path step: interior node " + std::to_string(path[i]) +
                              " is not a degree-2 non-terminal");
  for (NodeId end : {path.front(), path.back()})
    if (!instance.is_terminal(end) && adj.at(end).size() == 2)
      throw ContractViolation("path step: path is not maximal at node " + std::to_string(end));
  return detail::remove_and_reconnect(ref, "path", removed);
}

// Edges of T between non-terminals that a Bridge Step may remove. Empty
// while a Path Step applies. In StarComet mode both sides of the split
// Steiner component must keep at least three edges.
inline std::vector<Connection> bridge_candidates(const ReferenceSolution& ref, NormalizationMode mode) {
  if (!path_candidates(ref).empty()) return {};
  const Instance& instance = ref.instance();
  std::vector<Connection> out;
  auto edges = ref.tree_edges();
  auto adj = detail::adjacency_of(edges);
  for (const auto& e : edges) {
    if (instance.is_terminal(e.u) || instance.is_terminal(e.v)) continue;
    if (mode == NormalizationMode::StarComet) {
      // Count edges reachable from each side without crossing e or a terminal.
      auto side_edges = [&](NodeId from, NodeId blocked) {
        std::size_t count = 0;
        std::vector<std::pair<NodeId, NodeId>> stack{{from, blocked}};
        std::set<NodeId> seen{from, blocked};
        while (!stack.empty()) {
          auto [v, parent] = stack.back();
          stack.pop_back();
          for (NodeId w : adj.at(v)) {
            if (w == parent) continue;
            ++count;
            if (!instance.is_terminal(w) && seen.insert(w).second) stack.emplace_back(w, v);
          }
        }
        return count;
      };
      if (side_edges(e.u, e.v) < 3 || side_edges(e.v, e.u) < 3) continue;
    }
    out.push_back(e);
  }
  return out;
}

inline TraceStep bridge_step(ReferenceSolution& ref, const Connection& edge,
                             NormalizationMode mode = NormalizationMode::Greedy) {
  const Instance& instance = ref.instance();
  if (instance.is_terminal(edge.u) || instance.is_terminal(edge.v))
    throw ContractViolation("bridge step: edge " + to_string(edge) + " touches a terminal");
  auto allowed = bridge_candidates(ref, mode);
  if (!std::binary_search(allowed.begin(), allowed.end(), edge))
    throw ContractViolation("bridge step: edge " + to_string(edge) + " is not an eligible bridge");
  Connection removed[] = {edge};
  return detail::remove_and_reconnect(ref, "bridge", removed);
}

struct NormalizationResult {
  ReferenceSolution reference;
  std::vector<TraceStep> trace;
};

using StepObserver = std::function<void(const ReferenceSolution&, const TraceStep&)>;

// Applies cleanup, then Path Steps to exhaustion, then one Bridge Step at a
// time (re-trying Path Steps after each), until neither applies.
inline NormalizationResult normalize(const ReferenceSolution& reference, NormalizationMode mode,
                                     const StepObserver& observe = {}) {
  if (!reference.valid()) throw ContractViolation("normalize: reference is not a valid solution");
  const Instance& instance = reference.instance();
  NormalizationResult result{reference, {}};
  ReferenceSolution& ref = result.reference;
  auto record = [&](TraceStep step) {
    if (observe) observe(ref, step);
    result.trace.push_back(std::move(step));
  };

  // Reduce T* to a spanning forest (edges preferred) without dangling
  // non-terminals.
  {
    DisjointSets sets(instance.node_count());
    std::vector<Connection> surplus;
    auto links = ref.connections();
    std::stable_partition(links.begin(), links.end(),
                          [&](const Connection& c) { return instance.adjacent(c.u, c.v); });
    for (const auto& c : links)
      if (!sets.unite(c.u, c.v)) surplus.push_back(c);
    ReferenceSolution probe = ref;
    auto step = detail::remove_and_reconnect(probe, "cleanup", surplus);
    if (!step.removed.empty() || !step.added.empty()) {
      ref = probe;
      record(std::move(step));
    }
  }

  // A non-terminal carrying a non-edge is detached from it.
  for (NodeId x = 0; x < instance.node_count(); ++x) {
    if (instance.is_terminal(x)) continue;
    std::vector<Connection> far;
    for (const auto& c : ref.connections())
      if (c.touches(x) && !instance.adjacent(c.u, c.v)) far.push_back(c);
    if (!far.empty()) record(detail::remove_and_reconnect(ref, "detach", far));
  }

  while (true) {
    auto paths = path_candidates(ref);
    if (!paths.empty()) {
      record(path_step(ref, paths.front()));
      continue;
    }
    auto bridges = bridge_candidates(ref, mode);
    if (bridges.empty()) break;
    record(bridge_step(ref, bridges.front(), mode));
  }
  return result;
}

// Whether every S-comp has a shape allowed after normalization in `mode`.
inline bool is_normal(const Decomposition& d, NormalizationMode mode) {
  return std::all_of(d.steiner_components.begin(), d.steiner_components.end(), [&](const SteinerComponent& s) {
    const auto& c = s.classification;
    switch (c.kind) {
      case ComponentKind::TerminalEdge: return true;
      case ComponentKind::Star: return c.stars >= 3;
      case ComponentKind::Comet: return mode == NormalizationMode::StarComet && c.forks + c.direct > 2;
      case ComponentKind::Other: return false;
    }
    return false;
  });
}

// Label -> count over the S-comps.
inline std::map<std::string, std::size_t> classification_histogram(const Decomposition& d) {
  std::map<std::string, std::size_t> out;
  for (const auto& s : d.steiner_components) ++out[s.classification.label()];
  return out;
}

}  // namespace stp12
