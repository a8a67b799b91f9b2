#pragma once

// Maximum-cardinality matching in general graphs (Edmonds' blossom
// algorithm), and the fork-packing problem solved on top of it.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <tuple>
#include <utility>
#include <vector>

#include "stp12/core.hpp"

namespace stp12 {

// Simple undirected graph on vertices 0..size-1.
class SimpleGraph {
 public:
  explicit SimpleGraph(std::size_t size = 0) : adj_(size) {}

  std::size_t size() const noexcept { return adj_.size(); }

  void add_edge(std::size_t a, std::size_t b) {
    if (a >= size() || b >= size()) throw InputError("matching graph: vertex out of range");
    if (a == b) throw InputError("matching graph: self-loop");
    if (std::find(adj_[a].begin(), adj_[a].end(), b) != adj_[a].end()) return;
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }

  std::span<const std::size_t> neighbors(std::size_t v) const { return adj_[v]; }

 private:
  std::vector<std::vector<std::size_t>> adj_;
};

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

struct Matching {
  std::vector<std::size_t> mate;  // mate[v] or kUnmatched

  std::size_t size() const {
    std::size_t n = 0;
    for (std::size_t v = 0; v < mate.size(); ++v)
      if (mate[v] != kUnmatched && v < mate[v]) ++n;
    return n;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t v = 0; v < mate.size(); ++v)
      if (mate[v] != kUnmatched && v < mate[v]) out.emplace_back(v, mate[v]);
    return out;
  }
};

namespace detail {

class BlossomMatcher {
 public:
  explicit BlossomMatcher(const SimpleGraph& graph)
      : g_(graph), n_(graph.size()), mate_(n_, kUnmatched), parent_(n_), base_(n_),
        in_queue_(n_), in_blossom_(n_) {}

  Matching run() {
    for (std::size_t v = 0; v < n_; ++v) {
      if (mate_[v] != kUnmatched) continue;
      // Cheap greedy start; augmenting paths fix any suboptimal choice.
      for (std::size_t w : g_.neighbors(v)) {
        if (mate_[w] == kUnmatched) {
          mate_[v] = w;
          mate_[w] = v;
          break;
        }
      }
    }
    for (std::size_t root = 0; root < n_; ++root) {
      if (mate_[root] != kUnmatched) continue;
      std::size_t end = find_augmenting_path(root);
      while (end != kUnmatched) {
        std::size_t prev = parent_[end];
        std::size_t next = mate_[prev];
        mate_[end] = prev;
        mate_[prev] = end;
        end = next;
      }
    }
    return Matching{mate_};
  }

 private:
  std::size_t lowest_common_ancestor(std::size_t a, std::size_t b) {
    std::vector<bool> seen(n_, false);
    while (true) {
      a = base_[a];
      seen[a] = true;
      if (mate_[a] == kUnmatched) break;
      a = parent_[mate_[a]];
    }
    while (true) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[mate_[b]];
    }
  }

  void mark_path(std::size_t v, std::size_t b, std::size_t child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[mate_[v]]] = true;
      parent_[v] = child;
      child = mate_[v];
      v = parent_[mate_[v]];
    }
  }

  std::size_t find_augmenting_path(std::size_t root) {
    std::fill(in_queue_.begin(), in_queue_.end(), false);
    std::fill(parent_.begin(), parent_.end(), kUnmatched);
    for (std::size_t i = 0; i < n_; ++i) base_[i] = i;

    std::queue<std::size_t> queue;
    queue.push(root);
    in_queue_[root] = true;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop();
      for (std::size_t to : g_.neighbors(v)) {
        if (base_[v] == base_[to] || mate_[v] == to) continue;
        if (to == root || (mate_[to] != kUnmatched && parent_[mate_[to]] != kUnmatched)) {
          // Odd cycle: contract the blossom.
          std::size_t b = lowest_common_ancestor(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), false);
          mark_path(v, b, to);
          mark_path(to, b, v);
          for (std::size_t i = 0; i < n_; ++i) {
            if (in_blossom_[base_[i]]) {
              base_[i] = b;
              if (!in_queue_[i]) {
                in_queue_[i] = true;
                queue.push(i);
              }
            }
          }
        } else if (parent_[to] == kUnmatched) {
          parent_[to] = v;
          if (mate_[to] == kUnmatched) return to;
          std::size_t next = mate_[to];
          in_queue_[next] = true;
          queue.push(next);
        }
      }
    }
    return kUnmatched;
  }

  const SimpleGraph& g_;
  std::size_t n_;
  std::vector<std::size_t> mate_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> base_;
  std::vector<bool> in_queue_;
  std::vector<bool> in_blossom_;
};

}  // namespace detail

// Maximum-cardinality matching; deterministic for a fixed adjacency order.
inline Matching max_matching(const SimpleGraph& graph) {
  return detail::BlossomMatcher(graph).run();
}

// Auxiliary graph of a comet search: vertices are terminal components,
// and each edge is a pair of them joined through one fork node.
struct AuxEdge {
  NodeId t1 = 0;
  NodeId t2 = 0;
  NodeId fork = 0;

  friend auto operator<=>(const AuxEdge&, const AuxEdge&) = default;
};

struct AuxGraph {
  std::vector<AuxEdge> edges;
};

// Largest set of aux edges that is disjoint on terminals AND on fork nodes.
// The edges of one fork node must cover every pair of the terminals it
// reaches (a fork may pick any two of its terminals).
//
// Each fork node f is split into two copies f1, f2 joined by an edge, and
// both copies are wired to every terminal f can reach. A maximum matching
// of that graph has size |forks| + (largest packing), and the forks whose
// two copies are both matched to terminals form an optimal packing.
inline std::vector<AuxEdge> max_fork_packing(const AuxGraph& aux) {
  std::vector<NodeId> terminals;
  std::vector<NodeId> forks;
  for (const auto& e : aux.edges) {
    if (e.t1 == e.t2) throw ContractViolation("aux edge joins a terminal to itself");
    terminals.push_back(e.t1);
    terminals.push_back(e.t2);
    forks.push_back(e.fork);
  }
  auto sort_unique = [](std::vector<NodeId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  sort_unique(terminals);
  sort_unique(forks);

  std::vector<AuxEdge> sorted = aux.edges;
  std::sort(sorted.begin(), sorted.end(), [](const AuxEdge& x, const AuxEdge& y) {
    return std::tie(x.fork, x.t1, x.t2) < std::tie(y.fork, y.t1, y.t2);
  });
  for (auto first = sorted.begin(); first != sorted.end();) {
    auto last = std::find_if(first, sorted.end(), [&](const AuxEdge& e) { return e.fork != first->fork; });
    std::vector<std::pair<NodeId, NodeId>> pairs;
    std::vector<NodeId> reach;
    for (auto it = first; it != last; ++it) {
      pairs.emplace_back(std::min(it->t1, it->t2), std::max(it->t1, it->t2));
      reach.push_back(it->t1);
      reach.push_back(it->t2);
    }
    sort_unique(reach);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    if (pairs.size() != reach.size() * (reach.size() - 1) / 2)
      throw ContractViolation("fork " + std::to_string(first->fork) +
                              " does not list every pair of its terminals");
    first = last;
  }

  auto index_of = [](const std::vector<NodeId>& v, NodeId x) {
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };

  const std::size_t base = terminals.size();
  SimpleGraph gadget(base + 2 * forks.size());
  for (std::size_t f = 0; f < forks.size(); ++f) gadget.add_edge(base + 2 * f, base + 2 * f + 1);
  for (const auto& e : sorted) {
    std::size_t f = index_of(forks, e.fork);
    for (NodeId t : {e.t1, e.t2}) {
      std::size_t ti = index_of(terminals, t);
      gadget.add_edge(base + 2 * f, ti);
      gadget.add_edge(base + 2 * f + 1, ti);
    }
  }

  Matching m = max_matching(gadget);
  std::vector<AuxEdge> packing;
  for (std::size_t f = 0; f < forks.size(); ++f) {
    std::size_t a = m.mate[base + 2 * f];
    std::size_t b = m.mate[base + 2 * f + 1];
    if (a == kUnmatched || b == kUnmatched || a >= base || b >= base) continue;
    NodeId t1 = terminals[a];
    NodeId t2 = terminals[b];
    packing.push_back({std::min(t1, t2), std::max(t1, t2), forks[f]});
  }
  return packing;
}

}  // namespace stp12
