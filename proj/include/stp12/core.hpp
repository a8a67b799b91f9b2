#pragma once

// Instance model and cost function for Steiner trees in metrics with
// distances 1 and 2. A metric is given by a graph: adjacent pairs are at
// distance 1, every other pair of distinct nodes is at distance 2.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace stp12 {

using NodeId = std::uint32_t;
using Cost = std::int64_t;
using Ratio = boost::rational<std::int64_t>;

// Malformed user input (files, parameters, out-of-range ids).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An exact method was asked to run beyond its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unordered pair of distinct nodes, stored with u < v.
struct Connection {
  NodeId u = 0;
  NodeId v = 0;

  constexpr Connection() = default;
  constexpr Connection(NodeId a, NodeId b) : u(std::min(a, b)), v(std::max(a, b)) {
    if (a == b) throw ContractViolation("connection endpoints must be distinct");
  }

  constexpr bool touches(NodeId x) const noexcept { return u == x || v == x; }
  constexpr NodeId other(NodeId x) const noexcept { return x == u ? v : u; }

  friend constexpr auto operator<=>(const Connection&, const Connection&) = default;
};

inline std::string to_string(const Connection& c) {
  return "(" + std::to_string(c.u) + "," + std::to_string(c.v) + ")";
}

class Instance {
 public:
  Instance() = default;

  explicit Instance(std::size_t node_count)
      : node_count_(node_count),
        words_((node_count + 63) / 64),
        rows_(node_count * words_, 0),
        neighbors_(node_count),
        is_terminal_(node_count, false) {}

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  void add_edge(NodeId a, NodeId b) {
    check_node(a);
    check_node(b);
    if (a == b) throw InputError("self-loop on node " + std::to_string(a));
    if (adjacent(a, b)) return;
    set_bit(a, b);
    set_bit(b, a);
    insert_sorted(neighbors_[a], b);
    insert_sorted(neighbors_[b], a);
    ++edge_count_;
  }

  void add_terminal(NodeId v) {
    check_node(v);
    if (is_terminal_[v]) return;
    is_terminal_[v] = true;
    insert_sorted(terminals_, v);
  }

  bool adjacent(NodeId a, NodeId b) const noexcept {
    if (a >= node_count_ || b >= node_count_) return false;
    return (rows_[a * words_ + b / 64] >> (b % 64)) & 1U;
  }

  // Metric distance: 0 on the diagonal, 1 for edges, 2 otherwise.
  Cost distance(NodeId a, NodeId b) const noexcept {
    if (a == b) return 0;
    return adjacent(a, b) ? 1 : 2;
  }

  bool is_terminal(NodeId v) const noexcept { return v < node_count_ && is_terminal_[v]; }
  std::span<const NodeId> terminals() const noexcept { return terminals_; }
  std::span<const NodeId> neighbors(NodeId v) const { return neighbors_.at(v); }

  // All edges in lexicographic order.
  std::vector<Connection> edges() const {
    std::vector<Connection> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count_; ++u)
      for (NodeId v : neighbors_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  // Sub-instance on `keep` (sorted or not); node keep[i] becomes i.
  Instance induced(std::span<const NodeId> keep) const {
    std::vector<NodeId> index(node_count_, static_cast<NodeId>(-1));
    for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<NodeId>(i);
    Instance out(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
      NodeId u = keep[i];
      if (is_terminal_[u]) out.add_terminal(static_cast<NodeId>(i));
      for (NodeId v : neighbors_[u])
        if (index[v] != static_cast<NodeId>(-1)) out.add_edge(static_cast<NodeId>(i), index[v]);
    }
    return out;
  }

  // Node v becomes perm[v].
  Instance relabeled(std::span<const NodeId> perm) const {
    if (perm.size() != node_count_) throw InputError("permutation size mismatch");
    Instance out(node_count_);
    for (NodeId t : terminals_) out.add_terminal(perm[t]);
    for (const auto& e : edges()) out.add_edge(perm[e.u], perm[e.v]);
    return out;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.node_count_ == b.node_count_ && a.neighbors_ == b.neighbors_ &&
           a.terminals_ == b.terminals_;
  }

 private:
  void check_node(NodeId v) const {
    if (v >= node_count_)
      throw InputError("node id " + std::to_string(v) + " out of range (node count " +
                       std::to_string(node_count_) + ")");
  }
  void set_bit(NodeId a, NodeId b) { rows_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64); }
  static void insert_sorted(std::vector<NodeId>& vec, NodeId x) {
    vec.insert(std::lower_bound(vec.begin(), vec.end(), x), x);
  }

  std::size_t node_count_ = 0;
  std::size_t words_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::vector<NodeId>> neighbors_;
  std::vector<NodeId> terminals_;
  std::vector<bool> is_terminal_;
};

// |T ∩ E| + 2 |T − E|.
inline Cost cost(const Instance& instance, std::span<const Connection> connections) {
  Cost total = 0;
  for (const auto& c : connections) {
    if (c.v >= instance.node_count())
      throw InputError("connection " + to_string(c) + " has an endpoint out of range");
    total += instance.distance(c.u, c.v);
  }
  return total;
}

// Plain union-find over dense ids; the root of a set is always its smallest id.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), NodeId{0}); }

  NodeId find(NodeId x) const {
    NodeId root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      NodeId next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  // Returns false if a and b were already joined.
  bool unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  std::size_t size() const noexcept { return parent_.size(); }

 private:
  mutable std::vector<NodeId> parent_;
};

inline bool is_valid_solution(const Instance& instance, std::span<const Connection> connections) {
  auto terminals = instance.terminals();
  if (terminals.size() <= 1) return true;
  DisjointSets sets(instance.node_count());
  for (const auto& c : connections) {
    if (c.v >= instance.node_count()) return false;
    sets.unite(c.u, c.v);
  }
  NodeId root = sets.find(terminals.front());
  return std::all_of(terminals.begin(), terminals.end(),
                     [&](NodeId t) { return sets.find(t) == root; });
}

// A set of connections together with its cost under the instance metric.
struct Solution {
  std::vector<Connection> connections;  // sorted, unique
  Cost cost = 0;

  static Solution from(const Instance& instance, std::vector<Connection> connections) {
    std::sort(connections.begin(), connections.end());
    connections.erase(std::unique(connections.begin(), connections.end()), connections.end());
    Solution s;
    s.cost = stp12::cost(instance, connections);
    s.connections = std::move(connections);
    return s;
  }
};

}  // namespace stp12
