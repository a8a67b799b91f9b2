#include <random>

#include <gtest/gtest.h>

#include "stp12/harness/harness.hpp"
#include "stp12/harness/oracles.hpp"
#include "stp12/matching.hpp"

using namespace stp12;

namespace {

SimpleGraph graph_of(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges) {
  SimpleGraph g(n);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

void expect_valid(const SimpleGraph& g, const Matching& m) {
  ASSERT_EQ(m.mate.size(), g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (m.mate[v] == kUnmatched) continue;
    std::size_t w = m.mate[v];
    EXPECT_EQ(m.mate[w], v);
    auto nb = g.neighbors(v);
    EXPECT_NE(std::find(nb.begin(), nb.end(), w), nb.end());
  }
}

}  // namespace

TEST(MaxMatching, Examples) {
  EXPECT_EQ(max_matching(graph_of(3, {{0, 1}, {1, 2}, {2, 0}})).size(), 1u);
  EXPECT_EQ(max_matching(graph_of(4, {{0, 1}, {1, 2}, {2, 3}})).size(), 2u);
  EXPECT_EQ(max_matching(harness::petersen_graph()).size(), 5u);
}

TEST(MaxMatching, EmptyAndIsolated) {
  EXPECT_EQ(max_matching(SimpleGraph(0)).size(), 0u);
  Matching m = max_matching(SimpleGraph(4));
  EXPECT_EQ(m.size(), 0u);
  EXPECT_TRUE(std::all_of(m.mate.begin(), m.mate.end(), [](std::size_t x) { return x == kUnmatched; }));
}

TEST(MaxMatching, BlossomNeedsContraction) {
  // A 5-cycle with a pendant at each of two vertices: the greedy start can
  // leave an augmenting path that runs through the odd cycle.
  SimpleGraph g = graph_of(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {2, 6}});
  Matching m = max_matching(g);
  expect_valid(g, m);
  EXPECT_EQ(m.size(), 3u);
}

TEST(MaxMatching, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 300; ++round) {
    std::size_t n = 1 + rng() % 12;
    SimpleGraph g(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (rng() % 10 < 3) g.add_edge(a, b);
    Matching m = max_matching(g);
    expect_valid(g, m);
    EXPECT_EQ(m.size(), oracle::matching_size(g)) << "round " << round;
  }
}

TEST(MaxMatching, RejectsBadEdges) {
  SimpleGraph g(2);
  EXPECT_THROW(g.add_edge(0, 0), InputError);
  EXPECT_THROW(g.add_edge(0, 2), InputError);
}

TEST(ForkPacking, ForkServesOnePairOnly) {
  // Fork 10 reaches terminals 1 2 3; fork 11 reaches 3 4.
  AuxGraph aux{{{1, 2, 10}, {1, 3, 10}, {2, 3, 10}, {3, 4, 11}}};
  auto packing = max_fork_packing(aux);
  ASSERT_EQ(packing.size(), 2u);
  std::vector<NodeId> used;
  for (const auto& e : packing) used.insert(used.end(), {e.t1, e.t2});
  std::sort(used.begin(), used.end());
  EXPECT_EQ(std::adjacent_find(used.begin(), used.end()), used.end());
  EXPECT_NE(packing[0].fork, packing[1].fork);
}

TEST(ForkPacking, ParallelForksOnTheSamePair) {
  AuxGraph aux{{{1, 2, 10}, {1, 2, 11}}};
  EXPECT_EQ(max_fork_packing(aux).size(), 1u);
}

TEST(ForkPacking, OneForkWithManyTerminalsGivesOnePair) {
  AuxGraph aux;
  for (NodeId a = 0; a < 5; ++a)
    for (NodeId b = a + 1; b < 5; ++b) aux.edges.push_back({a, b, 9});
  EXPECT_EQ(max_fork_packing(aux).size(), 1u);
}

TEST(ForkPacking, IncompletePairListIsAContractViolation) {
  AuxGraph aux{{{1, 2, 10}, {2, 3, 10}}};
  EXPECT_THROW(max_fork_packing(aux), ContractViolation);
}

TEST(ForkPacking, AgreesWithExhaustiveAssignment) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 300; ++round) {
    const std::size_t terminals = 2 + rng() % 7;
    const std::size_t forks = 1 + rng() % 5;
    std::vector<std::vector<NodeId>> reach(forks);
    AuxGraph aux;
    for (std::size_t f = 0; f < forks; ++f) {
      for (NodeId t = 0; t < terminals; ++t)
        if (rng() % 2) reach[f].push_back(t);
      for (std::size_t i = 0; i < reach[f].size(); ++i)
        for (std::size_t j = i + 1; j < reach[f].size(); ++j)
          aux.edges.push_back({reach[f][i], reach[f][j], static_cast<NodeId>(100 + f)});
    }
    // Every fork picks a pair of free terminals or nothing.
    std::vector<bool> used(terminals, false);
    std::function<std::size_t(std::size_t)> best = [&](std::size_t f) -> std::size_t {
      if (f == forks) return 0;
      std::size_t value = best(f + 1);
      for (std::size_t i = 0; i < reach[f].size(); ++i)
        for (std::size_t j = i + 1; j < reach[f].size(); ++j) {
          NodeId a = reach[f][i], b = reach[f][j];
          if (used[a] || used[b]) continue;
          used[a] = used[b] = true;
          value = std::max(value, 1 + best(f + 1));
          used[a] = used[b] = false;
        }
      return value;
    };
    auto packing = max_fork_packing(aux);
    EXPECT_EQ(packing.size(), best(0)) << "round " << round;
    std::vector<NodeId> touched;
    std::vector<NodeId> fork_ids;
    for (const auto& e : packing) {
      touched.insert(touched.end(), {e.t1, e.t2});
      fork_ids.push_back(e.fork);
      auto& r = reach[e.fork - 100];
      EXPECT_TRUE(std::binary_search(r.begin(), r.end(), e.t1));
      EXPECT_TRUE(std::binary_search(r.begin(), r.end(), e.t2));
    }
    std::sort(touched.begin(), touched.end());
    std::sort(fork_ids.begin(), fork_ids.end());
    EXPECT_EQ(std::adjacent_find(touched.begin(), touched.end()), touched.end());
    EXPECT_EQ(std::adjacent_find(fork_ids.begin(), fork_ids.end()), fork_ids.end());
  }
}
