#pragma once

// Seeded instance families.
//   random-gnp     each pair is an edge with probability p, r random terminals
//   star-cluster   m disjoint k-stars, `bridges` center–center edges along a chain
//   comet-chain    `count` disjoint (a,b)-comets
//   bp-adversarial a path of `depth` Steiner nodes with two private terminals
//                  each; the greedy finds no proper star and pays 2 per merge
//                  while the optimum pays about 3/2

#include <cstdint>
#include <random>
#include <string>

#include <boost/random/uniform_int_distribution.hpp>

#include "stp12/core.hpp"

namespace stp12 {

enum class Family { RandomGnp, StarCluster, CometChain, BpAdversarial };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::RandomGnp: return "random-gnp";
    case Family::StarCluster: return "star-cluster";
    case Family::CometChain: return "comet-chain";
    case Family::BpAdversarial: return "bp-adversarial";
  }
  return "?";
}

inline Family family_from_string(const std::string& s) {
  if (s == "random-gnp") return Family::RandomGnp;
  if (s == "star-cluster") return Family::StarCluster;
  if (s == "comet-chain") return Family::CometChain;
  if (s == "bp-adversarial") return Family::BpAdversarial;
  throw InputError("unknown generator family '" + s + "'");
}

struct GeneratorSpec {
  Family family = Family::RandomGnp;
  // random-gnp
  std::size_t n = 10;
  Ratio p{3, 10};
  std::size_t r = 4;
  // star-cluster
  std::size_t k = 4;
  std::size_t m = 1;
  std::size_t bridges = 0;
  // comet-chain
  std::size_t a = 1;
  std::size_t b = 3;
  std::size_t count = 1;
  // bp-adversarial
  std::size_t depth = 4;
  // structured families: relabel nodes with a seeded permutation
  bool shuffle = false;
  std::uint64_t seed = 1;

  void validate() const {
    switch (family) {
      case Family::RandomGnp:
        if (n < 1) throw InputError("random-gnp: n must be >= 1");
        if (p < 0 || p > 1) throw InputError("random-gnp: p must lie in [0, 1]");
        if (r < 1 || r > n) throw InputError("random-gnp: r must lie in [1, n]");
        break;
      case Family::StarCluster:
        if (k < 1 || m < 1) throw InputError("star-cluster: k and m must be >= 1");
        if (bridges >= m && bridges != 0) throw InputError("star-cluster: bridges must be < m");
        break;
      case Family::CometChain:
        if (count < 1) throw InputError("comet-chain: count must be >= 1");
        if (2 * a + b < 2) throw InputError("comet-chain: a comet needs 2a+b >= 2 terminals");
        break;
      case Family::BpAdversarial:
        if (depth < 1) throw InputError("bp-adversarial: depth must be >= 1");
        break;
    }
  }
};

namespace detail {

inline std::size_t uniform_below(std::mt19937_64& rng, std::size_t bound) {
  boost::random::uniform_int_distribution<std::size_t> dist(0, bound - 1);
  return dist(rng);
}

inline std::vector<NodeId> seeded_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
  return perm;
}

}  // namespace detail

inline Instance generate(const GeneratorSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  Instance out;
  switch (spec.family) {
    case Family::RandomGnp: {
      out = Instance(spec.n);
      const auto num = static_cast<std::size_t>(spec.p.numerator());
      const auto den = static_cast<std::size_t>(spec.p.denominator());
      for (NodeId u = 0; u < spec.n; ++u)
        for (NodeId v = u + 1; v < spec.n; ++v)
          if (detail::uniform_below(rng, den) < num) out.add_edge(u, v);
      auto order = detail::seeded_permutation(rng, spec.n);
      for (std::size_t i = 0; i < spec.r; ++i) out.add_terminal(order[i]);
      return out;
    }
    case Family::StarCluster: {
      // star i: center i*(k+1), terminals following it
      out = Instance(spec.m * (spec.k + 1));
      for (std::size_t i = 0; i < spec.m; ++i) {
        auto center = static_cast<NodeId>(i * (spec.k + 1));
        for (std::size_t j = 1; j <= spec.k; ++j) {
          out.add_edge(center, static_cast<NodeId>(center + j));
          out.add_terminal(static_cast<NodeId>(center + j));
        }
      }
      for (std::size_t i = 0; i < spec.bridges; ++i)
        out.add_edge(static_cast<NodeId>(i * (spec.k + 1)), static_cast<NodeId>((i + 1) * (spec.k + 1)));
      break;
    }
    case Family::CometChain: {
      // comet: center, then per fork (fork, t, t), then b direct terminals
      const std::size_t size = 1 + 3 * spec.a + spec.b;
      out = Instance(spec.count * size);
      for (std::size_t i = 0; i < spec.count; ++i) {
        auto center = static_cast<NodeId>(i * size);
        NodeId next = center + 1;
        for (std::size_t f = 0; f < spec.a; ++f) {
          NodeId fork = next++;
          out.add_edge(center, fork);
          for (int t = 0; t < 2; ++t) {
            out.add_edge(fork, next);
            out.add_terminal(next++);
          }
        }
        for (std::size_t d = 0; d < spec.b; ++d) {
          out.add_edge(center, next);
          out.add_terminal(next++);
        }
      }
      break;
    }
    case Family::BpAdversarial: {
      // spine node i at 3i, its terminals at 3i+1 and 3i+2
      out = Instance(3 * spec.depth);
      for (std::size_t i = 0; i < spec.depth; ++i) {
        auto x = static_cast<NodeId>(3 * i);
        out.add_edge(x, x + 1);
        out.add_edge(x, x + 2);
        out.add_terminal(x + 1);
        out.add_terminal(x + 2);
        if (i + 1 < spec.depth) out.add_edge(x, x + 3);
      }
      break;
    }
  }
  if (spec.shuffle) out = out.relabeled(detail::seeded_permutation(rng, out.node_count()));
  return out;
}

}  // namespace stp12
