#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relbat/network.hpp"

// Fixture and benchmark network builders. They live in the CLI layer so the
// core library stays free of randomness; tests use them as fixtures.

namespace relbat::gen {

// SplitMix64: the fixed generator behind `gen random`, chosen so that a seed
// reproduces the same bytes on every platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

// 4-node, 9-arc example: five forward arcs and the four reverse arcs that no
// source-to-sink path can use.
inline BinaryStateNetwork fig1() {
  return BinaryStateNetwork(4, {{0, 1, 2, 0.8},
                                {0, 1, 3, 0.9},
                                {0, 2, 3, 0.7},
                                {0, 2, 4, 0.8},
                                {0, 3, 4, 0.9},
                                {0, 2, 1, 0.9},
                                {0, 3, 1, 0.8},
                                {0, 4, 2, 0.7},
                                {0, 4, 3, 0.8}});
}

// The five forward arcs of fig1.
inline BinaryStateNetwork fig2() {
  return BinaryStateNetwork(4, {{0, 1, 2, 0.8},
                                {0, 1, 3, 0.9},
                                {0, 2, 3, 0.7},
                                {0, 2, 4, 0.8},
                                {0, 3, 4, 0.9}});
}

// Both directions of the five bridge edges {1,2},{1,3},{2,3},{2,4},{3,4},
// uniform arc reliability.
inline BinaryStateNetwork bridge4(double p = 0.9) {
  std::vector<Arc> arcs;
  for (auto [u, v] : {std::pair{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}}) {
    arcs.push_back(Arc{0, u, v, p});
    arcs.push_back(Arc{0, v, u, p});
  }
  return BinaryStateNetwork(4, std::move(arcs));
}

// length arcs in a row: 1 -> 2 -> ... -> length+1.
inline BinaryStateNetwork chain(int length, double p) {
  if (length < 1) throw std::invalid_argument("chain length must be >= 1");
  std::vector<Arc> arcs;
  for (int i = 1; i <= length; ++i) arcs.push_back(Arc{0, i, i + 1, p});
  return BinaryStateNetwork(length + 1, std::move(arcs));
}

// Row-major grid, arcs right and down; source top-left, sink bottom-right.
inline BinaryStateNetwork grid(int rows, int cols, double p) {
  if (rows < 1 || cols < 1 || rows * cols < 2)
    throw std::invalid_argument("grid needs at least two nodes");
  auto node = [&](int r, int c) { return (r - 1) * cols + c; };
  std::vector<Arc> arcs;
  for (int r = 1; r <= rows; ++r)
    for (int c = 1; c <= cols; ++c) {
      if (c < cols) arcs.push_back(Arc{0, node(r, c), node(r, c + 1), p});
      if (r < rows) arcs.push_back(Arc{0, node(r, c), node(r + 1, c), p});
    }
  return BinaryStateNetwork(rows * cols, std::move(arcs));
}

// Every ordered pair, lexicographic.
inline BinaryStateNetwork complete(int nodes, double p) {
  if (nodes < 2) throw std::invalid_argument("complete needs >= 2 nodes");
  std::vector<Arc> arcs;
  for (int u = 1; u <= nodes; ++u)
    for (int v = 1; v <= nodes; ++v)
      if (u != v) arcs.push_back(Arc{0, u, v, p});
  return BinaryStateNetwork(nodes, std::move(arcs));
}

struct RandomSpec {
  int nodes = 0;
  int arcs = 0;
  std::uint64_t seed = 1;
  std::optional<double> p;  // fixed arc reliability; random 0.05..0.95 if unset
};

// Seeded random network with a guaranteed source-to-sink path: a random
// simple spine from node 1 to node n is laid first, then the remaining arcs
// are drawn from a shuffled pool of all ordered pairs. Probabilities are
// two-decimal values in [0.05, 0.95] unless spec.p pins them.
inline BinaryStateNetwork random_network(const RandomSpec& spec) {
  const int n = spec.nodes;
  const int m = spec.arcs;
  if (n < 2) throw std::invalid_argument("random: nodes must be >= 2");
  if (m < 1 || m > n * (n - 1))
    throw std::invalid_argument("random: arcs must be in 1..nodes*(nodes-1)");

  SplitMix64 rng(spec.seed);
  auto shuffle = [&](auto& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[static_cast<std::size_t>(rng.below(i))]);
  };

  std::vector<NodeId> inner;
  for (int v = 2; v < n; ++v) inner.push_back(v);
  shuffle(inner);
  int spine_nodes = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
  spine_nodes = std::min({spine_nodes, m - 1, static_cast<int>(inner.size())});

  std::vector<std::pair<NodeId, NodeId>> chosen;
  NodeId at = 1;
  for (int i = 0; i < spine_nodes; ++i) {
    chosen.emplace_back(at, inner[static_cast<std::size_t>(i)]);
    at = inner[static_cast<std::size_t>(i)];
  }
  chosen.emplace_back(at, n);

  std::vector<std::pair<NodeId, NodeId>> pool;
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (u != v &&
          std::find(chosen.begin(), chosen.end(), std::pair{u, v}) ==
              chosen.end())
        pool.emplace_back(u, v);
  shuffle(pool);
  for (std::size_t i = 0; chosen.size() < static_cast<std::size_t>(m); ++i)
    chosen.push_back(pool[i]);

  std::vector<Arc> arcs;
  arcs.reserve(chosen.size());
  for (auto [u, v] : chosen) {
    const double p =
        spec.p ? *spec.p
               : static_cast<double>(5 + rng.below(91)) / 100.0;
    arcs.push_back(Arc{0, u, v, p});
  }
  return BinaryStateNetwork(n, std::move(arcs));
}

}  // namespace relbat::gen
