#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "generators.hpp"
#include "relbat/relbat.hpp"

namespace fixtures {

// Deterministic small random network: shape (node and arc counts) is derived
// from the seed, probabilities come from the generator stream.
inline relbat::BinaryStateNetwork seeded_net(std::uint64_t seed, int max_nodes,
                                             int max_arcs) {
  relbat::gen::SplitMix64 shape(seed ^ 0x5bd1e995u);
  const int n = 4 + static_cast<int>(shape.below(
                        static_cast<std::uint64_t>(max_nodes - 3)));
  const int cap = std::min(max_arcs, n * (n - 1));
  const int lo = std::min(n, cap);
  const int m =
      lo + static_cast<int>(shape.below(static_cast<std::uint64_t>(cap - lo + 1)));
  return relbat::gen::random_network({n, m, seed, std::nullopt});
}

// Two node-disjoint two-arc routes: 1->2->4 and 1->3->4.
inline relbat::BinaryStateNetwork disjoint_pair() {
  return relbat::BinaryStateNetwork(
      4, {{0, 1, 2, 0.8}, {0, 2, 4, 0.9}, {0, 1, 3, 0.6}, {0, 3, 4, 0.7}});
}

// 1->2, 2->4, plus a dangling arc 2->3 that cannot reach the sink.
inline relbat::BinaryStateNetwork dangling_arc() {
  return relbat::BinaryStateNetwork(
      4, {{0, 1, 2, 0.8}, {0, 2, 4, 0.9}, {0, 2, 3, 0.5}});
}

// No source-to-sink path at all.
inline relbat::BinaryStateNetwork no_path() {
  return relbat::BinaryStateNetwork(3, {{0, 2, 3, 0.5}});
}

// Small fixtures suitable for exhaustive 2^m sweeps.
inline std::vector<relbat::BinaryStateNetwork> exhaustive_fixtures() {
  namespace gen = relbat::gen;
  std::vector<relbat::BinaryStateNetwork> nets;
  nets.push_back(gen::fig1());
  nets.push_back(gen::fig2());
  nets.push_back(gen::bridge4());
  nets.push_back(gen::chain(5, 0.8));
  nets.push_back(gen::grid(2, 3, 0.9));
  nets.push_back(gen::complete(3, 0.7));
  nets.push_back(disjoint_pair());
  for (std::uint64_t seed : {11u, 12u, 13u, 14u})
    nets.push_back(seeded_net(seed, 7, 14));
  return nets;
}

}  // namespace fixtures
