#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "fixtures.hpp"
#include "relbat/relbat.hpp"

using namespace relbat;
using oracles::MinimalPath;
using oracles::MinimalPathSet;

namespace {

// Pivotal decomposition of the 4-node example on its first arc; written out
// by hand as an independent route to the same number.
constexpr double kExampleReliability =
    0.2 * (0.9 * 0.9) + 0.8 * (0.8 + 0.2 * 0.9 * (1.0 - 0.1 * 0.3));

bool chains_source_to_sink(const BinaryStateNetwork& net,
                           const MinimalPath& path) {
  if (path.arcs.empty()) return false;
  std::vector<char> seen(net.node_count() + 1, 0);
  NodeId at = net.source();
  seen[at] = 1;
  for (ArcId id : path.arcs) {
    const Arc& a = net.arc(id);
    if (a.tail != at) return false;
    if (seen[a.head]) return false;
    seen[a.head] = 1;
    at = a.head;
  }
  return at == net.sink();
}

}  // namespace

TEST_CASE("brute force matches the pivotal decomposition", "[oracles]") {
  CHECK(std::abs(oracles::brute_force_reliability(gen::fig1()) -
                 kExampleReliability) < 1e-15);
  CHECK(std::abs(oracles::brute_force_reliability(gen::fig2()) -
                 kExampleReliability) < 1e-15);
}

TEST_CASE("brute force basics", "[oracles]") {
  CHECK(oracles::brute_force_reliability(gen::chain(1, 0.8)) == 0.8);
  CHECK(oracles::brute_force_reliability(fixtures::no_path()) == 0.0);
  CHECK_THROWS_AS(oracles::brute_force_reliability(gen::complete(6, 0.5)),
                  std::invalid_argument);
}

TEST_CASE("minimal path enumeration", "[oracles]") {
  const auto mps1 = oracles::find_all_minimal_paths(gen::fig1());
  REQUIRE(mps1.size() == 3);
  const bool has135 =
      std::any_of(mps1.paths.begin(), mps1.paths.end(), [](const auto& p) {
        return p.arcs == std::vector<ArcId>{1, 3, 5};
      });
  CHECK(has135);

  const auto mps2 = oracles::find_all_minimal_paths(gen::fig2());
  REQUIRE(mps2.size() == 3);
  CHECK(mps2.paths[0].arcs == std::vector<ArcId>{1, 3, 5});
  CHECK(mps2.paths[1].arcs == std::vector<ArcId>{1, 4});
  CHECK(mps2.paths[2].arcs == std::vector<ArcId>{2, 5});

  CHECK(oracles::find_all_minimal_paths(gen::chain(1, 0.5)).size() == 1);
  CHECK(oracles::find_all_minimal_paths(fixtures::no_path()).size() == 0);
  CHECK(oracles::find_all_minimal_paths(gen::bridge4()).size() == 4);
}

TEST_CASE("every found path chains from source to sink", "[oracles]") {
  for (const auto& net : fixtures::exhaustive_fixtures()) {
    const auto mps = oracles::find_all_minimal_paths(net);
    for (std::size_t i = 0; i < mps.size(); ++i) {
      CHECK(chains_source_to_sink(net, mps.paths[i]));
      for (std::size_t j = i + 1; j < mps.size(); ++j)
        CHECK(!(mps.paths[i] == mps.paths[j]));
    }
  }
}

TEST_CASE("a vector is connected iff it dominates a minimal path",
          "[oracles]") {
  for (const auto& net :
       {gen::fig2(), gen::bridge4(), gen::grid(2, 3, 0.9),
        fixtures::seeded_net(31, 6, 12)}) {
    const int m = net.arc_count();
    const auto mps = oracles::find_all_minimal_paths(net);
    std::vector<std::uint64_t> path_words;
    for (const auto& p : mps.paths) {
      std::uint64_t w = 0;
      for (ArcId id : p.arcs) w |= std::uint64_t{1} << (m - id);
      path_words.push_back(w);
    }
    for (std::uint64_t word = 0; word < (std::uint64_t{1} << m); ++word) {
      const bool dominates =
          std::any_of(path_words.begin(), path_words.end(),
                      [&](std::uint64_t p) { return (word & p) == p; });
      REQUIRE(oracles::dfs_is_connected(net, StateVector::from_word(word, m)) ==
              dominates);
    }
  }
}

TEST_CASE("inclusion-exclusion over the example paths", "[oracles]") {
  const BinaryStateNetwork net = gen::fig2();
  const auto mps = oracles::find_all_minimal_paths(net);
  // Seven subset terms, expanded by hand.
  const double expected = 0.64 + 0.81 + 0.504 - 0.5184 - 0.4032 - 0.4536 +
                          0.36288;
  const double got = oracles::iet_reliability(mps, net);
  CHECK(std::abs(got - expected) < 1e-12);
  CHECK(std::abs(got - kExampleReliability) < 1e-12);
}

TEST_CASE("inclusion-exclusion basics", "[oracles]") {
  const BinaryStateNetwork single = gen::chain(1, 0.8);
  const auto mps = oracles::find_all_minimal_paths(single);
  CHECK(oracles::iet_reliability(mps, single) == 0.8);

  // Two arc-disjoint single-arc events: p + q - pq.
  const BinaryStateNetwork two(3, {{0, 1, 3, 0.8}, {0, 2, 3, 0.5}});
  MinimalPathSet events{{MinimalPath{{1}}, MinimalPath{{2}}}};
  CHECK(std::abs(oracles::iet_reliability(events, two) -
                 (0.8 + 0.5 - 0.8 * 0.5)) < 1e-15);
}

TEST_CASE("disjoint products equal inclusion-exclusion", "[oracles]") {
  const BinaryStateNetwork net = gen::fig2();
  const auto mps = oracles::find_all_minimal_paths(net);
  CHECK(std::abs(oracles::sdp_reliability(mps, net) -
                 oracles::iet_reliability(mps, net)) < 1e-12);
}

TEST_CASE("disjoint products basics", "[oracles]") {
  const BinaryStateNetwork single = gen::chain(2, 0.9);
  const auto mps = oracles::find_all_minimal_paths(single);
  CHECK(std::abs(oracles::sdp_reliability(mps, single) - 0.9 * 0.9) < 1e-15);

  // Two node-disjoint two-arc routes with one probability.
  const double p = 0.7;
  const BinaryStateNetwork two(
      4, {{0, 1, 2, p}, {0, 2, 4, p}, {0, 1, 3, p}, {0, 3, 4, p}});
  const auto routes = oracles::find_all_minimal_paths(two);
  REQUIRE(routes.size() == 2);
  const double path_p = p * p;
  CHECK(std::abs(oracles::sdp_reliability(routes, two) -
                 (path_p + (1.0 - path_p) * path_p)) < 1e-15);

  // A later path containing an earlier one contributes nothing further.
  const BinaryStateNetwork chain2 = gen::chain(2, 0.6);
  MinimalPathSet nested{{MinimalPath{{1}}, MinimalPath{{1, 2}}}};
  CHECK(oracles::sdp_reliability(nested, chain2) == 0.6);
  CHECK(std::abs(oracles::sdp_reliability(nested, chain2) -
                 oracles::iet_reliability(nested, chain2)) < 1e-15);
}

TEST_CASE("path evaluators refuse oversized path sets", "[oracles]") {
  const BinaryStateNetwork net = gen::complete(6, 0.5);
  MinimalPathSet big;
  for (ArcId id = 1; id <= 26; ++id) big.paths.push_back(MinimalPath{{id}});
  CHECK_THROWS_AS(oracles::iet_reliability(big, net), std::invalid_argument);
  CHECK_THROWS_AS(oracles::sdp_reliability(big, net), std::invalid_argument);
}

TEST_CASE("all three references agree on seeded networks", "[oracles]") {
  int tested = 0;
  for (std::uint64_t seed = 1; tested < 50; ++seed) {
    const BinaryStateNetwork net = fixtures::seeded_net(seed, 7, 14);
    const auto mps = oracles::find_all_minimal_paths(net);
    if (mps.size() > 20) continue;
    ++tested;
    const double bf = oracles::brute_force_reliability(net);
    const double iet = oracles::iet_reliability(mps, net);
    const double sdp = oracles::sdp_reliability(mps, net);
    REQUIRE(std::abs(bf - iet) < 1e-10);
    REQUIRE(std::abs(bf - sdp) < 1e-10);
  }
}
