#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "relbat/network.hpp"

// Independent reference computations. These deliberately share no code with
// the binary-addition scan: separate enumeration loop, separate depth-first
// connectivity, so they can stand as oracles for it.

namespace relbat::oracles {

// Directed simple source-to-sink path, as the arc ids along it. Consecutive
// arcs chain head-to-tail; no node repeats, so no proper subset is a path.
struct MinimalPath {
  std::vector<ArcId> arcs;

  friend bool operator==(const MinimalPath&, const MinimalPath&) = default;
};

struct MinimalPathSet {
  std::vector<MinimalPath> paths;  // in discovery order

  std::size_t size() const { return paths.size(); }
};

namespace detail {

struct OutAdjacency {
  // out[v] lists (arc id, head), in arc-id order.
  std::vector<std::vector<std::pair<ArcId, NodeId>>> out;

  explicit OutAdjacency(const BinaryStateNetwork& net)
      : out(static_cast<std::size_t>(net.node_count()) + 1) {
    for (const Arc& a : net.arcs())
      out[static_cast<std::size_t>(a.tail)].emplace_back(a.id, a.head);
  }
};

// Stack-based depth-first reachability over the arcs whose bit is set in
// word (coordinate i of the vector is bit arc_count-i of the word).
inline bool dfs_reaches_sink(const OutAdjacency& adj, int arc_count,
                             NodeId sink, std::uint64_t word,
                             std::vector<char>& visited,
                             std::vector<NodeId>& stack) {
  std::fill(visited.begin(), visited.end(), 0);
  stack.clear();
  stack.push_back(1);
  visited[1] = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    if (u == sink) return true;
    for (const auto& [id, head] : adj.out[static_cast<std::size_t>(u)]) {
      if ((word >> (arc_count - id)) & 1u) {
        if (!visited[static_cast<std::size_t>(head)]) {
          visited[static_cast<std::size_t>(head)] = 1;
          stack.push_back(head);
        }
      }
    }
  }
  return false;
}

}  // namespace detail

// Depth-first source-to-sink reachability over the on-arcs of x.
inline bool dfs_is_connected(const BinaryStateNetwork& net,
                             const StateVector& x) {
  if (x.length() != net.arc_count())
    throw std::invalid_argument("state vector length does not match arc count");
  detail::OutAdjacency adj(net);
  std::vector<char> visited(static_cast<std::size_t>(net.node_count()) + 1, 0);
  std::vector<NodeId> stack;
  return detail::dfs_reaches_sink(adj, net.arc_count(), net.sink(), x.word(),
                                  visited, stack);
}

// Full state-space reliability: every one of the 2^m vectors of the network
// as given (no reduction), depth-first connectivity, plain summation of the
// occurrence probabilities of the connected ones.
inline double brute_force_reliability(const BinaryStateNetwork& net) {
  const int m = net.arc_count();
  if (m > 24)
    throw std::invalid_argument(
        "brute_force_reliability: 2^m enumeration guard (m <= 24)");

  detail::OutAdjacency adj(net);
  std::vector<char> visited(static_cast<std::size_t>(net.node_count()) + 1, 0);
  std::vector<NodeId> stack;
  std::vector<double> succ(static_cast<std::size_t>(m));
  std::vector<double> fail(static_cast<std::size_t>(m));
  for (const Arc& a : net.arcs()) {
    succ[static_cast<std::size_t>(a.id - 1)] = a.p;
    fail[static_cast<std::size_t>(a.id - 1)] = 1.0 - a.p;
  }

  const std::uint64_t total = std::uint64_t{1} << m;
  double reliability = 0.0;
  for (std::uint64_t word = 0; word < total; ++word) {
    if (!detail::dfs_reaches_sink(adj, m, net.sink(), word, visited, stack))
      continue;
    double term = 1.0;
    for (int j = 0; j < m; ++j)
      term *= ((word >> (m - 1 - j)) & 1u) ? succ[static_cast<std::size_t>(j)]
                                           : fail[static_cast<std::size_t>(j)];
    reliability += term;
  }
  return reliability;
}

// Every directed simple source-to-sink path, found by depth-first
// backtracking with out-arcs taken in arc-id order.
inline MinimalPathSet find_all_minimal_paths(const BinaryStateNetwork& net) {
  detail::OutAdjacency adj(net);
  MinimalPathSet result;
  std::vector<char> on_path(static_cast<std::size_t>(net.node_count()) + 1, 0);
  std::vector<ArcId> path;

  auto dfs = [&](auto&& self, NodeId u) -> void {
    if (u == net.sink()) {
      result.paths.push_back(MinimalPath{path});
      return;
    }
    for (const auto& [id, head] : adj.out[static_cast<std::size_t>(u)]) {
      if (on_path[static_cast<std::size_t>(head)]) continue;
      on_path[static_cast<std::size_t>(head)] = 1;
      path.push_back(id);
      self(self, head);
      path.pop_back();
      on_path[static_cast<std::size_t>(head)] = 0;
    }
  };
  on_path[1] = 1;
  dfs(dfs, 1);
  return result;
}

namespace detail {

inline std::vector<std::uint64_t> path_arc_masks(const MinimalPathSet& mps,
                                                 const BinaryStateNetwork& net) {
  std::vector<std::uint64_t> masks;
  masks.reserve(mps.size());
  for (const MinimalPath& p : mps.paths) {
    std::uint64_t mask = 0;
    for (ArcId id : p.arcs) {
      if (id < 1 || id > net.arc_count())
        throw std::invalid_argument("minimal path references unknown arc");
      mask |= std::uint64_t{1} << (id - 1);
    }
    masks.push_back(mask);
  }
  return masks;
}

inline double product_over_mask(const BinaryStateNetwork& net,
                                std::uint64_t mask) {
  double product = 1.0;
  while (mask != 0) {
    const int i = std::countr_zero(mask);
    mask &= mask - 1;
    product *= net.arc(i + 1).p;
  }
  return product;
}

inline void check_path_count(const MinimalPathSet& mps) {
  if (mps.size() > 25)
    throw std::invalid_argument(
        "path-based evaluation: 2^pi subset guard (pi <= 25)");
}

}  // namespace detail

// Inclusion-exclusion over the path events: sum over non-empty subsets S of
// (-1)^(|S|+1) times the probability that every arc in the union of S works.
// Subsets run through a plain 2^pi counter; no memoization.
inline double iet_reliability(const MinimalPathSet& mps,
                              const BinaryStateNetwork& net) {
  detail::check_path_count(mps);
  const auto masks = detail::path_arc_masks(mps, net);
  const std::uint32_t pi = static_cast<std::uint32_t>(masks.size());
  long double reliability = 0.0L;
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << pi); ++subset) {
    std::uint64_t arc_union = 0;
    std::uint64_t s = subset;
    while (s != 0) {
      arc_union |= masks[static_cast<std::size_t>(std::countr_zero(s))];
      s &= s - 1;
    }
    const double term = detail::product_over_mask(net, arc_union);
    if (std::popcount(subset) & 1)
      reliability += term;
    else
      reliability -= term;
  }
  return static_cast<double>(reliability);
}

// Sum of disjoint products: the i-th term is the probability that all arcs
// of path i work while, for every earlier path j, at least one arc of
// path j outside path i fails. Each "at least one fails" conjunction is
// expanded exactly by inclusion-exclusion over the complement events.
inline double sdp_reliability(const MinimalPathSet& mps,
                              const BinaryStateNetwork& net) {
  detail::check_path_count(mps);
  const auto masks = detail::path_arc_masks(mps, net);
  long double reliability = 0.0L;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    std::vector<std::uint64_t> diffs(i);
    bool dominated = false;
    for (std::size_t j = 0; j < i; ++j) {
      diffs[j] = masks[j] & ~masks[i];
      if (diffs[j] == 0) dominated = true;  // earlier path inside this one
    }
    if (dominated) continue;
    long double exclusion = 0.0L;
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << i);
         ++subset) {
      std::uint64_t arc_union = 0;
      std::uint64_t s = subset;
      while (s != 0) {
        arc_union |= diffs[static_cast<std::size_t>(std::countr_zero(s))];
        s &= s - 1;
      }
      const double term = detail::product_over_mask(net, arc_union);
      if (std::popcount(subset) & 1)
        exclusion -= term;
      else
        exclusion += term;
    }
    reliability += detail::product_over_mask(net, masks[i]) * exclusion;
  }
  return static_cast<double>(reliability);
}

}  // namespace relbat::oracles
