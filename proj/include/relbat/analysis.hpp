#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "relbat/network.hpp"

namespace relbat {

// Which original arcs survived reduce_arcs. kept preserves the original
// relative order; kept and removed partition the original arc set.
struct ReductionMap {
  std::vector<ArcId> kept;
  std::vector<ArcId> removed;
};

struct Bounds {
  int shortest_path_arcs = 0;  // n_p; 0 when the sink is unreachable
  int min_cut_arcs = 0;        // n_c; 0 when the sink is unreachable

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

namespace detail {

// Forward reachability from the source (or, on the reversed arcs, backward
// reachability from the sink) restricted to arcs a simple source-to-sink
// path could use: never out of the sink, never into the source.
inline std::vector<char> usable_reach(const BinaryStateNetwork& net,
                                      bool reversed) {
  const int n = net.node_count();
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(n) + 1);
  for (const Arc& a : net.arcs()) {
    if (a.tail == net.sink() || a.head == net.source()) continue;
    if (reversed)
      adj[static_cast<std::size_t>(a.head)].push_back(a.tail);
    else
      adj[static_cast<std::size_t>(a.tail)].push_back(a.head);
  }
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  std::vector<NodeId> queue;
  const NodeId start = reversed ? net.sink() : net.source();
  seen[static_cast<std::size_t>(start)] = 1;
  queue.push_back(start);
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (NodeId v : adj[static_cast<std::size_t>(queue[i])])
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        queue.push_back(v);
      }
  return seen;
}

}  // namespace detail

// Drops every arc no simple source-to-sink path can use: arcs out of the
// sink, arcs into the source, and arcs whose tail is unreachable from the
// source or whose head cannot reach the sink. Reliability is invariant under
// this reduction. The node set is unchanged; an empty arc list is a legal
// result and signals reliability 0.
inline std::pair<BinaryStateNetwork, ReductionMap> reduce_arcs(
    const BinaryStateNetwork& net) {
  const std::vector<char> from_source = detail::usable_reach(net, false);
  const std::vector<char> to_sink = detail::usable_reach(net, true);

  ReductionMap map;
  std::vector<Arc> kept_arcs;
  for (const Arc& a : net.arcs()) {
    const bool usable = a.tail != net.sink() && a.head != net.source() &&
                        from_source[static_cast<std::size_t>(a.tail)] &&
                        to_sink[static_cast<std::size_t>(a.head)];
    if (usable) {
      map.kept.push_back(a.id);
      kept_arcs.push_back(Arc{0, a.tail, a.head, a.p});
    } else {
      map.removed.push_back(a.id);
    }
  }
  return {BinaryStateNetwork(net.node_count(), std::move(kept_arcs)),
          std::move(map)};
}

// Arc count of a shortest directed source-to-sink path, by breadth-first
// layering. nullopt when the sink is unreachable.
inline std::optional<int> shortest_path_arc_count(
    const BinaryStateNetwork& net) {
  const int n = net.node_count();
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(n) + 1);
  for (const Arc& a : net.arcs())
    adj[static_cast<std::size_t>(a.tail)].push_back(a.head);

  std::vector<int> dist(static_cast<std::size_t>(n) + 1, -1);
  std::vector<NodeId> queue;
  dist[1] = 0;
  queue.push_back(1);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const NodeId u = queue[i];
    for (NodeId v : adj[static_cast<std::size_t>(u)])
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] =
            dist[static_cast<std::size_t>(u)] + 1;
        if (v == net.sink()) return dist[static_cast<std::size_t>(v)];
        queue.push_back(v);
      }
  }
  const int d = dist[static_cast<std::size_t>(net.sink())];
  return d < 0 ? std::nullopt : std::optional<int>(d);
}

// Minimum number of arcs whose removal disconnects the source from the sink:
// max-flow with unit capacity per arc, augmenting-path search. Returns 0 when
// there is no source-to-sink path.
inline int min_cut_arc_count(const BinaryStateNetwork& net) {
  struct Edge {
    NodeId to;
    int cap;
    int rev;  // index of the reverse edge in adj[to]
  };
  const int n = net.node_count();
  std::vector<std::vector<Edge>> adj(static_cast<std::size_t>(n) + 1);
  for (const Arc& a : net.arcs()) {
    auto& fwd = adj[static_cast<std::size_t>(a.tail)];
    auto& bwd = adj[static_cast<std::size_t>(a.head)];
    fwd.push_back(Edge{a.head, 1, static_cast<int>(bwd.size())});
    bwd.push_back(Edge{a.tail, 0, static_cast<int>(fwd.size()) - 1});
  }

  int flow = 0;
  std::vector<std::pair<NodeId, int>> parent(  // (node, edge index into adj[node])
      static_cast<std::size_t>(n) + 1);
  std::vector<char> seen(static_cast<std::size_t>(n) + 1);
  std::vector<NodeId> queue;
  for (;;) {
    std::fill(seen.begin(), seen.end(), 0);
    queue.clear();
    queue.push_back(net.source());
    seen[1] = 1;
    bool reached = false;
    for (std::size_t i = 0; i < queue.size() && !reached; ++i) {
      const NodeId u = queue[i];
      auto& edges = adj[static_cast<std::size_t>(u)];
      for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        if (edges[static_cast<std::size_t>(e)].cap <= 0) continue;
        const NodeId v = edges[static_cast<std::size_t>(e)].to;
        if (seen[static_cast<std::size_t>(v)]) continue;
        seen[static_cast<std::size_t>(v)] = 1;
        parent[static_cast<std::size_t>(v)] = {u, e};
        if (v == net.sink()) {
          reached = true;
          break;
        }
        queue.push_back(v);
      }
    }
    if (!reached) break;
    for (NodeId v = net.sink(); v != net.source();) {
      const auto [u, e] = parent[static_cast<std::size_t>(v)];
      Edge& fwd = adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(e)];
      fwd.cap -= 1;
      adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(fwd.rev)].cap +=
          1;
      v = u;
    }
    ++flow;
  }
  return flow;
}

inline std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > 64) throw std::invalid_argument("binomial: n must be in 0..64");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(r);
}

namespace detail {

inline void check_skip_args(int m, int n_p, int n_c) {
  if (m < 0 || m > 63)
    throw std::invalid_argument("skip counts: m must be in 0..63");
  if (n_p < 0 || n_p > m || n_c < 0 || n_c > m)
    throw std::invalid_argument("skip counts: bounds must be in 0..m");
}

}  // namespace detail

// Weighted binomial sum sum_{j<n_p} 2^j C(m,j) + sum_{j>m-n_c} 2^j C(m,j).
// Reported alongside skip_count_exact for comparison; it can exceed 2^m, so
// it is surfaced as a figure of merit only, never asserted as a bound.
inline std::uint64_t skip_bound_literal(int m, int n_p, int n_c) {
  detail::check_skip_args(m, n_p, n_c);
  unsigned __int128 total = 0;
  for (int j = 0; j < n_p; ++j)
    total += (static_cast<unsigned __int128>(1) << j) * binomial(m, j);
  for (int j = m - n_c + 1; j <= m; ++j)
    total += (static_cast<unsigned __int128>(1) << j) * binomial(m, j);
  if (total > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("skip_bound_literal exceeds 64 bits");
  return static_cast<std::uint64_t>(total);
}

struct SkipCounts {
  std::uint64_t low = 0;   // vectors with popcount < n_p
  std::uint64_t high = 0;  // vectors with popcount > m - n_c

  friend bool operator==(const SkipCounts&, const SkipCounts&) = default;
};

// Exact counts of state vectors the popcount bounds classify without a
// connectivity test.
inline SkipCounts skip_count_exact(int m, int n_p, int n_c) {
  detail::check_skip_args(m, n_p, n_c);
  SkipCounts counts;
  for (int j = 0; j < n_p; ++j) counts.low += binomial(m, j);
  for (int j = m - n_c + 1; j <= m; ++j) counts.high += binomial(m, j);
  return counts;
}

}  // namespace relbat
