#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "relbat/network.hpp"

namespace relbat {

// Layered source-to-sink search over the arcs switched on in a state vector,
// with early exit the moment the sink is reached. Adjacency is precomputed
// once per network; the visited stamps and the two frontier buffers are
// reused across queries, so one instance must not be shared between threads.
class ConnectivityTester {
 public:
  explicit ConnectivityTester(const BinaryStateNetwork& net)
      : node_count_(net.node_count()),
        arc_count_(net.arc_count()),
        sink_(net.sink()) {
    std::vector<int> degree(static_cast<std::size_t>(node_count_) + 1, 0);
    for (const Arc& a : net.arcs()) ++degree[static_cast<std::size_t>(a.tail)];
    offsets_.assign(static_cast<std::size_t>(node_count_) + 2, 0);
    for (int v = 1; v <= node_count_; ++v)
      offsets_[static_cast<std::size_t>(v) + 1] =
          offsets_[static_cast<std::size_t>(v)] +
          degree[static_cast<std::size_t>(v)];
    out_.resize(static_cast<std::size_t>(arc_count_));
    std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Arc& a : net.arcs())
      out_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(a.tail)]++)] =
          OutArc{a.head, std::uint64_t{1} << (arc_count_ - a.id)};
    stamp_.assign(static_cast<std::size_t>(node_count_) + 1, 0);
    frontier_.reserve(static_cast<std::size_t>(node_count_));
    next_.reserve(static_cast<std::size_t>(node_count_));
  }

  bool is_connected(const StateVector& x) {
    if (x.length() != arc_count_)
      throw std::invalid_argument(
          "state vector length does not match arc count");
    return is_connected_word(x.word());
  }

  // Hot path: no validation, no allocation after construction.
  bool is_connected_word(std::uint64_t word) {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    frontier_.clear();
    frontier_.push_back(1);
    stamp_[1] = epoch_;
    while (!frontier_.empty()) {
      next_.clear();
      for (NodeId u : frontier_) {
        const int end = offsets_[static_cast<std::size_t>(u) + 1];
        for (int e = offsets_[static_cast<std::size_t>(u)]; e < end; ++e) {
          const OutArc& arc = out_[static_cast<std::size_t>(e)];
          if ((word & arc.mask) == 0) continue;
          if (stamp_[static_cast<std::size_t>(arc.head)] == epoch_) continue;
          if (arc.head == sink_) return true;
          stamp_[static_cast<std::size_t>(arc.head)] = epoch_;
          next_.push_back(arc.head);
        }
      }
      frontier_.swap(next_);
    }
    return false;
  }

 private:
  struct OutArc {
    NodeId head = 0;
    std::uint64_t mask = 0;  // bit of the arc in the state word
  };

  int node_count_;
  int arc_count_;
  NodeId sink_;
  std::vector<int> offsets_;  // CSR row starts, indexed by node
  std::vector<OutArc> out_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> frontier_;
  std::vector<NodeId> next_;
};

// Convenience one-shot query; builds a tester per call.
inline bool is_connected(const BinaryStateNetwork& net, const StateVector& x) {
  ConnectivityTester tester(net);
  return tester.is_connected(x);
}

}  // namespace relbat
