#pragma once

#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "relbat/analysis.hpp"
#include "relbat/connectivity.hpp"
#include "relbat/network.hpp"

namespace relbat {

struct BatOptions {
  bool apply_reduction = true;  // drop arcs no source-to-sink path can use
  bool use_bounds = true;       // popcount bounds replace connectivity tests
  bool emit_trace = false;      // stream one TraceRow per enumerated vector
  int parallel_ranges = 1;      // worker count; power of two, at most 2^m
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

enum class TraceTest { kBoundLow, kBoundHigh, kPlsa };

inline const char* to_string(TraceTest test) {
  switch (test) {
    case TraceTest::kBoundLow:
      return "bound-low";
    case TraceTest::kBoundHigh:
      return "bound-high";
    case TraceTest::kPlsa:
      return "plsa";
  }
  return "?";
}

// One scan step. Rows are produced in strictly increasing binary-number
// order of the vector; k numbers the connected vectors from 1.
struct TraceRow {
  std::uint64_t iteration = 0;
  std::optional<std::uint64_t> k;
  StateVector vector;
  int sum = 0;  // popcount of the vector
  TraceTest test = TraceTest::kPlsa;
  bool connected = false;
  std::optional<double> term;  // occurrence probability, connected rows only
};

using TraceSink = std::function<void(const TraceRow&)>;

struct BatReport {
  double reliability = 0.0;
  int m_original = 0;
  int m_reduced = 0;              // arcs actually scanned
  Bounds bounds;                  // n_p / n_c of the scanned network
  std::uint64_t enumerated = 0;   // vectors visited
  std::uint64_t skipped_low = 0;  // rejected by popcount < n_p, no test
  std::uint64_t skipped_high = 0;  // accepted by popcount > m - n_c, no test
  std::uint64_t plsa_calls = 0;    // connectivity verifications
  std::uint64_t connected_count = 0;
  double elapsed_seconds = 0.0;
};

struct Timeout : std::runtime_error {
  Timeout() : std::runtime_error("bat_reliability: deadline exceeded") {}
};

// Binary +1 on the vector; false once the all-ones vector is reached, i.e.
// the enumeration is complete.
inline bool increment(StateVector& x) { return x.increment(); }

// Visits all 2^m vectors of length m in increasing binary-number order,
// starting from the zero vector. Returns the visit count.
template <class Visit>
std::uint64_t enumerate_all(int m, Visit&& visit) {
  if (m < 1 || m > 63)
    throw std::invalid_argument("enumerate_all: m must be in 1..63");
  StateVector x = StateVector::zeros(m);
  std::uint64_t count = 0;
  for (;;) {
    visit(static_cast<const StateVector&>(x));
    ++count;
    if (!x.increment()) break;
  }
  return count;
}

namespace detail {

struct ScanCounters {
  std::uint64_t enumerated = 0;
  std::uint64_t skipped_low = 0;
  std::uint64_t skipped_high = 0;
  std::uint64_t plsa_calls = 0;
  std::uint64_t connected = 0;

  void add(const ScanCounters& o) {
    enumerated += o.enumerated;
    skipped_low += o.skipped_low;
    skipped_high += o.skipped_high;
    plsa_calls += o.plsa_calls;
    connected += o.connected;
  }
};

// Scan context shared by the sequential and the threaded drivers. The word
// range is cut into fixed blocks (the cut depends only on m, never on the
// worker count); each block folds its own partial sum and the partials are
// combined in ascending block order, so the reliability is bit-identical for
// every worker count.
struct ScanPlan {
  int m = 0;
  int n_p = 0;
  int n_c = 0;
  bool use_bounds = false;
  std::uint64_t start = 0;       // first word visited
  std::uint64_t block_span = 0;  // words per block
  std::uint64_t block_count = 0;

  static constexpr int kBlockLog2 = 12;

  ScanPlan(int m_, int n_p_, int n_c_, bool use_bounds_)
      : m(m_), n_p(n_p_), n_c(n_c_), use_bounds(use_bounds_) {
    // With bounds on, every word below 2^n_p - 1 has popcount < n_p and
    // would be rejected unseen; the scan starts at the first candidate.
    start = use_bounds ? (std::uint64_t{1} << n_p) - 1 : 0;
    const int block_log2 = m < kBlockLog2 ? m : kBlockLog2;
    block_span = std::uint64_t{1} << (m - block_log2);
    block_count = std::uint64_t{1} << block_log2;
  }
};

struct TraceState {
  const TraceSink* sink = nullptr;
  std::uint64_t iteration = 0;
  std::uint64_t k = 0;
};

// One contiguous block of words. Returns the block's partial reliability.
inline double scan_block(const ScanPlan& plan, std::uint64_t lo,
                         std::uint64_t hi, const std::vector<double>& succ,
                         const std::vector<double>& fail,
                         ConnectivityTester& tester, ScanCounters& counters,
                         TraceState* trace) {
  const int m = plan.m;
  const int high_threshold = m - plan.n_c;
  double partial = 0.0;
  for (std::uint64_t word = lo; word < hi; ++word) {
    ++counters.enumerated;
    const int sum = std::popcount(word);
    TraceTest test;
    bool connected;
    if (plan.use_bounds && sum < plan.n_p) {
      test = TraceTest::kBoundLow;
      connected = false;
      ++counters.skipped_low;
    } else if (plan.use_bounds && sum > high_threshold) {
      test = TraceTest::kBoundHigh;
      connected = true;
      ++counters.skipped_high;
    } else {
      test = TraceTest::kPlsa;
      ++counters.plsa_calls;
      connected = tester.is_connected_word(word);
    }
    double term = 0.0;
    if (connected) {
      ++counters.connected;
      term = 1.0;
      for (int j = 0; j < m; ++j)
        term *= ((word >> (m - 1 - j)) & 1u)
                    ? succ[static_cast<std::size_t>(j)]
                    : fail[static_cast<std::size_t>(j)];
      partial += term;
    }
    if (trace != nullptr) {
      TraceRow row;
      row.iteration = ++trace->iteration;
      row.vector = StateVector::from_word(word, m);
      row.sum = sum;
      row.test = test;
      row.connected = connected;
      if (connected) {
        row.k = ++trace->k;
        row.term = term;
      }
      (*trace->sink)(row);
    }
  }
  return partial;
}

inline void check_deadline(const BatOptions& opts) {
  if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline)
    throw Timeout();
}

}  // namespace detail

// The binary-addition scan: enumerate state vectors of the working network
// by integer +1, classify each one (popcount bounds first when enabled,
// layered connectivity search otherwise) and sum the occurrence
// probabilities of the connected ones. Trace rows are streamed to `trace`
// when opts.emit_trace is set; tracing serializes the scan but cannot change
// the result.
inline BatReport bat_reliability(const BinaryStateNetwork& net,
                                 const BatOptions& opts = {},
                                 const TraceSink& trace = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  auto finish = [&](BatReport report) {
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return report;
  };

  if (opts.parallel_ranges < 1 ||
      !std::has_single_bit(static_cast<unsigned>(opts.parallel_ranges)))
    throw std::invalid_argument("parallel_ranges must be a power of two");

  BatReport report;
  report.m_original = net.arc_count();

  std::optional<BinaryStateNetwork> reduced;
  const BinaryStateNetwork* working = &net;
  if (opts.apply_reduction) {
    reduced = reduce_arcs(net).first;
    working = &*reduced;
  }
  const int m = working->arc_count();
  report.m_reduced = m;
  if (m > 63)
    throw std::invalid_argument("bat_reliability: at most 63 arcs per scan");

  const auto n_p = shortest_path_arc_count(*working);
  if (!n_p) return finish(report);  // unreachable sink: R = 0, nothing scanned
  if (m < 63 &&
      static_cast<std::uint64_t>(opts.parallel_ranges) > (std::uint64_t{1} << m))
    throw std::invalid_argument("parallel_ranges must not exceed 2^m");
  const int n_c = min_cut_arc_count(*working);
  report.bounds = Bounds{*n_p, n_c};

  std::vector<double> succ(static_cast<std::size_t>(m));
  std::vector<double> fail(static_cast<std::size_t>(m));
  for (const Arc& a : working->arcs()) {
    succ[static_cast<std::size_t>(a.id - 1)] = a.p;
    fail[static_cast<std::size_t>(a.id - 1)] = 1.0 - a.p;
  }

  const detail::ScanPlan plan(m, *n_p, n_c, opts.use_bounds);
  std::vector<double> block_sums(plan.block_count, 0.0);

  const bool tracing = opts.emit_trace && static_cast<bool>(trace);
  const unsigned workers =
      tracing ? 1u
              : std::min<std::uint64_t>(
                    static_cast<std::uint64_t>(opts.parallel_ranges),
                    plan.block_count);

  detail::ScanCounters totals;
  if (workers <= 1) {
    detail::TraceState trace_state{&trace, 0, 0};
    ConnectivityTester tester(*working);
    for (std::uint64_t b = 0; b < plan.block_count; ++b) {
      detail::check_deadline(opts);
      const std::uint64_t lo = b * plan.block_span;
      const std::uint64_t hi = lo + plan.block_span;
      if (hi <= plan.start) continue;
      block_sums[b] =
          detail::scan_block(plan, std::max(lo, plan.start), hi, succ, fail,
                             tester, totals, tracing ? &trace_state : nullptr);
    }
  } else {
    std::atomic<bool> stop{false};
    std::vector<detail::ScanCounters> counters(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          ConnectivityTester tester(*working);
          const std::uint64_t first = plan.block_count * w / workers;
          const std::uint64_t last = plan.block_count * (w + 1) / workers;
          for (std::uint64_t b = first; b < last; ++b) {
            if (stop.load(std::memory_order_relaxed)) return;
            detail::check_deadline(opts);
            const std::uint64_t lo = b * plan.block_span;
            const std::uint64_t hi = lo + plan.block_span;
            if (hi <= plan.start) continue;
            block_sums[b] =
                detail::scan_block(plan, std::max(lo, plan.start), hi, succ,
                                   fail, tester, counters[w], nullptr);
          }
        } catch (...) {
          errors[w] = std::current_exception();
          stop.store(true, std::memory_order_relaxed);
        }
      });
    }
    for (auto& t : threads) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (const auto& c : counters) totals.add(c);
  }

  double reliability = 0.0;
  for (double partial : block_sums) reliability += partial;

  report.reliability = reliability;
  report.enumerated = totals.enumerated;
  report.skipped_low = totals.skipped_low;
  report.skipped_high = totals.skipped_high;
  report.plsa_calls = totals.plsa_calls;
  report.connected_count = totals.connected;
  return finish(report);
}

// Sum of the occurrence probabilities of all 2^m vectors; must come out as 1
// up to rounding for any valid network.
inline double total_probability_check(const BinaryStateNetwork& net) {
  const int m = net.arc_count();
  if (m < 1 || m > 24)
    throw std::invalid_argument(
        "total_probability_check: 2^m enumeration guard (1 <= m <= 24)");

  std::vector<double> succ(static_cast<std::size_t>(m));
  std::vector<double> fail(static_cast<std::size_t>(m));
  for (const Arc& a : net.arcs()) {
    succ[static_cast<std::size_t>(a.id - 1)] = a.p;
    fail[static_cast<std::size_t>(a.id - 1)] = 1.0 - a.p;
  }

  const int block_log2 = m < 12 ? m : 12;
  const std::uint64_t span = std::uint64_t{1} << (m - block_log2);
  double total = 0.0;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << block_log2); ++b) {
    double partial = 0.0;
    const std::uint64_t lo = b * span;
    for (std::uint64_t word = lo; word < lo + span; ++word) {
      double term = 1.0;
      for (int j = 0; j < m; ++j)
        term *= ((word >> (m - 1 - j)) & 1u)
                    ? succ[static_cast<std::size_t>(j)]
                    : fail[static_cast<std::size_t>(j)];
      partial += term;
    }
    total += partial;
  }
  return total;
}

}  // namespace relbat
