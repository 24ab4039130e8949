#pragma once

#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relbat {

using NodeId = int;  // 1-based; node 1 is the source, the highest node the sink
using ArcId = int;   // 1-based position in the network's arc order

struct Arc {
  ArcId id = 0;
  NodeId tail = 0;
  NodeId head = 0;
  double p = 0.0;  // success probability

  friend bool operator==(const Arc&, const Arc&) = default;
};

// Input failure carrying the 1-based line it occurred on.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Shortest decimal string that round-trips to the same double.
inline std::string to_decimal_string(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

// Binary arc-state word of fixed length m. Coordinate 1 is the most
// significant digit of the binary-number interpretation and coordinate m the
// least significant, so +1 on the backing word is binary addition on the
// vector. The popcount cache tracks every mutation.
class StateVector {
 public:
  StateVector() = default;

  static StateVector zeros(int length) { return StateVector(0, length); }

  static StateVector ones(int length) {
    return StateVector(mask_for(length), length);
  }

  static StateVector from_word(std::uint64_t word, int length) {
    StateVector x(0, length);
    if ((word & ~mask_for(length)) != 0)
      throw std::invalid_argument("state word wider than vector length");
    x.word_ = word;
    x.popcount_ = std::popcount(word);
    return x;
  }

  // "01011" -> coordinates 1..m, most significant coordinate first.
  static StateVector from_string(std::string_view bits) {
    StateVector x(0, static_cast<int>(bits.size()));
    for (char c : bits) {
      x.word_ <<= 1;
      if (c == '1')
        x.word_ |= 1;
      else if (c != '0')
        throw std::invalid_argument("state string must contain only 0/1");
    }
    x.popcount_ = std::popcount(x.word_);
    return x;
  }

  int length() const { return length_; }
  int popcount() const { return popcount_; }
  std::uint64_t word() const { return word_; }

  bool bit(int coordinate) const {
    check_coordinate(coordinate);
    return (word_ >> (length_ - coordinate)) & 1u;
  }

  void set_bit(int coordinate, bool value) {
    check_coordinate(coordinate);
    const std::uint64_t mask = std::uint64_t{1} << (length_ - coordinate);
    if (value && !(word_ & mask)) {
      word_ |= mask;
      ++popcount_;
    } else if (!value && (word_ & mask)) {
      word_ &= ~mask;
      --popcount_;
    }
  }

  bool all_ones() const { return word_ == mask_for(length_); }

  // Binary +1. Returns false (and leaves the vector untouched) when the
  // vector is already all-ones, i.e. enumeration is complete.
  bool increment() {
    if (all_ones()) return false;
    ++word_;
    popcount_ = std::popcount(word_);
    return true;
  }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(length_), '0');
    for (int i = 1; i <= length_; ++i)
      if (bit(i)) s[static_cast<std::size_t>(i - 1)] = '1';
    return s;
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  StateVector(std::uint64_t word, int length) : word_(word), length_(length) {
    if (length < 0 || length > 64)
      throw std::invalid_argument("state vector length must be in 0..64");
    popcount_ = std::popcount(word_);
  }

  static std::uint64_t mask_for(int length) {
    return length >= 64 ? ~std::uint64_t{0}
                        : (std::uint64_t{1} << length) - 1;
  }

  void check_coordinate(int c) const {
    if (c < 1 || c > length_)
      throw std::out_of_range("state vector coordinate out of range");
  }

  std::uint64_t word_ = 0;
  int length_ = 0;
  int popcount_ = 0;
};

// Directed network with two-state arcs. Node 1 is the source and node
// node_count() the sink; arc order is fixed at construction and every state
// vector coordinate, report and trace refers to it.
class BinaryStateNetwork {
 public:
  BinaryStateNetwork(int node_count, std::vector<Arc> arcs)
      : node_count_(node_count), arcs_(std::move(arcs)) {
    if (node_count_ < 2)
      throw std::invalid_argument("network needs at least two nodes");
    std::vector<std::vector<NodeId>> seen(
        static_cast<std::size_t>(node_count_) + 1);
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      Arc& a = arcs_[i];
      a.id = static_cast<ArcId>(i + 1);
      if (a.tail < 1 || a.tail > node_count_ || a.head < 1 ||
          a.head > node_count_)
        throw std::invalid_argument("arc " + std::to_string(a.id) +
                                    ": node index out of range");
      if (a.tail == a.head)
        throw std::invalid_argument("arc " + std::to_string(a.id) +
                                    ": self-loops are not allowed");
      if (!(a.p >= 0.0 && a.p <= 1.0))
        throw std::invalid_argument("arc " + std::to_string(a.id) +
                                    ": probability outside [0,1]");
      for (NodeId h : seen[static_cast<std::size_t>(a.tail)])
        if (h == a.head)
          throw std::invalid_argument("arc " + std::to_string(a.id) +
                                      ": duplicate arc");
      seen[static_cast<std::size_t>(a.tail)].push_back(a.head);
    }
  }

  int node_count() const { return node_count_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  const Arc& arc(ArcId id) const {
    if (id < 1 || id > arc_count())
      throw std::out_of_range("arc id out of range");
    return arcs_[static_cast<std::size_t>(id - 1)];
  }

  static constexpr NodeId source() { return 1; }
  NodeId sink() const { return node_count_; }

  friend bool operator==(const BinaryStateNetwork&,
                         const BinaryStateNetwork&) = default;

 private:
  int node_count_;
  std::vector<Arc> arcs_;
};

namespace detail {

inline bool parse_int(std::string_view token, int& out) {
  const auto result =
      std::from_chars(token.data(), token.data() + token.size(), out);
  return result.ec == std::errc() &&
         result.ptr == token.data() + token.size();
}

inline bool parse_double(std::string_view token, double& out) {
  const auto result =
      std::from_chars(token.data(), token.data() + token.size(), out);
  return result.ec == std::errc() &&
         result.ptr == token.data() + token.size();
}

inline std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

inline bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace detail

// Text format:
//   line 1:      nodes=<n> arcs=<m> source=1 sink=<n>   (source/sink optional)
//   lines 2..m+1: <tail> <head> <p>
// '#' starts a comment line; blank lines are skipped. Arc order is file
// order. Probabilities are decimal literals parsed to the nearest double.
inline BinaryStateNetwork parse_network(std::istream& in) {
  int line_no = 0;
  std::string line;

  auto next_significant = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!detail::is_blank_or_comment(line)) {
        out = line;
        return true;
      }
    }
    return false;
  };

  std::string header;
  if (!next_significant(header))
    throw ParseError(line_no + 1, "missing header line");

  int nodes = -1, arcs = -1, source = -1, sink = -1;
  for (const std::string& token : detail::split_tokens(header)) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      throw ParseError(line_no, "malformed header token '" + token + "'");
    const std::string_view key(token.data(), eq);
    const std::string_view value(token.data() + eq + 1,
                                 token.size() - eq - 1);
    int parsed = 0;
    if (!detail::parse_int(value, parsed))
      throw ParseError(line_no, "malformed header value '" + token + "'");
    if (key == "nodes")
      nodes = parsed;
    else if (key == "arcs")
      arcs = parsed;
    else if (key == "source")
      source = parsed;
    else if (key == "sink")
      sink = parsed;
    else
      throw ParseError(line_no, "unknown header key '" + std::string(key) +
                                    "'");
  }
  if (nodes < 0 || arcs < 0)
    throw ParseError(line_no, "header must specify nodes=<n> arcs=<m>");
  if (nodes < 2) throw ParseError(line_no, "network needs at least two nodes");
  if (source != -1 && source != 1)
    throw ParseError(line_no,
                     "source must be node 1 (relabel nodes so that the "
                     "source becomes node 1)");
  if (sink != -1 && sink != nodes)
    throw ParseError(line_no,
                     "sink must be the highest node (relabel nodes so that "
                     "the sink becomes node " +
                         std::to_string(nodes) + ")");

  std::vector<Arc> arc_list;
  arc_list.reserve(static_cast<std::size_t>(arcs));
  std::vector<std::vector<NodeId>> seen(static_cast<std::size_t>(nodes) + 1);
  for (int k = 1; k <= arcs; ++k) {
    std::string arc_line;
    if (!next_significant(arc_line))
      throw ParseError(line_no + 1, "expected arc line " + std::to_string(k) +
                                        " of " + std::to_string(arcs));
    const auto tokens = detail::split_tokens(arc_line);
    if (tokens.size() != 3)
      throw ParseError(line_no, "expected '<tail> <head> <p>'");
    int tail = 0, head = 0;
    double p = 0.0;
    if (!detail::parse_int(tokens[0], tail) ||
        !detail::parse_int(tokens[1], head))
      throw ParseError(line_no, "malformed node index");
    if (!detail::parse_double(tokens[2], p))
      throw ParseError(line_no, "malformed probability");
    if (tail < 1 || tail > nodes || head < 1 || head > nodes)
      throw ParseError(line_no, "node index out of range 1.." +
                                    std::to_string(nodes));
    if (tail == head) throw ParseError(line_no, "self-loops are not allowed");
    if (!(p >= 0.0 && p <= 1.0))
      throw ParseError(line_no, "probability outside [0,1]");
    for (NodeId h : seen[static_cast<std::size_t>(tail)])
      if (h == head)
        throw ParseError(line_no, "duplicate arc (" + std::to_string(tail) +
                                      "," + std::to_string(head) + ")");
    seen[static_cast<std::size_t>(tail)].push_back(head);
    arc_list.push_back(Arc{k, tail, head, p});
  }

  std::string extra;
  if (next_significant(extra))
    throw ParseError(line_no, "unexpected content after the last arc line");

  return BinaryStateNetwork(nodes, std::move(arc_list));
}

inline BinaryStateNetwork parse_network(std::string_view text) {
  std::istringstream stream{std::string(text)};
  return parse_network(stream);
}

inline void write_network(const BinaryStateNetwork& net, std::ostream& out) {
  out << "nodes=" << net.node_count() << " arcs=" << net.arc_count()
      << " source=1 sink=" << net.sink() << '\n';
  for (const Arc& a : net.arcs())
    out << a.tail << ' ' << a.head << ' ' << to_decimal_string(a.p) << '\n';
}

inline std::string write_network(const BinaryStateNetwork& net) {
  std::ostringstream out;
  write_network(net, out);
  return out.str();
}

// Occurrence probability of a state vector: the product over all arcs of p
// for a working arc and 1-p for a failed one.
inline double vector_probability(const BinaryStateNetwork& net,
                                 const StateVector& x) {
  if (x.length() != net.arc_count())
    throw std::invalid_argument("state vector length does not match arc count");
  double product = 1.0;
  for (const Arc& a : net.arcs()) product *= x.bit(a.id) ? a.p : 1.0 - a.p;
  return product;
}

// Arc ids switched on in x, ascending.
inline std::vector<ArcId> subgraph_arcs(const BinaryStateNetwork& net,
                                        const StateVector& x) {
  if (x.length() != net.arc_count())
    throw std::invalid_argument("state vector length does not match arc count");
  std::vector<ArcId> on;
  on.reserve(static_cast<std::size_t>(x.popcount()));
  for (ArcId id = 1; id <= net.arc_count(); ++id)
    if (x.bit(id)) on.push_back(id);
  return on;
}

}  // namespace relbat
