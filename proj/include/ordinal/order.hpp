#pragma once

// Input orders and finite relations: the pairing codec, coded relations,
// transitive closure, and the finite well-foundedness check.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ordinal/error.hpp"

namespace ordinal {

/// The input order X of a term structure, addressed by indices into {0} ∪ X.
/// Index 0 is the adjoined least element; X's own elements are 1, 2, ...
class LinearOrder {
 public:
  static LinearOrder finite(std::size_t size) { return LinearOrder(false, size); }
  static LinearOrder omega() { return LinearOrder(true, 0); }

  bool is_omega() const noexcept { return omega_; }
  /// Number of elements of X (excluding the adjoined 0). Meaningless for omega.
  std::size_t size() const noexcept { return size_; }

  bool contains(std::size_t index) const noexcept { return omega_ || index <= size_; }

  std::strong_ordering compare(std::size_t a, std::size_t b) const noexcept { return a <=> b; }

  /// The order restricted to its first `size` elements of X.
  LinearOrder prefix(std::size_t size) const {
    return LinearOrder(false, omega_ ? size : std::min(size, size_));
  }

  friend bool operator==(const LinearOrder&, const LinearOrder&) = default;

 private:
  LinearOrder(bool omega, std::size_t size) : omega_(omega), size_(size) {}

  bool omega_;
  std::size_t size_;
};

inline std::string to_string(const LinearOrder& order) {
  return order.is_omega() ? std::string("omega") : std::to_string(order.size());
}

// --- pairing codec --------------------------------------------------------

/// Cantor pairing <n,m> = (n+m)(n+m+1)/2 + m.
inline std::uint64_t pair(std::uint64_t n, std::uint64_t m) {
  std::uint64_t sum = 0, succ = 0, product = 0, result = 0;
  if (__builtin_add_overflow(n, m, &sum) || __builtin_add_overflow(sum, 1, &succ)) {
    throw Error(ErrorKind::overflow, "pair(" + std::to_string(n) + "," + std::to_string(m) + ")");
  }
  // One of sum, sum+1 is even; halve it first so the product cannot overflow
  // spuriously.
  std::uint64_t lhs = sum % 2 == 0 ? sum / 2 : sum;
  std::uint64_t rhs = sum % 2 == 0 ? succ : succ / 2;
  if (__builtin_mul_overflow(lhs, rhs, &product) || __builtin_add_overflow(product, m, &result)) {
    throw Error(ErrorKind::overflow, "pair(" + std::to_string(n) + "," + std::to_string(m) + ")");
  }
  return result;
}

namespace detail {

// Largest w with w(w+1)/2 <= code.
inline std::uint64_t triangular_root(std::uint64_t code) {
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0L * code + 1.0L) - 1.0L) / 2.0L);
  auto tri = [](std::uint64_t x) {
    // x(x+1)/2 computed in 128 bits; only used near the root.
    return static_cast<unsigned __int128>(x) * (x + 1) / 2;
  };
  while (w > 0 && tri(w) > code) --w;
  while (tri(w + 1) <= code) ++w;
  return w;
}

}  // namespace detail

inline std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t code) {
  std::uint64_t w = detail::triangular_root(code);
  auto tri = static_cast<std::uint64_t>(static_cast<unsigned __int128>(w) * (w + 1) / 2);
  std::uint64_t m = code - tri;
  return {w - m, m};
}

// --- finite relations -----------------------------------------------------

using Edge = std::pair<std::size_t, std::size_t>;

/// A finite relation n ≺ m on {0..N-1}, with its transitive closure cached.
class FiniteRelation {
 public:
  FiniteRelation() = default;

  FiniteRelation(std::size_t node_count, std::set<Edge> edges)
      : node_count_(node_count), edges_(std::move(edges)) {
    for (const auto& [n, m] : edges_) {
      if (n >= node_count_ || m >= node_count_) {
        throw Error(ErrorKind::invalid_index, "edge (" + std::to_string(n) + "," +
                                                  std::to_string(m) + ") outside node range " +
                                                  std::to_string(node_count_));
      }
    }
    close();
  }

  std::size_t node_count() const noexcept { return node_count_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }

  bool has_edge(std::size_t n, std::size_t m) const { return edges_.contains({n, m}); }

  /// n ≺* m
  bool precedes(std::size_t n, std::size_t m) const { return closure_[n * node_count_ + m] != 0; }

  friend bool operator==(const FiniteRelation& a, const FiniteRelation& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  // Warshall's algorithm.
  void close() {
    const std::size_t n = node_count_;
    closure_.assign(n * n, 0);
    for (const auto& [a, b] : edges_) closure_[a * n + b] = 1;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!closure_[i * n + k]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (closure_[k * n + j]) closure_[i * n + j] = 1;
        }
      }
    }
  }

  std::size_t node_count_ = 0;
  std::set<Edge> edges_;
  std::vector<char> closure_;
};

/// A finite set of pair codes X, read as n <_X m iff <n,m> ∈ X.
struct CodedRelation {
  std::set<std::uint64_t> codes;
};

inline FiniteRelation decode_relation(const CodedRelation& coded) {
  std::set<Edge> edges;
  std::size_t node_count = 0;
  for (std::uint64_t code : coded.codes) {
    auto [n, m] = unpair(code);
    edges.emplace(n, m);
    node_count = std::max<std::size_t>(node_count, std::max(n, m) + 1);
  }
  return FiniteRelation(node_count, std::move(edges));
}

inline CodedRelation encode_relation(const FiniteRelation& rel) {
  CodedRelation coded;
  for (const auto& [n, m] : rel.edges()) coded.codes.insert(pair(n, m));
  return coded;
}

/// The least transitive relation containing `rel`, as a relation of its own.
inline FiniteRelation transitive_closure(const FiniteRelation& rel) {
  std::set<Edge> edges;
  for (std::size_t n = 0; n < rel.node_count(); ++n) {
    for (std::size_t m = 0; m < rel.node_count(); ++m) {
      if (rel.precedes(n, m)) edges.emplace(n, m);
    }
  }
  return FiniteRelation(rel.node_count(), std::move(edges));
}

/// For finite relations well-foundedness is acyclicity: ≺* must be irreflexive.
inline bool check_well_founded(const FiniteRelation& rel) {
  for (std::size_t n = 0; n < rel.node_count(); ++n) {
    if (rel.precedes(n, n)) return false;
  }
  return true;
}

// --- relation files -------------------------------------------------------
//
//   N <count>            followed by lines "<n> <m>" meaning n ≺ m, or
//   codes: c1 c2 ...     a single line of pair codes decoded with unpair.
//
// Blank lines and lines starting with '#' are ignored.

inline FiniteRelation read_relation(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto syntax = [&](const std::string& msg) {
    return Error(ErrorKind::syntax, "relation line " + std::to_string(line_no) + ": " + msg);
  };
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      line = line.substr(first);
      return true;
    }
    return false;
  };

  if (!next_line()) return FiniteRelation();

  if (line.rfind("codes:", 0) == 0) {
    CodedRelation coded;
    std::istringstream fields(line.substr(6));
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        coded.codes.insert(std::stoull(token, &used));
        if (used != token.size()) throw syntax("bad code '" + token + "'");
      } catch (const std::logic_error&) {
        throw syntax("bad code '" + token + "'");
      }
    }
    if (next_line()) throw syntax("unexpected content after codes line");
    return decode_relation(coded);
  }

  std::istringstream header(line);
  std::string tag;
  long long count = -1;
  std::string rest;
  if (!(header >> tag >> count) || tag != "N" || count < 0 || (header >> rest)) {
    throw syntax("expected 'N <count>' or 'codes: ...'");
  }
  std::set<Edge> edges;
  while (next_line()) {
    std::istringstream fields(line);
    long long n = -1, m = -1;
    if (!(fields >> n >> m) || (fields >> rest)) throw syntax("expected '<n> <m>'");
    if (n < 0 || m < 0 || n >= count || m >= count) throw syntax("endpoint out of range");
    edges.emplace(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
  }
  return FiniteRelation(static_cast<std::size_t>(count), std::move(edges));
}

inline void write_relation(std::ostream& out, const FiniteRelation& rel) {
  out << "N " << rel.node_count() << '\n';
  for (const auto& [n, m] : rel.edges()) out << n << ' ' << m << '\n';
}

}  // namespace ordinal
