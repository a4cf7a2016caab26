#pragma once

// Seeded generators for property suites: random terms of a structure and
// random acyclic relations.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "ordinal/order.hpp"
#include "ordinal/term.hpp"

namespace ordinal {

/// mt19937_64 with a portable bounded draw, so a seed yields the same stream
/// on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish draw from [0, bound).
  std::size_t below(std::size_t bound) { return bound == 0 ? 0 : engine_() % bound; }
  bool chance(std::size_t percent) { return below(100) < percent; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct TermShape {
  std::size_t max_atoms = 3;
  std::size_t max_depth = 3;
  /// Generators are drawn from [0, gen_limit) intersected with the order.
  std::size_t gen_limit = 6;
  /// Percent chance that an atom is a generator rather than a Phi.
  std::size_t gen_percent = 25;
};

/// Draws raw terms and normalizes them.
class TermSampler {
 public:
  TermSampler(StructureDescriptor sd, TermShape shape = {}) : sd_(std::move(sd)), shape_(shape) {
    gen_limit_ = shape_.gen_limit;
    if (!sd_.order.is_omega()) gen_limit_ = std::min(gen_limit_, sd_.order.size() + 1);
    gen_limit_ = std::max<std::size_t>(gen_limit_, 1);
  }

  const StructureDescriptor& structure() const noexcept { return sd_; }

  Term raw(Rng& rng) { return raw(rng, shape_.max_depth, gen_limit_); }

  Term operator()(Rng& rng) { return normalize(raw(rng), sd_); }

  /// A normal term mentioning only generators below `gen_bound` (none if 0).
  Term below_generator(Rng& rng, std::size_t gen_bound) {
    return normalize(raw(rng, shape_.max_depth, gen_bound), sd_);
  }

  Atom raw_atom(Rng& rng, std::size_t depth, std::size_t gen_bound) {
    bool want_gen = sd_.levels == 0 || depth == 0 || rng.chance(shape_.gen_percent);
    if (want_gen && gen_bound > 0) return Atom::gen(rng.below(gen_bound));
    if (sd_.levels == 0) return Atom::gen(0);
    std::size_t level = rng.below(sd_.levels);
    // Bias toward small arguments so terms stay readable.
    Term arg = depth == 0 || rng.chance(30) ? Term() : raw(rng, depth - 1, gen_bound);
    return Atom::phi(level, std::move(arg));
  }

 private:
  Term raw(Rng& rng, std::size_t depth, std::size_t gen_bound) {
    if (sd_.levels == 0 && gen_bound == 0) return Term();
    std::size_t count = rng.below(shape_.max_atoms + 1);
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < count; ++i) atoms.push_back(raw_atom(rng, depth, gen_bound));
    return Term::raw(std::move(atoms));
  }

  StructureDescriptor sd_;
  TermShape shape_;
  std::size_t gen_limit_ = 1;
};

/// A random acyclic relation: nodes are placed in a random topological order
/// and each forward pair becomes an edge with the given probability.
inline FiniteRelation random_dag(Rng& rng, std::size_t node_count, std::size_t edge_percent) {
  std::vector<std::size_t> order(node_count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  std::set<Edge> edges;
  for (std::size_t i = 0; i < node_count; ++i) {
    for (std::size_t j = i + 1; j < node_count; ++j) {
      if (rng.chance(edge_percent)) edges.emplace(order[i], order[j]);
    }
  }
  return FiniteRelation(node_count, std::move(edges));
}

/// Every relation on {0..n-1} without self loops (2^(n(n-1)) of them).
inline std::vector<FiniteRelation> all_relations(std::size_t node_count) {
  std::vector<Edge> pairs;
  for (std::size_t a = 0; a < node_count; ++a) {
    for (std::size_t b = 0; b < node_count; ++b) {
      if (a != b) pairs.emplace_back(a, b);
    }
  }
  std::vector<FiniteRelation> out;
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  out.reserve(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::set<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask >> i & 1) edges.insert(pairs[i]);
    }
    out.emplace_back(node_count, std::move(edges));
  }
  return out;
}

}  // namespace ordinal
