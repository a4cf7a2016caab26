#pragma once

// The finite progressiveness calculus over a relation ≺ and the extraction of
// an order embedding from its derivations.
//
// A derivation proves 𝓔 ⊢^β Δ(𝓔) where Δ(𝓔) = {E(n) : n ∈ 𝓔}. Its only
// logical rule, applied to a main formula E(m) with m ∈ 𝓔, has one premise
//   𝓔 ∪ {n} ⊢^{β_0} Δ, E(n)     for every n ≺* m,  with β_0 < β.
// A repetition step (same sequent, smaller bound above) may pad the tree.
//
// From derivations {m} ⊢^α E(m) for every node, extraction assigns to each m
// a set 𝓔(m) and a rank β(m) <= α such that
//   𝓔(m) ⊆ {n : m ⪯* n, n <= m}  and  n < m, m ≺* n  ⇒  β(m) < β(n),
// and the map
//   f(m) = max { ω^β(m_0) # ... # ω^β(m_k) : m_0 ≺* ... ≺* m_k = m, m_i < m for i < k }
// satisfies n ≺ m ⇒ f(n) < f(m) and f(m) < ω^{α+1}.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ordinal/bounds.hpp"
#include "ordinal/error.hpp"
#include "ordinal/order.hpp"
#include "ordinal/random.hpp"
#include "ordinal/report.hpp"
#include "ordinal/term.hpp"
#include "ordinal/text.hpp"

namespace ordinal {

using NodeSet = std::set<std::size_t>;

enum class Rule { prg, rep };

struct Derivation;

struct Premise {
  /// The element n joined to the context (unused for repetition).
  std::size_t added = 0;
  std::shared_ptr<const Derivation> derivation;
};

struct Derivation {
  NodeSet context;
  NodeSet goal;
  Rule rule = Rule::prg;
  std::size_t main = 0;
  std::size_t bound = 0;
  std::vector<Premise> premises;

  /// The premise that joined `n`, if any.
  const Derivation* premise_for(std::size_t n) const {
    for (const auto& p : premises) {
      if (p.added == n) return p.derivation.get();
    }
    return nullptr;
  }
};

inline void require_well_founded(const FiniteRelation& rel) {
  if (!check_well_founded(rel)) {
    throw Error(ErrorKind::not_well_founded, "the transitive closure of the relation has a cycle");
  }
}

namespace detail {

inline std::shared_ptr<const Derivation> build_canonical(const FiniteRelation& rel, NodeSet context,
                                                         NodeSet goal, std::size_t main) {
  auto d = std::make_shared<Derivation>();
  d->rule = Rule::prg;
  d->main = main;
  std::size_t highest = 0;
  for (std::size_t n = 0; n < rel.node_count(); ++n) {
    if (!rel.precedes(n, main)) continue;
    NodeSet sub_context = context, sub_goal = goal;
    sub_context.insert(n);
    sub_goal.insert(n);
    auto sub = build_canonical(rel, std::move(sub_context), std::move(sub_goal), n);
    highest = std::max(highest, sub->bound);
    d->premises.push_back({n, std::move(sub)});
  }
  d->bound = highest + 1;
  d->context = std::move(context);
  d->goal = std::move(goal);
  return d;
}

}  // namespace detail

/// The canonical derivation of {n} ⊢ E(n): the rule is always applied to the
/// element joined last, and the bound is one more than the premises' maximum.
inline std::shared_ptr<const Derivation> build_derivation(const FiniteRelation& rel, std::size_t n) {
  if (n >= rel.node_count()) {
    throw Error(ErrorKind::invalid_index, "node " + std::to_string(n) + " outside the relation");
  }
  require_well_founded(rel);
  return detail::build_canonical(rel, {n}, {n}, n);
}

/// Structural check of a derivation against the rules, independent of how
/// it was built.
inline Report validate_derivation(const FiniteRelation& rel, const Derivation& root) {
  Report r{"derivation"};
  auto show = [](const NodeSet& s) {
    std::string out = "{";
    for (std::size_t n : s) out += (out.size() > 1 ? "," : "") + std::to_string(n);
    return out + "}";
  };
  auto visit = [&](auto& self, const Derivation& d) -> void {
    r.expect(std::includes(d.context.begin(), d.context.end(), d.goal.begin(), d.goal.end()),
             [&] { return "goal " + show(d.goal) + " not within context " + show(d.context); });
    r.expect(d.bound >= 1, [&] { return "bound 0 at " + show(d.context); });
    if (d.rule == Rule::rep) {
      r.expect(d.premises.size() == 1, [&] { return "repetition needs one premise"; });
      for (const auto& p : d.premises) {
        r.expect(p.derivation->context == d.context && p.derivation->goal == d.goal,
                 [&] { return "repetition changed the sequent"; });
        r.expect(p.derivation->bound < d.bound, [&] { return "repetition bound does not drop"; });
        self(self, *p.derivation);
      }
      return;
    }
    r.expect(d.context.contains(d.main),
             [&] { return "main " + std::to_string(d.main) + " outside context " + show(d.context); });
    r.expect(d.goal.contains(d.main), [&] { return "main formula missing from the goal"; });
    NodeSet expected;
    for (std::size_t n = 0; n < rel.node_count(); ++n) {
      if (rel.precedes(n, d.main)) expected.insert(n);
    }
    NodeSet present;
    for (const auto& p : d.premises) present.insert(p.added);
    r.expect(present == expected && present.size() == d.premises.size(),
             [&] { return "premises " + show(present) + " for main " + std::to_string(d.main); });
    for (const auto& p : d.premises) {
      NodeSet ctx = d.context, goal = d.goal;
      ctx.insert(p.added);
      goal.insert(p.added);
      r.expect(p.derivation->context == ctx && p.derivation->goal == goal,
               [&] { return "premise for " + std::to_string(p.added) + " has the wrong sequent"; });
      r.expect(p.derivation->bound < d.bound,
               [&] { return "premise bound does not drop below " + std::to_string(d.bound); });
      self(self, *p.derivation);
    }
  };
  visit(visit, root);
  return r;
}

/// The lowest logical inference: skip repetitions from the root upward.
inline const Derivation& lowest_inference(const Derivation& d) {
  const Derivation* at = &d;
  while (at->rule == Rule::rep) {
    if (at->premises.size() != 1) throw Error(ErrorKind::malformed_term, "repetition without one premise");
    at = at->premises.front().derivation.get();
  }
  return *at;
}

struct NodeRank {
  NodeSet set;       // 𝓔(m)
  std::size_t rank;  // β(m)
  std::shared_ptr<const Derivation> witness;  // 𝓔(m) ⊢^β(m) Δ(𝓔(m))
  /// The k of the second case, or nothing when the node started afresh.
  std::optional<std::size_t> via;
};

struct ExtractionState {
  std::size_t alpha = 0;
  std::vector<NodeRank> nodes;
};

/// Runs the rank recursion over m = 0, 1, ... using canonical derivations,
/// with α the largest canonical bound.
inline ExtractionState extract_ranks(const FiniteRelation& rel) {
  require_well_founded(rel);
  const std::size_t count = rel.node_count();
  ExtractionState state;
  std::vector<std::shared_ptr<const Derivation>> canonical(count);
  for (std::size_t m = 0; m < count; ++m) {
    canonical[m] = detail::build_canonical(rel, {m}, {m}, m);
    state.alpha = std::max(state.alpha, canonical[m]->bound);
  }

  for (std::size_t m = 0; m < count; ++m) {
    std::optional<std::size_t> pick;
    for (std::size_t n = 0; n < m; ++n) {
      if (rel.precedes(m, n) && (!pick || state.nodes[n].rank < state.nodes[*pick].rank)) pick = n;
    }
    if (!pick) {
      // Weakening: the same tree, read with the larger bound α at the root.
      auto weakened = std::make_shared<Derivation>(*canonical[m]);
      weakened->bound = state.alpha;
      state.nodes.push_back({{m}, state.alpha, std::move(weakened), std::nullopt});
      continue;
    }
    const NodeRank& from = state.nodes[*pick];
    const Derivation& inference = lowest_inference(*from.witness);
    if (!rel.precedes(m, inference.main)) {
      throw Error(ErrorKind::malformed_term, "main formula of the witness for " +
                                                 std::to_string(*pick) + " is not above " +
                                                 std::to_string(m));
    }
    const Derivation* branch = inference.premise_for(m);
    if (branch == nullptr) {
      throw Error(ErrorKind::malformed_term, "witness for " + std::to_string(*pick) +
                                                 " has no branch for " + std::to_string(m));
    }
    // Share ownership of the branch with the witness it came from.
    std::shared_ptr<const Derivation> owned;
    for (const auto& p : inference.premises) {
      if (p.derivation.get() == branch) owned = p.derivation;
    }
    NodeSet set = from.set;
    set.insert(m);
    state.nodes.push_back({std::move(set), branch->bound, std::move(owned), pick});
  }
  return state;
}

/// The two rank invariants, the witnesses' sequents, and well-formedness of
/// every witness.
inline Report check_extraction_invariants(const FiniteRelation& rel, const ExtractionState& state) {
  Report r{"extraction"};
  for (std::size_t m = 0; m < state.nodes.size(); ++m) {
    const NodeRank& node = state.nodes[m];
    r.expect(node.set.contains(m), [&] { return "node " + std::to_string(m) + " missing from its set"; });
    for (std::size_t n : node.set) {
      r.expect(n <= m && (n == m || rel.precedes(m, n)), [&] {
        return "set of " + std::to_string(m) + " contains " + std::to_string(n);
      });
    }
    for (std::size_t n = 0; n < m; ++n) {
      if (rel.precedes(m, n)) {
        r.expect(node.rank < state.nodes[n].rank, [&] {
          return "rank of " + std::to_string(m) + " not below rank of " + std::to_string(n);
        });
      }
    }
    r.expect(node.rank <= state.alpha, [&] { return "rank of " + std::to_string(m) + " exceeds alpha"; });
    r.expect(node.witness->context == node.set && node.witness->goal == node.set &&
                 node.witness->bound == node.rank,
             [&] { return "witness of " + std::to_string(m) + " proves the wrong sequent"; });
    r.merge(validate_derivation(rel, *node.witness));
  }
  return r;
}

struct EmbeddingCheck {
  std::string name;
  bool ok = true;
};

struct EmbeddingReport {
  std::size_t alpha = 0;
  std::vector<std::size_t> beta;
  /// f(m) in the base structure over omega, where Gen(b) = ω^b.
  std::vector<Term> base;
  /// f(m) in the exponential structure (K = 1 over omega).
  std::vector<Term> f;
  std::vector<EmbeddingCheck> checks;

  std::size_t violations() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(),
                                                  [](const auto& c) { return !c.ok; }));
  }
};

inline StructureDescriptor base_structure() { return {0, LinearOrder::omega()}; }
inline StructureDescriptor embedding_structure() { return {1, LinearOrder::omega()}; }

constexpr std::size_t kDefaultMaxNodes = 12;

/// Extraction followed by the chain maximum for every node.
inline EmbeddingReport takeuti_embed(const FiniteRelation& rel, std::size_t max_nodes = kDefaultMaxNodes) {
  if (rel.node_count() > max_nodes) {
    throw Error(ErrorKind::instance_too_large, std::to_string(rel.node_count()) + " nodes exceed the limit of " +
                                                   std::to_string(max_nodes));
  }
  const ExtractionState state = extract_ranks(rel);
  const StructureDescriptor base_sd = base_structure();
  const StructureDescriptor sd = embedding_structure();

  EmbeddingReport report;
  report.alpha = state.alpha;
  for (const auto& node : state.nodes) report.beta.push_back(node.rank);

  for (std::size_t m = 0; m < rel.node_count(); ++m) {
    Term best;
    // Chains are walked backwards from m; every earlier element is below m.
    auto walk = [&](auto& self, std::size_t current, const Term& sum) -> void {
      if (compare(best, sum, base_sd) < 0) best = sum;
      for (std::size_t p = 0; p < m; ++p) {
        if (rel.precedes(p, current)) {
          self(self, p, natural_sum(sum, Term(Atom::gen(report.beta[p])), base_sd));
        }
      }
    };
    walk(walk, m, Term(Atom::gen(report.beta[m])));
    report.base.push_back(best);
    report.f.push_back(lift_base(best, sd));
  }
  return report;
}

/// ω^{α+1}, the bound every f(m) must stay under.
inline Term embedding_bound(std::size_t alpha) {
  const StructureDescriptor sd = embedding_structure();
  return apply_phi(0, numeral(alpha + 1, sd), sd);
}

/// Appends one check per edge n ≺ m (f(n) < f(m)) and per node (f(m) < ω^{α+1}).
inline EmbeddingReport verify_embedding(const FiniteRelation& rel, EmbeddingReport report) {
  const StructureDescriptor sd = embedding_structure();
  for (const auto& [n, m] : rel.edges()) {
    bool ok = n < report.f.size() && m < report.f.size() && compare(report.f[n], report.f[m], sd) < 0;
    report.checks.push_back({"edge " + std::to_string(n) + "<" + std::to_string(m), ok});
  }
  const Term bound = embedding_bound(report.alpha);
  for (std::size_t m = 0; m < report.f.size(); ++m) {
    report.checks.push_back({"bound " + std::to_string(m), compare(report.f[m], bound, sd) < 0});
  }
  return report;
}

/// The text form of an embedding report: "alpha=<a>", a line per node, a
/// line per check, and the violation count.
inline void write_embedding(std::ostream& out, const EmbeddingReport& report) {
  out << "alpha=" << report.alpha << '\n';
  for (std::size_t m = 0; m < report.f.size(); ++m) {
    out << m << " beta=" << report.beta[m] << " f=" << render(report.f[m]) << '\n';
  }
  for (const auto& check : report.checks) {
    out << "check " << check.name << ": " << (check.ok ? "pass" : "FAIL") << '\n';
  }
  out << "violations: " << report.violations() << '\n';
}

/// Runs extraction, embedding and verification on one relation and folds
/// every finding into `r`, including the two dilations of the result: along
/// j ↦ 2j inside the base structure, and into the exponential structure.
inline void check_relation(const FiniteRelation& rel, Report& r) {
  const std::string tag = [&] {
    std::ostringstream s;
    s << "N=" << rel.node_count() << " edges";
    for (const auto& [n, m] : rel.edges()) s << ' ' << n << '<' << m;
    return s.str();
  }();
  const ExtractionState state = extract_ranks(rel);
  Report inv = check_extraction_invariants(rel, state);
  r.checks += inv.checks;
  for (const auto& v : inv.violations) r.violations.push_back(tag + ": " + v);

  const EmbeddingReport report = verify_embedding(rel, takeuti_embed(rel, std::numeric_limits<std::size_t>::max()));
  for (const auto& c : report.checks) {
    r.expect(c.ok, [&] { return tag + ": " + c.name; });
  }

  const StructureDescriptor base_sd = base_structure();
  const GeneratorMap doubling = GeneratorMap::scaled(report.alpha + 1, 2);
  for (const auto& [n, m] : rel.edges()) {
    const Term dn = dilate(report.base[n], doubling, base_sd, base_sd);
    const Term dm = dilate(report.base[m], doubling, base_sd, base_sd);
    r.expect(compare(dn, dm, base_sd) < 0, [&] { return tag + ": dilation broke edge " + std::to_string(n); });
    r.expect(compare(report.base[n], report.base[m], base_sd) < 0,
             [&] { return tag + ": base embedding broke edge " + std::to_string(n); });
  }
}

/// Random acyclic relations with up to `max_nodes` nodes.
inline Report check_random_embeddings(std::size_t sample_count, std::uint64_t seed, std::size_t max_nodes = 8) {
  Report r{"embedding random N<=" + std::to_string(max_nodes)};
  Rng rng(seed);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const std::size_t nodes = 1 + rng.below(max_nodes);
    const std::size_t density = 15 + rng.below(60);
    check_relation(random_dag(rng, nodes, density), r);
  }
  return r;
}

/// Every acyclic relation on at most `max_nodes` nodes.
inline Report check_all_small_embeddings(std::size_t max_nodes = 4) {
  Report r{"embedding exhaustive N<=" + std::to_string(max_nodes)};
  for (std::size_t nodes = 0; nodes <= max_nodes; ++nodes) {
    for (const auto& rel : all_relations(nodes)) {
      if (check_well_founded(rel)) check_relation(rel, r);
    }
  }
  return r;
}

}  // namespace ordinal
