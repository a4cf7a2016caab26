#pragma once

// Property suites over random terms: the order and arithmetic laws of an
// exponential term structure, and the extendibility conditions (suborder,
// indiscernibility, dilation).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ordinal/random.hpp"
#include "ordinal/report.hpp"
#include "ordinal/term.hpp"
#include "ordinal/text.hpp"

namespace ordinal {

namespace detail {

inline std::string show(const Term& t) { return render(t); }

inline std::string structure_name(const StructureDescriptor& sd) {
  return "K=" + std::to_string(sd.levels) + " X=" + to_string(sd.order);
}

/// ω^x in the structure: φ_0 when available, otherwise a generator atom
/// (only meaningful for numeral exponents at K = 0).
inline Term exp_atom(const Term& exponent, const StructureDescriptor& sd) {
  if (sd.levels > 0) return apply_phi(0, exponent, sd);
  return generator(exponent.size(), sd);
}

}  // namespace detail

inline Report check_structure_axioms(const StructureDescriptor& sd, std::size_t sample_count,
                                     std::uint64_t seed) {
  using detail::show;
  Report r{"structure-axioms " + detail::structure_name(sd)};
  Rng rng(seed);
  TermSampler draw(sd);
  const Term unit = one(sd);
  const Term zero;

  for (std::size_t i = 0; i < sample_count; ++i) {
    const Term a = draw(rng), b = draw(rng), c = draw(rng);
    const auto ab = compare(a, b, sd), ba = compare(b, a, sd);
    const auto bc = compare(b, c, sd), ac = compare(a, c, sd);

    r.expect(compare(a, a, sd) == 0, [&] { return "irreflexive: " + show(a); });
    r.expect(ab == (0 <=> ba), [&] { return "antisymmetry: " + show(a) + " vs " + show(b); });
    r.expect((ab == 0) == (a == b), [&] { return "equal iff identical: " + show(a) + " " + show(b); });
    if (ab <= 0 && bc <= 0) {
      r.expect(ac <= 0 && (ac == 0) == (ab == 0 && bc == 0), [&] {
        return "transitivity: " + show(a) + " " + show(b) + " " + show(c);
      });
    }

    // Zero is least; a+1 is the successor of a.
    r.expect(compare(zero, a, sd) <= 0, [&] { return "zero least: " + show(a); });
    const Term succ = add(a, unit, sd);
    r.expect(compare(a, succ, sd) < 0, [&] { return "successor above: " + show(a); });
    if (compare(a, b, sd) < 0) {
      r.expect(compare(succ, b, sd) <= 0, [&] { return "successor adjacent: " + show(a) + " " + show(b); });
    }

    // ω^α + ω^β = ω^β for α < β.
    {
      const Term x = sd.levels > 0 ? a : numeral(rng.below(4), sd);
      const Term y = sd.levels > 0 ? b : numeral(rng.below(4), sd);
      const Term ex = detail::exp_atom(x, sd), ey = detail::exp_atom(y, sd);
      if (compare(ex, ey, sd) < 0) {
        r.expect(add(ex, ey, sd) == ey, [&] { return "absorption: " + show(ex) + "+" + show(ey); });
      }
    }

    // Limits: β < λ implies β + 1 < λ.
    if (classify(b, sd) == TermClass::limit && compare(a, b, sd) < 0) {
      r.expect(compare(succ, b, sd) < 0, [&] { return "limit: " + show(a) + " below " + show(b); });
    }

    // Right strict, left weak monotonicity.
    if (ab < 0) {
      r.expect(compare(add(c, a, sd), add(c, b, sd), sd) < 0, [&] {
        return "right monotone: " + show(c) + " + " + show(a) + " / " + show(b);
      });
      r.expect(compare(add(a, c, sd), add(b, c, sd), sd) <= 0, [&] {
        return "left weak monotone: " + show(a) + " / " + show(b) + " + " + show(c);
      });
    }

    // Associativity, exactly.
    r.expect(add(add(a, b, sd), c, sd) == add(a, add(b, c, sd), sd), [&] {
      return "associativity: " + show(a) + " " + show(b) + " " + show(c);
    });

    // Subtraction: a <= b gives the least γ <= b with a + γ = b.
    {
      const Term& lo = ab <= 0 ? a : b;
      const Term& hi = ab <= 0 ? b : a;
      const Term gamma = subtract(lo, hi, sd);
      r.expect(add(lo, gamma, sd) == hi, [&] { return "subtract round trip: " + show(lo) + " " + show(hi); });
      r.expect(compare(gamma, hi, sd) <= 0, [&] { return "subtract bound: " + show(lo) + " " + show(hi); });
      if (compare(c, gamma, sd) < 0) {
        r.expect(add(lo, c, sd) != hi, [&] { return "subtract least: " + show(lo) + " " + show(hi); });
      }
    }

    // Comparison of sums is lexicographic in the atoms.
    {
      auto lhs = a.atoms(), rhs = b.atoms();
      std::size_t j = 0;
      while (j < lhs.size() && j < rhs.size() && lhs[j] == rhs[j]) ++j;
      std::strong_ordering expected = lhs.size() <=> rhs.size();
      if (j < lhs.size() && j < rhs.size()) expected = compare(Term(lhs[j]), Term(rhs[j]), sd);
      r.expect(ab == expected, [&] { return "lexicographic sums: " + show(a) + " " + show(b); });
    }

    // Every atom is additively closed.
    if (!c.is_zero()) {
      const Term atom(c.head());
      if (compare(a, atom, sd) < 0 && compare(b, atom, sd) < 0) {
        r.expect(compare(add(a, b, sd), atom, sd) < 0, [&] {
          return "additive closure: " + show(a) + "+" + show(b) + " vs " + show(atom);
        });
      }
    }

    for (std::size_t k = 0; k < sd.levels; ++k) {
      const Term pa = apply_phi(k, a, sd), pb = apply_phi(k, b, sd);
      if (ab < 0) {
        r.expect(compare(pa, pb, sd) < 0, [&] {
          return "phi monotone k=" + std::to_string(k) + ": " + show(a) + " " + show(b);
        });
      }
      // φ_k(a) = a exactly when a is a single atom above level k; otherwise φ_k(a) > a.
      const bool fixed = a.is_atom() && (a.head().is_gen() || a.head().level() > k);
      r.expect((compare(pa, a, sd) == 0) == fixed && compare(pa, a, sd) >= 0, [&] {
        return "fixed point law k=" + std::to_string(k) + ": " + show(a);
      });
    }

    // Suborder: over the prefix of X that a and b live in, the comparison is unchanged.
    {
      std::size_t support = std::max(max_generator(a).value_or(0), max_generator(b).value_or(0));
      StructureDescriptor small{sd.levels, sd.order.prefix(support)};
      r.expect(compare(a, b, small) == ab, [&] { return "suborder: " + show(a) + " " + show(b); });
    }

    // Continuity probe: the least generator above a term is fixed by its support.
    {
      std::optional<std::size_t> top = max_generator(a);
      std::size_t d = top ? *top + 1 : 0;
      if (sd.has_gen(d)) {
        r.expect(compare(a, generator(d, sd), sd) < 0, [&] {
          return "continuity: " + show(a) + " not below g(" + std::to_string(d) + ")";
        });
      }
    }
  }
  return r;
}

namespace detail {

inline std::vector<std::size_t> increasing_tuple(Rng& rng, std::size_t count, std::size_t max_index) {
  std::vector<std::size_t> pool(max_index);
  for (std::size_t i = 0; i < max_index; ++i) pool[i] = i + 1;
  rng.shuffle(pool);
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

inline GeneratorMap placeholder_map(const std::vector<std::size_t>& tuple) {
  std::map<std::size_t, std::size_t> table{{0, 0}};
  for (std::size_t i = 0; i < tuple.size(); ++i) table.emplace(i + 1, tuple[i]);
  return GeneratorMap(std::move(table));
}

}  // namespace detail

/// Instantiates a template over placeholders g(1) < ... < g(n) (g(0) stays
/// fixed) with an increasing tuple of generator indices.
inline Term instantiate(const Term& pattern, const std::vector<std::size_t>& tuple,
                        const StructureDescriptor& sd) {
  StructureDescriptor placeholders{sd.levels, LinearOrder::finite(tuple.size())};
  return dilate(pattern, detail::placeholder_map(tuple), placeholders, sd);
}

inline Report check_indiscernibility(const StructureDescriptor& sd, std::size_t sample_count,
                                     std::uint64_t seed) {
  Report r{"indiscernibility " + detail::structure_name(sd)};
  if (sample_count == 0) return r;
  const std::size_t available = sd.order.is_omega() ? 12 : sd.order.size();
  const std::size_t placeholders = std::min<std::size_t>(3, available / 2);
  if (placeholders == 0) {
    throw Error(ErrorKind::invalid_index, "input order too small for indiscernibility templates");
  }
  Rng rng(seed);
  StructureDescriptor pattern_sd{sd.levels, LinearOrder::finite(placeholders)};
  TermSampler draw(pattern_sd);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const Term alpha = draw(rng), beta = draw(rng);
    const auto first = detail::increasing_tuple(rng, placeholders, available);
    const auto second = detail::increasing_tuple(rng, placeholders, available);
    const auto lhs = compare(instantiate(alpha, first, sd), instantiate(beta, first, sd), sd);
    const auto rhs = compare(instantiate(alpha, second, sd), instantiate(beta, second, sd), sd);
    r.expect(lhs == rhs, [&] {
      return "template " + render(alpha) + " vs " + render(beta) + ": " + to_string(lhs) + " then " +
             to_string(rhs);
    });
  }
  return r;
}

/// Dilation along a random order-preserving map of X into a larger order:
/// the extension law on generators and preservation of comparisons.
inline Report check_dilation(const StructureDescriptor& sd, std::size_t sample_count,
                             std::uint64_t seed) {
  Report r{"dilation " + detail::structure_name(sd)};
  Rng rng(seed);
  const std::size_t domain = sd.order.is_omega() ? 6 : sd.order.size();
  const std::size_t codomain = 3 * domain + 3;
  StructureDescriptor source{sd.levels, LinearOrder::finite(domain)};
  StructureDescriptor target{sd.levels, LinearOrder::finite(codomain)};
  TermSampler draw(source);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const GeneratorMap f = detail::placeholder_map(detail::increasing_tuple(rng, domain, codomain));
    const Term s = draw(rng), t = draw(rng);
    const Term fs = dilate(s, f, source, target), ft = dilate(t, f, source, target);
    r.expect(compare(s, t, source) == compare(fs, ft, target), [&] {
      return "dilation changed " + render(s) + " vs " + render(t);
    });
    const std::size_t j = rng.below(domain + 1);
    r.expect(dilate(generator(j, source), f, source, target) == generator(f(j), target), [&] {
      return "extension law at g(" + std::to_string(j) + ")";
    });
  }
  return r;
}

}  // namespace ordinal
