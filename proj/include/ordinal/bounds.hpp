#pragma once

// Auxiliary ordinal functions used for bounding: the natural sum, base-2
// exponentiation and its tower, the bound function F(β, α), the iterates
// γ_n = g^n(0), and the fundamental sequences of the derivative g′.
//
// Throughout, g is the top term function φ_{K-1} of a structure with K >= 1,
// and g′ = φ_K is given by the generators: g′(c_j) = Gen(j), so for X = omega
// g′(m) = Gen(m) for every natural m.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordinal/error.hpp"
#include "ordinal/random.hpp"
#include "ordinal/report.hpp"
#include "ordinal/term.hpp"
#include "ordinal/text.hpp"

namespace ordinal {

/// A structure with K >= 1, so that g = φ_{K-1} and g′ generators exist.
class BoundContext {
 public:
  explicit BoundContext(StructureDescriptor sd) : sd_(std::move(sd)) {
    if (sd_.levels == 0) {
      throw Error(ErrorKind::structure_mismatch, "bound functions need K >= 1");
    }
  }

  const StructureDescriptor& structure() const noexcept { return sd_; }
  std::size_t g_level() const noexcept { return sd_.levels - 1; }

  Term g(const Term& t) const { return detail::apply_phi(g_level(), t); }
  Term omega_pow(const Term& t) const { return detail::apply_phi(0, t); }
  Term one() const { return ordinal::one(sd_); }

  /// g′(index) as a term.
  Term g_prime(std::size_t index) const { return generator(index, sd_); }

 private:
  StructureDescriptor sd_;
};

/// Hessenberg sum: merge of the two atom lists into one non-increasing list.
inline Term natural_sum(const Term& s, const Term& t, const StructureDescriptor& sd) {
  require_member(s, sd);
  require_member(t, sd);
  std::vector<Atom> atoms;
  atoms.reserve(s.size() + t.size());
  auto lhs = s.atoms(), rhs = t.atoms();
  std::size_t i = 0, j = 0;
  while (i < lhs.size() || j < rhs.size()) {
    if (j == rhs.size() || (i < lhs.size() && detail::compare_atoms(lhs[i], rhs[j]) >= 0)) {
      atoms.push_back(lhs[i++]);
    } else {
      atoms.push_back(rhs[j++]);
    }
  }
  return Term::raw(std::move(atoms));
}

namespace detail {

constexpr std::size_t kMaxPower2Finite = 20;

inline Term repeat(const Term& atom, std::uint64_t times) {
  std::vector<Atom> atoms(static_cast<std::size_t>(times), atom.head());
  return Term::raw(std::move(atoms));
}

}  // namespace detail

/// 2^t. Writing t = ω·μ + n with n finite, 2^t = ω^μ · 2^n; μ is obtained
/// atom by atom (ω^a = ω·ω^(-1+a)).
inline Term power2(const Term& t, const StructureDescriptor& sd) {
  if (sd.levels == 0) {
    throw Error(ErrorKind::unsupported_exponent, "base-2 exponentiation needs the function w^x (K >= 1)");
  }
  require_member(t, sd);
  const Term unit = one(sd);
  auto atoms = t.atoms();
  std::size_t finite = 0;
  while (finite < atoms.size() && atoms[atoms.size() - 1 - finite] == unit.head()) ++finite;
  if (finite > detail::kMaxPower2Finite) {
    throw Error(ErrorKind::unsupported_exponent,
                "finite part " + std::to_string(finite) + " of exponent is too large");
  }
  Term mu;
  for (std::size_t i = 0; i + finite < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    // Atoms above level 0 and generators are epsilon numbers: ω^ε = ε and -1+ε = ε.
    Term piece = a.is_phi() && a.level() == 0
                     ? detail::apply_phi(0, subtract(unit, a.arg(), sd))
                     : Term(a);
    mu = detail::add(mu, piece);
  }
  return detail::repeat(detail::apply_phi(0, mu), std::uint64_t{1} << finite);
}

/// 2_0(t) = t, 2_{p+1}(t) = 2^(2_p(t)).
inline Term tower(std::size_t p, const Term& t, const StructureDescriptor& sd) {
  require_member(t, sd);
  Term result = t;
  for (std::size_t i = 0; i < p; ++i) result = power2(result, sd);
  return result;
}

/// γ_0 = 0, γ_{n+1} = g(γ_n).
inline Term gamma_iterate(std::size_t n, const BoundContext& ctx) {
  Term result;
  for (std::size_t i = 0; i < n; ++i) result = ctx.g(result);
  return result;
}

/// The n-th member of the fundamental sequence of g′(c):
/// g^n(0) for c = 0, g^n(g′(c-1) + 1) otherwise.
inline Term fund_seq_gprime(std::size_t c_index, std::size_t n, const BoundContext& ctx) {
  const auto& sd = ctx.structure();
  if (!sd.has_gen(c_index)) {
    throw Error(ErrorKind::invalid_index, "g'(" + std::to_string(c_index) + ") outside the structure");
  }
  Term result = c_index == 0 ? Term() : detail::add(ctx.g_prime(c_index - 1), ctx.one());
  for (std::size_t i = 0; i < n; ++i) result = ctx.g(result);
  return result;
}

/// α = ω·q + k with q, k finite, or nothing when α has any other shape.
struct OmegaMultiple {
  std::size_t q = 0;
  std::size_t k = 0;
};

inline std::optional<OmegaMultiple> decompose_omega_multiple(const Term& alpha,
                                                             const StructureDescriptor& sd) {
  if (sd.levels == 0) return std::nullopt;
  const Term unit = one(sd);
  const Atom omega = Atom::phi(0, unit);
  OmegaMultiple out;
  for (const Atom& a : alpha.atoms()) {
    if (a == omega && out.k == 0) {
      ++out.q;
    } else if (a == unit.head()) {
      ++out.k;
    } else {
      return std::nullopt;
    }
  }
  return out;
}

namespace detail {

// F(β, ω·q + k) for β below the closed-form threshold when q > 0.
inline Term f_bound(const Term& beta, std::size_t q, std::size_t k, const BoundContext& ctx) {
  if (k == 0) {
    if (q == 0) return ctx.omega_pow(add(ctx.one(), beta));  // ω^{1+β}
    Term closed = ctx.g_prime(q - 1);                          // F(β, ω(1+α)) = g′(α)
    if (compare_terms(beta, closed) >= 0) {
      throw Error(ErrorKind::unsupported_bound,
                  "beta " + render(beta) + " is not below " + render(closed));
    }
    return closed;
  }
  // F(β, α+1) = F(x + 1 + β, α) + x + 1 with x = g(ω^{2(F(β,α)+β)+1}).
  const Term previous = f_bound(beta, q, k - 1, ctx);
  const Term base = add(previous, beta);
  const Term x = ctx.g(ctx.omega_pow(add(add(base, base), ctx.one())));
  const Term x_plus_one = add(x, ctx.one());
  const Term shifted = add(x_plus_one, beta);
  return add(f_bound(shifted, q, k - 1, ctx), x_plus_one);
}

}  // namespace detail

/// The bound function F(β, α) for α of the form ω·q + k (q, k finite).
/// Limit stages are evaluated through the closed form F(β, ω(1+a)) = g′(a),
/// which requires β < g′(q-1).
inline Term f_bound(const Term& beta, const Term& alpha, const BoundContext& ctx) {
  const auto& sd = ctx.structure();
  require_member(beta, sd);
  require_member(alpha, sd);
  auto shape = decompose_omega_multiple(alpha, sd);
  if (!shape) {
    throw Error(ErrorKind::unsupported_exponent, "alpha " + render(alpha) + " is not of the form w*q+k");
  }
  if (shape->q > 0 && !sd.has_gen(shape->q - 1)) {
    throw Error(ErrorKind::unsupported_bound,
                "g'(" + std::to_string(shape->q - 1) + ") is not a generator of the structure");
  }
  return detail::f_bound(beta, shape->q, shape->k, ctx);
}

/// Monotonicity and closure properties of F, plus the γ_n and fundamental
/// sequence ladders, on random arguments.
inline Report check_bound_properties(const BoundContext& ctx, std::size_t sample_count,
                                     std::uint64_t seed, std::size_t max_finite_alpha = 2) {
  const auto& sd = ctx.structure();
  Report r{"bounds K=" + std::to_string(sd.levels) + " X=" + to_string(sd.order)};
  Rng rng(seed);
  TermShape shape;
  shape.max_atoms = 2;
  shape.max_depth = 2;
  TermSampler draw(sd, shape);
  const std::size_t gen_span = sd.order.is_omega() ? 4 : sd.order.size() + 1;

  for (std::size_t i = 0; i < sample_count; ++i) {
    // γ < β ⇒ F(γ, α) <= F(β, α), over generator-free arguments and finite α.
    const Term b1 = draw.below_generator(rng, 0), b2 = draw.below_generator(rng, 0);
    const std::size_t a_fin = rng.below(max_finite_alpha + 1);
    const Term alpha = numeral(a_fin, sd);
    const Term& lo = compare(b1, b2, sd) <= 0 ? b1 : b2;
    const Term& hi = compare(b1, b2, sd) <= 0 ? b2 : b1;
    const Term f_lo = f_bound(lo, alpha, ctx), f_hi = f_bound(hi, alpha, ctx);
    r.expect(compare(f_lo, f_hi, sd) <= 0, [&] {
      return "F weakly monotone in beta: " + render(lo) + " / " + render(hi) + " at " + render(alpha);
    });

    // γ < α ⇒ F(β, γ) < F(β, α).
    if (a_fin > 0) {
      const Term gamma = numeral(rng.below(a_fin), sd);
      r.expect(compare(f_bound(hi, gamma, ctx), f_hi, sd) < 0, [&] {
        return "F strictly monotone in alpha: " + render(hi) + " at " + render(gamma) + " / " +
               render(alpha);
      });
    }

    // β < g′(a), γ < ω(1+a) finite ⇒ F(β, γ) < g′(a).
    const std::size_t a_index = rng.below(gen_span);
    const Term beta = draw.below_generator(rng, a_index);
    const Term gamma = numeral(rng.below(max_finite_alpha + 1), sd);
    r.expect(compare(f_bound(beta, gamma, ctx), ctx.g_prime(a_index), sd) < 0, [&] {
      return "F below g'(" + std::to_string(a_index) + "): " + render(beta) + " at " + render(gamma);
    });

    // The closed form at ω·(1+a).
    {
      const std::size_t q = a_index + 1;
      const Term limit = Term::raw(std::vector<Atom>(q, Atom::phi(0, one(sd))));
      r.expect(f_bound(beta, limit, ctx) == ctx.g_prime(a_index), [&] {
        return "F at w*" + std::to_string(q) + " is not g'(" + std::to_string(a_index) + ")";
      });
    }
  }

  // γ_n is strictly increasing and stays below g′(0).
  for (std::size_t n = 0; n < 6; ++n) {
    const Term now = gamma_iterate(n, ctx), next = gamma_iterate(n + 1, ctx);
    r.expect(compare(now, next, sd) < 0, [&] { return "gamma not increasing at " + std::to_string(n); });
    r.expect(compare(next, ctx.g_prime(0), sd) < 0, [&] { return "gamma reached g'(0) at " + std::to_string(n + 1); });
  }
  // Fundamental sequences climb strictly toward their generator.
  for (std::size_t c = 0; c < gen_span && c <= 3; ++c) {
    for (std::size_t n = 0; n <= 6; ++n) {
      const Term now = fund_seq_gprime(c, n, ctx);
      r.expect(compare(now, ctx.g_prime(c), sd) < 0, [&] {
        return "fundamental sequence of g'(" + std::to_string(c) + ") reached it at " + std::to_string(n);
      });
      if (n < 6) {
        r.expect(compare(now, fund_seq_gprime(c, n + 1, ctx), sd) < 0, [&] {
          return "fundamental sequence of g'(" + std::to_string(c) + ") not increasing at " + std::to_string(n);
        });
      }
    }
  }
  return r;
}

}  // namespace ordinal
