#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "ordinal/bounds.hpp"

namespace ordinal {
namespace {

const StructureDescriptor k1{1, LinearOrder::omega()};
const StructureDescriptor k2{2, LinearOrder::omega()};

Term p(const char* text, const StructureDescriptor& sd = k1) { return parse_expr(text, sd); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::io;
}

// Maximum of the ordinary sums over every interleaving of the two atom lists.
Term interleaving_max(const Term& s, const Term& t, const StructureDescriptor& sd) {
  Term best;
  std::vector<Atom> picked;
  auto go = [&](auto& self, std::size_t i, std::size_t j) -> void {
    if (i == s.size() && j == t.size()) {
      Term total;
      for (const Atom& a : picked) total = add(total, Term(a), sd);
      if (compare(best, total, sd) < 0) best = total;
      return;
    }
    if (i < s.size()) {
      picked.push_back(s.atoms()[i]);
      self(self, i + 1, j);
      picked.pop_back();
    }
    if (j < t.size()) {
      picked.push_back(t.atoms()[j]);
      self(self, i, j + 1);
      picked.pop_back();
    }
  };
  go(go, 0, 0);
  return best;
}

TEST(NaturalSum, Examples) {
  EXPECT_EQ(natural_sum(p("w"), p("1"), k1), p("w+1"));
  EXPECT_EQ(natural_sum(p("1"), p("w"), k1), p("w+1"));
  EXPECT_EQ(natural_sum(Term(), p("w^2+g(1)"), k1), p("w^2+g(1)"));
}

TEST(NaturalSum, MatchesInterleavingOracleExhaustively) {
  const std::vector<Term> pool = {p("g(0)"), p("w^2"), p("w"), p("1")};
  std::vector<Term> terms;
  auto grow = [&](auto& self, std::vector<Atom> atoms, std::size_t from) -> void {
    terms.push_back(Term::raw(atoms));
    if (atoms.size() == 4) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      auto next = atoms;
      next.push_back(pool[i].head());
      self(self, next, i);
    }
  };
  grow(grow, {}, 0);
  ASSERT_EQ(terms.size(), 70u);
  for (const auto& s : terms) {
    for (const auto& t : terms) {
      const Term merged = natural_sum(s, t, k1);
      ASSERT_EQ(merged, interleaving_max(s, t, k1)) << render(s) << " # " << render(t);
      ASSERT_EQ(merged, natural_sum(t, s, k1));
      ASSERT_TRUE(compare(merged, add(s, t, k1), k1) >= 0);
    }
  }
}

TEST(NaturalSum, AssociativeAndStrictlyMonotone) {
  Rng rng(4);
  TermSampler draw(k2);
  for (int i = 0; i < 2000; ++i) {
    Term a = draw(rng), b = draw(rng), c = draw(rng);
    ASSERT_EQ(natural_sum(natural_sum(a, b, k2), c, k2), natural_sum(a, natural_sum(b, c, k2), k2));
    if (compare(a, b, k2) < 0) {
      ASSERT_TRUE(compare(natural_sum(a, c, k2), natural_sum(b, c, k2), k2) < 0);
      ASSERT_TRUE(compare(natural_sum(c, a, k2), natural_sum(c, b, k2), k2) < 0);
    }
  }
}

TEST(Power2, Examples) {
  EXPECT_EQ(power2(p("w"), k1), p("w"));
  EXPECT_EQ(power2(p("w+1"), k1), p("w+w"));
  EXPECT_EQ(power2(p("3"), k1), p("8"));
  EXPECT_EQ(power2(Term(), k1), p("1"));
  // 2^(ω^2) = ω^ω, 2^(ω·3+2) = ω^3·4, 2^ε = ε.
  EXPECT_EQ(power2(p("w^2"), k1), p("w^w"));
  EXPECT_EQ(power2(p("w+w+w+2"), k1), p("w^3+w^3+w^3+w^3"));
  EXPECT_EQ(power2(p("g(0)"), k1), p("g(0)"));
}

TEST(Power2, FiniteCasesMatchIntegers) {
  for (std::size_t n = 0; n <= 10; ++n) {
    EXPECT_EQ(power2(numeral(n, k1), k1), numeral(std::size_t{1} << n, k1)) << n;
  }
}

TEST(Power2, Errors) {
  const StructureDescriptor k0{0, LinearOrder::omega()};
  EXPECT_EQ(kind_of([&] { power2(Term(Atom::gen(0)), k0); }), ErrorKind::unsupported_exponent);
  EXPECT_EQ(kind_of([] { power2(numeral(21, k1), k1); }), ErrorKind::unsupported_exponent);
}

TEST(Tower, Examples) {
  Rng rng(6);
  TermSampler draw(k1);
  for (int i = 0; i < 100; ++i) {
    Term t = draw(rng);
    EXPECT_EQ(tower(0, t, k1), t);
  }
  EXPECT_EQ(tower(2, p("w"), k1), p("w"));
  EXPECT_EQ(tower(1, p("w+1"), k1), p("w+w"));
  EXPECT_EQ(tower(2, p("w+1"), k1), p("w^2"));
  EXPECT_EQ(tower(2, p("2"), k1), p("16"));
  EXPECT_EQ(tower(3, p("1"), k1), p("16"));
}

TEST(GammaIterate, Ladder) {
  const BoundContext ctx(k1);
  EXPECT_EQ(gamma_iterate(0, ctx), Term());
  EXPECT_EQ(gamma_iterate(1, ctx), p("1"));
  EXPECT_EQ(gamma_iterate(2, ctx), p("w"));
  EXPECT_EQ(gamma_iterate(3, ctx), p("w^w"));
  EXPECT_EQ(gamma_iterate(4, ctx), p("w^(w^w)"));
  for (std::size_t n = 0; n < 8; ++n) {
    EXPECT_TRUE(compare(gamma_iterate(n, ctx), gamma_iterate(n + 1, ctx), k1) < 0);
  }
  // With K = 2 the iterated function is φ_1.
  const BoundContext ctx2(k2);
  EXPECT_EQ(gamma_iterate(2, ctx2), p("phi(1,phi(1,0))", k2));
}

TEST(FundSeq, Examples) {
  const BoundContext ctx(k1);
  for (std::size_t n = 0; n < 5; ++n) EXPECT_EQ(fund_seq_gprime(0, n, ctx), gamma_iterate(n, ctx));
  EXPECT_EQ(fund_seq_gprime(1, 0, ctx), p("g(0)+1"));
  EXPECT_EQ(fund_seq_gprime(1, 1, ctx), p("w^(g(0)+1)"));
  for (std::size_t c = 0; c <= 3; ++c) {
    for (std::size_t n = 0; n <= 6; ++n) {
      EXPECT_TRUE(compare(fund_seq_gprime(c, n, ctx), Term(Atom::gen(c)), k1) < 0);
      EXPECT_TRUE(compare(fund_seq_gprime(c, n, ctx), fund_seq_gprime(c, n + 1, ctx), k1) < 0);
    }
  }
  const BoundContext small(StructureDescriptor{1, LinearOrder::finite(2)});
  EXPECT_EQ(kind_of([&] { fund_seq_gprime(3, 1, small); }), ErrorKind::invalid_index);
}

TEST(BoundContext, NeedsADerivative) {
  EXPECT_EQ(kind_of([] { BoundContext ctx(StructureDescriptor{0, LinearOrder::omega()}); }),
            ErrorKind::structure_mismatch);
}

TEST(FBound, Examples) {
  const BoundContext ctx(k1);
  EXPECT_EQ(f_bound(Term(), Term(), ctx), p("w"));
  EXPECT_EQ(f_bound(Term(), p("w"), ctx), Term(Atom::gen(0)));
  // Unfolding the successor clause once: x = ω^{ω^{ω·2+1}}, F(0,1) = ω^{x+1} + x + 1.
  EXPECT_EQ(f_bound(Term(), p("1"), ctx), p("w^(w^(w^(w+w+1))+1)+w^(w^(w+w+1))+1"));
}

TEST(FBound, ZeroClauseIsOmegaToOnePlusBeta) {
  // ω^{1+β}: a finite β = n gives ω^{n+1}; otherwise 1+β = β.
  const BoundContext ctx(k1);
  Rng rng(10);
  TermSampler draw(k1);
  for (int i = 0; i < 100; ++i) {
    Term beta = draw(rng);
    bool finite = std::all_of(beta.atoms().begin(), beta.atoms().end(),
                              [](const Atom& a) { return a.is_phi() && a.arg().is_zero(); });
    Term exponent = finite ? numeral(beta.size() + 1, k1) : beta;
    Term expected = exponent.is_atom() && (exponent.head().is_gen() || exponent.head().level() > 0)
                        ? exponent
                        : Term(Atom::phi(0, exponent));
    EXPECT_EQ(f_bound(beta, Term(), ctx), expected) << render(beta);
  }
}

TEST(FBound, ClosedFormAtLimits) {
  const BoundContext ctx(k1);
  EXPECT_EQ(f_bound(p("w^w"), p("w+w"), ctx), Term(Atom::gen(1)));
  EXPECT_EQ(f_bound(p("g(0)+5"), p("w+w"), ctx), Term(Atom::gen(1)));
  // One successor step past a limit shifts β beyond g′(0), where no closed form applies.
  EXPECT_EQ(kind_of([&] { f_bound(p("w"), p("w+1"), ctx); }), ErrorKind::unsupported_bound);
}

TEST(FBound, Errors) {
  const BoundContext ctx(k1);
  EXPECT_EQ(kind_of([&] { f_bound(p("g(0)"), p("w"), ctx); }), ErrorKind::unsupported_bound);
  EXPECT_EQ(kind_of([&] { f_bound(Term(), p("w^2"), ctx); }), ErrorKind::unsupported_exponent);
  EXPECT_EQ(kind_of([&] { f_bound(Term(), p("g(0)"), ctx); }), ErrorKind::unsupported_exponent);
  const BoundContext small(StructureDescriptor{1, LinearOrder::finite(1)});
  EXPECT_EQ(kind_of([&] { f_bound(Term(), parse_expr("w+w+w", small.structure()), small); }),
            ErrorKind::unsupported_bound);
}

TEST(FBound, PropertySuite) {
  for (const auto& sd : {k1, k2, StructureDescriptor{1, LinearOrder::finite(3)}}) {
    auto r = check_bound_properties(BoundContext(sd), 300, 12);
    EXPECT_TRUE(r.ok()) << r.suite << ": " << r.violations.front();
  }
}

}  // namespace
}  // namespace ordinal
