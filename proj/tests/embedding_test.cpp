#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ordinal/embedding.hpp"

namespace ordinal {
namespace {

const StructureDescriptor k1{1, LinearOrder::omega()};

// Independent rank oracle: the number of nodes on the longest ≺-chain ending at n.
std::vector<std::size_t> longest_chain(const FiniteRelation& rel) {
  std::vector<std::size_t> memo(rel.node_count(), 0);
  std::function<std::size_t(std::size_t)> depth = [&](std::size_t n) {
    if (memo[n] != 0) return memo[n];
    std::size_t best = 0;
    for (const auto& [a, b] : rel.edges()) {
      if (b == n) best = std::max(best, depth(a));
    }
    return memo[n] = best + 1;
  };
  for (std::size_t n = 0; n < rel.node_count(); ++n) depth(n);
  return memo;
}

// Independent f oracle: enumerate every chain m_0 ≺* ... ≺* m with earlier
// elements numerically below m, keep the descending exponent list of the
// natural sum, and take the lexicographic maximum (a proper prefix is smaller).
Term chain_max(const FiniteRelation& rel, const std::vector<std::size_t>& beta, std::size_t m) {
  std::vector<std::size_t> best;
  std::vector<std::size_t> exps{beta[m]};
  std::function<void(std::size_t)> walk = [&](std::size_t current) {
    auto sorted = exps;
    std::sort(sorted.rbegin(), sorted.rend());
    if (std::lexicographical_compare(best.begin(), best.end(), sorted.begin(), sorted.end())) best = sorted;
    for (std::size_t p = 0; p < m; ++p) {
      if (!rel.precedes(p, current)) continue;
      exps.push_back(beta[p]);
      walk(p);
      exps.pop_back();
    }
  };
  walk(m);
  std::string text;
  for (std::size_t e : best) text += (text.empty() ? "" : "+") + ("w^" + std::to_string(e));
  return parse_expr(text, k1);
}

FiniteRelation rel_of(std::size_t n, std::set<Edge> edges) { return FiniteRelation(n, std::move(edges)); }

TEST(Derivation, CanonicalBounds) {
  const auto chain = rel_of(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(build_derivation(chain, 0)->bound, 1u);
  EXPECT_EQ(build_derivation(chain, 1)->bound, 2u);
  EXPECT_EQ(build_derivation(chain, 2)->bound, 3u);
  const auto d = build_derivation(chain, 2);
  EXPECT_EQ(d->context, (NodeSet{2}));
  ASSERT_EQ(d->premises.size(), 2u);
  ASSERT_NE(d->premise_for(1), nullptr);
  EXPECT_EQ(d->premise_for(1)->context, (NodeSet{1, 2}));
  EXPECT_EQ(d->premise_for(2), nullptr);
  EXPECT_TRUE(validate_derivation(chain, *d).ok());
}

TEST(Derivation, Errors) {
  try {
    build_derivation(rel_of(2, {{0, 1}, {1, 0}}), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_well_founded);
  }
  EXPECT_THROW(build_derivation(rel_of(2, {}), 2), Error);
}

TEST(Derivation, BoundsMatchLongestChain) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto rel = random_dag(rng, 1 + rng.below(7), 40);
    auto depth = longest_chain(rel);
    for (std::size_t n = 0; n < rel.node_count(); ++n) {
      auto d = build_derivation(rel, n);
      ASSERT_EQ(d->bound, depth[n]);
      ASSERT_TRUE(validate_derivation(rel, *d).ok());
    }
  }
}

TEST(Derivation, ValidatorRejectsBrokenTrees) {
  const auto chain = rel_of(2, {{0, 1}});
  auto good = build_derivation(chain, 1);
  auto no_premise = std::make_shared<Derivation>(*good);
  no_premise->premises.clear();
  EXPECT_FALSE(validate_derivation(chain, *no_premise).ok());
  auto flat = std::make_shared<Derivation>(*good);
  flat->bound = 1;
  EXPECT_FALSE(validate_derivation(chain, *flat).ok());
}

TEST(Extraction, AntichainStartsEveryNodeAfresh) {
  auto state = extract_ranks(rel_of(3, {}));
  EXPECT_EQ(state.alpha, 1u);
  for (const auto& node : state.nodes) {
    EXPECT_EQ(node.rank, 1u);
    EXPECT_FALSE(node.via.has_value());
  }
}

TEST(Extraction, IncreasingChainIsAllFirstCase) {
  const auto rel = rel_of(2, {{0, 1}});
  auto state = extract_ranks(rel);
  EXPECT_EQ(state.alpha, 2u);
  ASSERT_EQ(state.nodes.size(), 2u);
  EXPECT_FALSE(state.nodes[0].via.has_value());
  EXPECT_FALSE(state.nodes[1].via.has_value());
  EXPECT_EQ(state.nodes[0].rank, 2u);
  EXPECT_EQ(state.nodes[1].rank, 2u);
  EXPECT_EQ(state.nodes[0].witness->bound, 2u);
  EXPECT_TRUE(check_extraction_invariants(rel, state).ok());
}

TEST(Extraction, DecreasingPairUsesSecondCase) {
  const auto rel = rel_of(2, {{1, 0}});
  auto state = extract_ranks(rel);
  EXPECT_EQ(state.alpha, 2u);
  EXPECT_FALSE(state.nodes[0].via.has_value());
  ASSERT_TRUE(state.nodes[1].via.has_value());
  EXPECT_EQ(*state.nodes[1].via, 0u);
  EXPECT_EQ(state.nodes[1].rank, 1u);
  EXPECT_EQ(state.nodes[1].set, (NodeSet{0, 1}));
  EXPECT_TRUE(check_extraction_invariants(rel, state).ok());
}

TEST(Extraction, SecondCasePicksSmallestRank) {
  // 2 ≺ 1 ≺ 0 and 2 ≺ 0: node 2 may come from 0 (rank 3) or 1 (rank 2).
  const auto rel = rel_of(3, {{1, 0}, {2, 1}, {2, 0}});
  auto state = extract_ranks(rel);
  ASSERT_TRUE(state.nodes[2].via.has_value());
  EXPECT_EQ(*state.nodes[2].via, 1u);
  EXPECT_EQ(state.nodes[2].rank, 1u);
  EXPECT_EQ(state.nodes[2].set, (NodeSet{0, 1, 2}));
  EXPECT_TRUE(check_extraction_invariants(rel, state).ok());
}

TEST(Extraction, LowestInferenceSkipsRepetitions) {
  const auto rel = rel_of(2, {{0, 1}});
  auto inner = build_derivation(rel, 1);
  std::shared_ptr<const Derivation> padded = inner;
  for (std::size_t i = 0; i < 3; ++i) {
    auto rep = std::make_shared<Derivation>();
    rep->context = inner->context;
    rep->goal = inner->goal;
    rep->rule = Rule::rep;
    rep->bound = padded->bound + 1;
    rep->premises.push_back({0, padded});
    padded = rep;
  }
  EXPECT_EQ(padded->bound, 5u);
  EXPECT_TRUE(validate_derivation(rel, *padded).ok());
  EXPECT_EQ(&lowest_inference(*padded), inner.get());
  EXPECT_EQ(&lowest_inference(*inner), inner.get());
}

TEST(Embedding, ChainOfThree) {
  const auto rel = rel_of(3, {{0, 1}, {1, 2}});
  auto report = verify_embedding(rel, takeuti_embed(rel));
  EXPECT_EQ(report.alpha, 3u);
  EXPECT_EQ(report.beta, (std::vector<std::size_t>{3, 3, 3}));
  EXPECT_EQ(render(report.f[0]), "w^(3)");
  EXPECT_EQ(render(report.f[1]), "w^(3)+w^(3)");
  EXPECT_EQ(render(report.f[2]), "w^(3)+w^(3)+w^(3)");
  EXPECT_EQ(report.violations(), 0u);
  EXPECT_EQ(report.checks.size(), 5u);
}

TEST(Embedding, DecreasingPair) {
  const auto rel = rel_of(2, {{1, 0}});
  auto report = verify_embedding(rel, takeuti_embed(rel));
  EXPECT_EQ(render(report.f[0]), "w^(2)");
  EXPECT_EQ(render(report.f[1]), "w");
  EXPECT_EQ(report.violations(), 0u);
}

TEST(Embedding, NegativeControlDetectsBrokenMap) {
  const auto rel = rel_of(3, {{0, 1}, {1, 2}});
  auto report = takeuti_embed(rel);
  std::swap(report.f[0], report.f[2]);
  EXPECT_GT(verify_embedding(rel, report).violations(), 0u);

  auto too_big = takeuti_embed(rel);
  too_big.f[2] = embedding_bound(too_big.alpha);
  auto checked = verify_embedding(rel, too_big);
  EXPECT_EQ(checked.violations(), 1u);
  EXPECT_FALSE(checked.checks.back().ok);
}

TEST(Embedding, RejectsLargeAndCyclicInput) {
  try {
    takeuti_embed(rel_of(5, {}), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::instance_too_large);
  }
  try {
    takeuti_embed(rel_of(3, {{0, 1}, {1, 2}, {2, 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_well_founded);
  }
}

TEST(Embedding, WriterFormat) {
  const auto rel = rel_of(2, {{1, 0}});
  std::ostringstream out;
  write_embedding(out, verify_embedding(rel, takeuti_embed(rel)));
  EXPECT_EQ(out.str(),
            "alpha=2\n0 beta=2 f=w^(2)\n1 beta=1 f=w\ncheck edge 1<0: pass\n"
            "check bound 0: pass\ncheck bound 1: pass\nviolations: 0\n");
}

TEST(Embedding, RandomDagsAgainstOracles) {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    auto rel = random_dag(rng, 1 + rng.below(7), 15 + rng.below(60));
    auto report = takeuti_embed(rel);
    const auto depth = longest_chain(rel);
    ASSERT_EQ(report.alpha, *std::max_element(depth.begin(), depth.end()));
    const Term bound = parse_expr("w^" + std::to_string(report.alpha + 1), k1);
    for (std::size_t m = 0; m < rel.node_count(); ++m) {
      ASSERT_EQ(report.f[m], chain_max(rel, report.beta, m));
      ASSERT_TRUE(compare(report.f[m], bound, k1) < 0);
      for (std::size_t n = 0; n < m; ++n) {
        if (rel.precedes(m, n)) {
          ASSERT_LT(report.beta[m], report.beta[n]);
        }
      }
    }
    for (const auto& [n, m] : rel.edges()) {
      ASSERT_TRUE(compare(report.f[n], report.f[m], k1) < 0);
    }
  }
}

TEST(Embedding, SuitesAreClean) {
  auto exhaustive = check_all_small_embeddings(4);
  EXPECT_GT(exhaustive.checks, 0u);
  EXPECT_TRUE(exhaustive.ok()) << exhaustive.violations.front();
  auto random = check_random_embeddings(200, 3, 8);
  EXPECT_TRUE(random.ok()) << random.violations.front();
}

}  // namespace
}  // namespace ordinal
