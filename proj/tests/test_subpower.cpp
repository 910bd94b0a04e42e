// agraph - edge structure of finite idempotent algebras

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "agraph/fixtures.hpp"
#include "agraph/subpower.hpp"
#include "oracles.hpp"

using namespace agraph;

namespace {
  std::set<TupleVec> elements(SubUniverse const& su) {
    std::set<TupleVec> out;
    for (std::size_t i = 0; i < su.size(); ++i) {
      out.insert(su.element_vec(i));
    }
    return out;
  }

  std::set<std::vector<elem_t>> tables(TermSlice const& s) {
    std::set<std::vector<elem_t>> out;
    for (auto const& op : s.ops) {
      out.insert(op.values());
    }
    return out;
  }
}  // namespace

TEST(Closure, SemilatticePairExample) {
  auto const su = generate_subuniverse(fixtures::s2(), 2, {{0, 1}, {1, 0}});
  EXPECT_TRUE(su.complete());
  EXPECT_EQ(elements(su), (std::set<TupleVec>{{0, 1}, {1, 0}, {1, 1}}));
  EXPECT_TRUE(member_with_witness(su, TupleVec{1, 1}).found());
  EXPECT_EQ(member_with_witness(su, TupleVec{0, 0}).status, Membership::absent);
}

TEST(Closure, ConstantTupleStaysAlone) {
  for (auto const& [name, make] : fixtures::registry()) {
    auto const a  = make();
    auto const su = generate_subuniverse(a, 3, {{1, 1, 1}});
    EXPECT_EQ(su.size(), 1u) << name;
  }
}

TEST(Closure, AffineGeneratesEverything) {
  auto const su = generate_subuniverse(fixtures::z3a(), 1, {{0}, {1}});
  EXPECT_EQ(elements(su), (std::set<TupleVec>{{0}, {1}, {2}}));
}

TEST(Closure, InvalidInput) {
  EXPECT_THROW(generate_subuniverse(fixtures::s2(), 2, {{0, 1, 1}}), error);
  EXPECT_THROW(generate_subuniverse(fixtures::s2(), 2, {}), error);
  auto const su = generate_subuniverse(fixtures::s2(), 2, {{0, 1}});
  EXPECT_THROW(member_with_witness(su, TupleVec{0}), error);
  EXPECT_THROW(extract_term(su, 5), error);
}

TEST(Closure, CapGivesUnknown) {
  auto const su = generate_subuniverse(fixtures::z3a(), 3, {{0, 1, 2}, {1, 2, 0}, {0, 0, 1}},
                                       ClosureBudget{4, {}});
  EXPECT_EQ(su.status(), ClosureStatus::capped);
  bool saw_unknown = false;
  for (auto const& t : oracle::all_tuples(3, 3)) {
    auto const m = member_with_witness(su, t);
    EXPECT_NE(m.status, Membership::absent);
    saw_unknown = saw_unknown || m.status == Membership::unknown;
  }
  EXPECT_TRUE(saw_unknown);
}

TEST(Closure, MatchesNaiveFixpointOnRandomInstances) {
  std::mt19937 rng(2024);
  for (int rep = 0; rep < 120; ++rep) {
    std::size_t const n = 2 + rng() % 2;
    std::size_t const k = 1 + rng() % 3;
    std::vector<std::size_t> arities{2};
    if (rng() % 2) {
      arities = {3};
    }
    if (rng() % 3 == 0) {
      arities = {2, 3};
    }
    auto const alg = oracle::random_algebra(rng, n, arities);
    std::vector<TupleVec> gens;
    for (std::size_t g = 0; g < 1 + rng() % 3; ++g) {
      TupleVec t(k);
      for (auto& v : t) {
        v = static_cast<elem_t>(rng() % n);
      }
      gens.push_back(t);
    }
    auto const su   = generate_subuniverse(alg, k, gens);
    auto const want = oracle::closure(alg, gens);
    ASSERT_TRUE(su.complete());
    EXPECT_EQ(elements(su), *want);
  }
}

TEST(Closure, MonotoneAndDeterministic) {
  std::mt19937 rng(5);
  for (int rep = 0; rep < 30; ++rep) {
    auto const alg = oracle::random_algebra(rng, 3, {2});
    std::vector<TupleVec> gens{{0, 1}, {1, 2}};
    auto const a = generate_subuniverse(alg, 2, gens);
    auto const b = generate_subuniverse(alg, 2, gens);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a.element_vec(i), b.element_vec(i));
    }
    gens.push_back({2, 0});
    auto const c  = generate_subuniverse(alg, 2, gens);
    auto const ec = elements(c);
    for (auto const& t : elements(a)) {
      EXPECT_TRUE(ec.count(t));
    }
  }
}

TEST(Terms, ExtractedTermsReevaluate) {
  std::mt19937 rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    auto const alg = oracle::random_algebra(rng, 3, {2, 3});
    std::vector<TupleVec> gens{{0, 1, 2}, {1, 1, 0}, {2, 0, 0}};
    auto const su = generate_subuniverse(alg, 3, gens);
    for (std::size_t i = 0; i < su.size(); ++i) {
      auto const t = extract_term(su, i);
      for (std::size_t j = 0; j < 3; ++j) {
        oracle::Tuple x{gens[0][j], gens[1][j], gens[2][j]};
        EXPECT_EQ(oracle::eval(alg, t, x), su.element(i)[j]);
      }
    }
  }
}

TEST(Terms, GeneratorIsVariable) {
  auto const su = generate_subuniverse(fixtures::s2(), 2, {{0, 1}, {1, 0}});
  auto const t  = extract_term(su, 1);
  ASSERT_TRUE(t.is_variable());
  EXPECT_EQ(t.var(), 1u);
  auto const j = extract_term(su, *su.find(TupleVec{1, 1}));
  EXPECT_EQ(j.to_string(), "(join x0 x1)");
}

TEST(Slices, Examples) {
  auto const m2 = term_slice(fixtures::m2(), 2);
  EXPECT_EQ(tables(m2), (std::set<std::vector<elem_t>>{{0, 0, 1, 1}, {0, 1, 0, 1}}));
  auto const s2 = term_slice(fixtures::s2(), 2);
  EXPECT_EQ(tables(s2),
            (std::set<std::vector<elem_t>>{{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 1}}));
  auto const a2 = term_slice(fixtures::a2(), 3);
  EXPECT_EQ(a2.ops.size(), 4u);
  auto xor3 = OpTable::from_function("x", 3, 2, [](auto x) {
    return static_cast<elem_t>(x[0] ^ x[1] ^ x[2]);
  });
  EXPECT_TRUE(tables(a2).count(xor3.values()));
  EXPECT_THROW(term_slice(fixtures::s2(), 4), error);
  EXPECT_THROW(term_slice(fixtures::s2(), 0), error);
}

TEST(Slices, MatchExhaustiveCompositionOnGroupoids) {
  auto const all = oracle::groupoids3();
  for (std::size_t i = 0; i < all.size(); i += 13) {
    auto const got  = term_slice(all[i], 2);
    auto const want = oracle::term_slice(all[i], 2);
    ASSERT_TRUE(got.complete());
    std::set<oracle::Tuple> g;
    for (auto const& op : got.ops) {
      g.insert(op.values());
    }
    EXPECT_EQ(g, *want) << all[i].name();
  }
}

TEST(Search, GoalStopsAtFirstHit) {
  auto const r = search_term_target(fixtures::s2(), 2, {{0, 1}, {1, 0}}, {1, 1});
  ASSERT_TRUE(r.term);
  EXPECT_EQ(r.membership(), Membership::found);
  auto const none = search_term_target(fixtures::s2(), 2, {{0, 1}, {1, 0}}, {0, 0});
  EXPECT_EQ(none.membership(), Membership::absent);
}

TEST(Search, EquivalenceConstraint) {
  // On the chain, a term with t(0,2) and t(2,0) in one class of {0,1}|{2}.
  std::vector<std::size_t> labels{0, 0, 1};
  Goal g;
  g.require_equivalent(0, 1, labels);
  g.require_in(0, std::vector<elem_t>{0, 1});
  auto const r = search_term(fixtures::s3chain(), 2, {{0, 2}, {2, 0}}, g);
  EXPECT_EQ(r.membership(), Membership::absent);
  Goal h;
  h.require_equivalent(0, 1, labels);
  auto const s = search_term(fixtures::s3chain(), 2, {{0, 2}, {2, 0}}, h);
  ASSERT_TRUE(s.term);
  EXPECT_EQ((*s.values)[0], 2);
  EXPECT_EQ((*s.values)[1], 2);
}
