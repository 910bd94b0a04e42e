// agraph - edge structure of finite idempotent algebras

#include <gtest/gtest.h>

#include <set>

#include "agraph/fixtures.hpp"
#include "agraph/reduct.hpp"
#include "oracles.hpp"

using namespace agraph;

namespace {
  Reduct reduct_of(Algebra const& alg, elem_t a, elem_t b) {
    return build_reduct(alg, thick_edge_subset(classify_pair(alg, a, b)));
  }

  bool preserved(OpTable const& op, std::vector<elem_t> const& subset) {
    for (auto const& t : oracle::all_tuples(subset.size(), op.arity())) {
      oracle::Tuple args;
      for (auto i : t) {
        args.push_back(subset[i]);
      }
      auto const v = oracle::lookup(op, args);
      if (std::find(subset.begin(), subset.end(), v) == subset.end()) {
        return false;
      }
    }
    return true;
  }

  // Reduct ops are exactly the base binary and ternary term operations that
  // preserve the subset.
  void check_against_slices(Algebra const& alg, Reduct const& red) {
    ASSERT_TRUE(red.complete());
    std::set<std::vector<elem_t>> want2, want3, got2, got3;
    auto const s2 = oracle::term_slice(alg, 2, 5000);
    auto const s3 = oracle::term_slice(alg, 3, 5000);
    ASSERT_TRUE(s2 && s3);
    for (auto const& v : *s2) {
      OpTable op("x", 2, alg.size(), v);
      if (preserved(op, red.subset.elements)) {
        want2.insert(v);
      }
    }
    for (auto const& v : *s3) {
      OpTable op("x", 3, alg.size(), v);
      if (preserved(op, red.subset.elements)) {
        want3.insert(v);
      }
    }
    for (auto const& op : red.ops) {
      (op.arity() == 2 ? got2 : got3).insert(op.values());
    }
    EXPECT_EQ(got2, want2) << alg.name();
    EXPECT_EQ(got3, want3) << alg.name();
    // The generating subset spans the same ternary clone.
    auto const slice = term_slice(red.algebra(), 3);
    ASSERT_TRUE(slice.complete());
    std::set<std::vector<elem_t>> spanned;
    for (auto const& op : slice.ops) {
      spanned.insert(op.values());
    }
    EXPECT_EQ(spanned, want3) << alg.name();
  }
}  // namespace

TEST(ThickEdge, Examples) {
  EXPECT_EQ(thick_edge_subset(classify_pair(fixtures::s2(), 0, 1)).elements,
            (std::vector<elem_t>{0, 1}));
  EXPECT_EQ(thick_edge_subset(classify_pair(fixtures::s3chain(), 0, 2)).elements,
            (std::vector<elem_t>{0, 2}));
  auto const m = thick_edge_subset(classify_pair(fixtures::m2(), 0, 1));
  EXPECT_EQ(m.type, EdgeType::majority);
  EXPECT_THROW(thick_edge_subset(classify_pair(fixtures::a2(), 0, 1)), error);
  EXPECT_THROW(thick_edge_subset(classify_pair(fixtures::p2(), 0, 1)), error);
}

TEST(Reduct, WholeUniverseKeepsTheSlice) {
  for (auto const& alg : {fixtures::s2(), fixtures::m2()}) {
    auto const red = reduct_of(alg, 0, 1);
    check_against_slices(alg, red);
    EXPECT_EQ(red.ops.size(), term_slice(alg, 2).ops.size() + term_slice(alg, 3).ops.size());
  }
}

TEST(Reduct, ChainSubsetFilter) {
  auto const s3  = fixtures::s3chain();
  auto const red = reduct_of(s3, 0, 1);
  EXPECT_EQ(red.subset.elements, (std::vector<elem_t>{0, 1}));
  check_against_slices(s3, red);
  bool has_join = false;
  for (auto const& op : red.ops) {
    has_join = has_join || op.same_table(s3.op(0));
  }
  EXPECT_TRUE(has_join);
  auto const exported = red.full_algebra();
  EXPECT_EQ(exported.op(0).name(), "b0");
}

TEST(Reduct, RpsAndBtFamilies) {
  for (auto const& alg : {fixtures::rps(), fixtures::s2_bt(), fixtures::m2_bt()}) {
    for (elem_t a = 0; a < alg.size(); ++a) {
      for (elem_t b = a + 1; b < alg.size(); ++b) {
        auto const e = classify_pair(alg, a, b);
        if (!e.has(EdgeType::semilattice) && e.strict() != Strictness::majority) {
          continue;
        }
        auto const red = build_reduct(alg, thick_edge_subset(e));
        check_against_slices(alg, red);
        for (auto const& op : red.ops) {
          EXPECT_TRUE(preserved(op, red.subset.elements));
        }
      }
    }
  }
}

TEST(Reduct, SubuniversesShrink) {
  auto const s3  = fixtures::s3chain();
  auto const red = reduct_of(s3, 0, 1).algebra();
  for (auto const& gens : oracle::all_tuples(3, 2)) {
    auto const small = generated_subuniverse(red, {gens[0], gens[1]});
    auto const big   = generated_subuniverse(s3, {gens[0], gens[1]});
    EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
  }
}

TEST(Claims, Examples) {
  auto const s2 = verify_reduct_claims(fixtures::s2(), reduct_of(fixtures::s2(), 0, 1));
  EXPECT_EQ(s2.siggers, Verdict::pass);
  EXPECT_EQ(s2.s_claim, Verdict::pass);
  EXPECT_EQ(s2.sm_claim, Verdict::skipped);
  auto const m2 = verify_reduct_claims(fixtures::m2(), reduct_of(fixtures::m2(), 0, 1));
  EXPECT_EQ(m2.siggers, Verdict::pass);
  EXPECT_EQ(m2.sm_claim, Verdict::pass);
  EXPECT_FALSE(m2.any_fail());
  auto const rps = verify_reduct_claims(fixtures::rps(), reduct_of(fixtures::rps(), 0, 1));
  EXPECT_FALSE(rps.any_fail());
  EXPECT_FALSE(rps.any_unknown());
}

TEST(Claims, CappedReductIsUnknown) {
  auto const alg = fixtures::s3chain();
  auto const red = build_reduct(alg, thick_edge_subset(classify_pair(alg, 0, 1)),
                                ClosureBudget{2, {}});
  EXPECT_FALSE(red.complete());
  auto const rep = verify_reduct_claims(alg, red);
  EXPECT_EQ(rep.siggers, Verdict::unknown);
  EXPECT_EQ(rep.s_claim, Verdict::unknown);
  EXPECT_EQ(rep.sm_claim, Verdict::unknown);
  EXPECT_TRUE(rep.any_unknown());
}

TEST(Claims, ConnectivityHelpers) {
  EXPECT_EQ(s_connected(edge_graph(fixtures::s3chain())), Answer::yes);
  EXPECT_EQ(s_connected(edge_graph(fixtures::m2())), Answer::no);
  EXPECT_EQ(sm_connected(edge_graph(fixtures::m2())), Answer::yes);
  EXPECT_EQ(sm_connected(edge_graph(fixtures::a2())), Answer::no);
}
