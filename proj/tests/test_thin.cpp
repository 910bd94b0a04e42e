// agraph - edge structure of finite idempotent algebras

#include <gtest/gtest.h>

#include "agraph/fixtures.hpp"
#include "agraph/thin.hpp"
#include "conditions.hpp"
#include "oracles.hpp"

using namespace agraph;

namespace {
  using oracle::Tuple;

  bool is_term_operation(Algebra const& alg, OpTable const& op) {
    auto const rows = oracle::all_tuples(alg.size(), op.arity());
    std::vector<TupleVec> cols(op.arity(), TupleVec(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
      for (std::size_t i = 0; i < op.arity(); ++i) {
        cols[i][j] = rows[j][i];
      }
    }
    auto const su = generate_subuniverse(alg, rows.size(), cols);
    return member_with_witness(su, TupleVec(op.values())).found();
  }

  void check_thin_arc(Algebra const& alg, ThinEdge const& t, ThinAnalysis const& an) {
    if (t.kind == EdgeType::semilattice) {
      EXPECT_EQ(an.good.f(t.from, t.to), t.to);
      EXPECT_EQ(an.good.f(t.to, t.from), t.to);
      return;
    }
    ASSERT_TRUE(t.witness) << alg.name();
    auto const w = [&](Tuple x) { return oracle::eval(alg, *t.witness, x); };
    elem_t const a = t.from, b = t.to;
    if (t.kind == EdgeType::majority) {
      EXPECT_EQ(w({a, b, b}), b);
      EXPECT_EQ(w({b, a, b}), b);
      EXPECT_EQ(w({b, b, a}), b);
      EXPECT_EQ(an.ops.g(a, b, b), b);
    } else {
      EXPECT_EQ(w({b, a, a}), b);
      EXPECT_EQ(w({a, a, b}), b);
      EXPECT_EQ(an.ops.h(b, a, a), b);
    }
    // b is in Sg{a, c} for every c of the class of b.
    for (auto const& blk : t.theta) {
      if (std::find(blk.begin(), blk.end(), b) == blk.end()) {
        continue;
      }
      for (auto c : blk) {
        auto const s = oracle::generated(alg, {a, c});
        EXPECT_TRUE(std::find(s.begin(), s.end(), b) != s.end()) << alg.name();
      }
    }
  }

  void check_analysis(Algebra const& alg, ThinAnalysis const& an) {
    ASSERT_TRUE(an.ops.satisfied()) << alg.name();
    for (auto const& e : an.graph.pairs()) {
      EXPECT_EQ(oracle::edge_condition_failure(e, an.ops.f, an.ops.g, an.ops.h), "")
          << alg.name() << " " << unsigned(e.a) << unsigned(e.b);
      EXPECT_EQ(oracle::edge_condition_failure(e, an.good.f, an.ops.g, an.ops.h), "")
          << alg.name() << " good f";
    }
    std::size_t const n = alg.size();
    for (elem_t x = 0; x < n; ++x) {
      for (elem_t y = 0; y < n; ++y) {
        auto const& f = an.ops.f;
        auto const& g = an.ops.g;
        auto const& h = an.ops.h;
        EXPECT_EQ(f(x, f(x, y)), f(x, y)) << alg.name();
        EXPECT_EQ(g(x, g(x, y, y), g(x, y, y)), g(x, y, y)) << alg.name();
        EXPECT_EQ(h(h(x, y, y), y, y), h(x, y, y)) << alg.name();
        auto const& fp = an.good.f;
        elem_t const c = fp(x, y);
        EXPECT_TRUE(c == x || (fp(x, c) == c && fp(c, x) == c)) << alg.name();
      }
    }
    EXPECT_TRUE(an.good.verified) << alg.name();
    for (auto const& t : an.thin.arcs) {
      check_thin_arc(alg, t, an);
    }
  }

  std::vector<std::pair<elem_t, elem_t>> arcs(ThinEdges const& t, EdgeType k) {
    std::vector<std::pair<elem_t, elem_t>> out;
    for (auto const& e : t.arcs) {
      if (e.kind == k) {
        out.emplace_back(e.from, e.to);
      }
    }
    return out;
  }

  ThinEdge first_arc(Algebra const& alg, EdgeType k) {
    auto const an = thin_analysis(alg);
    for (auto const& e : an.thin.arcs) {
      if (e.kind == k) {
        return e;
      }
    }
    throw std::runtime_error("no thin arc in " + alg.name());
  }
}  // namespace

TEST(Synth, SingleEdgeFixtures) {
  auto const s2 = thin_analysis(fixtures::s2());
  EXPECT_EQ(s2.ops.f.values(), (std::vector<elem_t>{0, 1, 1, 1}));
  for (auto const& x : oracle::all_tuples(2, 3)) {
    elem_t const join = x[0] | x[1] | x[2];
    EXPECT_EQ(s2.ops.g(x[0], x[1], x[2]), join);
    EXPECT_EQ(s2.ops.h(x[0], x[1], x[2]), join);
  }
  auto const m2 = thin_analysis(fixtures::m2());
  auto const a2 = thin_analysis(fixtures::a2());
  for (auto const& x : oracle::all_tuples(2, 3)) {
    EXPECT_EQ(m2.ops.g(x[0], x[1], x[2]), x[0] + x[1] + x[2] >= 2 ? 1 : 0);
    EXPECT_EQ(m2.ops.h(x[0], x[1], x[2]), x[0]);
    EXPECT_EQ(a2.ops.g(x[0], x[1], x[2]), x[0]);
    EXPECT_EQ(a2.ops.h(x[0], x[1], x[2]), x[0] ^ x[1] ^ x[2]);
  }
  for (auto const& x : oracle::all_tuples(2, 2)) {
    EXPECT_EQ(m2.ops.f(x[0], x[1]), x[0]);
    EXPECT_EQ(a2.ops.f(x[0], x[1]), x[0]);
  }
}

TEST(Synth, FixturesSatisfyEveryCondition) {
  for (auto const& [name, make] : fixtures::registry()) {
    if (name == "P2") {
      continue;
    }
    auto const alg = make();
    auto const an  = thin_analysis(alg);
    check_analysis(alg, an);
    EXPECT_TRUE(is_term_operation(alg, an.ops.f)) << name;
    EXPECT_TRUE(is_term_operation(alg, an.ops.g)) << name;
    EXPECT_TRUE(is_term_operation(alg, an.ops.h)) << name;
  }
}

TEST(Synth, EnforceLeavesIdempotentOpsAlone) {
  auto const an  = thin_analysis(fixtures::a2());
  auto const raw = synth_unified(fixtures::a2(), edge_graph(fixtures::a2()));
  auto const enf = enforce_identities(raw, fixtures::a2());
  EXPECT_TRUE(enf.h.same_table(raw.h));
  auto const s = synth_unified(fixtures::s2(), edge_graph(fixtures::s2()));
  EXPECT_TRUE(enforce_identities(s, fixtures::s2()).f.same_table(s.f));
}

TEST(Synth, EnforceSquaresAPeriodTwoMap) {
  // f(0, -) swaps 1 and 2, so f(0, f(0, 1)) = 1 != f(0, 1).
  std::vector<elem_t> v{0, 2, 1, 1, 1, 1, 2, 2, 2};
  UnifiedOps ops;
  ops.f = OpTable("f", 2, 3, v);
  ops.g = OpTable::projection("g", 3, 3, 0);
  ops.h = OpTable::projection("h", 3, 3, 0);
  EXPECT_TRUE(identity_violation(ops.f, ops.g, ops.h));
  auto const out = enforce_identities(ops, fixtures::rps());
  EXPECT_FALSE(identity_violation(out.f, out.g, out.h));
  EXPECT_EQ(out.f(0, 1), 1);
  EXPECT_EQ(out.f(0, 2), 2);
}

TEST(Good, Examples) {
  auto const s2 = thin_analysis(fixtures::s2());
  EXPECT_EQ(s2.good.f.values(), (std::vector<elem_t>{0, 1, 1, 1}));
  auto const m2 = thin_analysis(fixtures::m2());
  EXPECT_EQ(m2.good.f.values(), (std::vector<elem_t>{0, 0, 1, 1}));
  EXPECT_TRUE(m2.good.verified);
  auto const rps = thin_analysis(fixtures::rps());
  EXPECT_TRUE(rps.good.verified);
  EXPECT_FALSE(good_violation(rps.good.f));
}

TEST(ThinArcs, SemilatticeExamples) {
  using P = std::vector<std::pair<elem_t, elem_t>>;
  EXPECT_EQ(arcs(thin_analysis(fixtures::s2()).thin, EdgeType::semilattice), (P{{0, 1}}));
  EXPECT_EQ(arcs(thin_analysis(fixtures::m2()).thin, EdgeType::semilattice), P{});
  EXPECT_EQ(arcs(thin_analysis(fixtures::rps()).thin, EdgeType::semilattice),
            (P{{0, 1}, {1, 2}, {2, 0}}));
  EXPECT_EQ(arcs(thin_analysis(fixtures::s3chain()).thin, EdgeType::semilattice),
            (P{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(ThinArcs, MajorityAndAffineExamples) {
  auto const m2 = thin_analysis(fixtures::m2());
  auto const e  = m2.graph.pair(0, 1);
  auto const up = find_thin_majority(fixtures::m2(), e, m2.ops.g, 0);
  ASSERT_EQ(up.status, Answer::yes);
  EXPECT_EQ(up.edge->to, 1);
  auto const down = find_thin_majority(fixtures::m2(), e, m2.ops.g, 1);
  ASSERT_EQ(down.status, Answer::yes);
  EXPECT_EQ(down.edge->to, 0);
  for (auto const& x : oracle::all_tuples(2, 3)) {
    EXPECT_EQ(up.edge->witness_table->operator()(x), x[0] + x[1] + x[2] >= 2 ? 1 : 0);
  }

  auto const a2 = thin_analysis(fixtures::a2());
  EXPECT_EQ(find_thin_majority(fixtures::a2(), a2.graph.pair(0, 1), a2.ops.g, 0).status,
            Answer::no);
  auto const af = find_thin_affine(fixtures::a2(), a2.graph.pair(0, 1), a2.ops.h, 0);
  ASSERT_EQ(af.status, Answer::yes);
  EXPECT_EQ(af.edge->to, 1);
  EXPECT_EQ((*af.edge->witness_table)(1, 0, 0), 1);
  EXPECT_EQ((*af.edge->witness_table)(0, 0, 1), 1);

  auto const z = thin_analysis(fixtures::z3a());
  auto const zf = find_thin_affine(fixtures::z3a(), z.graph.pair(0, 1), z.ops.h, 0);
  ASSERT_EQ(zf.status, Answer::yes);
  EXPECT_EQ(zf.edge->to, 1);
  auto const s2 = thin_analysis(fixtures::s2());
  EXPECT_EQ(find_thin_affine(fixtures::s2(), s2.graph.pair(0, 1), s2.ops.h, 0).status,
            Answer::no);
}

TEST(ThinArcs, GroupoidSample) {
  auto const all = oracle::groupoids3();
  std::size_t checked = 0;
  for (std::size_t i = 0; i < all.size(); i += 5) {
    if (has_siggers_term(all[i]).answer != Answer::yes) {
      continue;
    }
    auto const an = thin_analysis(all[i]);
    check_analysis(all[i], an);
    EXPECT_TRUE(thick_to_thin_failures(an.graph, an.good.f).empty()) << all[i].name();
    ++checked;
  }
  EXPECT_GT(checked, 40u);
}

TEST(Cross, MajorityTriple) {
  auto const m2 = fixtures::m2_bt();
  auto const up = first_arc(m2, EdgeType::majority);
  auto const w  = witness_majority_triple(m2, up, m2, up, m2, up);
  ASSERT_EQ(w.status, Answer::yes);
  for (auto const& x : oracle::all_tuples(2, 3)) {
    EXPECT_EQ(oracle::eval(m2, *w.term, x), x[0] + x[1] + x[2] >= 2 ? 1 : 0);
  }
  ThinEdge down = up;
  std::swap(down.from, down.to);
  auto const mixed = witness_majority_triple(m2, up, m2, down, m2, up);
  ASSERT_EQ(mixed.status, Answer::yes);
  EXPECT_EQ(oracle::eval(m2, *mixed.term, {up.from, up.to, up.to}), up.to);
  EXPECT_EQ(oracle::eval(m2, *mixed.term, {down.to, down.from, down.to}), down.to);
  EXPECT_EQ(oracle::eval(m2, *mixed.term, {up.to, up.to, up.from}), up.to);
}

TEST(Cross, MixedLemmas) {
  auto const s2 = fixtures::s2_bt(), m2 = fixtures::m2_bt(), a2 = fixtures::a2_bt();
  auto const z3 = fixtures::z3a_bt();
  auto const es = first_arc(s2, EdgeType::semilattice);
  auto const em = first_arc(m2, EdgeType::majority);
  auto const ea = first_arc(a2, EdgeType::affine);
  auto const ez = first_arc(z3, EdgeType::affine);

  auto const ms = witness_mixed(CrossLemma::majority_semilattice, m2, em, s2, es);
  ASSERT_EQ(ms.status, Answer::yes);
  EXPECT_EQ(oracle::eval(m2, *ms.term, {em.from, em.to}), em.to);
  EXPECT_EQ(oracle::eval(s2, *ms.term, {es.to, es.from}), es.to);

  auto const as = witness_mixed(CrossLemma::affine_semilattice, a2, ea, s2, es);
  ASSERT_EQ(as.status, Answer::yes);
  EXPECT_EQ(oracle::eval(a2, *as.term, {ea.to, ea.from}), ea.to);
  EXPECT_EQ(oracle::eval(s2, *as.term, {es.from, es.to}), es.to);

  auto const am = witness_mixed(CrossLemma::affine_majority, z3, ez, m2, em);
  ASSERT_EQ(am.status, Answer::yes);
  EXPECT_EQ(oracle::eval(z3, *am.term, {ez.to, ez.from}), ez.to);
  EXPECT_EQ(oracle::eval(m2, *am.term, {em.from, em.to}), em.to);

  auto const aa = witness_mixed(CrossLemma::affine_affine, a2, ea, z3, ez);
  ASSERT_EQ(aa.status, Answer::yes);
  EXPECT_EQ(oracle::eval(a2, *aa.term, {ea.to, ea.from, ea.from}), ea.to);
  EXPECT_EQ(oracle::eval(z3, *aa.term, {ez.from, ez.from, ez.to}), ez.to);

  EXPECT_THROW(witness_mixed(CrossLemma::affine_semilattice, s2, es, a2, ea), error);
  EXPECT_THROW(witness_mixed(CrossLemma::majority_triple, m2, em, m2, em), error);
  EXPECT_THROW(witness_mixed(CrossLemma::majority_semilattice, m2, em, fixtures::s2(),
                             first_arc(fixtures::s2(), EdgeType::semilattice)),
               error);
}
