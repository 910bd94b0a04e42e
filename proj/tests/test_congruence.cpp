// agraph - edge structure of finite idempotent algebras

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "agraph/congruence.hpp"
#include "agraph/fixtures.hpp"
#include "oracles.hpp"

using namespace agraph;

namespace {
  Partition blocks(std::size_t n, std::vector<std::vector<std::size_t>> b) {
    return Partition::from_blocks(n, b);
  }

  std::set<std::vector<std::size_t>> ids(std::vector<Partition> const& ps) {
    std::set<std::vector<std::size_t>> out;
    for (auto const& p : ps) {
      out.insert(p.block_ids());
    }
    return out;
  }

  std::vector<bool> matrix(Tolerance const& t) {
    std::size_t const n = t.size();
    std::vector<bool> m(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        m[a * n + b] = t.related(a, b);
      }
    }
    return m;
  }

  // Coarser-or-equal test on block ids.
  bool refines(Partition const& fine, Partition const& coarse) {
    for (std::size_t x = 0; x < fine.size(); ++x) {
      for (std::size_t y = 0; y < fine.size(); ++y) {
        if (fine.related(x, y) && !coarse.related(x, y)) {
          return false;
        }
      }
    }
    return true;
  }
}  // namespace

TEST(Congruence, ChainExamples) {
  auto const s3 = fixtures::s3chain();
  EXPECT_TRUE(is_congruence(s3, blocks(3, {{0, 1}, {2}})));
  EXPECT_FALSE(is_congruence(s3, blocks(3, {{0, 2}, {1}})));
  EXPECT_TRUE(is_congruence(s3, Partition::equality(3)));
  EXPECT_THROW(is_congruence(s3, Partition::equality(2)), error);
}

TEST(Congruence, PrincipalExamples) {
  auto const s3 = fixtures::s3chain();
  EXPECT_EQ(principal_congruence(s3, 0, 1), blocks(3, {{0, 1}, {2}}));
  EXPECT_TRUE(principal_congruence(fixtures::z3a(), 0, 1).is_total());
  for (auto const& [name, make] : fixtures::registry()) {
    auto const a = make();
    EXPECT_TRUE(principal_congruence(a, 1, 1).is_equality()) << name;
  }
}

TEST(Congruence, AllCongruencesExamples) {
  auto const s3 = fixtures::s3chain();
  auto const cs = all_congruences(s3);
  EXPECT_EQ(ids(cs), ids({Partition::equality(3), blocks(3, {{0, 1}, {2}}),
                          blocks(3, {{1, 2}, {0}}), Partition::total(3)}));
  EXPECT_TRUE(cs.front().is_equality());
  EXPECT_TRUE(cs.back().is_total());
  EXPECT_EQ(ids(all_congruences(fixtures::z3a())),
            ids({Partition::equality(3), Partition::total(3)}));
  auto const one = Algebra("one", 1, {OpTable("b", 2, 1, {0})});
  EXPECT_EQ(all_congruences(one).size(), 1u);
}

TEST(Congruence, MaximalAndSimple) {
  EXPECT_EQ(ids(maximal_congruences(fixtures::s3chain())),
            ids({blocks(3, {{0, 1}, {2}}), blocks(3, {{1, 2}, {0}})}));
  EXPECT_EQ(ids(maximal_congruences(fixtures::z3a())), ids({Partition::equality(3)}));
  EXPECT_EQ(ids(maximal_congruences(fixtures::s2())), ids({Partition::equality(2)}));
  EXPECT_TRUE(is_simple(fixtures::z3a()));
  EXPECT_FALSE(is_simple(fixtures::s3chain()));
  EXPECT_FALSE(is_simple(Algebra("one", 1, {OpTable("b", 2, 1, {0})})));
}

TEST(Congruence, MatchesBruteForceOnGroupoids) {
  auto const all = oracle::groupoids3();
  for (std::size_t i = 0; i < all.size(); i += 3) {
    auto const& a = all[i];
    std::set<std::vector<std::size_t>> want;
    for (auto const& lab : oracle::congruences(a)) {
      want.insert(Partition(lab).block_ids());
    }
    auto const got = all_congruences(a);
    EXPECT_EQ(ids(got), want) << a.name();
    for (auto const& lab : oracle::partitions(3)) {
      EXPECT_EQ(is_congruence(a, Partition(lab)), want.count(Partition(lab).block_ids()) == 1);
    }
    // Cg(a,b) is the least congruence containing (a,b).
    for (elem_t x = 0; x < 3; ++x) {
      for (elem_t y = 0; y < 3; ++y) {
        auto const cg = principal_congruence(a, x, y);
        EXPECT_TRUE(cg.related(x, y));
        EXPECT_TRUE(want.count(cg.block_ids()));
        for (auto const& p : got) {
          if (p.related(x, y)) {
            EXPECT_TRUE(refines(cg, p)) << a.name();
          }
        }
      }
    }
    // Maximal congruences are exactly the coatoms.
    for (auto const& m : maximal_congruences(a)) {
      EXPECT_FALSE(m.is_total());
      for (auto const& p : got) {
        if (!p.is_total() && refines(m, p)) {
          EXPECT_EQ(p, m);
        }
      }
    }
  }
}

TEST(Congruence, SizeGuard) {
  std::vector<elem_t> v(13 * 13);
  for (std::size_t x = 0; x < 13; ++x) {
    for (std::size_t y = 0; y < 13; ++y) {
      v[x * 13 + y] = static_cast<elem_t>(x);
    }
  }
  Algebra big("big", 13, {OpTable("p", 2, 13, v)});
  EXPECT_THROW(all_congruences(big), error);
}

TEST(Tolerance, ClassesExamples) {
  EXPECT_EQ(tolerance_classes(Tolerance::equality(3)),
            (std::vector<std::vector<elem_t>>{{0}, {1}, {2}}));
  EXPECT_EQ(tolerance_classes(Tolerance::total(3)),
            (std::vector<std::vector<elem_t>>{{0, 1, 2}}));
  auto const s3 = fixtures::s3chain();
  auto const t  = Tolerance::from_pairs(3, {{0, 1}, {1, 2}});
  EXPECT_TRUE(is_compatible(s3, t));
  auto const cls = tolerance_classes(t);
  EXPECT_EQ(cls, (std::vector<std::vector<elem_t>>{{0, 1}, {1, 2}}));
  for (auto const& c : cls) {
    EXPECT_TRUE(is_class_subuniverse(s3, c));
  }
  EXPECT_TRUE(is_connected_tolerance(s3, t));
  EXPECT_TRUE(is_connected_tolerance(s3, Tolerance::total(3)));
  EXPECT_FALSE(is_connected_tolerance(s3, Tolerance::equality(3)));
}

TEST(Tolerance, LinkToleranceExamples) {
  auto const s2 = fixtures::s2();
  auto const r  = generate_subuniverse(s2, 2, {{0, 0}, {0, 1}, {1, 1}});
  ASSERT_EQ(r.size(), 3u);
  EXPECT_TRUE(link_tolerance(s2, r, 1).is_total());
  auto const diag = generate_subuniverse(fixtures::rps(), 2, {{0, 0}, {1, 1}, {2, 2}});
  EXPECT_TRUE(link_tolerance(fixtures::rps(), diag, 0).is_equality());
  std::vector<TupleVec> square;
  for (auto const& t : oracle::all_tuples(3, 2)) {
    square.push_back(t);
  }
  auto const full = generate_subuniverse(fixtures::rps(), 2, square);
  EXPECT_TRUE(link_tolerance(fixtures::rps(), full, 0).is_total());
  EXPECT_THROW(link_tolerance(s2, r, 2), error);
  auto const capped = generate_subuniverse(fixtures::z3a(), 3, {{0, 1, 2}, {1, 2, 0}, {0, 0, 1}},
                                           ClosureBudget{4, {}});
  EXPECT_THROW(link_tolerance(fixtures::z3a(), capped, 0), error);
  auto const narrow = generate_subuniverse(s2, 2, {{1, 0}, {1, 1}});
  EXPECT_THROW(link_tolerance(s2, narrow, 0), error);
}

TEST(Tolerance, AllTolerancesMatchBruteForce) {
  auto const all = oracle::groupoids3();
  for (std::size_t i = 0; i < all.size(); i += 5) {
    auto const& a = all[i];
    std::set<std::vector<bool>> want;
    for (auto const& r : oracle::tolerances(a)) {
      want.insert(r);
    }
    std::set<std::vector<bool>> got;
    for (auto const& t : all_tolerances(a)) {
      got.insert(matrix(t));
      EXPECT_TRUE(t.is_reflexive() && t.is_symmetric());
    }
    EXPECT_EQ(got, want) << a.name();
  }
}

TEST(Tolerance, ClassesMatchBruteForceCliques) {
  std::mt19937 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t const n = 1 + rng() % 6;
    Tolerance         t(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (rng() % 2) {
          t.add(a, b);
        }
      }
    }
    EXPECT_EQ(tolerance_classes(t), oracle::maximal_cliques(matrix(t), n)) << t.to_string();
  }
}

// Every class of a tolerance is a subuniverse and the transitive closure is a
// congruence, on a sample of groupoids and on random 4-element algebras.
TEST(Tolerance, ClassesAreSubuniversesAndClosureIsCongruence) {
  auto algebras = oracle::groupoids3();
  std::mt19937 rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    algebras.push_back(oracle::random_algebra(rng, 4, {2}));
  }
  for (auto const& a : algebras) {
    for (auto const& t : all_tolerances(a)) {
      EXPECT_TRUE(is_congruence(a, t.transitive_closure())) << a.name();
      for (auto const& c : tolerance_classes(t)) {
        EXPECT_TRUE(is_class_subuniverse(a, c)) << a.name() << " " << t.to_string();
        EXPECT_TRUE(oracle::closed(a, c));
      }
    }
  }
}

TEST(Tolerance, LinkTolerancesAreCompatible) {
  auto const all = oracle::groupoids3();
  for (std::size_t i = 0; i < all.size(); i += 11) {
    auto const& a = all[i];
    for (auto const& extra : oracle::all_tuples(3, 2)) {
      std::vector<TupleVec> gens{{0, 0}, {1, 1}, {2, 2}, extra};
      auto const r = generate_subuniverse(a, 2, gens);
      for (std::size_t c = 0; c < 2; ++c) {
        auto const t = link_tolerance(a, r, c);
        EXPECT_TRUE(t.is_reflexive() && t.is_symmetric());
        EXPECT_TRUE(oracle::compatible(a, matrix(t))) << a.name();
      }
    }
  }
}
