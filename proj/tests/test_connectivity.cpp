// agraph - edge structure of finite idempotent algebras

#include <gtest/gtest.h>

#include <random>

#include "agraph/connectivity.hpp"
#include "agraph/fixtures.hpp"
#include "oracles.hpp"

using namespace agraph;

namespace {
  OrientedThinGraph graph_of(Algebra const& alg, ArcFilter f) {
    return build_oriented_graph(alg, thin_analysis(alg).thin.arcs, f);
  }

  ThinEdge arc(elem_t a, elem_t b, EdgeType k = EdgeType::semilattice) {
    ThinEdge e;
    e.kind = k;
    e.from = a;
    e.to   = b;
    return e;
  }

  // Warshall closure of the arc relation, reflexive.
  std::vector<std::vector<bool>> reach(OrientedThinGraph const& g) {
    std::size_t const n = g.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t v = 0; v < n; ++v) {
      r[v][v] = true;
    }
    for (auto const& e : g.arcs()) {
      r[e.from][e.to] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (r[i][k] && r[k][j]) {
            r[i][j] = true;
          }
        }
      }
    }
    return r;
  }

  std::vector<elem_t> brute_max(OrientedThinGraph const& g) {
    auto const          r = reach(g);
    std::vector<elem_t> out;
    for (std::size_t v = 0; v < g.size(); ++v) {
      bool top = true;
      for (std::size_t w = 0; w < g.size(); ++w) {
        if (r[v][w] && !r[w][v]) {
          top = false;
        }
      }
      if (top) {
        out.push_back(static_cast<elem_t>(v));
      }
    }
    return out;
  }

  void check_path(OrientedThinGraph const& g, ThinPath const& p, elem_t a, elem_t b) {
    ASSERT_EQ(p.vertices.front(), a);
    ASSERT_EQ(p.vertices.back(), b);
    ASSERT_EQ(p.kinds.size() + 1, p.vertices.size());
    for (std::size_t i = 0; i < p.kinds.size(); ++i) {
      bool found = false;
      for (auto const& e : g.arcs()) {
        found = found
                || (e.from == p.vertices[i] && e.to == p.vertices[i + 1] && e.kind == p.kinds[i]);
      }
      EXPECT_TRUE(found) << p.to_string();
      EXPECT_TRUE(admits(g.filter(), p.kinds[i]));
    }
  }
}  // namespace

TEST(Graph, OrientedExamples) {
  auto const rps = graph_of(fixtures::rps(), ArcFilter::s);
  EXPECT_EQ(rps.arcs().size(), 3u);
  EXPECT_TRUE(rps.has_arc(0, 1) && rps.has_arc(1, 2) && rps.has_arc(2, 0));
  auto const m2 = graph_of(fixtures::m2(), ArcFilter::sm);
  EXPECT_TRUE(m2.has_arc(0, 1) && m2.has_arc(1, 0));
  EXPECT_TRUE(graph_of(fixtures::m2(), ArcFilter::as).arcs().empty());
  auto const a2 = graph_of(fixtures::a2(), ArcFilter::as);
  ASSERT_EQ(a2.arcs().size(), 2u);
  for (auto const& e : a2.arcs()) {
    EXPECT_EQ(e.kind, EdgeType::affine);
  }
  EXPECT_THROW(OrientedThinGraph(2, {arc(0, 2)}, ArcFilter::all), error);
  EXPECT_THROW(OrientedThinGraph(2, {arc(1, 1)}, ArcFilter::all), error);
}

TEST(Graph, ComponentExamples) {
  auto const rps = components(graph_of(fixtures::rps(), ArcFilter::s));
  ASSERT_EQ(rps.count(), 1u);
  EXPECT_EQ(rps.members[0], (std::vector<elem_t>{0, 1, 2}));
  auto const chain = components(graph_of(fixtures::s3chain(), ArcFilter::s));
  ASSERT_EQ(chain.count(), 3u);
  EXPECT_TRUE(chain.leq(chain.component[0], chain.component[1]));
  EXPECT_TRUE(chain.leq(chain.component[1], chain.component[2]));
  EXPECT_FALSE(chain.leq(chain.component[2], chain.component[0]));
  auto const p2 = components(graph_of(fixtures::p2(), ArcFilter::all));
  EXPECT_EQ(p2.count(), 2u);
  EXPECT_EQ(p2.maximal_components().size(), 2u);
}

TEST(Graph, MaxElementExamples) {
  EXPECT_EQ(max_elements(graph_of(fixtures::s3chain(), ArcFilter::s)), std::vector<elem_t>{2});
  EXPECT_EQ(max_elements(graph_of(fixtures::rps(), ArcFilter::s)),
            (std::vector<elem_t>{0, 1, 2}));
  EXPECT_EQ(max_elements(graph_of(fixtures::a2(), ArcFilter::as)), (std::vector<elem_t>{0, 1}));
}

TEST(Graph, PathExamples) {
  auto const chain = graph_of(fixtures::s3chain(), ArcFilter::s);
  auto const p     = path_query(chain, 0, 2);
  ASSERT_TRUE(p);
  check_path(chain, *p, 0, 2);
  EXPECT_FALSE(path_query(chain, 2, 0));
  EXPECT_EQ(path_query(chain, 1, 1)->length(), 0u);
  auto const m2 = graph_of(fixtures::m2(), ArcFilter::sm);
  auto const q  = path_query(m2, 0, 1);
  ASSERT_TRUE(q);
  EXPECT_EQ(q->kinds, std::vector<EdgeType>{EdgeType::majority});
  EXPECT_FALSE(path_query(graph_of(fixtures::p2(), ArcFilter::all), 0, 1));
  EXPECT_THROW(path_query(chain, 0, 3), error);
}

TEST(Graph, DepthExamples) {
  auto const d = depth_and_sdistance(graph_of(fixtures::s3chain(), ArcFilter::s));
  EXPECT_EQ(d.depth[2], std::optional<std::size_t>(0));
  EXPECT_EQ(d.distance[0][1], std::optional<std::size_t>(1));
  EXPECT_EQ(d.distance[0][2], std::optional<std::size_t>(1));
  EXPECT_FALSE(d.distance[2][0]);
  // Depth follows the definition: shortest s-distance to the top component.
  EXPECT_EQ(d.depth[0], std::optional<std::size_t>(1));
  EXPECT_EQ(d.depth[1], std::optional<std::size_t>(1));
  // Three vertices, an arc 0 -> 1 only: 2 is maximal, and so is 1.
  OrientedThinGraph g(3, {arc(0, 1)}, ArcFilter::s);
  auto const e = depth_and_sdistance(g);
  EXPECT_EQ(e.depth[0], std::optional<std::size_t>(1));
  EXPECT_EQ(e.depth[2], std::optional<std::size_t>(0));
  EXPECT_THROW(depth_and_sdistance(graph_of(fixtures::s2(), ArcFilter::all)), error);
}

TEST(Graph, AgreesWithWarshallOnRandomGraphs) {
  std::mt19937 rng(99);
  for (int rep = 0; rep < 300; ++rep) {
    std::size_t const     n = 1 + rng() % 7;
    std::vector<ThinEdge> arcs;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a != b && rng() % 4 == 0) {
          arcs.push_back(arc(static_cast<elem_t>(a), static_cast<elem_t>(b),
                             static_cast<EdgeType>(rng() % 3)));
        }
      }
    }
    for (auto f : {ArcFilter::s, ArcFilter::as, ArcFilter::sm, ArcFilter::all}) {
      OrientedThinGraph g(n, arcs, f);
      auto const        r  = reach(g);
      auto const        co = components(g);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          EXPECT_EQ(co.leq(co.component[a], co.component[b]), r[a][b]);
          EXPECT_EQ(co.component[a] == co.component[b], r[a][b] && r[b][a]);
          auto const p = path_query(g, static_cast<elem_t>(a), static_cast<elem_t>(b));
          EXPECT_EQ(p.has_value(), r[a][b]);
          if (p) {
            check_path(g, *p, static_cast<elem_t>(a), static_cast<elem_t>(b));
          }
        }
      }
      EXPECT_EQ(max_elements(g), brute_max(g));
    }
  }
}

TEST(Dot, Examples) {
  auto const dot = export_dot(graph_of(fixtures::rps(), ArcFilter::s));
  EXPECT_NE(dot.find("0 -> 1 [style=solid"), std::string::npos);
  EXPECT_NE(dot.find("1 -> 2 [style=solid"), std::string::npos);
  EXPECT_NE(dot.find("2 -> 0 [style=solid"), std::string::npos);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '>'), 3);
  EXPECT_EQ(export_dot(OrientedThinGraph(0, {}, ArcFilter::all)), "digraph thin {\n}\n");
  OrientedThinGraph mixed(3, {arc(0, 1, EdgeType::majority), arc(1, 2, EdgeType::affine)},
                          ArcFilter::all);
  auto const m = export_dot(mixed);
  EXPECT_NE(m.find("0 -> 1 [style=dashed"), std::string::npos);
  EXPECT_NE(m.find("1 -> 2 [style=dotted"), std::string::npos);
  EXPECT_EQ(export_dot(mixed), m);
}

TEST(AsConnectivity, Fixtures) {
  for (auto const& name : {"RPS", "A2", "M2", "S2", "S3chain", "Z3A"}) {
    auto const alg = fixtures::by_name(name);
    auto const rep = verify_as_connectivity(alg, thin_analysis(alg));
    EXPECT_TRUE(rep.pass()) << name;
  }
  auto const chain = verify_as_connectivity(fixtures::s3chain(), thin_analysis(fixtures::s3chain()));
  EXPECT_EQ(chain.maximal, std::vector<elem_t>{2});
}

TEST(AsConnectivity, GroupoidSample) {
  auto const all = oracle::groupoids3();
  for (std::size_t i = 0; i < all.size(); i += 3) {
    if (has_siggers_term(all[i]).answer != Answer::yes) {
      continue;
    }
    auto const an  = thin_analysis(all[i]);
    auto const rep = verify_as_connectivity(all[i], an);
    EXPECT_TRUE(rep.pass()) << all[i].name();
    auto const all_g = build_oriented_graph(all[i], an.thin.arcs, ArcFilter::all);
    auto const r     = reach(all_g);
    for (auto a : rep.maximal) {
      for (auto b : rep.maximal) {
        EXPECT_TRUE(r[a][b]) << all[i].name();
      }
    }
    EXPECT_EQ(rep.maximal, brute_max(build_oriented_graph(all[i], an.thin.arcs, ArcFilter::s)));
  }
}

TEST(GoingMaximal, Examples) {
  auto const z = fixtures::z3a();
  std::vector<TupleVec> square;
  for (auto const& t : oracle::all_tuples(3, 2)) {
    square.push_back(t);
  }
  auto const r  = generate_subuniverse(z, 2, square);
  auto const s  = graph_of(z, ArcFilter::s);
  auto const ok = verify_going_maximal(z, s, r, 0, 1);
  EXPECT_EQ(ok.status, CaseStatus::witness);
  EXPECT_EQ(ok.chain.front(), 0);
  auto const chain = fixtures::s3chain();
  auto const rc    = generate_subuniverse(chain, 2, {{0, 0}, {1, 1}, {2, 2}});
  EXPECT_EQ(verify_going_maximal(chain, graph_of(chain, ArcFilter::s), rc, 0, 2).status,
            CaseStatus::skipped);
  auto const capped = generate_subuniverse(z, 2, square, ClosureBudget{2, {}});
  EXPECT_EQ(verify_going_maximal(z, s, capped, 0, 1).status, CaseStatus::skipped);
}
