// agraph - edge structure of finite idempotent algebras
//
// JSON reports. Objects are ordered_json with a fixed field order, so equal
// inputs give byte-identical output. Timings are only emitted on request.

#ifndef AGRAPH_REPORT_HPP_
#define AGRAPH_REPORT_HPP_

#include <string>  // for string
#include <vector>  // for vector

#include <json.hpp>  // for nlohmann::ordered_json

#include "connectivity.hpp"  // for ConnectivityReport, OrientedThinGraph
#include "edges.hpp"         // for EdgeGraph, SiggersResult
#include "enumerate.hpp"     // for EnumerationReport
#include "reduct.hpp"        // for Reduct, ReductReport
#include "thin.hpp"          // for UnifiedOps, ThinAnalysis
#include "verify.hpp"        // for VerificationReport

namespace agraph {

  using json = nlohmann::ordered_json;

  namespace detail {
    inline json elements(std::vector<elem_t> const& v) {
      json out = json::array();
      for (auto x : v) {
        out.push_back(static_cast<unsigned>(x));
      }
      return out;
    }

    inline json blocks(std::vector<std::vector<elem_t>> const& bs) {
      json out = json::array();
      for (auto const& b : bs) {
        out.push_back(elements(b));
      }
      return out;
    }

    inline json pair(elem_t a, elem_t b) {
      return json{{"a", static_cast<unsigned>(a)}, {"b", static_cast<unsigned>(b)}};
    }

    inline json term(std::optional<Term> const& t) {
      return t ? json(t->to_string()) : json(nullptr);
    }
  }  // namespace detail

  inline json to_json(OpTable const& op) {
    return json{{"name", op.name()}, {"arity", op.arity()}, {"values", detail::elements(op.values())}};
  }

  inline json algebra_summary(Algebra const& alg) {
    json ops = json::array();
    for (auto const& op : alg.ops()) {
      ops.push_back(json{{"name", op.name()}, {"arity", op.arity()}});
    }
    return json{{"name", alg.name()}, {"size", alg.size()}, {"ops", ops}};
  }

  inline json check_report(Algebra const& alg, SiggersResult const& s) {
    json sig{{"answer", to_string(s.answer)}, {"term", detail::term(s.term)}};
    if (s.divisor) {
      std::vector<std::vector<elem_t>> bs;
      for (auto const& blk : s.divisor->theta.blocks()) {
        bs.emplace_back();
        for (auto i : blk) {
          bs.back().push_back(s.divisor->carrier[i]);
        }
      }
      sig["projection_divisor"]
          = json{{"carrier", detail::elements(s.divisor->carrier)},
                 {"blocks", detail::blocks(bs)}};
    } else {
      sig["projection_divisor"] = nullptr;
    }
    sig["search_status"] = to_string(s.search_status);
    sig["search_size"]   = s.search_size;
    return json{{"algebra", algebra_summary(alg)}, {"idempotent", true}, {"siggers", sig}};
  }

  inline json to_json(EdgeInfo const& e) {
    json types = json::array(), theta = json::object(), witnesses = json::object();
    for (auto t : e.types()) {
      types.push_back(to_string(t));
      theta[to_string(t)] = detail::blocks(e.theta_blocks(t));
      witnesses[to_string(t)] = detail::term(e.of(t).term);
    }
    json unknown = json::array();
    for (auto t : edge_types) {
      if (e.of(t).status == Answer::unknown) {
        unknown.push_back(to_string(t));
      }
    }
    return json{{"a", static_cast<unsigned>(e.a)},
                {"b", static_cast<unsigned>(e.b)},
                {"carrier", detail::elements(e.carrier)},
                {"types", types},
                {"unknown", unknown},
                {"strict", to_string(e.strict())},
                {"theta", theta},
                {"witnesses", witnesses}};
  }

  inline json edge_report(Algebra const& alg, EdgeGraph const& g) {
    json pairs = json::array();
    for (auto const& e : g.pairs()) {
      pairs.push_back(to_json(e));
    }
    return json{{"algebra", algebra_summary(alg)},
                {"pairs", pairs},
                {"connected", to_string(graph_connected(g))}};
  }

  inline json to_json(ThinEdge const& e) {
    return json{{"from", static_cast<unsigned>(e.from)},
                {"to", static_cast<unsigned>(e.to)},
                {"kind", to_string(e.kind)},
                {"witness", detail::term(e.witness)}};
  }

  inline json to_json(ConnectivityReport const& c) {
    json failures = json::array();
    for (auto [a, b] : c.failures) {
      failures.push_back(detail::pair(a, b));
    }
    return json{{"maximal", detail::elements(c.maximal)},
                {"as_components", detail::blocks(c.as_components)},
                {"failures", failures}};
  }

  // The oriented graph of all thin edges, its components and the maximal
  // elements connectivity report.
  inline json graph_report(Algebra const&            alg,
                           OrientedThinGraph const&  g,
                           ConnectivityReport const& c) {
    json arcs = json::array();
    for (auto const& e : g.arcs()) {
      arcs.push_back(json{{"from", static_cast<unsigned>(e.from)},
                          {"to", static_cast<unsigned>(e.to)},
                          {"kind", to_string(e.kind)}});
    }
    auto const co = components(g);
    return json{{"algebra", algebra_summary(alg)},
                {"arcs", arcs},
                {"components", detail::blocks(co.members)},
                {"connectivity", to_json(c)}};
  }

  inline json to_json(UnifiedOps const& ops) {
    json edges = json::array();
    for (auto const& e : ops.edges) {
      edges.push_back(json{{"a", static_cast<unsigned>(e.a)},
                           {"b", static_cast<unsigned>(e.b)},
                           {"type", to_string(e.type)}});
    }
    json failed = json::array();
    for (auto const& c : ops.matrix) {
      if (!c.pass) {
        failed.push_back(ops.describe(c));
      }
    }
    auto op = [&](OpTable const& t, std::size_t i) {
      return json{{"source", ops.source[i]}, {"values", detail::elements(t.values())}};
    };
    return json{{"f", op(ops.f, 0)},
                {"g", op(ops.g, 1)},
                {"h", op(ops.h, 2)},
                {"strict_edges", edges},
                {"conditions_checked", ops.matrix.size()},
                {"conditions_failed", failed},
                {"unresolved_pairs", ops.unresolved_pairs}};
  }

  inline json synth_report(Algebra const& alg, UnifiedOps const& ops) {
    auto const v = identity_violation(ops.f, ops.g, ops.h);
    return json{{"algebra", algebra_summary(alg)},
                {"unified", to_json(ops)},
                {"identities", v ? json(v->identity + " fails") : json("hold")}};
  }

  inline json thin_report(Algebra const& alg, ThinAnalysis const& t) {
    json arcs = json::array();
    for (auto const& e : t.thin.arcs) {
      arcs.push_back(to_json(e));
    }
    return json{{"algebra", algebra_summary(alg)},
                {"good_f",
                 json{{"values", detail::elements(t.good.f.values())},
                      {"iterations", t.good.iterations},
                      {"verified", t.good.verified}}},
                {"g", detail::elements(t.ops.g.values())},
                {"h", detail::elements(t.ops.h.values())},
                {"arcs", arcs},
                {"unknown", t.thin.unknown}};
  }

  inline json reduct_report(Reduct const& red, ReductReport const& rep) {
    json gens = json::array();
    for (auto i : red.generators) {
      gens.push_back(to_json(red.ops[i]));
    }
    std::size_t binary = 0;
    for (auto const& op : red.ops) {
      binary += op.arity() == 2;
    }
    return json{{"algebra", algebra_summary(red.base)},
                {"edge", detail::pair(red.subset.source.a, red.subset.source.b)},
                {"type", to_string(red.subset.type)},
                {"subset", detail::elements(red.subset.elements)},
                {"slices", to_string(red.status)},
                {"binary_ops", binary},
                {"ternary_ops", red.ops.size() - binary},
                {"generators", gens},
                {"siggers", to_string(rep.siggers)},
                {"s_connected", to_string(rep.s_claim)},
                {"sm_connected", to_string(rep.sm_claim)},
                {"detail", rep.detail}};
  }

  inline json to_json(VerificationReport const& r, bool timing = false) {
    json out{{"theorem", r.theorem}, {"status", to_string(r.status)}, {"detail", r.detail}};
    if (r.counterexample) {
      out["counterexample"]
          = json{{"algebra", r.counterexample->algebra},
                 {"pair", r.counterexample->pair
                              ? detail::pair(r.counterexample->pair->first,
                                             r.counterexample->pair->second)
                              : json(nullptr)}};
    } else {
      out["counterexample"] = nullptr;
    }
    if (timing) {
      out["seconds"] = r.seconds;
    }
    return out;
  }

  inline json verify_report(Algebra const&                         alg,
                            std::vector<VerificationReport> const& rs,
                            bool                                   timing = false) {
    Verdict overall = Verdict::skipped;
    json    arr     = json::array();
    for (auto const& r : rs) {
      overall = combine(overall, r.status);
      arr.push_back(to_json(r, timing));
    }
    return json{{"algebra", algebra_summary(alg)},
                {"status", to_string(overall)},
                {"reports", arr}};
  }

  inline json to_json(EnumerationReport const& e, bool timing = false) {
    json counts = json::object();
    for (auto const& [t, c] : e.counts) {
      counts[to_string(t)] = json{{"pass", c.pass},
                                  {"fail", c.fail},
                                  {"unknown", c.unknown},
                                  {"skipped", c.skipped}};
    }
    json failures = json::array();
    for (auto const& f : e.failures) {
      failures.push_back(json{{"index", f.index}, {"name", f.name},
                              {"report", to_json(f.report, timing)}});
    }
    json out{{"size", e.size},
             {"signature", to_string(e.signature)},
             {"candidates", e.candidates},
             {"siggers_yes", e.siggers_yes},
             {"siggers_unknown", e.siggers_unknown},
             {"status", to_string(e.overall())},
             {"counts", counts},
             {"failures", failures}};
    if (timing) {
      out["seconds"] = e.seconds;
    }
    return out;
  }

}  // namespace agraph

#endif  // AGRAPH_REPORT_HPP_
