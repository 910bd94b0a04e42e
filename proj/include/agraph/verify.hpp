// agraph - edge structure of finite idempotent algebras
//
// Theorem suites run on a single algebra. Each suite yields one
// VerificationReport; a failing report carries the serialized algebra and,
// where one exists, the offending pair so that it can be replayed.

#ifndef AGRAPH_VERIFY_HPP_
#define AGRAPH_VERIFY_HPP_

#include <chrono>    // for steady_clock, duration
#include <optional>  // for optional
#include <string>    // for string
#include <utility>   // for pair
#include <vector>    // for vector

#include "alg_io.hpp"        // for serialize_algebra
#include "congruence.hpp"    // for all_tolerances, link_tolerance
#include "connectivity.hpp"  // for verify_as_connectivity
#include "core.hpp"          // for Algebra
#include "edges.hpp"         // for edge_graph, has_siggers_term
#include "error.hpp"         // for error, internal_error
#include "reduct.hpp"        // for build_reduct, Verdict
#include "subpower.hpp"      // for ClosureBudget
#include "thin.hpp"          // for synth_unified, thin_analysis

namespace agraph {

  enum class Theorem {
    connectedness,
    uniform,
    identities,
    good_op,
    thin,
    as_connectivity,
    reduct,
    tolerance_classes
  };

  inline constexpr std::array<Theorem, 8> all_theorems{Theorem::connectedness,
                                                       Theorem::uniform,
                                                       Theorem::identities,
                                                       Theorem::good_op,
                                                       Theorem::thin,
                                                       Theorem::as_connectivity,
                                                       Theorem::reduct,
                                                       Theorem::tolerance_classes};

  inline char const* to_string(Theorem t) {
    switch (t) {
      case Theorem::connectedness:
        return "connectedness";
      case Theorem::uniform:
        return "uniform";
      case Theorem::identities:
        return "identities";
      case Theorem::good_op:
        return "good-op";
      case Theorem::thin:
        return "thin";
      case Theorem::as_connectivity:
        return "as-connectivity";
      case Theorem::reduct:
        return "reduct";
      case Theorem::tolerance_classes:
        return "tolerance-classes";
    }
    return "?";
  }

  // "all" expands to every suite.
  inline std::vector<Theorem> parse_theorems(std::string const& name) {
    if (name == "all") {
      return {all_theorems.begin(), all_theorems.end()};
    }
    for (auto t : all_theorems) {
      if (name == to_string(t)) {
        return {t};
      }
    }
    throw error("unknown theorem '" + name + "'");
  }

  struct Counterexample {
    std::string                            algebra;  // .alg text
    std::optional<std::pair<elem_t, elem_t>> pair;
  };

  struct VerificationReport {
    std::string                   theorem;
    Verdict                       status = Verdict::unknown;
    std::string                   detail;
    std::optional<Counterexample> counterexample;
    double                        seconds = 0;
  };

  // Worst status first: fail, unknown, pass, skipped.
  inline Verdict combine(Verdict l, Verdict r) {
    auto rank = [](Verdict v) {
      switch (v) {
        case Verdict::fail:
          return 3;
        case Verdict::unknown:
          return 2;
        case Verdict::pass:
          return 1;
        case Verdict::skipped:
          return 0;
      }
      return 0;
    };
    return rank(l) >= rank(r) ? l : r;
  }

  // Process exit code for an overall verdict.
  inline int exit_code(Verdict v) {
    switch (v) {
      case Verdict::fail:
        return 1;
      case Verdict::unknown:
        return 3;
      default:
        return 0;
    }
  }

  // Runs suites on one algebra, sharing the Siggers result, the edge graph
  // and the thin analysis between them.
  class Verifier {
   public:
    explicit Verifier(Algebra alg, ClosureBudget budget = ClosureBudget::from_env())
        : _alg(std::move(alg)), _budget(budget) {}

    Algebra const& algebra() const noexcept {
      return _alg;
    }

    Answer siggers() {
      if (!_siggers) {
        _siggers = has_siggers_term(_alg, _budget).answer;
      }
      return *_siggers;
    }

    EdgeGraph const& graph() {
      if (!_graph) {
        _graph = edge_graph(_alg, _budget);
      }
      return *_graph;
    }

    ThinAnalysis const& analysis() {
      if (!_analysis) {
        _analysis = thin_analysis(_alg, graph(), _budget);
      }
      return *_analysis;
    }

    VerificationReport run(Theorem t) {
      auto const         start = std::chrono::steady_clock::now();
      VerificationReport r;
      r.theorem = to_string(t);
      try {
        if (t != Theorem::tolerance_classes && siggers() != Answer::yes) {
          r.status = siggers() == Answer::no ? Verdict::skipped : Verdict::unknown;
          r.detail = siggers() == Answer::no ? "no Siggers term"
                                             : "Siggers search capped";
        } else {
          dispatch(t, r);
        }
      } catch (internal_error const& e) {
        fail(r, std::string("internal check failed: ") + e.what());
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
      return r;
    }

    std::vector<VerificationReport> run(std::vector<Theorem> const& ts) {
      std::vector<VerificationReport> out;
      for (auto t : ts) {
        out.push_back(run(t));
      }
      return out;
    }

   private:
    void fail(VerificationReport&                      r,
              std::string                              detail,
              std::optional<std::pair<elem_t, elem_t>> pair = std::nullopt) {
      r.status         = Verdict::fail;
      r.detail         = std::move(detail);
      r.counterexample = Counterexample{serialize_algebra(_alg), pair};
    }

    static std::pair<elem_t, elem_t> edge_pair(StrictEdge const& e) {
      return {e.a, e.b};
    }

    void dispatch(Theorem t, VerificationReport& r) {
      switch (t) {
        case Theorem::connectedness:
          return check_connectedness(r);
        case Theorem::uniform:
          return check_uniform(r);
        case Theorem::identities:
          return check_identities(r);
        case Theorem::good_op:
          return check_good_op(r);
        case Theorem::thin:
          return check_thin(r);
        case Theorem::as_connectivity:
          return check_as_connectivity(r);
        case Theorem::reduct:
          return check_reduct(r);
        case Theorem::tolerance_classes:
          return check_tolerance_classes(r);
      }
    }

    void check_connectedness(VerificationReport& r) {
      auto const c = graph_connected_all_subalgebras(_alg, _budget);
      std::string carrier;
      for (auto x : c.failing_carrier) {
        carrier += (carrier.empty() ? "" : ",") + std::to_string(x);
      }
      if (c.status == Answer::yes) {
        r.status = Verdict::pass;
      } else if (c.status == Answer::unknown) {
        r.status = Verdict::unknown;
        r.detail = "edge classification capped on {" + carrier + "}";
      } else {
        fail(r, "edge graph of subalgebra {" + carrier + "} is disconnected");
      }
    }

    void check_uniform(VerificationReport& r) {
      auto const ops = synth_unified(_alg, graph(), _budget);
      if (auto const* c = ops.first_failure()) {
        fail(r, ops.describe(*c), edge_pair(ops.edges[c->edge]));
        return;
      }
      r.status = ops.unresolved_pairs > 0 ? Verdict::unknown : Verdict::pass;
      if (ops.unresolved_pairs > 0) {
        r.detail = std::to_string(ops.unresolved_pairs) + " pairs unresolved";
      }
    }

    void check_identities(VerificationReport& r) {
      auto const& ops = analysis().ops;
      if (auto v = identity_violation(ops.f, ops.g, ops.h)) {
        fail(r, "identity " + v->identity + " fails", std::pair{v->x, v->y});
      } else if (auto const* c = ops.first_failure()) {
        fail(r, ops.describe(*c), edge_pair(ops.edges[c->edge]));
      } else {
        r.status = Verdict::pass;
      }
    }

    void check_good_op(VerificationReport& r) {
      auto const& good = analysis().good;
      if (auto v = good_violation(good.f); v || !good.verified) {
        fail(r, good.detail, v);
        return;
      }
      r.status = Verdict::pass;
      r.detail = std::to_string(good.iterations) + " iterations";
    }

    // Thin counterparts of strict majority edges and of affine edges in
    // both directions, and the thick-to-thin property of semilattice edges.
    void check_thin(VerificationReport& r) {
      auto const& a       = analysis();
      bool        unknown = false;
      std::size_t checked = 0, nonstrict = 0;
      for (auto const& e : a.graph.pairs()) {
        for (auto kind : {EdgeType::majority, EdgeType::affine}) {
          if (!e.has(kind)) {
            continue;
          }
          bool const counted = kind == EdgeType::affine
                               || e.strict() == Strictness::majority;
          for (auto from : {e.a, e.b}) {
            auto const s = kind == EdgeType::majority
                               ? find_thin_majority(_alg, e, a.ops.g, from, _budget)
                               : find_thin_affine(_alg, e, a.ops.h, from, _budget);
            if (!counted) {
              nonstrict += s.status != Answer::yes;
              continue;
            }
            ++checked;
            if (s.status == Answer::unknown) {
              unknown = true;
            } else if (s.status == Answer::no) {
              fail(r,
                   std::string("no thin ") + to_string(kind) + " edge from "
                       + std::to_string(from) + " on pair "
                       + std::to_string(e.a) + "," + std::to_string(e.b),
                   std::pair{e.a, e.b});
              return;
            }
          }
        }
      }
      auto const l5 = thick_to_thin_failures(a.graph, a.good.f);
      if (!l5.empty()) {
        fail(r, l5.front());
        return;
      }
      r.status = unknown ? Verdict::unknown : Verdict::pass;
      r.detail = std::to_string(checked) + " directed edges";
      if (nonstrict > 0) {
        r.detail += "; " + std::to_string(nonstrict)
                    + " non-strict majority directions without a counterpart";
      }
    }

    void check_as_connectivity(VerificationReport& r) {
      auto const c = verify_as_connectivity(_alg, analysis());
      if (!c.failures.empty()) {
        auto const [a, b] = c.failures.front();
        fail(r,
             "no thin path from " + std::to_string(a) + " to " + std::to_string(b),
             c.failures.front());
      } else {
        r.status = c.unknown ? Verdict::unknown : Verdict::pass;
      }
    }

    void check_reduct(VerificationReport& r) {
      Verdict     v     = Verdict::skipped;
      std::size_t pairs = 0;
      for (auto const& e : graph().pairs()) {
        if (!e.has(EdgeType::semilattice) && e.strict() != Strictness::majority) {
          continue;
        }
        ++pairs;
        auto const red = build_reduct(_alg, thick_edge_subset(e), _budget);
        auto const rep = verify_reduct_claims(_alg, red, _budget);
        Verdict    w   = combine(combine(rep.siggers, rep.s_claim), rep.sm_claim);
        if (w == Verdict::fail) {
          fail(r,
               "edge " + std::to_string(e.a) + "," + std::to_string(e.b) + ": "
                   + rep.detail,
               std::pair{e.a, e.b});
          return;
        }
        if (w == Verdict::unknown && v != Verdict::unknown) {
          r.detail = "edge " + std::to_string(e.a) + "," + std::to_string(e.b)
                     + ": " + (rep.detail.empty() ? "search capped" : rep.detail);
        }
        v = combine(v, w);
      }
      r.status = v;
      if (v == Verdict::pass) {
        r.detail = std::to_string(pairs) + " edges";
      } else if (v == Verdict::skipped) {
        r.detail = "no semilattice or strict majority edge";
      }
    }

    // Classes of every tolerance are subuniverses; link tolerances of
    // relations generated by the diagonal and one extra tuple are
    // compatible, and their transitive closures are congruences.
    void check_tolerance_classes(VerificationReport& r) {
      std::size_t const n = _alg.size();
      if (n > max_tolerance_enumeration_size) {
        r.status = Verdict::skipped;
        r.detail = "more than " + std::to_string(max_tolerance_enumeration_size)
                   + " elements";
        return;
      }
      std::size_t classes = 0;
      for (auto const& t : all_tolerances(_alg)) {
        if (!is_congruence(_alg, t.transitive_closure())) {
          fail(r, "transitive closure of " + t.to_string() + " is not a congruence");
          return;
        }
        for (auto const& cls : tolerance_classes(t)) {
          ++classes;
          if (!is_class_subuniverse(_alg, cls)) {
            fail(r, "a class of " + t.to_string() + " is not a subuniverse");
            return;
          }
        }
      }
      std::size_t links = 0;
      for (std::size_t k = 2; k <= (n <= 4 ? 3 : 2); ++k) {
        TupleVec extra(k, 0);
        do {
          std::vector<TupleVec> gens;
          for (std::size_t x = 0; x < n; ++x) {
            gens.emplace_back(k, static_cast<elem_t>(x));
          }
          gens.push_back(extra);
          auto const rel = generate_subuniverse(_alg, k, std::move(gens), _budget);
          if (!rel.complete()) {
            r.status = Verdict::unknown;
            r.detail = "relation closure capped";
            return;
          }
          for (std::size_t i = 0; i < k; ++i) {
            auto const t = link_tolerance(_alg, rel, i);
            ++links;
            if (!t.is_reflexive() || !t.is_symmetric()) {
              fail(r, "link tolerance " + t.to_string() + " is not a tolerance");
              return;
            }
          }
        } while (next_tuple(extra, n));
      }
      r.status = Verdict::pass;
      r.detail = std::to_string(classes) + " classes, " + std::to_string(links)
                 + " link tolerances";
    }

    Algebra                     _alg;
    ClosureBudget               _budget;
    std::optional<Answer>       _siggers;
    std::optional<EdgeGraph>    _graph;
    std::optional<ThinAnalysis> _analysis;
  };

}  // namespace agraph

#endif  // AGRAPH_VERIFY_HPP_
