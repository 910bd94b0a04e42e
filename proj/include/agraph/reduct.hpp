// agraph - edge structure of finite idempotent algebras
//
// Reducts that keep only the term operations preserving a thick edge.
//
// The reduct is built from the binary and ternary term operations of the
// base algebra that map the thick edge into itself. Its clone is computed
// through a greedily chosen generating subset, which is the algebra the
// claims are checked on.

#ifndef AGRAPH_REDUCT_HPP_
#define AGRAPH_REDUCT_HPP_

#include <algorithm>  // for binary_search, sort
#include <numeric>    // for iota
#include <set>        // for set
#include <string>     // for string
#include <vector>     // for vector

#include "core.hpp"       // for Algebra, OpTable
#include "edges.hpp"      // for EdgeInfo, EdgeGraph, Answer
#include "error.hpp"      // for error
#include "partition.hpp"  // for UnionFind
#include "subpower.hpp"   // for term_slice, ClosureBudget

namespace agraph {

  struct ThickEdgeSubset {
    std::vector<elem_t> elements;  // sorted
    EdgeType            type = EdgeType::semilattice;
    EdgeInfo            source;

    bool contains(elem_t x) const {
      return std::binary_search(elements.begin(), elements.end(), x);
    }
  };

  // The union of the classes of a and b under the witnessing congruence of
  // the semilattice type, or of the majority type for strict majority pairs.
  inline ThickEdgeSubset thick_edge_subset(EdgeInfo const& e) {
    ThickEdgeSubset out;
    out.source = e;
    if (e.has(EdgeType::semilattice)) {
      out.type = EdgeType::semilattice;
    } else if (e.strict() == Strictness::majority) {
      out.type = EdgeType::majority;
    } else {
      throw error("pair " + std::to_string(e.a) + "," + std::to_string(e.b)
                  + " is neither a semilattice nor a strict majority edge");
    }
    out.elements = e.thick_edge(out.type);
    return out;
  }

  inline bool preserves(OpTable const& op, std::vector<bool> const& in) {
    auto const& v = op.values();
    TupleVec    args(op.arity(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      bool inside = true;
      for (auto x : args) {
        inside = inside && in[x];
      }
      if (inside && !in[v[i]]) {
        return false;
      }
      next_tuple(args, op.size());
    }
    return true;
  }

  struct Reduct {
    Algebra              base;
    ThickEdgeSubset      subset;
    std::vector<OpTable> ops;         // b0, b1, ... then t0, t1, ...
    std::vector<std::size_t> generators;  // indices into ops
    ClosureStatus        status = ClosureStatus::complete;

    bool complete() const noexcept {
      return status == ClosureStatus::complete;
    }

    // All preserving operations as an algebra.
    Algebra full_algebra() const {
      return Algebra(base.name() + "_red", base.size(), ops);
    }

    // The generating subset, with the same term operations as full_algebra.
    Algebra algebra() const {
      std::vector<OpTable> g;
      for (auto i : generators) {
        g.push_back(ops[i]);
      }
      return Algebra(base.name() + "_red", base.size(), std::move(g));
    }
  };

  namespace detail {
    // The ternary operation (x, y, z) -> op(x, y).
    inline std::vector<elem_t> as_ternary(OpTable const& op) {
      if (op.arity() == 3) {
        return op.values();
      }
      std::size_t const   n = op.size();
      std::vector<elem_t> out;
      out.reserve(n * n * n);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          for (std::size_t z = 0; z < n; ++z) {
            out.push_back(op(static_cast<elem_t>(x), static_cast<elem_t>(y)));
          }
        }
      }
      return out;
    }
  }  // namespace detail

  inline Reduct build_reduct(Algebra const&         alg,
                             ThickEdgeSubset const& subset,
                             ClosureBudget          budget = {}) {
    std::size_t const n = alg.size();
    Reduct            out{alg, subset, {}, {}, ClosureStatus::complete};
    std::vector<bool> in(n, false);
    for (auto x : subset.elements) {
      in.at(x) = true;
    }
    auto const s2 = term_slice(alg, 2, budget);
    auto const s3 = term_slice(alg, 3, budget);
    if (s2.status != ClosureStatus::complete || s3.status != ClosureStatus::complete) {
      out.status = ClosureStatus::capped;
    }
    std::size_t nb = 0, nt = 0;
    for (auto const& op : s2.ops) {
      if (preserves(op, in)) {
        out.ops.emplace_back("b" + std::to_string(nb++), 2, n, op.values());
      }
    }
    for (auto const& op : s3.ops) {
      if (preserves(op, in)) {
        out.ops.emplace_back("t" + std::to_string(nt++), 3, n, op.values());
      }
    }
    // Greedy generating subset: add an operation whenever the ternary clone
    // of those chosen so far misses it. Ternary parts determine binary ones.
    std::set<std::vector<elem_t>> clone3;
    for (std::size_t i = 0; i < 3; ++i) {
      clone3.insert(OpTable::projection("p", 3, n, i).values());
    }
    for (std::size_t i = 0; i < out.ops.size(); ++i) {
      if (clone3.contains(detail::as_ternary(out.ops[i]))) {
        continue;
      }
      out.generators.push_back(i);
      auto const slice = term_slice(out.algebra(), 3, budget);
      if (slice.status != ClosureStatus::complete) {
        out.status = ClosureStatus::capped;
        out.generators.resize(out.ops.size());
        std::iota(out.generators.begin(), out.generators.end(), std::size_t(0));
        return out;
      }
      clone3.clear();
      for (auto const& op : slice.ops) {
        clone3.insert(op.values());
      }
    }
    if (out.generators.empty()) {
      // only projections preserve the subset
      out.ops.push_back(OpTable::projection("b0", 2, n, 0));
      out.generators.push_back(out.ops.size() - 1);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Claims
  ////////////////////////////////////////////////////////////////////////////

  enum class Verdict { pass, fail, unknown, skipped };

  inline char const* to_string(Verdict v) {
    switch (v) {
      case Verdict::pass:
        return "pass";
      case Verdict::fail:
        return "fail";
      case Verdict::unknown:
        return "unknown";
      case Verdict::skipped:
        return "skipped";
    }
    return "?";
  }

  // Undirected connectivity through pairs of semilattice type, optionally
  // also strict majority pairs.
  inline Answer typed_connected(EdgeGraph const& g, bool with_majority) {
    UnionFind uf(g.size());
    bool      unresolved = false;
    for (auto const& e : g.pairs()) {
      bool const s    = e.has(EdgeType::semilattice);
      bool const m    = with_majority && e.strict() == Strictness::majority;
      if (s || m) {
        uf.unite(e.a, e.b);
      } else if (e.of(EdgeType::semilattice).status == Answer::unknown
                 || (with_majority && e.strict() == Strictness::unknown)) {
        unresolved = true;
      }
    }
    for (std::size_t x = 1; x < g.size(); ++x) {
      if (uf.find(x) != uf.find(0)) {
        return unresolved ? Answer::unknown : Answer::no;
      }
    }
    return Answer::yes;
  }

  inline Answer s_connected(EdgeGraph const& g) {
    return typed_connected(g, false);
  }

  inline Answer sm_connected(EdgeGraph const& g) {
    return typed_connected(g, true);
  }

  struct ReductReport {
    Verdict     siggers    = Verdict::unknown;
    Verdict     s_claim    = Verdict::unknown;
    Verdict     sm_claim   = Verdict::unknown;
    std::string detail;

    bool any_fail() const {
      return siggers == Verdict::fail || s_claim == Verdict::fail
             || sm_claim == Verdict::fail;
    }

    bool any_unknown() const {
      return siggers == Verdict::unknown || s_claim == Verdict::unknown
             || sm_claim == Verdict::unknown;
    }
  };

  namespace detail {
    inline Verdict implication(Answer hypothesis, Answer conclusion) {
      if (hypothesis == Answer::no) {
        return Verdict::skipped;
      }
      if (hypothesis == Answer::unknown || conclusion == Answer::unknown) {
        return Verdict::unknown;
      }
      return conclusion == Answer::yes ? Verdict::pass : Verdict::fail;
    }
  }  // namespace detail

  // (1) the reduct has a Siggers term; (2) a semilattice edge keeps the
  // graph s-connected; (3) a strict majority edge keeps it sm-connected.
  inline ReductReport verify_reduct_claims(Algebra const& alg,
                                           Reduct const&  red,
                                           ClosureBudget  budget = {}) {
    ReductReport out;
    if (!red.complete()) {
      out.detail = "term slices capped";
      return out;
    }
    auto const a2  = red.algebra();
    auto const sig = has_siggers_term(a2, budget);
    out.siggers    = sig.answer == Answer::yes  ? Verdict::pass
                     : sig.answer == Answer::no ? Verdict::fail
                                                : Verdict::unknown;
    auto const base_graph = edge_graph(alg, budget);
    auto const red_graph  = edge_graph(a2, budget);
    out.s_claim  = Verdict::skipped;
    out.sm_claim = Verdict::skipped;
    if (red.subset.type == EdgeType::semilattice) {
      out.s_claim = detail::implication(s_connected(base_graph), s_connected(red_graph));
    } else {
      out.sm_claim
          = detail::implication(sm_connected(base_graph), sm_connected(red_graph));
    }
    if (out.siggers == Verdict::fail) {
      out.detail = "reduct has no Siggers term";
    } else if (out.s_claim == Verdict::fail) {
      out.detail = "reduct graph is not s-connected";
    } else if (out.sm_claim == Verdict::fail) {
      out.detail = "reduct graph is not sm-connected";
    }
    return out;
  }

}  // namespace agraph

#endif  // AGRAPH_REDUCT_HPP_
