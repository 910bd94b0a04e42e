// agraph - edge structure of finite idempotent algebras
//
// Unified operations f, g, h and thin edges.
//
// For a strict edge ab with witnessing congruence theta of Sg{a, b}, write
// a', b' for the theta-classes of a and b. The unified operations satisfy
//
//   edge type    f                  g                  h
//   semilattice  semilattice        f(x, f(y, z))      f(x, f(y, z))
//   majority     first projection   majority           first projection
//   affine       first projection   first projection   x - y + z
//
// modulo theta, on {a', b'} except for the affine h column, which is checked
// on the whole quotient Sg{a, b}/theta.
//
// Thin edges are directed pairs on which witnesses act on the elements
// themselves rather than on congruence classes.

#ifndef AGRAPH_THIN_HPP_
#define AGRAPH_THIN_HPP_

#include <algorithm>  // for sort, find
#include <array>      // for array
#include <cstdint>    // for uint64_t, SIZE_MAX
#include <numeric>    // for lcm
#include <optional>   // for optional
#include <set>        // for set
#include <map>        // for map
#include <string>     // for string
#include <tuple>      // for tie
#include <vector>     // for vector

#include "core.hpp"        // for Algebra, OpTable, product_algebra
#include "edges.hpp"       // for EdgeInfo, EdgeGraph, EdgeType
#include "error.hpp"       // for error, internal_error
#include "partition.hpp"   // for Partition
#include "subpower.hpp"    // for Goal, search_term
#include "term.hpp"        // for Term, term_table

namespace agraph {

  ////////////////////////////////////////////////////////////////////////////
  // Strict edges
  ////////////////////////////////////////////////////////////////////////////

  // A strict edge together with its theta-labelling of A.
  struct StrictEdge {
    static constexpr std::size_t outside = SIZE_MAX;

    elem_t              a    = 0;
    elem_t              b    = 0;
    EdgeType            type = EdgeType::semilattice;
    std::vector<elem_t> carrier;
    // element of A -> index of its theta-class, outside for elements not in
    // Sg{a, b}
    std::vector<std::size_t> label;
    // class index -> least element of the class
    std::vector<elem_t> representatives;
    // x - y + z on class indices (affine edges only)
    OpTable maltsev;

    std::size_t la() const {
      return label[a];
    }

    std::size_t lb() const {
      return label[b];
    }

    std::vector<elem_t> members(std::size_t cls) const {
      std::vector<elem_t> out;
      for (std::size_t x = 0; x < label.size(); ++x) {
        if (label[x] == cls) {
          out.push_back(static_cast<elem_t>(x));
        }
      }
      return out;
    }

    std::string to_string() const {
      return std::to_string(a) + "-" + std::to_string(b) + " "
             + agraph::to_string(type);
    }
  };

  inline StrictEdge make_strict_edge(EdgeInfo const& e,
                                     EdgeType        t,
                                     std::size_t     n) {
    StrictEdge out;
    out.a       = e.a;
    out.b       = e.b;
    out.type    = t;
    out.carrier = e.carrier;
    out.label.assign(n, StrictEdge::outside);
    auto const& theta = e.theta(t);
    out.representatives.resize(theta.number_of_blocks());
    for (std::size_t i = e.carrier.size(); i-- > 0;) {
      auto const q          = theta.block_index(i);
      out.label[e.carrier[i]] = q;
      out.representatives[q]  = e.carrier[i];
    }
    if (t == EdgeType::affine) {
      auto const& cert = e.of(t).certificate;
      if (!cert) {
        throw internal_error("affine edge without a certificate");
      }
      out.maltsev = cert->maltsev;
    }
    return out;
  }

  // The strict edges of a classified graph, in pair order. Pairs whose
  // strictness is unknown are left out.
  inline std::vector<StrictEdge> strict_edges(std::vector<EdgeInfo> const& pairs,
                                              std::size_t                  n) {
    std::vector<StrictEdge> out;
    for (auto const& e : pairs) {
      switch (e.strict()) {
        case Strictness::semilattice:
          out.push_back(make_strict_edge(e, EdgeType::semilattice, n));
          break;
        case Strictness::majority:
          out.push_back(make_strict_edge(e, EdgeType::majority, n));
          break;
        case Strictness::affine:
          out.push_back(make_strict_edge(e, EdgeType::affine, n));
          break;
        default:
          break;
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Condition matrix
  ////////////////////////////////////////////////////////////////////////////

  struct ConditionCheck {
    std::size_t edge = 0;  // index into the strict edge list
    char        op   = 'f';
    std::string condition;
    bool        pass = true;
    std::string counterexample;
  };

  namespace detail {
    // op(args) must lie in the class with the given label.
    struct Requirement {
      TupleVec    args;
      std::size_t label;
    };

    inline std::string tuple_string(TupleVec const& t) {
      std::string s = "(";
      for (std::size_t i = 0; i < t.size(); ++i) {
        s += (i ? "," : "") + std::to_string(t[i]);
      }
      return s + ")";
    }

    inline char const* condition_name(char op, EdgeType t) {
      if (op == 'f') {
        return t == EdgeType::semilattice ? "semilattice" : "first-projection";
      }
      switch (t) {
        case EdgeType::semilattice:
          return "f(x,f(y,z))";
        case EdgeType::majority:
          return op == 'g' ? "majority" : "first-projection";
        case EdgeType::affine:
          return op == 'g' ? "first-projection" : "affine";
      }
      return "?";
    }

    // Requirements for the ternary op g or h on edge e. Constant rows are
    // omitted: idempotency settles them.
    inline std::vector<Requirement>
    ternary_requirements(StrictEdge const& e, char op, OpTable const& f) {
      std::vector<Requirement> out;
      if (op == 'h' && e.type == EdgeType::affine) {
        std::size_t const q = e.representatives.size();
        TupleVec          c(3, 0);
        do {
          if (c[0] == c[1] && c[1] == c[2]) {
            continue;
          }
          out.push_back({{e.representatives[c[0]],
                          e.representatives[c[1]],
                          e.representatives[c[2]]},
                         e.maltsev(c[0], c[1], c[2])});
        } while (next_tuple(c, q));
        return out;
      }
      std::array<elem_t, 2> const ab{e.a, e.b};
      TupleVec                    bits(3, 0);
      do {
        if (bits[0] == bits[1] && bits[1] == bits[2]) {
          continue;
        }
        elem_t const x = ab[bits[0]], y = ab[bits[1]], z = ab[bits[2]];
        std::size_t  want = 0;
        if (e.type == EdgeType::semilattice) {
          want = e.label[f(x, f(y, z))];
        } else if (e.type == EdgeType::majority && op == 'g') {
          want = e.label[(x == y || x == z) ? x : y];
        } else {
          want = e.label[x];
        }
        out.push_back({{x, y, z}, want});
      } while (next_tuple(bits, 2));
      return out;
    }

    inline ConditionCheck check_requirements(StrictEdge const&               e,
                                             std::size_t                     idx,
                                             char                            op,
                                             OpTable const&                  t,
                                             std::vector<Requirement> const& rs) {
      ConditionCheck c{idx, op, condition_name(op, e.type), true, ""};
      for (auto const& r : rs) {
        auto const v = t(std::span<elem_t const>(r.args));
        if (e.label[v] != r.label) {
          c.pass           = false;
          c.counterexample = std::string(1, op) + tuple_string(r.args) + " = "
                             + std::to_string(v);
          break;
        }
      }
      return c;
    }
  }  // namespace detail

  inline ConditionCheck check_f_condition(StrictEdge const& e,
                                          std::size_t       idx,
                                          OpTable const&    f) {
    ConditionCheck c{idx, 'f', detail::condition_name('f', e.type), true, ""};
    elem_t const   u = f(e.a, e.b), v = f(e.b, e.a);
    if (e.type == EdgeType::semilattice) {
      c.pass = e.label[u] == e.label[v]
               && (e.label[u] == e.la() || e.label[u] == e.lb());
    } else {
      c.pass = e.label[u] == e.la() && e.label[v] == e.lb();
    }
    if (!c.pass) {
      c.counterexample = "f(" + std::to_string(e.a) + "," + std::to_string(e.b)
                         + ") = " + std::to_string(u) + ", f("
                         + std::to_string(e.b) + "," + std::to_string(e.a)
                         + ") = " + std::to_string(v);
    }
    return c;
  }

  inline ConditionCheck check_g_condition(StrictEdge const& e,
                                          std::size_t       idx,
                                          OpTable const&    f,
                                          OpTable const&    g) {
    return detail::check_requirements(
        e, idx, 'g', g, detail::ternary_requirements(e, 'g', f));
  }

  inline ConditionCheck check_h_condition(StrictEdge const& e,
                                          std::size_t       idx,
                                          OpTable const&    f,
                                          OpTable const&    h) {
    return detail::check_requirements(
        e, idx, 'h', h, detail::ternary_requirements(e, 'h', f));
  }

  inline std::vector<ConditionCheck>
  condition_matrix(std::vector<StrictEdge> const& edges,
                   OpTable const&                 f,
                   OpTable const&                 g,
                   OpTable const&                 h) {
    std::vector<ConditionCheck> out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      out.push_back(check_f_condition(edges[i], i, f));
      out.push_back(check_g_condition(edges[i], i, f, g));
      out.push_back(check_h_condition(edges[i], i, f, h));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Synthesis
  ////////////////////////////////////////////////////////////////////////////

  struct UnifiedOps {
    OpTable                     f;
    OpTable                     g;
    OpTable                     h;
    std::vector<StrictEdge>     edges;
    std::vector<ConditionCheck> matrix;
    // How each of f, g, h was obtained: "pipeline", "search", "capped" or
    // "absent" (the last two leave the failing pipeline table in place).
    std::array<std::string, 3> source{"pipeline", "pipeline", "pipeline"};
    // Pairs left out because their strictness is unknown.
    std::size_t unresolved_pairs = 0;

    bool satisfied() const {
      return first_failure() == nullptr;
    }

    ConditionCheck const* first_failure() const {
      for (auto const& c : matrix) {
        if (!c.pass) {
          return &c;
        }
      }
      return nullptr;
    }

    std::string describe(ConditionCheck const& c) const {
      return "edge " + edges[c.edge].to_string() + ": " + std::string(1, c.op)
             + " is not " + c.condition + " (" + c.counterexample + ")";
    }
  };

  namespace detail {
    inline std::vector<elem_t> class_union(StrictEdge const& e,
                                           std::size_t       l1,
                                           std::size_t       l2) {
      auto out = e.members(l1);
      if (l2 != l1) {
        auto more = e.members(l2);
        out.insert(out.end(), more.begin(), more.end());
      }
      return out;
    }

    // Accumulates rows and per-row constraints for a term search.
    class RowGoal {
     public:
      explicit RowGoal(std::size_t arity) : _arity(arity) {}

      std::size_t coord(TupleVec const& args) {
        auto [it, inserted] = _index.emplace(args, _rows.size());
        if (inserted) {
          _rows.push_back(args);
        }
        return it->second;
      }

      void require_in(TupleVec const& args, std::vector<elem_t> const& vals) {
        _goal.require_in(coord(args), vals);
      }

      void require_equivalent(TupleVec const&                 l,
                              TupleVec const&                 r,
                              std::vector<std::size_t> const& labels) {
        std::size_t const cl = coord(l), cr = coord(r);
        _goal.require_equivalent(cl, cr, labels);
      }

      std::optional<OpTable> search(Algebra const&     alg,
                                    std::string const& name,
                                    ClosureBudget      budget,
                                    ClosureStatus*     status = nullptr) const {
        if (_rows.empty()) {
          if (status) {
            *status = ClosureStatus::stopped;
          }
          return OpTable::projection(name, _arity, alg.size(), 0);
        }
        auto r = search_term(alg, _arity, _rows, _goal, budget);
        if (status) {
          *status = r.status;
        }
        if (!r.term) {
          return std::nullopt;
        }
        return term_table(alg, *r.term, _arity, name);
      }

     private:
      std::size_t                     _arity;
      std::map<TupleVec, std::size_t> _index;
      std::vector<TupleVec>           _rows;
      Goal                            _goal;
    };

    inline void add_requirements(RowGoal&                        rg,
                                 StrictEdge const&               e,
                                 std::vector<Requirement> const& rs) {
      for (auto const& r : rs) {
        rg.require_in(r.args, e.members(r.label));
      }
    }

    inline std::optional<Term> semilattice_term(EdgeInfo const& e) {
      auto const& ev = e.of(EdgeType::semilattice);
      return ev.toward_b ? ev.term : ev.term_toward_a;
    }

    // Search for a binary (x, y) -> first or second argument mod theta on
    // prescribed rows.
    inline std::optional<OpTable>
    binary_selector(Algebra const&                                      alg,
                    std::vector<std::pair<StrictEdge const*, bool>> const& picks,
                    std::vector<StrictEdge const*> const&                   first_on_quotient,
                    std::vector<StrictEdge const*> const&                   second_on_quotient,
                    ClosureBudget                                           budget) {
      RowGoal rg(2);
      // picks: bool = take the first argument on {a', b'}
      for (auto [e, first] : picks) {
        rg.require_in({e->a, e->b}, e->members(e->label[first ? e->a : e->b]));
        rg.require_in({e->b, e->a}, e->members(e->label[first ? e->b : e->a]));
      }
      for (auto const* e : first_on_quotient) {
        for (auto x : e->representatives) {
          for (auto y : e->representatives) {
            if (x != y) {
              rg.require_in({x, y}, e->members(e->label[x]));
            }
          }
        }
      }
      for (auto const* e : second_on_quotient) {
        for (auto x : e->representatives) {
          for (auto y : e->representatives) {
            if (x != y) {
              rg.require_in({x, y}, e->members(e->label[y]));
            }
          }
        }
      }
      return rg.search(alg, "p", budget);
    }

    // Fixed-point data for iterating a unary map: the orbit of a point and
    // where it enters its cycle.
    struct Orbit {
      std::vector<elem_t> seq;
      std::size_t         tail = 0;

      std::size_t cycle() const {
        return seq.size() - tail;
      }
    };

    inline Orbit orbit(std::vector<elem_t> const& map, elem_t y) {
      Orbit                 o;
      std::vector<int> seen(map.size(), -1);
      elem_t           x = y;
      while (seen[x] < 0) {
        seen[x] = static_cast<int>(o.seq.size());
        o.seq.push_back(x);
        x = map[x];
      }
      o.tail = static_cast<std::size_t>(seen[x]);
      return o;
    }

    // An exponent M for which every given map has M-th power idempotent:
    // the least multiple of the lcm of the cycle lengths that is at least the
    // longest tail. Huge values are kept only modulo the cycle lengths (they
    // are multiples of all of them).
    struct Exponent {
      bool          huge  = false;
      std::uint64_t value = 1;
    };

    inline Exponent idempotent_exponent(std::vector<std::vector<elem_t>> const& maps) {
      std::uint64_t l = 1;
      std::size_t   tail = 0;
      bool          huge = false;
      for (auto const& m : maps) {
        for (std::size_t y = 0; y < m.size(); ++y) {
          auto const o = orbit(m, static_cast<elem_t>(y));
          tail         = std::max(tail, o.tail);
          if (!huge) {
            l = std::lcm(l, static_cast<std::uint64_t>(o.cycle()));
            if (l > (std::uint64_t(1) << 40)) {
              huge = true;
            }
          }
        }
      }
      if (huge) {
        return {true, 0};
      }
      std::uint64_t const need = std::max<std::uint64_t>(tail, 1);
      return {false, l * ((need + l - 1) / l)};
    }

    // map^(M + offset)(y), offset in {0, -1}.
    inline elem_t walk(std::vector<elem_t> const& map,
                       elem_t                     y,
                       Exponent                   m,
                       int                        offset) {
      auto const o = orbit(map, y);
      auto const c = static_cast<std::int64_t>(o.cycle());
      auto const t = static_cast<std::int64_t>(o.tail);
      if (!m.huge) {
        auto const s = static_cast<std::int64_t>(m.value) + offset;
        if (s < static_cast<std::int64_t>(o.seq.size())) {
          return o.seq[static_cast<std::size_t>(s)];
        }
        return o.seq[static_cast<std::size_t>(t + (s - t) % c)];
      }
      auto const r = ((offset - t) % c + c) % c;
      return o.seq[static_cast<std::size_t>(t + r)];
    }

    inline OpTable compose_f_pipeline(Algebra const&                 alg,
                                      std::vector<EdgeInfo const*> const& sl) {
      std::size_t const n = alg.size();
      OpTable           fi = OpTable::projection("f", 2, n, 0);
      bool              first = true;
      for (auto const* e : sl) {
        auto const term = semilattice_term(*e);
        if (!term) {
          throw internal_error("semilattice edge without a witness term");
        }
        auto const t = term_table(alg, *term, 2, "f");
        if (first) {
          fi    = t;
          first = false;
          continue;
        }
        fi = OpTable::from_function("f", 2, n, [&](auto x) {
          return t(fi(x[0], x[1]), fi(x[1], x[0]));
        });
      }
      // The idempotent power in the second variable turns affine binary
      // behaviour into a projection, and the final twist makes every
      // projection the first one.
      std::vector<std::vector<elem_t>> maps(n, std::vector<elem_t>(n));
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          maps[x][y] = fi(static_cast<elem_t>(x), static_cast<elem_t>(y));
        }
      }
      auto const m  = idempotent_exponent(maps);
      auto const fp = OpTable::from_function("f", 2, n, [&](auto x) {
        return walk(maps[x[0]], x[1], m, 0);
      });
      return OpTable::from_function(
          "f", 2, n, [&](auto x) { return fp(fp(x[0], x[1]), x[0]); });
    }

    // Applies t(f(x,f(y,z)), f(y,f(z,x)), f(z,f(x,y))).
    inline OpTable symmetrize(OpTable const& t, OpTable const& f, std::string name) {
      return OpTable::from_function(std::move(name), 3, t.size(), [&](auto x) {
        return t(f(x[0], f(x[1], x[2])),
                 f(x[1], f(x[2], x[0])),
                 f(x[2], f(x[0], x[1])));
      });
    }

    inline std::optional<OpTable>
    compose_g_pipeline(Algebra const&                 alg,
                       std::vector<StrictEdge> const& edges,
                       std::vector<EdgeInfo> const&   infos,
                       OpTable const&                 f,
                       ClosureBudget                  budget) {
      std::size_t const               n = alg.size();
      std::optional<OpTable>          gc;
      std::vector<StrictEdge const*>  maj, aff;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        auto const& e = edges[i];
        if (e.type == EdgeType::affine) {
          aff.push_back(&e);
          continue;
        }
        if (e.type != EdgeType::majority) {
          continue;
        }
        maj.push_back(&e);
        auto const& term = infos[i].of(EdgeType::majority).term;
        if (!term) {
          throw internal_error("majority edge without a witness term");
        }
        auto const t = term_table(alg, *term, 3, "g");
        if (!gc) {
          gc = t;
          continue;
        }
        if (check_g_condition(e, i, f, *gc).pass) {
          continue;
        }
        // p(x, y) = gc with x in position s and y elsewhere; it must be the
        // first projection on {a', b'} of the new edge.
        std::optional<std::size_t> pos;
        for (std::size_t s = 0; s < 3 && !pos; ++s) {
          auto p = [&](elem_t x, elem_t y) {
            TupleVec args(3, y);
            args[s] = x;
            return (*gc)(std::span<elem_t const>(args));
          };
          if (e.label[p(e.a, e.b)] == e.la() && e.label[p(e.b, e.a)] == e.lb()) {
            pos = s;
          }
        }
        if (!pos) {
          return std::nullopt;
        }
        OpTable const prev = *gc;
        gc = OpTable::from_function("g", 3, n, [&](auto x) {
          TupleVec args(3, prev(x[0], x[1], x[2]));
          args[*pos] = t(x[0], x[1], x[2]);
          return prev(std::span<elem_t const>(args));
        });
      }
      if (!gc) {
        gc = OpTable::projection("g", 3, n, 0);
      }
      bool need_fix = false;
      for (auto const* e : aff) {
        std::size_t const idx = static_cast<std::size_t>(e - edges.data());
        if (!check_g_condition(*e, idx, f, *gc).pass) {
          need_fix = true;
        }
      }
      if (need_fix) {
        // p(x, y) = y on majority edges and x on affine quotients
        std::vector<std::pair<StrictEdge const*, bool>> picks;
        for (auto const* e : maj) {
          picks.emplace_back(e, false);
        }
        auto p = binary_selector(alg, picks, aff, {}, budget);
        if (!p) {
          return std::nullopt;
        }
        OpTable const prev = *gc;
        gc                 = OpTable::from_function(
            "g", 3, n, [&](auto x) { return (*p)(x[0], prev(x[0], x[1], x[2])); });
      }
      return symmetrize(*gc, f, "g");
    }

    inline std::optional<OpTable>
    compose_h_pipeline(Algebra const&                 alg,
                       std::vector<StrictEdge> const& edges,
                       std::vector<EdgeInfo> const&   infos,
                       OpTable const&                 f,
                       OpTable const&                 g,
                       ClosureBudget                  budget) {
      std::size_t const              n = alg.size();
      std::optional<OpTable>         hc;
      std::vector<StrictEdge const*> done;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        auto const& e = edges[i];
        if (e.type != EdgeType::affine) {
          continue;
        }
        auto const t
            = term_table(alg, infos[i].of(EdgeType::affine).certificate->term, 3, "h");
        if (!hc) {
          hc = t;
          done.push_back(&e);
          continue;
        }
        if (!check_h_condition(e, i, f, *hc).pass) {
          // q(x, y) = x on the new quotient and y on the earlier ones
          auto q = binary_selector(alg, {}, {&e}, done, budget);
          if (!q) {
            return std::nullopt;
          }
          OpTable const prev = *hc;
          hc                 = OpTable::from_function("h", 3, n, [&](auto x) {
            return (*q)(t(x[0], x[1], x[2]), prev(x[0], x[1], x[2]));
          });
        }
        done.push_back(&e);
      }
      if (!hc) {
        hc = OpTable::projection("h", 3, n, 0);
      }
      // g(x, y, y) is the second projection on majority edges and the first
      // on affine ones, so g(hc, x, x) is the first projection on majority
      // edges and keeps hc on affine ones.
      OpTable const hbar = OpTable::from_function("h", 3, n, [&](auto x) {
        elem_t const v = (*hc)(x[0], x[1], x[2]);
        return g(v, x[0], x[0]);
      });
      return symmetrize(hbar, f, "h");
    }

    inline std::optional<OpTable> search_f(Algebra const&                 alg,
                                           std::vector<StrictEdge> const& edges,
                                           ClosureBudget                  budget,
                                           ClosureStatus&                 status) {
      RowGoal rg(2);
      for (auto const& e : edges) {
        if (e.type == EdgeType::semilattice) {
          auto const both = class_union(e, e.la(), e.lb());
          rg.require_in({e.a, e.b}, both);
          rg.require_in({e.b, e.a}, both);
          rg.require_equivalent({e.a, e.b}, {e.b, e.a}, e.label);
        } else {
          rg.require_in({e.a, e.b}, e.members(e.la()));
          rg.require_in({e.b, e.a}, e.members(e.lb()));
        }
      }
      return rg.search(alg, "f", budget, &status);
    }

    inline std::optional<OpTable> search_ternary(Algebra const&                 alg,
                                                 std::vector<StrictEdge> const& edges,
                                                 char                           op,
                                                 OpTable const&                 f,
                                                 ClosureBudget                  budget,
                                                 ClosureStatus&                 status) {
      RowGoal rg(3);
      for (auto const& e : edges) {
        add_requirements(rg, e, ternary_requirements(e, op, f));
      }
      return rg.search(alg, std::string(1, op), budget, &status);
    }

    inline std::string fallback_source(ClosureStatus s) {
      return s == ClosureStatus::capped ? "capped" : "absent";
    }

    inline bool all_pass(std::vector<StrictEdge> const& edges,
                         char                           op,
                         OpTable const&                 f,
                         OpTable const&                 t) {
      for (std::size_t i = 0; i < edges.size(); ++i) {
        ConditionCheck c = op == 'f'   ? check_f_condition(edges[i], i, t)
                           : op == 'g' ? check_g_condition(edges[i], i, f, t)
                                       : check_h_condition(edges[i], i, f, t);
        if (!c.pass) {
          return false;
        }
      }
      return true;
    }
  }  // namespace detail

  // Builds f, g, h following the merge recurrences over the strict edges,
  // then falls back to a direct term search for any operation whose
  // conditions fail. The returned matrix records the final verdict.
  inline UnifiedOps synth_unified(Algebra const&               alg,
                                  std::vector<EdgeInfo> const& pairs,
                                  ClosureBudget                budget = {}) {
    std::size_t const     n = alg.size();
    UnifiedOps            out;
    std::vector<EdgeInfo> infos;
    for (auto const& e : pairs) {
      auto const s = e.strict();
      if (s == Strictness::unknown) {
        ++out.unresolved_pairs;
      } else if (s != Strictness::none) {
        infos.push_back(e);
      }
    }
    out.edges = strict_edges(infos, n);

    std::vector<EdgeInfo const*> sl;
    for (auto const& e : infos) {
      if (e.strict() == Strictness::semilattice) {
        sl.push_back(&e);
      }
    }
    out.f = detail::compose_f_pipeline(alg, sl);
    if (!detail::all_pass(out.edges, 'f', out.f, out.f)) {
      ClosureStatus st;
      if (auto f = detail::search_f(alg, out.edges, budget, st)) {
        out.f         = *f;
        out.source[0] = "search";
      } else {
        out.source[0] = detail::fallback_source(st);
      }
    }

    auto g = detail::compose_g_pipeline(alg, out.edges, infos, out.f, budget);
    if (g && detail::all_pass(out.edges, 'g', out.f, *g)) {
      out.g = *g;
    } else {
      ClosureStatus st;
      if (auto s = detail::search_ternary(alg, out.edges, 'g', out.f, budget, st)) {
        out.g         = *s;
        out.source[1] = "search";
      } else {
        out.g         = g ? *g : OpTable::projection("g", 3, n, 0);
        out.source[1] = detail::fallback_source(st);
      }
    }

    auto h = detail::compose_h_pipeline(alg, out.edges, infos, out.f, out.g, budget);
    if (h && detail::all_pass(out.edges, 'h', out.f, *h)) {
      out.h = *h;
    } else {
      ClosureStatus st;
      if (auto s = detail::search_ternary(alg, out.edges, 'h', out.f, budget, st)) {
        out.h         = *s;
        out.source[2] = "search";
      } else {
        out.h         = h ? *h : OpTable::projection("h", 3, n, 0);
        out.source[2] = detail::fallback_source(st);
      }
    }
    out.matrix = condition_matrix(out.edges, out.f, out.g, out.h);
    return out;
  }

  inline UnifiedOps synth_unified(Algebra const&   alg,
                                  EdgeGraph const& graph,
                                  ClosureBudget    budget = {}) {
    return synth_unified(alg, graph.pairs(), budget);
  }

  ////////////////////////////////////////////////////////////////////////////
  // Identities
  ////////////////////////////////////////////////////////////////////////////

  struct IdentityViolation {
    std::string identity;
    elem_t      x = 0;
    elem_t      y = 0;
  };

  // f(x,f(x,y)) = f(x,y), g(x,g(x,y,y),g(x,y,y)) = g(x,y,y) and
  // h(h(x,y,y),y,y) = h(x,y,y) for all x, y.
  inline std::optional<IdentityViolation>
  identity_violation(OpTable const& f, OpTable const& g, OpTable const& h) {
    std::size_t const n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto const x = static_cast<elem_t>(i), y = static_cast<elem_t>(j);
        if (f(x, f(x, y)) != f(x, y)) {
          return IdentityViolation{"f(x,f(x,y))=f(x,y)", x, y};
        }
        elem_t const gy = g(x, y, y);
        if (g(x, gy, gy) != gy) {
          return IdentityViolation{"g(x,g(x,y,y),g(x,y,y))=g(x,y,y)", x, y};
        }
        elem_t const hx = h(x, y, y);
        if (h(hx, y, y) != hx) {
          return IdentityViolation{"h(h(x,y,y),y,y)=h(x,y,y)", x, y};
        }
      }
    }
    return std::nullopt;
  }

  // Replaces f by x -> F_x^M, g by g(x, G_x^(M-1) y, G_x^(M-1) z) and h by
  // h(H_y^(M-1) x, y, z), with F_x = f(x, -), G_x = g(x, -, -) and
  // H_y = h(-, y, y), M making every such map idempotent.
  inline UnifiedOps enforce_identities(UnifiedOps ops, Algebra const& alg) {
    std::size_t const                n = alg.size();
    std::vector<std::vector<elem_t>> fm(n, std::vector<elem_t>(n)), gm = fm, hm = fm;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto const x = static_cast<elem_t>(i), y = static_cast<elem_t>(j);
        fm[i][j]     = ops.f(x, y);
        gm[i][j]     = ops.g(x, y, y);
        hm[i][j]     = ops.h(y, x, x);  // hm[y][x] = H_y(x)
      }
    }
    auto const mf = detail::idempotent_exponent(fm);
    auto const mg = detail::idempotent_exponent(gm);
    auto const mh = detail::idempotent_exponent(hm);
    OpTable const f = ops.f, g = ops.g, h = ops.h;
    ops.f = OpTable::from_function("f", 2, n, [&](auto x) {
      return detail::walk(fm[x[0]], x[1], mf, 0);
    });
    ops.g = OpTable::from_function("g", 3, n, [&](auto x) {
      return g(x[0],
               detail::walk(gm[x[0]], x[1], mg, -1),
               detail::walk(gm[x[0]], x[2], mg, -1));
    });
    ops.h = OpTable::from_function("h", 3, n, [&](auto x) {
      return h(detail::walk(hm[x[1]], x[0], mh, -1), x[1], x[2]);
    });
    if (auto v = identity_violation(ops.f, ops.g, ops.h)) {
      throw internal_error("identity " + v->identity + " fails at x="
                           + std::to_string(v->x) + ", y=" + std::to_string(v->y)
                           + " after enforcement");
    }
    ops.matrix = condition_matrix(ops.edges, ops.f, ops.g, ops.h);
    return ops;
  }

  ////////////////////////////////////////////////////////////////////////////
  // The good semilattice operation
  ////////////////////////////////////////////////////////////////////////////

  struct GoodOperation {
    OpTable     f;
    std::size_t iterations = 0;
    bool        verified   = false;
    std::string detail;
  };

  // The first pair (a, b) with f(a,b) = c != a and not f(a,c) = f(c,a) = c.
  inline std::optional<std::pair<elem_t, elem_t>> good_violation(OpTable const& f) {
    std::size_t const n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto const a = static_cast<elem_t>(i), b = static_cast<elem_t>(j);
        elem_t const c = f(a, b);
        if (c != a && (f(a, c) != c || f(c, a) != c)) {
          return std::make_pair(a, b);
        }
      }
    }
    return std::nullopt;
  }

  // Iterates f_{i+1}(x,y) = f(x, f(f_i(x,y), x)) from f_0 = ops.f until every
  // non-trivial step x -> f(x, y) is a thin semilattice edge, keeping the
  // f conditions on strict edges.
  inline GoodOperation good_f(Algebra const& alg, UnifiedOps const& ops) {
    std::size_t const n = alg.size();
    OpTable const&    f = ops.f;
    GoodOperation     out{f, 0, false, ""};
    for (std::size_t it = 0; it <= n + 1; ++it) {
      auto const bad = good_violation(out.f);
      bool       keeps = detail::all_pass(ops.edges, 'f', out.f, out.f);
      if (!bad && keeps) {
        out.iterations = it;
        out.verified   = true;
        out.detail.clear();
        return out;
      }
      out.detail = bad ? "f(" + std::to_string(bad->first) + ","
                             + std::to_string(bad->second)
                             + ") is neither the first argument nor a thin "
                               "semilattice successor"
                       : "edge conditions on f lost";
      OpTable const prev = out.f;
      out.f = OpTable::from_function("f", 2, n, [&](auto x) {
        return f(x[0], f(prev(x[0], x[1]), x[0]));
      });
      out.iterations = it + 1;
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Thin edges
  ////////////////////////////////////////////////////////////////////////////

  struct ThinEdge {
    EdgeType               kind = EdgeType::semilattice;
    elem_t                 from = 0;
    elem_t                 to   = 0;
    std::optional<Term>    witness;  // g' (majority) or h' (affine)
    std::optional<OpTable> witness_table;
    // Blocks (elements of A) of the congruence of Sg{from, to} behind the
    // edge; singletons for semilattice edges.
    std::vector<std::vector<elem_t>> theta;

    bool operator==(ThinEdge const& o) const {
      return kind == o.kind && from == o.from && to == o.to;
    }
  };

  // Ordered pairs a != b with f(a,b) = f(b,a) = b.
  inline std::vector<ThinEdge> thin_semilattice_edges(Algebra const& alg,
                                                      OpTable const& f) {
    std::vector<ThinEdge> out;
    std::size_t const     n = alg.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto const a = static_cast<elem_t>(i), b = static_cast<elem_t>(j);
        if (a != b && f(a, b) == b && f(b, a) == b) {
          ThinEdge e{EdgeType::semilattice, a, b, std::nullopt, std::nullopt, {}};
          for (auto x : generated_subuniverse(alg, {a, b})) {
            e.theta.push_back({x});
          }
          out.push_back(std::move(e));
        }
      }
    }
    return out;
  }

  // Outcome of testing one directed pair against the thin conditions:
  //   (b) to is in Sg{from, c} for every c in the class of to,
  //   (c) the unified operation sends the pair to `to`,
  //   (d) a witness term exists.
  struct ThinCheck {
    bool                   closure = false;
    bool                   unified = false;
    Answer                 witness = Answer::no;
    std::optional<Term>    term;
    std::optional<OpTable> table;

    bool holds() const {
      return closure && unified && witness == Answer::yes;
    }
  };

  namespace detail {
    inline bool class_closure(Algebra const&             alg,
                              elem_t                     from,
                              elem_t                     to,
                              std::vector<elem_t> const& cls) {
      for (auto c : cls) {
        auto const s = generated_subuniverse(alg, {from, c});
        if (!std::binary_search(s.begin(), s.end(), to)) {
          return false;
        }
      }
      return true;
    }

    inline elem_t other_end(EdgeInfo const& e, elem_t from) {
      if (from == e.a) {
        return e.b;
      }
      if (from == e.b) {
        return e.a;
      }
      throw error("element " + std::to_string(from) + " is not an end of the edge");
    }

    inline ThinCheck check_thin(Algebra const&  alg,
                                EdgeInfo const& e,
                                EdgeType        kind,
                                OpTable const&  unified,
                                elem_t          from,
                                elem_t          to,
                                ClosureBudget   budget) {
      if (!e.has(kind)) {
        throw error(std::string("pair is not a ") + to_string(kind) + " edge");
      }
      ThinCheck  c;
      auto const cls = e.theta_class(kind, other_end(e, from));
      if (!std::binary_search(cls.begin(), cls.end(), to)) {
        throw error("target is not in the class of the opposite end");
      }
      c.closure = class_closure(alg, from, to, cls);
      c.unified = kind == EdgeType::majority ? unified(from, to, to) == to
                                             : unified(to, from, from) == to;
      if (!c.closure) {
        return c;
      }
      TermSearchResult r;
      if (kind == EdgeType::majority) {
        r = search_term_target(
            alg, 3, {{from, to, to}, {to, from, to}, {to, to, from}}, {to, to, to}, budget);
      } else {
        r = search_term_target(alg, 3, {{to, from, from}, {from, from, to}}, {to, to}, budget);
      }
      c.witness = to_answer(r.membership());
      if (r.term) {
        c.term  = r.term;
        c.table = term_table(alg, *r.term, 3, kind == EdgeType::majority ? "g'" : "h'");
      }
      return c;
    }

    inline ThinEdge to_thin_edge(EdgeInfo const&  e,
                                 EdgeType         kind,
                                 elem_t           from,
                                 elem_t           to,
                                 ThinCheck const& c) {
      return ThinEdge{kind, from, to, c.term, c.table, e.theta_blocks(kind)};
    }
  }  // namespace detail

  // Whether from -> to is a thin majority edge; e is the classification of
  // {from, to} or of an edge with `to` in the class opposite `from`.
  inline ThinCheck check_thin_majority(Algebra const&  alg,
                                       EdgeInfo const& e,
                                       OpTable const&  g,
                                       elem_t          from,
                                       elem_t          to,
                                       ClosureBudget   budget = {}) {
    return detail::check_thin(alg, e, EdgeType::majority, g, from, to, budget);
  }

  inline ThinCheck check_thin_affine(Algebra const&  alg,
                                     EdgeInfo const& e,
                                     OpTable const&  h,
                                     elem_t          from,
                                     elem_t          to,
                                     ClosureBudget   budget = {}) {
    return detail::check_thin(alg, e, EdgeType::affine, h, from, to, budget);
  }

  struct ThinSearch {
    Answer                  status = Answer::no;
    std::optional<ThinEdge> edge;
    // Candidates that satisfy everything except the unified-operation
    // condition.
    std::vector<elem_t> unified_only_failures;
  };

  namespace detail {
    inline ThinSearch find_thin(Algebra const&  alg,
                                EdgeInfo const& e,
                                EdgeType        kind,
                                OpTable const&  unified,
                                elem_t          from,
                                ClosureBudget   budget) {
      ThinSearch out;
      if (!e.has(kind)) {
        return out;
      }
      bool unknown = false;
      for (auto to : e.theta_class(kind, other_end(e, from))) {
        auto const c = check_thin(alg, e, kind, unified, from, to, budget);
        if (c.holds()) {
          out.status = Answer::yes;
          out.edge   = to_thin_edge(e, kind, from, to, c);
          return out;
        }
        if (c.closure && c.witness == Answer::yes && !c.unified) {
          out.unified_only_failures.push_back(to);
        }
        if (c.closure && c.witness == Answer::unknown) {
          unknown = true;
        }
      }
      out.status = unknown ? Answer::unknown : Answer::no;
      return out;
    }
  }  // namespace detail

  // The least b' in the class of the opposite end such that from -> b' is a
  // thin majority edge. Absent when the pair has no majority type.
  inline ThinSearch find_thin_majority(Algebra const&  alg,
                                       EdgeInfo const& e,
                                       OpTable const&  g,
                                       elem_t          from,
                                       ClosureBudget   budget = {}) {
    return detail::find_thin(alg, e, EdgeType::majority, g, from, budget);
  }

  inline ThinSearch find_thin_affine(Algebra const&  alg,
                                     EdgeInfo const& e,
                                     OpTable const&  h,
                                     elem_t          from,
                                     ClosureBudget   budget = {}) {
    return detail::find_thin(alg, e, EdgeType::affine, h, from, budget);
  }

  // Every thin edge of the algebra: semilattice arcs from f, majority and
  // affine arcs from the pairs of those types in both directions.
  struct ThinEdges {
    std::vector<ThinEdge> arcs;
    bool                  unknown = false;  // some witness search was capped
  };

  inline ThinEdges all_thin_edges(Algebra const&   alg,
                                  EdgeGraph const& graph,
                                  OpTable const&   f,
                                  OpTable const&   g,
                                  OpTable const&   h,
                                  ClosureBudget    budget = {}) {
    ThinEdges out;
    out.arcs = thin_semilattice_edges(alg, f);
    for (auto const& e : graph.pairs()) {
      for (auto kind : {EdgeType::majority, EdgeType::affine}) {
        if (!e.has(kind)) {
          continue;
        }
        OpTable const& u = kind == EdgeType::majority ? g : h;
        for (auto [from, to] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
          auto const c = detail::check_thin(alg, e, kind, u, from, to, budget);
          if (c.holds()) {
            out.arcs.push_back(detail::to_thin_edge(e, kind, from, to, c));
          } else if (c.closure && c.unified && c.witness == Answer::unknown) {
            out.unknown = true;
          }
        }
      }
    }
    std::sort(out.arcs.begin(), out.arcs.end(), [](auto const& l, auto const& r) {
      return std::tie(l.from, l.to, l.kind) < std::tie(r.from, r.to, r.kind);
    });
    return out;
  }

  // For every semilattice pair, oriented by f, and every c in the lower
  // class there is d in the upper class with f(c,d) = f(d,c) = d. Returns
  // the failures as text.
  inline std::vector<std::string> thick_to_thin_failures(EdgeGraph const& graph,
                                                         OpTable const&   f) {
    std::vector<std::string> out;
    for (auto const& e : graph.pairs()) {
      if (!e.has(EdgeType::semilattice)) {
        continue;
      }
      auto const ca = e.theta_class(EdgeType::semilattice, e.a);
      auto const cb = e.theta_class(EdgeType::semilattice, e.b);
      auto const in = [](std::vector<elem_t> const& c, elem_t x) {
        return std::binary_search(c.begin(), c.end(), x);
      };
      elem_t const u = f(e.a, e.b), v = f(e.b, e.a);
      std::vector<elem_t> const* lower = nullptr;
      std::vector<elem_t> const* upper = nullptr;
      if (in(cb, u) && in(cb, v)) {
        lower = &ca;
        upper = &cb;
      } else if (in(ca, u) && in(ca, v)) {
        lower = &cb;
        upper = &ca;
      } else {
        out.push_back("f is not a semilattice operation on the classes of "
                      + std::to_string(e.a) + "," + std::to_string(e.b));
        continue;
      }
      for (auto c : *lower) {
        bool found = false;
        for (auto d : *upper) {
          if (f(c, d) == d && f(d, c) == d) {
            found = true;
            break;
          }
        }
        if (!found) {
          out.push_back("edge " + std::to_string(e.a) + "," + std::to_string(e.b)
                        + ": no thin successor of " + std::to_string(c));
        }
      }
    }
    return out;
  }

  // Everything the connectivity analysis needs: enforced unified
  // operations, the good f and the thin edges built from them.
  struct ThinAnalysis {
    EdgeGraph     graph;
    UnifiedOps    ops;
    GoodOperation good;
    ThinEdges     thin;
  };

  inline ThinAnalysis thin_analysis(Algebra const&   alg,
                                    EdgeGraph const& graph,
                                    ClosureBudget    budget = {}) {
    ThinAnalysis out;
    out.graph = graph;
    out.ops   = enforce_identities(synth_unified(alg, graph, budget), alg);
    out.good  = good_f(alg, out.ops);
    out.thin  = all_thin_edges(alg, graph, out.good.f, out.ops.g, out.ops.h, budget);
    return out;
  }

  inline ThinAnalysis thin_analysis(Algebra const& alg, ClosureBudget budget = {}) {
    return thin_analysis(alg, edge_graph(alg, budget), budget);
  }

  ////////////////////////////////////////////////////////////////////////////
  // Witnesses across algebras of one signature
  ////////////////////////////////////////////////////////////////////////////

  enum class CrossLemma {
    majority_triple,
    majority_semilattice,
    affine_affine,
    affine_semilattice,
    affine_majority
  };

  inline char const* to_string(CrossLemma l) {
    switch (l) {
      case CrossLemma::majority_triple:
        return "majority-triple";
      case CrossLemma::majority_semilattice:
        return "majority-semilattice";
      case CrossLemma::affine_affine:
        return "affine-affine";
      case CrossLemma::affine_semilattice:
        return "affine-semilattice";
      case CrossLemma::affine_majority:
        return "affine-majority";
    }
    return "?";
  }

  struct CrossWitness {
    Answer              status = Answer::no;
    std::optional<Term> term;
    CrossLemma          lemma = CrossLemma::majority_triple;
  };

  namespace detail {
    // Searches the product of algs for target in the subuniverse generated
    // by gens (gens[j][i] is coordinate i of generator j) and re-checks the
    // term in every factor.
    inline std::pair<Answer, std::optional<Term>>
    product_witness(std::vector<Algebra> const&             algs,
                    std::vector<std::vector<elem_t>> const& gens,
                    std::vector<elem_t> const&              target,
                    ClosureBudget                           budget) {
      auto const               prod = product_algebra(algs);
      std::vector<std::size_t> sizes;
      for (auto const& a : algs) {
        sizes.push_back(a.size());
      }
      TupleVec row;
      for (auto const& g : gens) {
        row.push_back(static_cast<elem_t>(product_encode(sizes, g)));
      }
      auto const code = static_cast<elem_t>(product_encode(sizes, target));
      auto r = search_term_target(prod, gens.size(), {row}, {code}, budget);
      if (!r.term) {
        return {to_answer(r.membership()), std::nullopt};
      }
      for (std::size_t i = 0; i < algs.size(); ++i) {
        TupleVec args;
        for (auto const& g : gens) {
          args.push_back(g[i]);
        }
        if (evaluate_term(algs[i], *r.term, args) != target[i]) {
          throw internal_error("cross witness " + r.term->to_string()
                               + " fails in factor " + algs[i].name());
        }
      }
      return {Answer::yes, r.term};
    }

    inline void expect_kind(ThinEdge const& e, EdgeType k, CrossLemma l) {
      if (e.kind != k) {
        throw error(std::string(to_string(l)) + " witness needs a "
                    + to_string(k) + " thin edge, got " + to_string(e.kind));
      }
    }
  }  // namespace detail

  // A ternary term t with t(a1,b1,b1) = b1, t(b2,a2,b2) = b2 and
  // t(b3,b3,a3) = b3 for thin majority edges ai -> bi.
  inline CrossWitness witness_majority_triple(Algebra const&  a1,
                                              ThinEdge const& e1,
                                              Algebra const&  a2,
                                              ThinEdge const& e2,
                                              Algebra const&  a3,
                                              ThinEdge const& e3,
                                              ClosureBudget   budget = {}) {
    CrossLemma const l = CrossLemma::majority_triple;
    for (auto const* e : {&e1, &e2, &e3}) {
      detail::expect_kind(*e, EdgeType::majority, l);
    }
    auto [st, t] = detail::product_witness(
        {a1, a2, a3},
        {{e1.from, e2.to, e3.to}, {e1.to, e2.from, e3.to}, {e1.to, e2.to, e3.from}},
        {e1.to, e2.to, e3.to},
        budget);
    return {st, t, l};
  }

  // Witnesses for a thin edge e1 -> in a1 and e2 in a2:
  //   majority_semilattice  t(a,b) = b, t(d,c) = d   (a->b majority, c<=d)
  //   affine_affine         t(b,a,a) = b, t(c,c,d) = d
  //   affine_semilattice    t(b,a) = b, t(c,d) = d   (a->b affine, c<=d)
  //   affine_majority       t(b,a) = b, t(c,d) = d   (a->b affine, c->d majority)
  inline CrossWitness witness_mixed(CrossLemma      lemma,
                                    Algebra const&  a1,
                                    ThinEdge const& e1,
                                    Algebra const&  a2,
                                    ThinEdge const& e2,
                                    ClosureBudget   budget = {}) {
    elem_t const a = e1.from, b = e1.to, c = e2.from, d = e2.to;
    std::vector<std::vector<elem_t>> gens;
    switch (lemma) {
      case CrossLemma::majority_semilattice:
        detail::expect_kind(e1, EdgeType::majority, lemma);
        detail::expect_kind(e2, EdgeType::semilattice, lemma);
        gens = {{a, d}, {b, c}};
        break;
      case CrossLemma::affine_affine:
        detail::expect_kind(e1, EdgeType::affine, lemma);
        detail::expect_kind(e2, EdgeType::affine, lemma);
        gens = {{b, c}, {a, c}, {a, d}};
        break;
      case CrossLemma::affine_semilattice:
        detail::expect_kind(e1, EdgeType::affine, lemma);
        detail::expect_kind(e2, EdgeType::semilattice, lemma);
        gens = {{b, c}, {a, d}};
        break;
      case CrossLemma::affine_majority:
        detail::expect_kind(e1, EdgeType::affine, lemma);
        detail::expect_kind(e2, EdgeType::majority, lemma);
        gens = {{b, c}, {a, d}};
        break;
      default:
        throw error("use witness_majority_triple for three majority edges");
    }
    auto [st, t] = detail::product_witness({a1, a2}, gens, {b, d}, budget);
    return {st, t, lemma};
  }

}  // namespace agraph

#endif  // AGRAPH_THIN_HPP_
