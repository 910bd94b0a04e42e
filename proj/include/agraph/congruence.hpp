// agraph - edge structure of finite idempotent algebras
//
// Congruences and tolerances of small algebras.
//
// Principal congruences are computed by closing a union-find structure under
// unary translations x -> f(c_1, ..., x, ..., c_k): every pair merged so far is
// pushed through every translation, and the images are merged in turn.

#ifndef AGRAPH_CONGRUENCE_HPP_
#define AGRAPH_CONGRUENCE_HPP_

#include <algorithm>  // for sort, unique, all_of
#include <cstddef>    // for size_t
#include <set>        // for set
#include <string>     // for string
#include <utility>    // for pair
#include <vector>     // for vector

#include "core.hpp"       // for Algebra, elem_t, next_tuple
#include "error.hpp"      // for error, internal_error
#include "partition.hpp"  // for Partition, UnionFind
#include "subpower.hpp"   // for SubUniverse, generate_subuniverse

namespace agraph {

  inline constexpr std::size_t max_congruence_enumeration_size = 12;
  inline constexpr std::size_t max_tolerance_enumeration_size  = 5;

  namespace detail {
    inline void check_partition_size(Algebra const& alg, Partition const& p) {
      if (p.size() != alg.size()) {
        throw error("partition on " + std::to_string(p.size())
                    + " elements does not match algebra of size "
                    + std::to_string(alg.size()));
      }
    }

    // Calls fn(op, position, context) for every unary translation; context
    // holds the fixed arguments with the free slot at `position`.
    template <typename Fn>
    void for_each_translation(Algebra const& alg, Fn&& fn) {
      std::size_t const n = alg.size();
      for (auto const& op : alg.ops()) {
        std::size_t const k = op.arity();
        for (std::size_t pos = 0; pos < k; ++pos) {
          std::vector<elem_t> ctx(k, 0);
          do {
            if (ctx[pos] != 0) {
              continue;  // the free slot is enumerated by the caller
            }
            fn(op, pos, ctx);
          } while (next_tuple(ctx, n));
        }
      }
    }
  }  // namespace detail

  // Exhaustive compatibility check through unary translations: a partition is
  // a congruence iff every translation maps related elements to related ones.
  inline bool is_congruence(Algebra const& alg, Partition const& p) {
    detail::check_partition_size(alg, p);
    std::size_t const n  = alg.size();
    bool              ok = true;
    detail::for_each_translation(
        alg, [&](OpTable const& op, std::size_t pos, std::vector<elem_t> ctx) {
          if (!ok) {
            return;
          }
          for (std::size_t x = 0; x < n && ok; ++x) {
            std::size_t const r = p.block_id(x);
            if (r == x) {
              continue;
            }
            ctx[pos]       = static_cast<elem_t>(x);
            elem_t const u = op(ctx);
            ctx[pos]       = static_cast<elem_t>(r);
            elem_t const v = op(ctx);
            ok             = p.related(u, v);
          }
        });
    return ok;
  }

  // Least congruence containing every given pair.
  inline Partition
  congruence_generated(Algebra const&                                   alg,
                       std::vector<std::pair<elem_t, elem_t>> const& pairs) {
    std::size_t const n = alg.size();
    UnionFind         uf(n);
    std::vector<std::pair<elem_t, elem_t>> queue;
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) {
        throw error("element out of range");
      }
      if (uf.unite(a, b)) {
        queue.emplace_back(a, b);
      }
    }
    // Translation tables are built once: trans[t][x] is the image of x.
    std::vector<std::vector<elem_t>> trans;
    if (!queue.empty()) {
      std::set<std::vector<elem_t>> seen;
      detail::for_each_translation(
          alg, [&](OpTable const& op, std::size_t pos, std::vector<elem_t> ctx) {
            std::vector<elem_t> img(n);
            for (std::size_t x = 0; x < n; ++x) {
              ctx[pos] = static_cast<elem_t>(x);
              img[x]   = op(ctx);
            }
            bool identity = true;
            for (std::size_t x = 0; x < n; ++x) {
              identity = identity && img[x] == x;
            }
            if (!identity && seen.insert(img).second) {
              trans.push_back(std::move(img));
            }
          });
    }
    for (std::size_t q = 0; q < queue.size(); ++q) {
      auto [a, b] = queue[q];
      for (auto const& t : trans) {
        if (uf.unite(t[a], t[b])) {
          queue.emplace_back(t[a], t[b]);
        }
      }
    }
    return Partition::from_union_find(uf);
  }

  inline Partition principal_congruence(Algebra const& alg, elem_t a, elem_t b) {
    return congruence_generated(alg, {{a, b}});
  }

  // Finer partitions first (more blocks), then lexicographic block ids.
  inline bool congruence_order_less(Partition const& l, Partition const& r) {
    auto const nl = l.number_of_blocks();
    auto const nr = r.number_of_blocks();
    if (nl != nr) {
      return nl > nr;
    }
    return l.block_ids() < r.block_ids();
  }

  // The whole congruence lattice, sorted by congruence_order_less (so 0_A
  // comes first and 1_A last).
  inline std::vector<Partition> all_congruences(Algebra const& alg) {
    std::size_t const n = alg.size();
    if (n > max_congruence_enumeration_size) {
      throw error("congruence enumeration is limited to algebras with at most "
                  + std::to_string(max_congruence_enumeration_size)
                  + " elements");
    }
    std::set<Partition> found{Partition::equality(n)};
    std::vector<Partition> principal;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        auto p = principal_congruence(
            alg, static_cast<elem_t>(a), static_cast<elem_t>(b));
        if (found.insert(p).second) {
          principal.push_back(p);
        }
      }
    }
    // every congruence is a join of principal ones
    std::vector<Partition> frontier(found.begin(), found.end());
    while (!frontier.empty()) {
      std::vector<Partition> next;
      for (auto const& p : frontier) {
        for (auto const& q : principal) {
          auto j = p.join(q);
          if (found.insert(j).second) {
            next.push_back(std::move(j));
          }
        }
      }
      frontier = std::move(next);
    }
    std::vector<Partition> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), congruence_order_less);
    for (auto const& p : out) {
      if (!is_congruence(alg, p)) {
        throw internal_error("join of congruences " + p.to_string()
                             + " is not a congruence");
      }
    }
    return out;
  }

  // Coatoms of the congruence lattice; [0_A] for simple algebras, [] for a
  // one-element algebra.
  inline std::vector<Partition> maximal_congruences(Algebra const& alg) {
    auto                   all = all_congruences(alg);
    std::vector<Partition> out;
    for (auto const& p : all) {
      if (p.is_total()) {
        continue;
      }
      bool maximal = true;
      for (auto const& q : all) {
        if (!q.is_total() && q != p && p.refines(q)) {
          maximal = false;
          break;
        }
      }
      if (maximal) {
        out.push_back(p);
      }
    }
    return out;
  }

  // One-element algebras are not simple.
  inline bool is_simple(Algebra const& alg) {
    if (alg.size() < 2) {
      return false;
    }
    for (std::size_t a = 0; a < alg.size(); ++a) {
      for (std::size_t b = a + 1; b < alg.size(); ++b) {
        if (!principal_congruence(
                 alg, static_cast<elem_t>(a), static_cast<elem_t>(b))
                 .is_total()) {
          return false;
        }
      }
    }
    return true;
  }

  // Reflexive symmetric relation on {0, ..., n-1}.
  class Tolerance {
   public:
    Tolerance() = default;

    explicit Tolerance(std::size_t n) : _n(n), _m(n * n, false) {
      for (std::size_t x = 0; x < n; ++x) {
        _m[x * n + x] = true;
      }
    }

    static Tolerance equality(std::size_t n) {
      return Tolerance(n);
    }

    static Tolerance total(std::size_t n) {
      Tolerance t(n);
      t._m.assign(n * n, true);
      return t;
    }

    // Reflexive symmetric closure of the pairs.
    static Tolerance
    from_pairs(std::size_t n, std::vector<std::pair<elem_t, elem_t>> const& pairs) {
      Tolerance t(n);
      for (auto [a, b] : pairs) {
        t.add(a, b);
      }
      return t;
    }

    std::size_t size() const noexcept {
      return _n;
    }

    bool related(std::size_t a, std::size_t b) const {
      return _m[a * _n + b];
    }

    void add(std::size_t a, std::size_t b) {
      if (a >= _n || b >= _n) {
        throw error("tolerance element out of range");
      }
      _m[a * _n + b] = true;
      _m[b * _n + a] = true;
    }

    // Pairs (a, b) with a < b.
    std::vector<std::pair<elem_t, elem_t>> proper_pairs() const {
      std::vector<std::pair<elem_t, elem_t>> out;
      for (std::size_t a = 0; a < _n; ++a) {
        for (std::size_t b = a + 1; b < _n; ++b) {
          if (related(a, b)) {
            out.emplace_back(static_cast<elem_t>(a), static_cast<elem_t>(b));
          }
        }
      }
      return out;
    }

    bool is_equality() const {
      return proper_pairs().empty();
    }

    bool is_total() const {
      return std::all_of(_m.begin(), _m.end(), [](bool v) { return v; });
    }

    bool is_reflexive() const {
      for (std::size_t x = 0; x < _n; ++x) {
        if (!related(x, x)) {
          return false;
        }
      }
      return true;
    }

    bool is_symmetric() const {
      for (std::size_t a = 0; a < _n; ++a) {
        for (std::size_t b = 0; b < _n; ++b) {
          if (related(a, b) != related(b, a)) {
            return false;
          }
        }
      }
      return true;
    }

    Partition transitive_closure() const {
      UnionFind uf(_n);
      for (auto [a, b] : proper_pairs()) {
        uf.unite(a, b);
      }
      return Partition::from_union_find(uf);
    }

    std::string to_string() const {
      std::string s = "{";
      bool        first = true;
      for (auto [a, b] : proper_pairs()) {
        s += (first ? "" : ",") + std::to_string(a) + "~" + std::to_string(b);
        first = false;
      }
      return s + "}";
    }

    friend bool operator==(Tolerance const&, Tolerance const&) = default;
    friend auto operator<=>(Tolerance const&, Tolerance const&) = default;

   private:
    std::size_t       _n = 0;
    std::vector<bool> _m;
  };

  // Closed under every operation applied to pairs coordinatewise.
  inline bool is_compatible(Algebra const& alg, Tolerance const& t) {
    if (t.size() != alg.size()) {
      throw error("tolerance size does not match algebra size");
    }
    std::vector<std::pair<elem_t, elem_t>> pairs;
    for (std::size_t a = 0; a < t.size(); ++a) {
      for (std::size_t b = 0; b < t.size(); ++b) {
        if (a != b && t.related(a, b)) {
          pairs.emplace_back(static_cast<elem_t>(a), static_cast<elem_t>(b));
        }
      }
    }
    for (std::size_t a = 0; a < t.size(); ++a) {
      pairs.emplace_back(static_cast<elem_t>(a), static_cast<elem_t>(a));
    }
    for (auto const& op : alg.ops()) {
      std::vector<std::size_t> pos(op.arity(), 0);
      TupleVec                 l(op.arity()), r(op.arity());
      do {
        for (std::size_t i = 0; i < pos.size(); ++i) {
          l[i] = pairs[pos[i]].first;
          r[i] = pairs[pos[i]].second;
        }
        if (!t.related(op(l), op(r))) {
          return false;
        }
      } while (next_tuple(pos, pairs.size()));
    }
    return true;
  }

  // The least compatible tolerance containing the pairs: Sg_{A^2} of the
  // diagonal together with both orientations of every pair.
  inline Tolerance
  tolerance_generated(Algebra const&                                alg,
                      std::vector<std::pair<elem_t, elem_t>> const& pairs) {
    std::size_t const     n = alg.size();
    std::vector<TupleVec> gens;
    for (std::size_t x = 0; x < n; ++x) {
      gens.push_back({static_cast<elem_t>(x), static_cast<elem_t>(x)});
    }
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) {
        throw error("element out of range");
      }
      gens.push_back({a, b});
      gens.push_back({b, a});
    }
    auto      su = generate_subuniverse(alg, 2, std::move(gens));
    Tolerance t(n);
    for (std::size_t i = 0; i < su.size(); ++i) {
      auto e = su.element(i);
      t.add(e[0], e[1]);
    }
    return t;
  }

  // Every compatible tolerance, generated from each set of unordered pairs.
  inline std::vector<Tolerance> all_tolerances(Algebra const& alg) {
    std::size_t const n = alg.size();
    if (n > max_tolerance_enumeration_size) {
      throw error("tolerance enumeration is limited to algebras with at most "
                  + std::to_string(max_tolerance_enumeration_size)
                  + " elements");
    }
    std::vector<std::pair<elem_t, elem_t>> all_pairs;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        all_pairs.emplace_back(static_cast<elem_t>(a), static_cast<elem_t>(b));
      }
    }
    std::set<Tolerance> found;
    for (std::size_t mask = 0; mask < (std::size_t(1) << all_pairs.size());
         ++mask) {
      std::vector<std::pair<elem_t, elem_t>> chosen;
      for (std::size_t i = 0; i < all_pairs.size(); ++i) {
        if (mask >> i & 1) {
          chosen.push_back(all_pairs[i]);
        }
      }
      found.insert(tolerance_generated(alg, chosen));
    }
    return {found.begin(), found.end()};
  }

  // Every compatible tolerance is 0 or total.
  inline bool is_tolerance_free(Algebra const& alg) {
    for (auto const& t : all_tolerances(alg)) {
      if (!t.is_equality() && !t.is_total()) {
        return false;
      }
    }
    return true;
  }

  // tol_i of a relation R <= A^k: a ~ b when R has two tuples that differ at
  // most in coordinate i, holding a and b there. Requires a complete R that
  // projects onto A at coordinate i.
  inline Tolerance link_tolerance(Algebra const&     alg,
                                  SubUniverse const& r,
                                  std::size_t        i) {
    if (!r.complete()) {
      throw error("link tolerance needs a complete relation");
    }
    std::size_t const k = r.power();
    if (i >= k) {
      throw error("coordinate out of range");
    }
    std::size_t const n = alg.size();
    std::vector<bool> hit(n, false);
    std::vector<std::pair<TupleVec, elem_t>> keyed;
    for (std::size_t e = 0; e < r.size(); ++e) {
      auto     t = r.element(e);
      TupleVec rest;
      for (std::size_t j = 0; j < k; ++j) {
        if (j != i) {
          rest.push_back(t[j]);
        }
      }
      hit[t[i]] = true;
      keyed.emplace_back(std::move(rest), t[i]);
    }
    if (!std::all_of(hit.begin(), hit.end(), [](bool h) { return h; })) {
      throw error("relation does not project onto the algebra at coordinate "
                  + std::to_string(i));
    }
    std::sort(keyed.begin(), keyed.end());
    Tolerance t(n);
    for (std::size_t s = 0; s < keyed.size();) {
      std::size_t e = s;
      while (e < keyed.size() && keyed[e].first == keyed[s].first) {
        ++e;
      }
      for (std::size_t p = s; p < e; ++p) {
        for (std::size_t q = p + 1; q < e; ++q) {
          t.add(keyed[p].second, keyed[q].second);
        }
      }
      s = e;
    }
    if (!is_compatible(alg, t)) {
      throw internal_error("link tolerance " + t.to_string()
                           + " is not compatible");
    }
    return t;
  }

  namespace detail {
    inline void bron_kerbosch(Tolerance const&               t,
                              std::vector<elem_t>&           r,
                              std::vector<elem_t>            p,
                              std::vector<elem_t>            x,
                              std::vector<std::vector<elem_t>>& out) {
      if (p.empty() && x.empty()) {
        auto c = r;
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
        return;
      }
      // pivot with most neighbours in p
      elem_t      pivot = p.empty() ? x.front() : p.front();
      std::size_t best  = 0;
      for (auto const* s : {&p, &x}) {
        for (auto u : *s) {
          std::size_t c = 0;
          for (auto v : p) {
            c += (u != v && t.related(u, v));
          }
          if (c > best) {
            best  = c;
            pivot = u;
          }
        }
      }
      std::vector<elem_t> candidates;
      for (auto v : p) {
        if (v == pivot || !t.related(v, pivot)) {
          candidates.push_back(v);
        }
      }
      for (auto v : candidates) {
        std::vector<elem_t> np, nx;
        for (auto u : p) {
          if (u != v && t.related(u, v)) {
            np.push_back(u);
          }
        }
        for (auto u : x) {
          if (u != v && t.related(u, v)) {
            nx.push_back(u);
          }
        }
        r.push_back(v);
        bron_kerbosch(t, r, std::move(np), std::move(nx), out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
      }
    }
  }  // namespace detail

  // Maximal sets B with B^2 contained in the tolerance, each sorted, in
  // lexicographic order.
  inline std::vector<std::vector<elem_t>> tolerance_classes(Tolerance const& t) {
    if (t.size() > max_congruence_enumeration_size) {
      throw error("tolerance classes are limited to at most "
                  + std::to_string(max_congruence_enumeration_size)
                  + " elements");
    }
    std::vector<elem_t> r, p;
    for (std::size_t v = 0; v < t.size(); ++v) {
      p.push_back(static_cast<elem_t>(v));
    }
    std::vector<std::vector<elem_t>> out;
    detail::bron_kerbosch(t, r, std::move(p), {}, out);
    std::sort(out.begin(), out.end());
    return out;
  }

  inline bool is_class_subuniverse(Algebra const&             alg,
                                   std::vector<elem_t> const& cls) {
    std::vector<bool> in(alg.size(), false);
    for (auto x : cls) {
      in.at(x) = true;
    }
    return is_closed(alg, in);
  }

  inline bool is_connected_tolerance(Algebra const& alg, Tolerance const& t) {
    if (t.size() != alg.size()) {
      throw error("tolerance size does not match algebra size");
    }
    return t.transitive_closure().is_total();
  }

}  // namespace agraph

#endif  // AGRAPH_CONGRUENCE_HPP_
