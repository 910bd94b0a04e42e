// agraph - edge structure of finite idempotent algebras
//
// Directed graphs of thin edges: strongly connected components and their
// order, maximal elements, paths of restricted kinds, s-distance and depth,
// and checks of the directed connectivity of maximal elements.
//
// Arc kinds admitted by each filter:
//
//   s    thin semilattice
//   as   thin semilattice and thin affine
//   sm   thin semilattice and thin majority
//   all  every thin edge

#ifndef AGRAPH_CONNECTIVITY_HPP_
#define AGRAPH_CONNECTIVITY_HPP_

#include <algorithm>  // for sort, min
#include <deque>      // for deque
#include <optional>   // for optional
#include <sstream>    // for ostringstream
#include <string>     // for string
#include <tuple>      // for tie
#include <utility>    // for pair
#include <vector>     // for vector

#include "congruence.hpp"  // for link_tolerance, is_connected_tolerance
#include "core.hpp"        // for Algebra
#include "edges.hpp"       // for EdgeGraph, EdgeType, Answer
#include "error.hpp"       // for error
#include "partition.hpp"   // for UnionFind
#include "subpower.hpp"    // for SubUniverse
#include "thin.hpp"        // for ThinEdge

namespace agraph {

  enum class ArcFilter { s, as, sm, all };

  inline char const* to_string(ArcFilter f) {
    switch (f) {
      case ArcFilter::s:
        return "s";
      case ArcFilter::as:
        return "as";
      case ArcFilter::sm:
        return "sm";
      case ArcFilter::all:
        return "all";
    }
    return "?";
  }

  inline bool admits(ArcFilter f, EdgeType k) {
    switch (f) {
      case ArcFilter::s:
        return k == EdgeType::semilattice;
      case ArcFilter::as:
        return k != EdgeType::majority;
      case ArcFilter::sm:
        return k != EdgeType::affine;
      case ArcFilter::all:
        return true;
    }
    return false;
  }

  class OrientedThinGraph {
   public:
    OrientedThinGraph() = default;

    OrientedThinGraph(std::size_t n, std::vector<ThinEdge> const& arcs, ArcFilter f)
        : _n(n), _filter(f), _out(n) {
      for (auto const& e : arcs) {
        if (e.from == e.to || e.from >= n || e.to >= n) {
          throw error("thin edge " + std::to_string(e.from) + "->"
                      + std::to_string(e.to) + " is not an arc of the graph");
        }
        if (admits(f, e.kind)) {
          _arcs.push_back(e);
        }
      }
      std::sort(_arcs.begin(), _arcs.end(), [](auto const& l, auto const& r) {
        return std::tie(l.from, l.to, l.kind) < std::tie(r.from, r.to, r.kind);
      });
      for (std::size_t i = 0; i < _arcs.size(); ++i) {
        _out[_arcs[i].from].push_back(i);
      }
    }

    std::size_t size() const noexcept {
      return _n;
    }

    ArcFilter filter() const noexcept {
      return _filter;
    }

    std::vector<ThinEdge> const& arcs() const noexcept {
      return _arcs;
    }

    // Indices into arcs() of the arcs leaving v, in (to, kind) order.
    std::vector<std::size_t> const& out(elem_t v) const {
      return _out.at(v);
    }

    bool has_arc(elem_t a, elem_t b) const {
      for (auto i : _out.at(a)) {
        if (_arcs[i].to == b) {
          return true;
        }
      }
      return false;
    }

   private:
    std::size_t                           _n      = 0;
    ArcFilter                             _filter = ArcFilter::all;
    std::vector<ThinEdge>                 _arcs;
    std::vector<std::vector<std::size_t>> _out;
  };

  inline OrientedThinGraph build_oriented_graph(Algebra const&               alg,
                                                std::vector<ThinEdge> const& arcs,
                                                ArcFilter                    f) {
    return OrientedThinGraph(alg.size(), arcs, f);
  }

  ////////////////////////////////////////////////////////////////////////////
  // Components
  ////////////////////////////////////////////////////////////////////////////

  // Strongly connected components numbered by their least member, with the
  // reachability order between them.
  struct ComponentOrder {
    std::vector<std::size_t>         component;  // vertex -> component id
    std::vector<std::vector<elem_t>> members;    // id -> sorted vertices
    std::vector<std::vector<bool>>   reach;      // reach[i][j]: i <= j

    std::size_t count() const noexcept {
      return members.size();
    }

    bool leq(std::size_t i, std::size_t j) const {
      return reach.at(i).at(j);
    }

    bool is_maximal(std::size_t i) const {
      for (std::size_t j = 0; j < count(); ++j) {
        if (j != i && reach[i][j]) {
          return false;
        }
      }
      return true;
    }

    std::vector<std::size_t> maximal_components() const {
      std::vector<std::size_t> out;
      for (std::size_t i = 0; i < count(); ++i) {
        if (is_maximal(i)) {
          out.push_back(i);
        }
      }
      return out;
    }
  };

  namespace detail {
    // Vertices reachable from v (including v).
    inline std::vector<bool> reachable(OrientedThinGraph const& g, elem_t v) {
      std::vector<bool> seen(g.size(), false);
      std::deque<elem_t> queue{v};
      seen[v] = true;
      while (!queue.empty()) {
        auto const x = queue.front();
        queue.pop_front();
        for (auto i : g.out(x)) {
          auto const y = g.arcs()[i].to;
          if (!seen[y]) {
            seen[y] = true;
            queue.push_back(y);
          }
        }
      }
      return seen;
    }
  }  // namespace detail

  // Graphs here have at most 255 vertices, so the reachability matrix is
  // computed by one search per vertex.
  inline ComponentOrder components(OrientedThinGraph const& g) {
    std::size_t const              n = g.size();
    std::vector<std::vector<bool>> r(n);
    for (std::size_t v = 0; v < n; ++v) {
      r[v] = detail::reachable(g, static_cast<elem_t>(v));
    }
    ComponentOrder out;
    out.component.assign(n, SIZE_MAX);
    for (std::size_t v = 0; v < n; ++v) {
      if (out.component[v] != SIZE_MAX) {
        continue;
      }
      std::size_t const id = out.members.size();
      out.members.emplace_back();
      for (std::size_t w = v; w < n; ++w) {
        if (r[v][w] && r[w][v]) {
          out.component[w] = id;
          out.members[id].push_back(static_cast<elem_t>(w));
        }
      }
    }
    std::size_t const c = out.members.size();
    out.reach.assign(c, std::vector<bool>(c, false));
    for (std::size_t i = 0; i < c; ++i) {
      for (std::size_t v = 0; v < n; ++v) {
        if (r[out.members[i][0]][v]) {
          out.reach[i][out.component[v]] = true;
        }
      }
    }
    return out;
  }

  // Elements of maximal components.
  inline std::vector<elem_t> max_elements(OrientedThinGraph const& g) {
    auto const          co = components(g);
    std::vector<elem_t> out;
    for (auto i : co.maximal_components()) {
      out.insert(out.end(), co.members[i].begin(), co.members[i].end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Paths
  ////////////////////////////////////////////////////////////////////////////

  struct ThinPath {
    std::vector<elem_t>   vertices;
    std::vector<EdgeType> kinds;  // kinds[i] labels vertices[i] -> vertices[i+1]

    std::size_t length() const noexcept {
      return kinds.size();
    }

    std::string to_string() const {
      std::string s;
      for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i) {
          s += std::string(" -") + agraph::to_string(kinds[i - 1])[0] + "-> ";
        }
        s += std::to_string(vertices[i]);
      }
      return s;
    }
  };

  // A shortest path from a to b; the trivial path when a == b.
  inline std::optional<ThinPath> path_query(OrientedThinGraph const& g,
                                            elem_t                   a,
                                            elem_t                   b) {
    std::size_t const n = g.size();
    if (a >= n || b >= n) {
      throw error("vertex out of range");
    }
    std::vector<std::size_t> via(n, SIZE_MAX);  // arc used to enter a vertex
    std::vector<bool>        seen(n, false);
    std::deque<elem_t>       queue{a};
    seen[a] = true;
    while (!queue.empty() && !seen[b]) {
      auto const x = queue.front();
      queue.pop_front();
      for (auto i : g.out(x)) {
        auto const y = g.arcs()[i].to;
        if (!seen[y]) {
          seen[y] = true;
          via[y]  = i;
          queue.push_back(y);
        }
      }
    }
    if (!seen[b]) {
      return std::nullopt;
    }
    ThinPath p;
    for (elem_t v = b; v != a;) {
      auto const& arc = g.arcs()[via[v]];
      p.vertices.push_back(v);
      p.kinds.push_back(arc.kind);
      v = arc.from;
    }
    p.vertices.push_back(a);
    std::reverse(p.vertices.begin(), p.vertices.end());
    std::reverse(p.kinds.begin(), p.kinds.end());
    return p;
  }

  // Shortest s-distances and depth. depth[c] is the greatest, over maximal
  // components reachable from c, of the s-distance from c to that component;
  // maximal elements have depth 0.
  struct DepthTable {
    std::vector<std::vector<std::optional<std::size_t>>> distance;
    std::vector<std::optional<std::size_t>>              depth;
  };

  inline DepthTable depth_and_sdistance(OrientedThinGraph const& g) {
    if (g.filter() != ArcFilter::s) {
      throw error("depth is defined on the semilattice graph");
    }
    std::size_t const n = g.size();
    DepthTable        out;
    out.distance.assign(n, std::vector<std::optional<std::size_t>>(n));
    for (std::size_t s = 0; s < n; ++s) {
      std::deque<elem_t> queue{static_cast<elem_t>(s)};
      out.distance[s][s] = 0;
      while (!queue.empty()) {
        auto const x = queue.front();
        queue.pop_front();
        for (auto i : g.out(x)) {
          auto const y = g.arcs()[i].to;
          if (!out.distance[s][y]) {
            out.distance[s][y] = *out.distance[s][x] + 1;
            queue.push_back(y);
          }
        }
      }
    }
    auto const co = components(g);
    out.depth.assign(n, std::nullopt);
    for (std::size_t c = 0; c < n; ++c) {
      for (auto m : co.maximal_components()) {
        std::optional<std::size_t> best;
        for (auto v : co.members[m]) {
          auto const d = out.distance[c][v];
          if (d && (!best || *d < *best)) {
            best = d;
          }
        }
        if (best && (!out.depth[c] || *best > *out.depth[c])) {
          out.depth[c] = best;
        }
      }
    }
    return out;
  }

  // a and b are v-connected when some c in Sg{a, b} has s-paths to both.
  inline bool v_connected(Algebra const&           alg,
                          OrientedThinGraph const& s_graph,
                          elem_t                   a,
                          elem_t                   b) {
    if (s_graph.filter() != ArcFilter::s) {
      throw error("v-connectivity uses the semilattice graph");
    }
    for (auto c : generated_subuniverse(alg, {a, b})) {
      auto const r = detail::reachable(s_graph, c);
      if (r[a] && r[b]) {
        return true;
      }
    }
    return false;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Verification
  ////////////////////////////////////////////////////////////////////////////

  // Undirected connectivity after dropping semilattice pairs whose
  // witnessing congruence is not the equality relation (pairs that also
  // have majority or affine type stay).
  inline Answer thin_thick_connected(EdgeGraph const& g) {
    UnionFind uf(g.size());
    bool      unresolved = false;
    for (auto const& e : g.pairs()) {
      bool keep = e.has(EdgeType::majority) || e.has(EdgeType::affine);
      if (e.has(EdgeType::semilattice)
          && e.theta(EdgeType::semilattice).is_equality()) {
        keep = true;
      }
      if (keep) {
        uf.unite(e.a, e.b);
      } else if (e.has_unknown()) {
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

  struct ConnectivityReport {
    std::vector<elem_t>                  maximal;        // from the s-graph
    std::vector<std::vector<elem_t>>     as_components;  // maximal ones
    std::vector<std::pair<elem_t, elem_t>> failures;     // no directed path
    // failures joined in the undirected thin graph
    std::vector<std::pair<elem_t, elem_t>> undirected_only;
    bool                                   unknown = false;

    bool pass() const {
      return failures.empty() && !unknown;
    }
  };

  // Every ordered pair of maximal elements is joined by a directed path of
  // thin edges of any kind.
  inline ConnectivityReport verify_as_connectivity(Algebra const&      alg,
                                                   ThinAnalysis const& t) {
    ConnectivityReport out;
    auto const s   = build_oriented_graph(alg, t.thin.arcs, ArcFilter::s);
    auto const as  = build_oriented_graph(alg, t.thin.arcs, ArcFilter::as);
    auto const all = build_oriented_graph(alg, t.thin.arcs, ArcFilter::all);
    out.maximal    = max_elements(s);
    auto const co  = components(as);
    for (auto i : co.maximal_components()) {
      out.as_components.push_back(co.members[i]);
    }
    UnionFind uf(alg.size());
    for (auto const& e : t.thin.arcs) {
      uf.unite(e.from, e.to);
    }
    for (auto a : out.maximal) {
      for (auto b : out.maximal) {
        if (a != b && !path_query(all, a, b)) {
          out.failures.emplace_back(a, b);
          if (uf.find(a) == uf.find(b)) {
            out.undirected_only.emplace_back(a, b);
          }
        }
      }
    }
    out.unknown = t.thin.unknown && !out.failures.empty();
    return out;
  }

  struct ChainReport {
    CaseStatus          status = CaseStatus::skipped;
    std::string         detail;
    std::vector<elem_t> chain;  // a = d_1, ..., d_k = b'
    std::vector<elem_t> left;   // a_i with (a_i, d_i), (a_i, d_{i+1}) in R
  };

  // Searches for a = d_1, ..., d_k = b' with b' in the s-component of b,
  // every d_i maximal, and maximal a_i with (a_i, d_i), (a_i, d_{i+1}) in R.
  // Breadth-first over maximal elements, so no chain repeats a vertex.
  inline ChainReport verify_going_maximal(Algebra const&           alg,
                                          OrientedThinGraph const& s_graph,
                                          SubUniverse const&       r,
                                          elem_t                   a,
                                          elem_t                   b) {
    ChainReport       out;
    std::size_t const n = alg.size();
    if (s_graph.filter() != ArcFilter::s) {
      throw error("maximal elements come from the semilattice graph");
    }
    if (r.power() != 2) {
      throw error("the relation must be binary");
    }
    if (!r.complete()) {
      out.detail = "relation not complete";
      return out;
    }
    if (!is_simple(alg)) {
      out.detail = "algebra not simple";
      return out;
    }
    auto const full = generated_subuniverse(alg, {a, b});
    if (full.size() != n) {
      out.detail = "Sg{a,b} is a proper subalgebra";
      return out;
    }
    std::vector<bool> first(n, false), second(n, false);
    std::vector<std::vector<bool>> in(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < r.size(); ++i) {
      auto const e = r.element(i);
      in[e[0]][e[1]] = true;
      first[e[0]]    = true;
      second[e[1]]   = true;
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (!first[x] || !second[x]) {
        out.detail = "relation not subdirect";
        return out;
      }
    }
    if (!is_connected_tolerance(alg, link_tolerance(alg, r, 1))) {
      out.detail = "link tolerance not connected";
      return out;
    }
    auto const co = components(s_graph);
    std::vector<bool> maximal(n, false);
    for (auto i : co.maximal_components()) {
      for (auto v : co.members[i]) {
        maximal[v] = true;
      }
    }
    if (!maximal[a] || !maximal[b]) {
      out.detail = "a or b not maximal";
      return out;
    }
    std::vector<std::size_t> prev(n, SIZE_MAX);
    std::vector<elem_t>      via(n, 0);
    std::vector<bool>        seen(n, false);
    std::deque<elem_t>       queue{a};
    seen[a]              = true;
    std::size_t const cb = co.component[b];
    std::optional<elem_t> end;
    while (!queue.empty()) {
      auto const d = queue.front();
      queue.pop_front();
      if (co.component[d] == cb) {
        end = d;
        break;
      }
      for (std::size_t d2 = 0; d2 < n; ++d2) {
        if (seen[d2] || !maximal[d2]) {
          continue;
        }
        for (std::size_t e = 0; e < n; ++e) {
          if (maximal[e] && in[e][d] && in[e][d2]) {
            seen[d2] = true;
            prev[d2] = d;
            via[d2]  = static_cast<elem_t>(e);
            queue.push_back(static_cast<elem_t>(d2));
            break;
          }
        }
      }
    }
    if (!end) {
      out.status = CaseStatus::failed;
      out.detail = "no chain of maximal elements from " + std::to_string(a)
                   + " to the component of " + std::to_string(b);
      return out;
    }
    for (elem_t d = *end; d != a; d = static_cast<elem_t>(prev[d])) {
      out.chain.push_back(d);
      out.left.push_back(via[d]);
    }
    out.chain.push_back(a);
    std::reverse(out.chain.begin(), out.chain.end());
    std::reverse(out.left.begin(), out.left.end());
    out.status = CaseStatus::witness;
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // DOT
  ////////////////////////////////////////////////////////////////////////////

  inline std::string export_dot(OrientedThinGraph const& g,
                                std::string const&       name = "thin") {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (std::size_t v = 0; v < g.size(); ++v) {
      out << "  " << v << ";\n";
    }
    for (auto const& e : g.arcs()) {
      char const* style = e.kind == EdgeType::semilattice ? "solid"
                          : e.kind == EdgeType::majority  ? "dashed"
                                                          : "dotted";
      out << "  " << static_cast<unsigned>(e.from) << " -> "
          << static_cast<unsigned>(e.to) << " [style=" << style << ", label=\""
          << to_string(e.kind)[0] << "\"];\n";
    }
    out << "}\n";
    return out.str();
  }

}  // namespace agraph

#endif  // AGRAPH_CONNECTIVITY_HPP_
