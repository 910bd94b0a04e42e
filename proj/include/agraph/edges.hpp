// agraph - edge structure of finite idempotent algebras
//
// Edges of the graph G(A). A pair ab is an edge when some congruence theta of
// B = Sg{a, b} separates a and b and the quotient B/theta carries a
// semilattice operation on {a/theta, b/theta}, a majority operation on that
// pair, or the affine structure x - y + z of an abelian group with every basic
// operation commuting with it. Witness operations are found as terms by
// subpower membership in powers of the quotient.

#ifndef AGRAPH_EDGES_HPP_
#define AGRAPH_EDGES_HPP_

#include <algorithm>  // for sort, next_permutation
#include <array>      // for array
#include <cstddef>    // for size_t
#include <map>        // for map
#include <optional>   // for optional
#include <set>        // for set
#include <string>     // for string
#include <vector>     // for vector

#include "congruence.hpp"  // for all_congruences, is_simple, ...
#include "core.hpp"        // for Algebra, OpTable, subalgebra_induced, ...
#include "error.hpp"       // for error, internal_error
#include "partition.hpp"   // for Partition, UnionFind
#include "subpower.hpp"    // for search_term, Goal, ClosureBudget
#include "term.hpp"        // for Term

namespace agraph {

  enum class Answer { yes, no, unknown };

  inline char const* to_string(Answer a) {
    switch (a) {
      case Answer::yes:
        return "yes";
      case Answer::no:
        return "no";
      case Answer::unknown:
        return "unknown";
    }
    return "?";
  }

  inline Answer to_answer(Membership m) {
    switch (m) {
      case Membership::found:
        return Answer::yes;
      case Membership::absent:
        return Answer::no;
      case Membership::unknown:
        return Answer::unknown;
    }
    return Answer::unknown;
  }

  enum class EdgeType { semilattice = 0, majority = 1, affine = 2 };

  inline constexpr std::array<EdgeType, 3> edge_types{
      EdgeType::semilattice, EdgeType::majority, EdgeType::affine};

  inline char const* to_string(EdgeType t) {
    switch (t) {
      case EdgeType::semilattice:
        return "semilattice";
      case EdgeType::majority:
        return "majority";
      case EdgeType::affine:
        return "affine";
    }
    return "?";
  }

  // The strict label of an edge; unknown when a capped search leaves it open.
  enum class Strictness { none, semilattice, majority, affine, unknown };

  inline char const* to_string(Strictness s) {
    switch (s) {
      case Strictness::none:
        return "none";
      case Strictness::semilattice:
        return "strictly-semilattice";
      case Strictness::majority:
        return "strictly-majority";
      case Strictness::affine:
        return "strictly-affine";
      case Strictness::unknown:
        return "unknown";
    }
    return "?";
  }

  ////////////////////////////////////////////////////////////////////////////
  // Witness searches on a quotient
  ////////////////////////////////////////////////////////////////////////////

  struct WitnessResult {
    Answer              status = Answer::no;
    std::optional<Term> term;
  };

  inline WitnessResult to_witness(TermSearchResult const& r) {
    return {to_answer(r.membership()), r.term};
  }

  // A binary term f with f(a, b) = f(b, a) = b.
  inline WitnessResult semilattice_witness(Algebra const& q,
                                           elem_t         a,
                                           elem_t         b,
                                           ClosureBudget  budget = {}) {
    if (a == b) {
      throw error("semilattice witness needs distinct elements");
    }
    return to_witness(search_term_target(q, 2, {{a, b}, {b, a}}, {b, b}, budget));
  }

  // A ternary term g that is a majority operation on {a, b}.
  inline WitnessResult majority_witness(Algebra const& q,
                                        elem_t         a,
                                        elem_t         b,
                                        ClosureBudget  budget = {}) {
    if (a == b) {
      throw error("majority witness needs distinct elements");
    }
    return to_witness(search_term_target(
        q,
        3,
        {{a, b, b}, {b, a, b}, {b, b, a}, {b, a, a}, {a, b, a}, {a, a, b}},
        {b, b, b, a, a, a},
        budget));
  }

  ////////////////////////////////////////////////////////////////////////////
  // Affine quotients
  ////////////////////////////////////////////////////////////////////////////

  inline constexpr std::size_t max_affine_quotient_size = 8;

  struct AffineCertificate {
    std::size_t         order = 0;
    std::vector<elem_t> addition;  // order x order table on the quotient
    elem_t              identity = 0;
    OpTable             maltsev;   // x - y + z
    Term                term;      // a term inducing maltsev
    bool                compat_checked = false;

    elem_t add(elem_t x, elem_t y) const {
      return addition[std::size_t(x) * order + y];
    }
  };

  namespace detail {
    // Invariant-factor decompositions of the abelian groups of order q.
    inline std::vector<std::vector<std::size_t>> abelian_group_types(std::size_t q) {
      switch (q) {
        case 1:
          return {{}};
        case 4:
          return {{4}, {2, 2}};
        case 8:
          return {{8}, {4, 2}, {2, 2, 2}};
        case 2:
        case 3:
        case 5:
        case 6:
        case 7:
          return {{q}};
        default:
          throw error("abelian group enumeration is limited to order "
                      + std::to_string(max_affine_quotient_size));
      }
    }

    // Addition table of the product of cyclic groups, mixed radix encoded.
    inline std::vector<elem_t>
    cyclic_product_addition(std::vector<std::size_t> const& factors) {
      std::size_t q = 1;
      for (auto f : factors) {
        q *= f;
      }
      std::vector<elem_t> add(q * q);
      for (std::size_t x = 0; x < q; ++x) {
        for (std::size_t y = 0; y < q; ++y) {
          auto cx = product_decode(factors, x);
          auto cy = product_decode(factors, y);
          for (std::size_t i = 0; i < factors.size(); ++i) {
            cx[i] = static_cast<elem_t>((cx[i] + cy[i]) % factors[i]);
          }
          add[x * q + y] = static_cast<elem_t>(product_encode(factors, cx));
        }
      }
      return add;
    }

    inline bool commutes_with(OpTable const& f, OpTable const& m) {
      std::size_t const   k = f.arity();
      std::size_t const   n = f.size();
      std::vector<elem_t> cells(3 * k, 0);  // x_1..x_k, y_1..y_k, z_1..z_k
      TupleVec            args(k), fx(k), fy(k), fz(k);
      do {
        for (std::size_t i = 0; i < k; ++i) {
          args[i] = m(cells[i], cells[k + i], cells[2 * k + i]);
          fx[i]   = cells[i];
          fy[i]   = cells[k + i];
          fz[i]   = cells[2 * k + i];
        }
        if (f(args) != m(f(fx), f(fy), f(fz))) {
          return false;
        }
      } while (next_tuple(cells, n));
      return true;
    }
  }  // namespace detail

  struct AffineResult {
    Answer                           status = Answer::no;
    std::optional<AffineCertificate> certificate;
  };

  // Looks for an abelian group on the universe of q such that x - y + z is a
  // term operation of q and commutes with every basic operation.
  inline AffineResult affine_quotient_certificate(Algebra const& q,
                                                  ClosureBudget  budget = {}) {
    std::size_t const n = q.size();
    if (n < 2) {
      throw error("affine certificate needs at least two elements");
    }
    if (n > max_affine_quotient_size) {
      throw error("affine certificates are limited to quotients with at most "
                  + std::to_string(max_affine_quotient_size) + " elements");
    }
    // Rows of the ternary slice search: all argument triples.
    std::vector<TupleVec> rows;
    {
      TupleVec t(3, 0);
      do {
        rows.push_back(t);
      } while (next_tuple(t, n));
    }
    AffineResult           result;
    std::set<TupleVec>     tried;
    for (auto const& factors : detail::abelian_group_types(n)) {
      auto const          add = detail::cyclic_product_addition(factors);
      std::vector<elem_t> label(n);  // quotient element -> group element
      for (std::size_t i = 0; i < n; ++i) {
        label[i] = static_cast<elem_t>(i);
      }
      do {
        std::vector<elem_t> unlabel(n);
        for (std::size_t i = 0; i < n; ++i) {
          unlabel[label[i]] = static_cast<elem_t>(i);
        }
        auto neg = [&](elem_t g) {
          for (std::size_t h = 0; h < n; ++h) {
            if (add[g * n + h] == 0) {
              return static_cast<elem_t>(h);
            }
          }
          throw internal_error("group element without inverse");
        };
        auto m = OpTable::from_function(
            "maltsev", 3, n, [&](std::span<elem_t const> x) {
              elem_t s = add[label[x[0]] * n + neg(label[x[1]])];
              return unlabel[add[std::size_t(s) * n + label[x[2]]]];
            });
        if (!tried.insert(m.values()).second) {
          continue;
        }
        bool commute = true;
        for (auto const& op : q.ops()) {
          if (!detail::commutes_with(op, m)) {
            commute = false;
            break;
          }
        }
        if (!commute) {
          continue;
        }
        auto found = search_term_target(q, 3, rows, m.values(), budget);
        if (found.membership() == Membership::unknown) {
          result.status = Answer::unknown;
          continue;
        }
        if (!found.term) {
          continue;
        }
        AffineCertificate cert;
        cert.order = n;
        cert.addition.resize(n * n);
        for (std::size_t x = 0; x < n; ++x) {
          for (std::size_t y = 0; y < n; ++y) {
            cert.addition[x * n + y] = unlabel[add[label[x] * n + label[y]]];
          }
        }
        cert.identity       = unlabel[0];
        cert.maltsev        = m;
        cert.term           = *found.term;
        cert.compat_checked = true;
        if (!term_table(q, cert.term, 3).same_table(m)) {
          throw internal_error("affine certificate term does not induce x-y+z");
        }
        result.status      = Answer::yes;
        result.certificate = std::move(cert);
        return result;
      } while (std::next_permutation(label.begin(), label.end()));
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Pair classification
  ////////////////////////////////////////////////////////////////////////////

  struct TypeEvidence {
    Answer status = Answer::no;
    // The first refinement-minimal witnessing congruence of Sg{a, b}, over
    // carrier indices.
    std::optional<Partition> theta;
    std::optional<Term>      term;
    // Semilattice orientation at theta: f(a,b) = f(b,a) = b (toward_b) and/or
    // the reverse.
    bool                             toward_b = false;
    bool                             toward_a = false;
    std::optional<Term>              term_toward_a;
    std::optional<AffineCertificate> certificate;
    // An earlier (finer) congruence gave an unknown answer, so minimality of
    // theta is not established.
    bool minimality_unknown = false;
  };

  struct EdgeInfo {
    elem_t                      a = 0;
    elem_t                      b = 0;
    std::vector<elem_t>         carrier;  // Sg{a, b}, sorted
    std::array<TypeEvidence, 3> evidence;

    TypeEvidence const& of(EdgeType t) const {
      return evidence[static_cast<std::size_t>(t)];
    }

    bool has(EdgeType t) const {
      return of(t).status == Answer::yes;
    }

    bool is_edge() const {
      return has(EdgeType::semilattice) || has(EdgeType::majority)
             || has(EdgeType::affine);
    }

    bool has_unknown() const {
      for (auto const& e : evidence) {
        if (e.status == Answer::unknown) {
          return true;
        }
      }
      return false;
    }

    Strictness strict() const {
      auto const s = of(EdgeType::semilattice).status;
      auto const m = of(EdgeType::majority).status;
      auto const f = of(EdgeType::affine).status;
      if (s == Answer::yes) {
        return Strictness::semilattice;
      }
      if (s == Answer::unknown) {
        return Strictness::unknown;
      }
      if (m == Answer::yes) {
        return Strictness::majority;
      }
      if (m == Answer::unknown) {
        return Strictness::unknown;
      }
      if (f == Answer::yes) {
        return Strictness::affine;
      }
      return f == Answer::unknown ? Strictness::unknown : Strictness::none;
    }

    std::vector<EdgeType> types() const {
      std::vector<EdgeType> out;
      for (auto t : edge_types) {
        if (has(t)) {
          out.push_back(t);
        }
      }
      return out;
    }

    std::size_t carrier_index(elem_t x) const {
      auto it = std::lower_bound(carrier.begin(), carrier.end(), x);
      if (it == carrier.end() || *it != x) {
        throw error("element " + std::to_string(x) + " is not in Sg{"
                    + std::to_string(a) + "," + std::to_string(b) + "}");
      }
      return static_cast<std::size_t>(it - carrier.begin());
    }

    Partition const& theta(EdgeType t) const {
      if (!of(t).theta) {
        throw error(std::string("pair has no ") + to_string(t) + " witness");
      }
      return *of(t).theta;
    }

    // The theta-class of x (an element of Sg{a, b}), as elements of A.
    std::vector<elem_t> theta_class(EdgeType t, elem_t x) const {
      auto const&         p = theta(t);
      std::vector<elem_t> out;
      for (auto i : p.block_of(carrier_index(x))) {
        out.push_back(carrier[i]);
      }
      return out;
    }

    // Blocks of theta as elements of A.
    std::vector<std::vector<elem_t>> theta_blocks(EdgeType t) const {
      std::vector<std::vector<elem_t>> out;
      for (auto const& blk : theta(t).blocks()) {
        std::vector<elem_t> b;
        for (auto i : blk) {
          b.push_back(carrier[i]);
        }
        out.push_back(std::move(b));
      }
      return out;
    }

    // theta_class(a) union theta_class(b), sorted.
    std::vector<elem_t> thick_edge(EdgeType t) const {
      auto l = theta_class(t, a);
      auto r = theta_class(t, b);
      l.insert(l.end(), r.begin(), r.end());
      std::sort(l.begin(), l.end());
      return l;
    }
  };

  inline EdgeInfo classify_pair(Algebra const& alg,
                                elem_t         a,
                                elem_t         b,
                                ClosureBudget  budget = {}) {
    if (a >= alg.size() || b >= alg.size()) {
      throw error("element out of range");
    }
    if (a == b) {
      throw error("classify_pair needs distinct elements");
    }
    EdgeInfo info;
    info.a        = a;
    info.b        = b;
    info.carrier  = generated_subuniverse(alg, {a, b});
    auto const ib = subalgebra_induced(alg, info.carrier);
    auto const ia = static_cast<std::size_t>(ib.index_of[a]);
    auto const ja = static_cast<std::size_t>(ib.index_of[b]);
    std::array<bool, 3> decided{false, false, false};
    std::array<bool, 3> saw_unknown{false, false, false};
    for (auto const& theta : all_congruences(ib.algebra)) {
      if (theta.related(ia, ja)) {
        continue;
      }
      if (decided[0] && decided[1] && decided[2]) {
        break;
      }
      auto const  quo = quotient_algebra(ib.algebra, theta);
      auto const& q   = quo.algebra;
      elem_t      qa  = quo.block_of[ia];
      elem_t      qb  = quo.block_of[ja];
      auto record = [&](EdgeType t, Answer status) -> TypeEvidence& {
        auto& ev = info.evidence[static_cast<std::size_t>(t)];
        auto  i  = static_cast<std::size_t>(t);
        if (status == Answer::unknown) {
          saw_unknown[i] = true;
        } else if (status == Answer::yes) {
          decided[i]            = true;
          ev.status             = Answer::yes;
          ev.theta              = theta;
          ev.minimality_unknown = saw_unknown[i];
        }
        return ev;
      };
      if (!decided[0]) {
        auto to_b = semilattice_witness(q, qa, qb, budget);
        auto to_a = semilattice_witness(q, qb, qa, budget);
        Answer st = Answer::no;
        if (to_b.status == Answer::yes || to_a.status == Answer::yes) {
          st = Answer::yes;
        } else if (to_b.status == Answer::unknown
                   || to_a.status == Answer::unknown) {
          st = Answer::unknown;
        }
        auto& ev = record(EdgeType::semilattice, st);
        if (st == Answer::yes) {
          ev.toward_b      = to_b.status == Answer::yes;
          ev.toward_a      = to_a.status == Answer::yes;
          ev.term          = ev.toward_b ? to_b.term : to_a.term;
          ev.term_toward_a = to_a.term;
        }
      }
      if (!decided[1]) {
        auto  w  = majority_witness(q, qa, qb, budget);
        auto& ev = record(EdgeType::majority, w.status);
        if (w.status == Answer::yes) {
          ev.term = w.term;
        }
      }
      if (!decided[2]) {
        if (q.size() > max_affine_quotient_size) {
          record(EdgeType::affine, Answer::unknown);
        } else {
          auto  w  = affine_quotient_certificate(q, budget);
          auto& ev = record(EdgeType::affine, w.status);
          if (w.status == Answer::yes) {
            ev.term        = w.certificate->term;
            ev.certificate = std::move(w.certificate);
          }
        }
      }
    }
    for (std::size_t i = 0; i < 3; ++i) {
      if (!decided[i] && saw_unknown[i]) {
        info.evidence[i].status = Answer::unknown;
      }
    }
    return info;
  }

  // Classification of every unordered pair a < b.
  class EdgeGraph {
   public:
    EdgeGraph() = default;

    EdgeGraph(std::size_t n, std::vector<EdgeInfo> pairs)
        : _n(n), _pairs(std::move(pairs)) {}

    std::size_t size() const noexcept {
      return _n;
    }

    std::vector<EdgeInfo> const& pairs() const noexcept {
      return _pairs;
    }

    // Classification of {a, b} (stored with the smaller element first).
    EdgeInfo const& pair(elem_t a, elem_t b) const {
      if (a == b || a >= _n || b >= _n) {
        throw error("invalid vertex pair");
      }
      if (a > b) {
        std::swap(a, b);
      }
      // pairs are stored in lexicographic order
      std::size_t idx = 0;
      for (std::size_t x = 0; x < a; ++x) {
        idx += _n - 1 - x;
      }
      return _pairs[idx + (b - a - 1)];
    }

    std::vector<EdgeInfo> edges() const {
      std::vector<EdgeInfo> out;
      for (auto const& e : _pairs) {
        if (e.is_edge()) {
          out.push_back(e);
        }
      }
      return out;
    }

    bool has_unknown() const {
      for (auto const& e : _pairs) {
        if (e.has_unknown()) {
          return true;
        }
      }
      return false;
    }

   private:
    std::size_t           _n = 0;
    std::vector<EdgeInfo> _pairs;
  };

  inline EdgeGraph edge_graph(Algebra const& alg, ClosureBudget budget = {}) {
    std::vector<EdgeInfo> pairs;
    for (std::size_t a = 0; a < alg.size(); ++a) {
      for (std::size_t b = a + 1; b < alg.size(); ++b) {
        pairs.push_back(classify_pair(
            alg, static_cast<elem_t>(a), static_cast<elem_t>(b), budget));
      }
    }
    return EdgeGraph(alg.size(), std::move(pairs));
  }

  // Connectivity of the undirected edge graph. Unknown when the graph is not
  // connected through known edges but some pair is unresolved.
  inline Answer graph_connected(EdgeGraph const& g) {
    UnionFind uf(g.size());
    bool      unresolved = false;
    for (auto const& e : g.pairs()) {
      if (e.is_edge()) {
        uf.unite(e.a, e.b);
      } else if (e.has_unknown()) {
        unresolved = true;
      }
    }
    if (Partition::from_union_find(uf).number_of_blocks() <= 1) {
      return Answer::yes;
    }
    return unresolved ? Answer::unknown : Answer::no;
  }

  inline Answer graph_connected(Algebra const& alg, ClosureBudget budget = {}) {
    return graph_connected(edge_graph(alg, budget));
  }

  struct SubalgebraConnectivity {
    Answer              status = Answer::yes;
    std::vector<elem_t> failing_carrier;  // first disconnected subuniverse
  };

  // Connectivity of G(B) for every subuniverse B (including A).
  inline SubalgebraConnectivity
  graph_connected_all_subalgebras(Algebra const& alg, ClosureBudget budget = {}) {
    SubalgebraConnectivity out;
    for (auto const& carrier : all_subuniverses(alg)) {
      if (carrier.size() < 2) {
        continue;
      }
      auto const sub = subalgebra_induced(alg, carrier);
      auto const c   = graph_connected(sub.algebra, budget);
      if (c == Answer::no) {
        out.status          = Answer::no;
        out.failing_carrier = carrier;
        return out;
      }
      if (c == Answer::unknown && out.status == Answer::yes) {
        out.status          = Answer::unknown;
        out.failing_carrier = carrier;
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Siggers terms
  ////////////////////////////////////////////////////////////////////////////

  // A divisor C/psi of A with two blocks on which every basic operation acts
  // as a projection. Its existence rules out a Siggers term, since no
  // projection satisfies s(y,x,y,z) = s(x,y,z,x).
  struct ProjectionDivisor {
    std::vector<elem_t> carrier;  // C, sorted
    Partition           theta;    // on carrier indices, two blocks
  };

  struct SiggersResult {
    Answer                           answer = Answer::unknown;
    std::optional<Term>              term;
    std::optional<ProjectionDivisor> divisor;
    ClosureStatus                    search_status = ClosureStatus::complete;
    std::size_t                      search_size   = 0;
  };

  // Is every basic operation of q a projection?
  inline bool is_projection_algebra(Algebra const& q) {
    for (auto const& op : q.ops()) {
      bool any = false;
      for (std::size_t i = 0; i < op.arity() && !any; ++i) {
        bool proj = true;
        TupleVec t(op.arity(), 0);
        do {
          proj = op(t) == t[i];
        } while (proj && next_tuple(t, q.size()));
        any = proj;
      }
      if (!any) {
        return false;
      }
    }
    return true;
  }

  // Searches two-generated subalgebras for a two-block quotient that is a
  // projection algebra. Any divisor of A whose operations are all projections
  // contains such a one, so this finds one whenever one exists.
  inline std::optional<ProjectionDivisor> find_projection_divisor(Algebra const& alg) {
    std::set<std::vector<elem_t>> seen;
    for (std::size_t a = 0; a < alg.size(); ++a) {
      for (std::size_t b = a + 1; b < alg.size(); ++b) {
        auto carrier = generated_subuniverse(
            alg, {static_cast<elem_t>(a), static_cast<elem_t>(b)});
        if (!seen.insert(carrier).second) {
          continue;
        }
        auto const sub = subalgebra_induced(alg, carrier);
        for (auto const& theta : all_congruences(sub.algebra)) {
          if (theta.number_of_blocks() != 2) {
            continue;
          }
          if (is_projection_algebra(quotient_algebra(sub.algebra, theta).algebra)) {
            return ProjectionDivisor{carrier, theta};
          }
        }
      }
    }
    return std::nullopt;
  }

  namespace detail {
    // Coordinates of the Siggers search: the distinct argument 4-tuples of
    // s(y,x,y,z) and s(x,y,z,x) over non-constant triples, and the pairs of
    // coordinates that must agree.
    struct SiggersLayout {
      std::vector<TupleVec>                           generators;
      std::vector<std::pair<std::size_t, std::size_t>> equal;
    };

    inline SiggersLayout siggers_layout(std::size_t n) {
      std::map<TupleVec, std::size_t> coord;
      std::vector<TupleVec>           tuples;
      SiggersLayout                   out;
      auto id = [&](TupleVec t) {
        auto [it, inserted] = coord.emplace(t, tuples.size());
        if (inserted) {
          tuples.push_back(std::move(t));
        }
        return it->second;
      };
      TupleVec xyz(3, 0);
      do {
        elem_t x = xyz[0], y = xyz[1], z = xyz[2];
        if (x == y && y == z) {
          continue;
        }
        auto l = id({y, x, y, z});
        auto r = id({x, y, z, x});
        if (l != r) {
          out.equal.emplace_back(l, r);
        }
      } while (next_tuple(xyz, n));
      out.generators.assign(4, TupleVec(tuples.size()));
      for (std::size_t j = 0; j < tuples.size(); ++j) {
        for (std::size_t v = 0; v < 4; ++v) {
          out.generators[v][j] = tuples[j][v];
        }
      }
      return out;
    }
  }  // namespace detail

  // s(y,x,y,z) = s(x,y,z,x) for all x, y, z?
  inline bool is_siggers_term(Algebra const& alg, Term const& s) {
    std::size_t const                n = alg.size();
    std::vector<std::vector<elem_t>> left(4), right(4);
    TupleVec                         xyz(3, 0);
    do {
      elem_t x = xyz[0], y = xyz[1], z = xyz[2];
      TupleVec l{y, x, y, z}, r{x, y, z, x};
      for (std::size_t v = 0; v < 4; ++v) {
        left[v].push_back(l[v]);
        right[v].push_back(r[v]);
      }
    } while (next_tuple(xyz, n));
    if (s.number_of_variables() > 4) {
      return false;
    }
    return evaluate_term_columns(alg, s, left)
           == evaluate_term_columns(alg, s, right);
  }

  // Decides whether alg has a Siggers term. "no" comes with a projection
  // divisor; "yes" with a verified term found by subpower search over the
  // 4-generated relation on the Siggers coordinates.
  inline SiggersResult has_siggers_term(Algebra const& alg,
                                        ClosureBudget  budget = {}) {
    SiggersResult out;
    if (alg.size() <= max_congruence_enumeration_size) {
      if (auto d = find_projection_divisor(alg)) {
        out.answer  = Answer::no;
        out.divisor = std::move(d);
        return out;
      }
    }
    if (alg.size() == 1) {
      out.answer = Answer::yes;
      out.term   = Term::variable(0);
      return out;
    }
    auto layout = detail::siggers_layout(alg.size());
    Goal goal;
    for (auto [l, r] : layout.equal) {
      goal.require_equal(l, r);
    }
    auto su = generate_subuniverse(
        alg, layout.generators[0].size(), layout.generators, budget, goal);
    out.search_status = su.status();
    out.search_size   = su.size();
    if (auto i = su.stop_index()) {
      out.term = extract_term(su, *i);
      if (!is_siggers_term(alg, *out.term)) {
        throw internal_error("Siggers search returned " + out.term->to_string()
                             + ", which fails the identity");
      }
      out.answer = Answer::yes;
    } else {
      out.answer = su.complete() ? Answer::no : Answer::unknown;
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Simple algebras
  ////////////////////////////////////////////////////////////////////////////

  // Simple, and every proper subuniverse is a singleton.
  inline bool is_strictly_simple(Algebra const& alg) {
    if (!is_simple(alg)) {
      return false;
    }
    for (std::size_t a = 0; a < alg.size(); ++a) {
      for (std::size_t b = a + 1; b < alg.size(); ++b) {
        if (generated_subuniverse(
                alg, {static_cast<elem_t>(a), static_cast<elem_t>(b)})
                .size()
            != alg.size()) {
          return false;
        }
      }
    }
    return true;
  }

  // a and b are joined by a chain of proper subuniverses, consecutive ones
  // overlapping (the proper-subalgebra hypergraph).
  inline bool hypergraph_connected(Algebra const& alg, elem_t a, elem_t b) {
    UnionFind uf(alg.size());
    for (std::size_t c = 0; c < alg.size(); ++c) {
      for (std::size_t d = c + 1; d < alg.size(); ++d) {
        if (generated_subuniverse(
                alg, {static_cast<elem_t>(c), static_cast<elem_t>(d)})
                .size()
            < alg.size()) {
          uf.unite(c, d);
        }
      }
    }
    return uf.find(a) == uf.find(b);
  }

  enum class CaseStatus { hypergraph, witness, failed, skipped, unknown };

  inline char const* to_string(CaseStatus s) {
    switch (s) {
      case CaseStatus::hypergraph:
        return "hypergraph";
      case CaseStatus::witness:
        return "witness";
      case CaseStatus::failed:
        return "fail";
      case CaseStatus::skipped:
        return "skipped";
      case CaseStatus::unknown:
        return "unknown";
    }
    return "?";
  }

  struct SimpleCaseReport {
    CaseStatus          status = CaseStatus::skipped;
    std::string         detail;
    std::optional<Term> witness;
  };

  // For a simple, tolerance-free, non-affine algebra with a Siggers term:
  // either a and b are connected in the proper-subalgebra hypergraph, or
  // there is a semilattice or majority operation on {a, b}.
  inline SimpleCaseReport verify_simple_case4(Algebra const& alg,
                                              elem_t         a,
                                              elem_t         b,
                                              ClosureBudget  budget = {}) {
    SimpleCaseReport r;
    if (a == b || a >= alg.size() || b >= alg.size()) {
      throw error("verify_simple_case4 needs two distinct elements");
    }
    if (!is_simple(alg)) {
      r.detail = "not simple";
      return r;
    }
    if (!is_tolerance_free(alg)) {
      r.detail = "has a proper tolerance";
      return r;
    }
    auto aff = affine_quotient_certificate(alg, budget);
    if (aff.status != Answer::no) {
      r.detail = aff.status == Answer::yes ? "affine" : "affine test unknown";
      return r;
    }
    auto sig = has_siggers_term(alg, budget);
    if (sig.answer != Answer::yes) {
      r.detail = std::string("Siggers term ") + to_string(sig.answer);
      return r;
    }
    if (hypergraph_connected(alg, a, b)) {
      r.status = CaseStatus::hypergraph;
      return r;
    }
    bool unresolved = false;
    for (auto w : {semilattice_witness(alg, a, b, budget),
                   semilattice_witness(alg, b, a, budget),
                   majority_witness(alg, a, b, budget)}) {
      if (w.status == Answer::yes) {
        r.status  = CaseStatus::witness;
        r.witness = w.term;
        return r;
      }
      unresolved = unresolved || w.status == Answer::unknown;
    }
    r.status = unresolved ? CaseStatus::unknown : CaseStatus::failed;
    r.detail = "no hypergraph path and no semilattice or majority operation";
    return r;
  }

}  // namespace agraph

#endif  // AGRAPH_EDGES_HPP_
