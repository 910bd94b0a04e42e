// agraph - edge structure of finite idempotent algebras
//
// Per-edge conditions on the unified operations f, g and h, checked by table
// lookups against the theta classes of an edge classification.

#ifndef AGRAPH_TESTS_CONDITIONS_HPP_
#define AGRAPH_TESTS_CONDITIONS_HPP_

#include <string>

#include "agraph/edges.hpp"
#include "oracles.hpp"

namespace oracle {
  using agraph::EdgeInfo;
  using agraph::EdgeType;
  using agraph::Strictness;

  // Empty when every condition holds, otherwise the name of the first
  // operation that breaks one.
  inline std::string edge_condition_failure(EdgeInfo const& e,
                                            OpTable const&  f,
                                            OpTable const&  g,
                                            OpTable const&  h) {
    auto const t = e.strict();
    EdgeType   k;
    if (t == Strictness::semilattice) {
      k = EdgeType::semilattice;
    } else if (t == Strictness::majority) {
      k = EdgeType::majority;
    } else if (t == Strictness::affine) {
      k = EdgeType::affine;
    } else {
      return "";
    }
    auto const same = [&](elem x, elem y) {
      return e.theta(k).related(e.carrier_index(x), e.carrier_index(y));
    };
    elem const a = e.a, b = e.b;
    std::vector<elem> ab{a, b};
    auto const ff = [&](elem x, elem y) { return oracle::lookup(f, {x, y}); };
    for (auto const& bits : oracle::all_tuples(2, 3)) {
      elem const x = ab[bits[0]], y = ab[bits[1]], z = ab[bits[2]];
      elem const gv = oracle::lookup(g, {x, y, z}), hv = oracle::lookup(h, {x, y, z});
      if (k == EdgeType::semilattice) {
        if (!same(gv, ff(x, ff(y, z)))) {
          return "g";
        }
        if (!same(hv, ff(x, ff(y, z)))) {
          return "h";
        }
      } else if (k == EdgeType::majority) {
        elem const maj = (x == y || x == z) ? x : y;
        if (!same(gv, maj)) {
          return "g";
        }
        if (!same(hv, x)) {
          return "h";
        }
      } else if (!same(gv, x)) {
        return "g";
      }
    }
    if (k == EdgeType::semilattice) {
      elem const u = ff(a, b), v = ff(b, a);
      if (!same(u, v) || !(same(u, a) || same(u, b))) {
        return "f";
      }
    } else {
      for (auto x : ab) {
        for (auto y : ab) {
          if (!same(ff(x, y), x)) {
            return "f";
          }
        }
      }
    }
    if (k == EdgeType::affine) {
      // On an affine quotient any Maltsev operation is x - y + z.
      for (auto x : e.carrier) {
        for (auto y : e.carrier) {
          if (!same(oracle::lookup(h, {x, y, y}), x) || !same(oracle::lookup(h, {y, y, x}), x)) {
            return "h";
          }
        }
      }
    }
    return "";
  }

}  // namespace oracle

#endif  // AGRAPH_TESTS_CONDITIONS_HPP_
