// agraph - edge structure of finite idempotent algebras
//
// Small reference algebras.
//
//   S2       ({0,1}; join)
//   M2       ({0,1}; majority)
//   A2       ({0,1}; x + y + z mod 2)
//   P2       ({0,1}; first projection), which has no Siggers term
//   RPS      rock-paper-scissors: x*y is the winner, 0 < 1 < 2 < 0
//   Z3A      ({0,1,2}; x - y + z mod 3)
//   S3chain  ({0,1,2}; max)
//
// The *_bt variants share the signature (b binary, t ternary) so that they
// can be multiplied with each other:
//
//   S2bt   b = join,  t = x v y v z
//   M2bt   b = x,     t = majority
//   A2bt   b = x,     t = x + y + z mod 2
//   Z3Abt  b = x,     t = x - y + z mod 3

#ifndef AGRAPH_FIXTURES_HPP_
#define AGRAPH_FIXTURES_HPP_

#include <functional>  // for function
#include <string>      // for string
#include <utility>     // for pair
#include <vector>      // for vector

#include "core.hpp"   // for Algebra, OpTable
#include "error.hpp"  // for error

namespace agraph::fixtures {

  namespace detail {
    inline OpTable join(std::string name, std::size_t arity, std::size_t n) {
      return OpTable::from_function(std::move(name), arity, n, [](auto x) {
        elem_t m = 0;
        for (auto v : x) {
          m = std::max(m, v);
        }
        return m;
      });
    }

    inline OpTable median2(std::string name) {
      return OpTable::from_function(std::move(name), 3, 2, [](auto x) {
        return static_cast<elem_t>(x[0] + x[1] + x[2] >= 2);
      });
    }

    inline OpTable affine(std::string name, std::size_t n) {
      return OpTable::from_function(std::move(name), 3, n, [n](auto x) {
        return static_cast<elem_t>((x[0] + n - x[1] + x[2]) % n);
      });
    }
  }  // namespace detail

  inline Algebra s2() {
    return Algebra("S2", 2, {detail::join("join", 2, 2)});
  }

  inline Algebra m2() {
    return Algebra("M2", 2, {detail::median2("maj")});
  }

  inline Algebra a2() {
    return Algebra("A2", 2, {detail::affine("h", 2)});
  }

  inline Algebra p2() {
    return Algebra("P2", 2, {OpTable::projection("p", 2, 2, 0)});
  }

  inline Algebra rps() {
    return Algebra("RPS", 3, {OpTable("mul", 2, 3, {0, 1, 0, 1, 1, 2, 0, 2, 2})});
  }

  inline Algebra z3a() {
    return Algebra("Z3A", 3, {detail::affine("h", 3)});
  }

  inline Algebra s3chain() {
    return Algebra("S3chain", 3, {detail::join("join", 2, 3)});
  }

  inline Algebra s2_bt() {
    return Algebra("S2bt", 2, {detail::join("b", 2, 2), detail::join("t", 3, 2)});
  }

  inline Algebra m2_bt() {
    return Algebra(
        "M2bt", 2, {OpTable::projection("b", 2, 2, 0), detail::median2("t")});
  }

  inline Algebra a2_bt() {
    return Algebra(
        "A2bt", 2, {OpTable::projection("b", 2, 2, 0), detail::affine("t", 2)});
  }

  inline Algebra z3a_bt() {
    return Algebra(
        "Z3Abt", 3, {OpTable::projection("b", 2, 3, 0), detail::affine("t", 3)});
  }

  inline std::vector<std::pair<std::string, std::function<Algebra()>>> const&
  registry() {
    static std::vector<std::pair<std::string, std::function<Algebra()>>> const r{
        {"S2", s2},
        {"M2", m2},
        {"A2", a2},
        {"P2", p2},
        {"RPS", rps},
        {"Z3A", z3a},
        {"S3chain", s3chain},
        {"S2bt", s2_bt},
        {"M2bt", m2_bt},
        {"A2bt", a2_bt},
        {"Z3Abt", z3a_bt}};
    return r;
  }

  inline Algebra by_name(std::string const& name) {
    for (auto const& [n, f] : registry()) {
      if (n == name) {
        return f();
      }
    }
    throw error("unknown fixture " + name);
  }

}  // namespace agraph::fixtures

#endif  // AGRAPH_FIXTURES_HPP_
