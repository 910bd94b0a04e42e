// agraph - edge structure of finite idempotent algebras
//
// Terms over an algebra's signature. Terms extracted from subpower
// derivations share subterms, so a Term is a handle to an immutable DAG node
// and every evaluation routine memoizes on node identity.

#ifndef AGRAPH_TERM_HPP_
#define AGRAPH_TERM_HPP_

#include <cstddef>        // for size_t
#include <memory>         // for shared_ptr, make_shared
#include <string>         // for string
#include <unordered_map>  // for unordered_map
#include <utility>        // for move
#include <vector>         // for vector

#include "core.hpp"   // for Algebra, OpTable, elem_t
#include "error.hpp"  // for error

namespace agraph {

  class Term {
    struct Node {
      std::size_t       var = 0;
      std::string       op;  // empty for variables
      std::vector<Term> args;
    };

   public:
    Term() : Term(variable(0)) {}

    static Term variable(std::size_t i) {
      auto n = std::make_shared<Node>();
      n->var = i;
      return Term(std::move(n));
    }

    static Term apply(std::string op, std::vector<Term> args) {
      if (op.empty()) {
        throw error("term operation name must be nonempty");
      }
      auto n  = std::make_shared<Node>();
      n->op   = std::move(op);
      n->args = std::move(args);
      return Term(std::move(n));
    }

    bool is_variable() const noexcept {
      return _node->op.empty();
    }

    std::size_t var() const noexcept {
      return _node->var;
    }

    std::string const& op() const noexcept {
      return _node->op;
    }

    std::vector<Term> const& args() const noexcept {
      return _node->args;
    }

    void const* id() const noexcept {
      return _node.get();
    }

    // Largest variable index + 1.
    std::size_t number_of_variables() const {
      std::unordered_map<void const*, std::size_t> memo;
      return nvars(*this, memo);
    }

    std::size_t depth() const {
      std::unordered_map<void const*, std::size_t> memo;
      return depth(*this, memo);
    }

    // Prefix notation, e.g. (join x0 (join x0 x1)).
    std::string to_string() const {
      if (is_variable()) {
        return "x" + std::to_string(var());
      }
      std::string s = "(" + op();
      for (auto const& a : args()) {
        s += " " + a.to_string();
      }
      return s + ")";
    }

    // Structural equality (not identity).
    friend bool operator==(Term const& l, Term const& r) {
      if (l._node == r._node) {
        return true;
      }
      if (l.is_variable() || r.is_variable()) {
        return l.is_variable() && r.is_variable() && l.var() == r.var();
      }
      return l.op() == r.op() && l.args() == r.args();
    }

   private:
    explicit Term(std::shared_ptr<Node const> n) : _node(std::move(n)) {}

    static std::size_t
    nvars(Term const& t, std::unordered_map<void const*, std::size_t>& memo) {
      if (t.is_variable()) {
        return t.var() + 1;
      }
      if (auto it = memo.find(t.id()); it != memo.end()) {
        return it->second;
      }
      std::size_t r = 0;
      for (auto const& a : t.args()) {
        r = std::max(r, nvars(a, memo));
      }
      memo.emplace(t.id(), r);
      return r;
    }

    static std::size_t
    depth(Term const& t, std::unordered_map<void const*, std::size_t>& memo) {
      if (t.is_variable()) {
        return 0;
      }
      if (auto it = memo.find(t.id()); it != memo.end()) {
        return it->second;
      }
      std::size_t r = 0;
      for (auto const& a : t.args()) {
        r = std::max(r, depth(a, memo) + 1);
      }
      memo.emplace(t.id(), r);
      return r;
    }

    std::shared_ptr<Node const> _node;
  };

  namespace detail {
    inline OpTable const& resolve_op(Algebra const& alg, Term const& t) {
      auto idx = alg.op_index(t.op());
      if (!idx) {
        throw error("unknown operation " + t.op() + " in term");
      }
      auto const& op = alg.op(*idx);
      if (op.arity() != t.args().size()) {
        throw error("operation " + t.op() + " has arity "
                    + std::to_string(op.arity()) + ", term applies it to "
                    + std::to_string(t.args().size()) + " arguments");
      }
      return op;
    }

    // Evaluates t simultaneously on `width` assignments; columns[i] holds the
    // values of variable i.
    inline std::vector<elem_t> const&
    evaluate_columns(Algebra const&                                        alg,
                     Term const&                                           t,
                     std::vector<std::vector<elem_t>> const&               columns,
                     std::unordered_map<void const*, std::vector<elem_t>>& memo) {
      if (t.is_variable()) {
        if (t.var() >= columns.size()) {
          throw error("variable x" + std::to_string(t.var())
                      + " is not assigned");
        }
        return columns[t.var()];
      }
      if (auto it = memo.find(t.id()); it != memo.end()) {
        return it->second;
      }
      auto const&                              op = resolve_op(alg, t);
      std::vector<std::vector<elem_t> const*> vals;
      for (auto const& a : t.args()) {
        vals.push_back(&evaluate_columns(alg, a, columns, memo));
      }
      std::size_t const   width = columns.empty() ? 1 : columns[0].size();
      std::vector<elem_t> out(width);
      TupleVec            args(vals.size());
      for (std::size_t j = 0; j < width; ++j) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
          args[i] = (*vals[i])[j];
        }
        out[j] = op(args);
      }
      return memo.emplace(t.id(), std::move(out)).first->second;
    }
  }  // namespace detail

  // Evaluates t with variable i set to assignment[i].
  inline elem_t evaluate_term(Algebra const&          alg,
                              Term const&             t,
                              std::span<elem_t const> assignment) {
    std::vector<std::vector<elem_t>> columns;
    for (auto x : assignment) {
      if (x >= alg.size()) {
        throw error("assignment value out of range");
      }
      columns.push_back({x});
    }
    std::unordered_map<void const*, std::vector<elem_t>> memo;
    return detail::evaluate_columns(alg, t, columns, memo)[0];
  }

  // Coordinatewise evaluation: columns[i] is the tuple assigned to x_i.
  inline std::vector<elem_t>
  evaluate_term_columns(Algebra const&                          alg,
                        Term const&                             t,
                        std::vector<std::vector<elem_t>> const& columns) {
    std::unordered_map<void const*, std::vector<elem_t>> memo;
    return detail::evaluate_columns(alg, t, columns, memo);
  }

  // The term operation of the given arity induced by t.
  inline OpTable term_table(Algebra const&     alg,
                            Term const&        t,
                            std::size_t        arity,
                            std::string const& name = "t") {
    if (t.number_of_variables() > arity) {
      throw error("term uses more than " + std::to_string(arity)
                  + " variables");
    }
    std::size_t const n     = alg.size();
    std::size_t const width = checked_power(n, arity);
    std::vector<std::vector<elem_t>> columns(arity, std::vector<elem_t>(width));
    TupleVec                         args(arity, 0);
    for (std::size_t j = 0; j < width; ++j) {
      for (std::size_t i = 0; i < arity; ++i) {
        columns[i][j] = args[i];
      }
      next_tuple(args, n);
    }
    if (t.is_variable()) {
      return OpTable(name, arity, n, columns[t.var()]);
    }
    return OpTable(name, arity, n, evaluate_term_columns(alg, t, columns));
  }

}  // namespace agraph

#endif  // AGRAPH_TERM_HPP_
