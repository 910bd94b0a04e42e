// agraph - edge structure of finite idempotent algebras
//
// Generated subuniverses of finite powers A^k.
//
// The closure is computed in rounds: round r applies every operation to every
// argument tuple drawn from the elements known at the start of the round that
// involves at least one element found in round r - 1. Elements found in a
// round are sorted lexicographically before they are appended, so element
// order (and therefore every extracted term) is deterministic. Rounds keep the
// derivation depth, and hence the size of extracted terms, small.
//
// Each non-generator element records the operation and parent elements that
// first produced it, which is enough to rebuild a term for any element.

#ifndef AGRAPH_SUBPOWER_HPP_
#define AGRAPH_SUBPOWER_HPP_

#include <algorithm>   // for sort, max
#include <bitset>      // for bitset
#include <cstdint>     // for uint32_t, uint64_t
#include <cstdlib>     // for getenv, strtoull
#include <cstring>     // for memcmp, memcpy
#include <memory>      // for shared_ptr, make_shared
#include <numeric>     // for iota
#include <optional>    // for optional
#include <span>        // for span
#include <string>      // for string
#include <utility>     // for move
#include <vector>      // for vector

#include "core.hpp"   // for Algebra, OpTable, elem_t, TupleVec
#include "error.hpp"  // for error, internal_error
#include "term.hpp"   // for Term

namespace agraph {

  struct ClosureBudget {
    std::size_t                max_elements = std::size_t(1) << 22;
    std::optional<std::size_t> max_rounds;

    // The default cap, overridden by the ALG_CAP environment variable.
    static ClosureBudget from_env() {
      ClosureBudget b;
      if (char const* s = std::getenv("ALG_CAP"); s != nullptr && *s != '\0') {
        char*              end = nullptr;
        unsigned long long v   = std::strtoull(s, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0) {
          b.max_elements = static_cast<std::size_t>(v);
        }
      }
      return b;
    }
  };

  // complete: the set is closed. capped: the budget ran out first. stopped:
  // the caller's predicate accepted an element and the closure was abandoned.
  enum class ClosureStatus { complete, capped, stopped };

  inline char const* to_string(ClosureStatus s) {
    switch (s) {
      case ClosureStatus::complete:
        return "complete";
      case ClosureStatus::capped:
        return "capped";
      case ClosureStatus::stopped:
        return "stopped";
    }
    return "?";
  }

  enum class Membership { found, absent, unknown };

  // A conjunction of per-coordinate constraints on an element of A^k: a
  // coordinate takes one of a set of values, or two coordinates agree. Goals
  // can be checked lazily, one coordinate at a time, which lets the closure
  // test the next round's candidates without materializing them.
  class Goal {
   public:
    Goal() = default;

    // The goal satisfied exactly by the given tuple.
    static Goal exactly(std::span<elem_t const> target) {
      Goal g;
      for (std::size_t j = 0; j < target.size(); ++j) {
        g.require_value(j, target[j]);
      }
      return g;
    }

    Goal& require_value(std::size_t coord, elem_t v) {
      Constraint c{coord, coord, {}};
      c.allowed.set(v);
      _constraints.push_back(c);
      return *this;
    }

    Goal& require_in(std::size_t coord, std::span<elem_t const> values) {
      Constraint c{coord, coord, {}};
      for (auto v : values) {
        c.allowed.set(v);
      }
      _constraints.push_back(c);
      return *this;
    }

    Goal& require_equal(std::size_t l, std::size_t r) {
      if (l != r) {
        _constraints.push_back({l, r, {}});
      }
      return *this;
    }

    // Coordinates l and r carry values with the same label.
    Goal& require_equivalent(std::size_t                    l,
                             std::size_t                    r,
                             std::span<std::size_t const> labels) {
      if (l == r) {
        return *this;
      }
      if (labels.size() > 256) {
        throw error("labeling longer than the value range");
      }
      Constraint c{l, r, {}};
      c.labeling = _labelings.size();
      _labelings.emplace_back(labels.begin(), labels.end());
      _constraints.push_back(c);
      return *this;
    }

    bool empty() const noexcept {
      return _constraints.empty();
    }

    std::size_t max_coordinate() const noexcept {
      std::size_t m = 0;
      for (auto const& c : _constraints) {
        m = std::max({m, c.left, c.right});
      }
      return m;
    }

    bool accepts(std::span<elem_t const> e) const {
      return accepts_lazy([&](std::size_t j) { return e[j]; });
    }

    // value(j) yields coordinate j of the candidate.
    template <typename ValueFn>
    bool accepts_lazy(ValueFn&& value) const {
      for (auto const& c : _constraints) {
        if (c.left == c.right) {
          if (!c.allowed.test(value(c.left))) {
            return false;
          }
        } else if (c.labeling != no_labeling) {
          auto const& lab = _labelings[c.labeling];
          if (lab[value(c.left)] != lab[value(c.right)]) {
            return false;
          }
        } else if (value(c.left) != value(c.right)) {
          return false;
        }
      }
      return true;
    }

   private:
    static constexpr std::size_t no_labeling = SIZE_MAX;

    struct Constraint {
      std::size_t        left;
      std::size_t        right;  // == left for a value constraint
      std::bitset<256>   allowed;
      std::size_t        labeling = no_labeling;
    };
    std::vector<Constraint>               _constraints;
    std::vector<std::vector<std::size_t>> _labelings;
  };

  class SubUniverse {
   public:
    static constexpr std::uint32_t generator_op = UINT32_MAX;

    std::shared_ptr<Algebra const> const& base_ptr() const noexcept {
      return _base;
    }

    Algebra const& base() const noexcept {
      return *_base;
    }

    std::size_t power() const noexcept {
      return _k;
    }

    std::vector<TupleVec> const& generators() const noexcept {
      return _gens;
    }

    std::size_t size() const noexcept {
      return _k == 0 ? _nelems : _data.size() / _k;
    }

    std::span<elem_t const> element(std::size_t i) const {
      return {_data.data() + i * _k, _k};
    }

    TupleVec element_vec(std::size_t i) const {
      auto e = element(i);
      return {e.begin(), e.end()};
    }

    ClosureStatus status() const noexcept {
      return _status;
    }

    bool complete() const noexcept {
      return _status == ClosureStatus::complete;
    }

    std::size_t rounds() const noexcept {
      return _rounds;
    }

    // Index of the element that satisfied the stop predicate.
    std::optional<std::size_t> stop_index() const noexcept {
      return _stop;
    }

    std::optional<std::size_t> find(std::span<elem_t const> t) const {
      if (t.size() != _k) {
        throw error("tuple length " + std::to_string(t.size())
                    + " does not match power " + std::to_string(_k));
      }
      if (_slots.empty()) {
        return std::nullopt;
      }
      std::size_t const mask = _slots.size() - 1;
      for (std::size_t s = hash(t.data()) & mask;; s = (s + 1) & mask) {
        auto v = _slots[s];
        if (v == empty_slot) {
          return std::nullopt;
        }
        if (std::memcmp(_data.data() + std::size_t(v) * _k, t.data(), _k)
            == 0) {
          return v;
        }
      }
    }

    // Operation index (or generator_op) and parents of element i. For
    // generators the single "parent" is the generator position.
    std::uint32_t derivation_op(std::size_t i) const {
      return _dop[i];
    }

    std::span<std::uint32_t const> derivation_parents(std::size_t i) const {
      if (_dop[i] == generator_op) {
        return {_dpar.data() + i * _stride, 1};
      }
      return {_dpar.data() + i * _stride, _base->op(_dop[i]).arity()};
    }

    // Elements as vectors, in storage order.
    std::vector<TupleVec> elements() const {
      std::vector<TupleVec> out;
      out.reserve(size());
      for (std::size_t i = 0; i < size(); ++i) {
        out.push_back(element_vec(i));
      }
      return out;
    }

   private:
    friend class ClosureEngine;

    static constexpr std::uint32_t empty_slot = UINT32_MAX;

    std::uint64_t hash(elem_t const* p) const {
      std::uint64_t h = 0x9e3779b97f4a7c15ULL;
      std::size_t   i = 0;
      for (; i + 8 <= _k; i += 8) {
        std::uint64_t w;
        std::memcpy(&w, p + i, 8);
        h = (h ^ w) * 0xff51afd7ed558ccdULL;
        h ^= h >> 32;
      }
      for (; i < _k; ++i) {
        h = (h ^ p[i]) * 0x100000001b3ULL;
      }
      h ^= h >> 29;
      h *= 0xc4ceb9fe1a85ec53ULL;
      h ^= h >> 32;
      return h;
    }

    std::shared_ptr<Algebra const> _base;
    std::size_t                    _k = 0;
    std::size_t                    _nelems = 0;
    std::vector<TupleVec>          _gens;
    std::vector<elem_t>            _data;
    std::vector<std::uint32_t>     _slots;
    std::vector<std::uint32_t>     _dop;
    std::vector<std::uint32_t>     _dpar;
    std::size_t                    _stride = 1;
    ClosureStatus                  _status = ClosureStatus::complete;
    std::size_t                    _rounds = 0;
    std::optional<std::size_t>     _stop;
  };

  class ClosureEngine {
   public:
    ClosureEngine(std::shared_ptr<Algebra const> alg,
                  std::size_t                    k,
                  std::vector<TupleVec>          gens,
                  ClosureBudget                  budget,
                  std::optional<Goal>            goal)
        : _budget(budget), _goal(std::move(goal)) {
      if (gens.empty()) {
        throw error("generate_subuniverse needs at least one generator");
      }
      if (k == 0) {
        throw error("power must be at least 1");
      }
      for (auto const& g : gens) {
        if (g.size() != k) {
          throw error("generator length " + std::to_string(g.size())
                      + " does not match power " + std::to_string(k));
        }
        for (auto x : g) {
          if (x >= alg->size()) {
            throw error("generator entry out of range");
          }
        }
      }
      if (alg->max_arity() > 8) {
        throw error("operations of arity above 8 are not supported");
      }
      if (_goal && !_goal->empty() && _goal->max_coordinate() >= k) {
        throw error("goal refers to a coordinate beyond the power");
      }
      _su._base   = std::move(alg);
      _su._k      = k;
      _su._gens   = std::move(gens);
      _su._stride = std::max<std::size_t>(1, _su._base->max_arity());
      _su._slots.assign(64, SubUniverse::empty_slot);
      _buf.resize(k);
    }

    SubUniverse run() {
      auto& su = _su;
      for (std::size_t g = 0; g < su._gens.size(); ++g) {
        if (insert(su._gens[g].data(), SubUniverse::generator_op, nullptr, g)) {
          if (reached_goal(su.size() - 1)) {
            return std::move(su);
          }
        }
        if (su.size() >= _budget.max_elements) {
          su._status = ClosureStatus::capped;
          return std::move(su);
        }
      }
      std::size_t lo = 0;
      std::size_t hi = su.size();
      while (lo < hi) {
        if (_budget.max_rounds && su._rounds >= *_budget.max_rounds) {
          su._status = ClosureStatus::capped;
          return std::move(su);
        }
        ++su._rounds;
        if (_goal && lookahead(lo, hi)) {
          return std::move(su);
        }
        bool const finished = round(lo, hi);
        sort_block(hi);
        if (!finished) {
          return std::move(su);
        }
        lo = hi;
        hi = su.size();
      }
      su._status = ClosureStatus::complete;
      return std::move(su);
    }

   private:
    // Calls visit(op, idx) for every application in the round over [lo, hi):
    // arguments come from [0, hi) and at least one comes from [lo, hi). The
    // order is fixed: op, then the first position holding a new element,
    // then the argument indices lexicographically. visit returns false to
    // abort; the function then returns false.
    template <typename Visit>
    bool for_each_application(std::size_t lo, std::size_t hi, Visit&& visit) {
      auto const&                alg = *_su._base;
      std::vector<std::uint32_t> idx;
      for (std::size_t o = 0; o < alg.ops().size(); ++o) {
        std::size_t const m = alg.op(o).arity();
        idx.assign(m, 0);
        for (std::size_t p = 0; p < m; ++p) {
          if (p > 0 && lo == 0) {
            break;  // positions before p would range over the empty [0, 0)
          }
          for (std::size_t q = 0; q < m; ++q) {
            idx[q] = static_cast<std::uint32_t>(q == p ? lo : 0);
          }
          while (true) {
            if (!visit(o, idx.data())) {
              return false;
            }
            // q < p ranges over [0, lo), q == p over [lo, hi), q > p over [0, hi)
            std::size_t q    = m;
            bool        done = true;
            while (q-- > 0) {
              std::size_t const upper = q < p ? lo : hi;
              if (++idx[q] < upper) {
                done = false;
                break;
              }
              idx[q] = static_cast<std::uint32_t>(q == p ? lo : 0);
            }
            if (done) {
              break;
            }
          }
        }
      }
      return true;
    }

    elem_t value_at(std::size_t o, std::uint32_t const* idx, std::size_t j) const {
      auto const&       op = _su._base->op(o);
      std::size_t const n  = op.size();
      std::size_t const k  = _su._k;
      std::size_t       t  = 0;
      for (std::size_t q = 0; q < op.arity(); ++q) {
        t = t * n + _su._data[std::size_t(idx[q]) * k + j];
      }
      return op.values()[t];
    }

    void evaluate_into(std::size_t o, std::uint32_t const* idx) {
      auto const&       op    = _su._base->op(o);
      std::size_t const m     = op.arity();
      std::size_t const n     = op.size();
      std::size_t const k     = _su._k;
      auto const*       table = op.values().data();
      elem_t const*     rows[8];
      for (std::size_t q = 0; q < m; ++q) {
        rows[q] = _su._data.data() + std::size_t(idx[q]) * k;
      }
      if (m == 1) {
        for (std::size_t j = 0; j < k; ++j) {
          _buf[j] = table[rows[0][j]];
        }
      } else if (m == 2) {
        for (std::size_t j = 0; j < k; ++j) {
          _buf[j] = table[std::size_t(rows[0][j]) * n + rows[1][j]];
        }
      } else if (m == 3) {
        for (std::size_t j = 0; j < k; ++j) {
          _buf[j] = table[(std::size_t(rows[0][j]) * n + rows[1][j]) * n
                          + rows[2][j]];
        }
      } else {
        for (std::size_t j = 0; j < k; ++j) {
          std::size_t t = 0;
          for (std::size_t q = 0; q < m; ++q) {
            t = t * n + rows[q][j];
          }
          _buf[j] = table[t];
        }
      }
    }

    // Scans the coming round for an application meeting the goal without
    // storing anything. On a hit, only that element is added.
    bool lookahead(std::size_t lo, std::size_t hi) {
      bool hit = false;
      for_each_application(lo, hi, [&](std::size_t o, std::uint32_t const* idx) {
        if (!_goal->accepts_lazy(
                [&](std::size_t j) { return value_at(o, idx, j); })) {
          return true;
        }
        evaluate_into(o, idx);
        if (!insert(_buf.data(), static_cast<std::uint32_t>(o), idx, 0)) {
          // already present elements were tested when they were added
          throw internal_error("goal element found twice");
        }
        hit = reached_goal(_su.size() - 1);
        return false;
      });
      return hit;
    }

    // Returns false when the closure must end (cap or goal reached).
    bool round(std::size_t lo, std::size_t hi) {
      bool finished = true;
      for_each_application(lo, hi, [&](std::size_t o, std::uint32_t const* idx) {
        evaluate_into(o, idx);
        if (insert(_buf.data(), static_cast<std::uint32_t>(o), idx, 0)) {
          if (reached_goal(_su.size() - 1)) {
            finished = false;
            return false;
          }
          if (_su.size() >= _budget.max_elements) {
            _su._status = ClosureStatus::capped;
            finished    = false;
            return false;
          }
        }
        return true;
      });
      return finished;
    }

    bool reached_goal(std::size_t i) {
      if (_goal && _goal->accepts(_su.element(i))) {
        _su._status = ClosureStatus::stopped;
        _su._stop   = i;
        return true;
      }
      return false;
    }

    // Inserts a tuple if new; returns true when inserted.
    bool insert(elem_t const*        t,
                std::uint32_t        op,
                std::uint32_t const* parents,
                std::size_t          gen_pos) {
      auto&             su   = _su;
      std::size_t const k    = su._k;
      std::size_t const mask = su._slots.size() - 1;
      std::size_t       s    = su.hash(t) & mask;
      for (;; s = (s + 1) & mask) {
        auto v = su._slots[s];
        if (v == SubUniverse::empty_slot) {
          break;
        }
        if (std::memcmp(su._data.data() + std::size_t(v) * k, t, k) == 0) {
          return false;
        }
      }
      std::size_t const id = su.size();
      su._data.insert(su._data.end(), t, t + k);
      su._slots[s] = static_cast<std::uint32_t>(id);
      su._dop.push_back(op);
      std::size_t const base = su._dpar.size();
      su._dpar.resize(base + su._stride, 0);
      if (op == SubUniverse::generator_op) {
        su._dpar[base] = static_cast<std::uint32_t>(gen_pos);
      } else {
        for (std::size_t q = 0; q < su._base->op(op).arity(); ++q) {
          su._dpar[base + q] = parents[q];
        }
      }
      if (2 * (id + 1) > su._slots.size()) {
        rehash(su._slots.size() * 2);
      }
      return true;
    }

    void rehash(std::size_t cap) {
      auto& su = _su;
      su._slots.assign(cap, SubUniverse::empty_slot);
      std::size_t const mask = cap - 1;
      for (std::size_t i = 0; i < su.size(); ++i) {
        std::size_t s = su.hash(su._data.data() + i * su._k) & mask;
        while (su._slots[s] != SubUniverse::empty_slot) {
          s = (s + 1) & mask;
        }
        su._slots[s] = static_cast<std::uint32_t>(i);
      }
    }

    // Sorts the elements with index >= from lexicographically. Parents always
    // precede from, so only slots and the goal index need remapping.
    void sort_block(std::size_t from) {
      auto&             su = _su;
      std::size_t const k  = su._k;
      std::size_t const to = su.size();
      if (to - from < 2) {
        return;
      }
      std::vector<std::uint32_t> perm(to - from);
      std::iota(perm.begin(), perm.end(), static_cast<std::uint32_t>(from));
      std::sort(perm.begin(), perm.end(), [&](auto x, auto y) {
        return std::memcmp(su._data.data() + std::size_t(x) * k,
                           su._data.data() + std::size_t(y) * k,
                           k)
               < 0;
      });
      std::vector<elem_t> data(su._data.begin() + from * k, su._data.end());
      std::vector<std::uint32_t> dop(su._dop.begin() + from, su._dop.end());
      std::vector<std::uint32_t> dpar(su._dpar.begin() + from * su._stride,
                                      su._dpar.end());
      std::vector<std::uint32_t> inverse(to - from);
      for (std::size_t i = 0; i < perm.size(); ++i) {
        std::size_t const old = perm[i] - from;
        inverse[old]          = static_cast<std::uint32_t>(from + i);
        std::memcpy(su._data.data() + (from + i) * k, data.data() + old * k, k);
        su._dop[from + i] = dop[old];
        std::memcpy(su._dpar.data() + (from + i) * su._stride,
                    dpar.data() + old * su._stride,
                    su._stride * sizeof(std::uint32_t));
      }
      for (auto& s : su._slots) {
        if (s != SubUniverse::empty_slot && s >= from) {
          s = inverse[s - from];
        }
      }
      if (su._stop && *su._stop >= from) {
        su._stop = inverse[*su._stop - from];
      }
    }

    SubUniverse         _su;
    ClosureBudget       _budget;
    std::optional<Goal> _goal;
    std::vector<elem_t> _buf;
  };

  // Sg_{A^k}(gens). With a goal, the closure is abandoned as soon as an
  // element meeting it is found (status stopped).
  inline SubUniverse generate_subuniverse(Algebra const&        alg,
                                          std::size_t           k,
                                          std::vector<TupleVec> gens,
                                          ClosureBudget         budget = {},
                                          std::optional<Goal>   goal   = {}) {
    return ClosureEngine(std::make_shared<Algebra const>(alg),
                         k,
                         std::move(gens),
                         budget,
                         std::move(goal))
        .run();
  }

  // Sg_A(elems) as a sorted element list.
  inline std::vector<elem_t> generated_subuniverse(Algebra const&             alg,
                                                   std::vector<elem_t> const& elems) {
    std::vector<TupleVec> gens;
    for (auto x : elems) {
      gens.push_back({x});
    }
    auto                su = generate_subuniverse(alg, 1, std::move(gens));
    std::vector<elem_t> out;
    for (std::size_t i = 0; i < su.size(); ++i) {
      out.push_back(su.element(i)[0]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  struct MembershipResult {
    Membership                 status = Membership::absent;
    std::optional<std::size_t> index;

    bool found() const noexcept {
      return status == Membership::found;
    }
  };

  // absent is definitive only for a complete closure; otherwise a missing
  // tuple is reported as unknown.
  inline MembershipResult member_with_witness(SubUniverse const&      su,
                                              std::span<elem_t const> target) {
    if (auto i = su.find(target)) {
      return {Membership::found, i};
    }
    return {su.complete() ? Membership::absent : Membership::unknown,
            std::nullopt};
  }

  // A term over x_0, ..., x_{m-1} (m = number of generators) evaluating
  // coordinatewise to element i. The result is re-evaluated before it is
  // returned; a mismatch is an internal error.
  inline Term extract_term(SubUniverse const& su, std::size_t i) {
    if (i >= su.size()) {
      throw error("element index " + std::to_string(i) + " not in subuniverse");
    }
    std::vector<std::optional<Term>> memo(su.size());
    std::vector<std::size_t>         stack{i};
    while (!stack.empty()) {
      std::size_t e = stack.back();
      if (memo[e]) {
        stack.pop_back();
        continue;
      }
      if (su.derivation_op(e) == SubUniverse::generator_op) {
        memo[e] = Term::variable(su.derivation_parents(e)[0]);
        stack.pop_back();
        continue;
      }
      bool ready = true;
      for (auto p : su.derivation_parents(e)) {
        if (!memo[p]) {
          stack.push_back(p);
          ready = false;
        }
      }
      if (ready) {
        std::vector<Term> args;
        for (auto p : su.derivation_parents(e)) {
          args.push_back(*memo[p]);
        }
        memo[e] = Term::apply(su.base().op(su.derivation_op(e)).name(),
                              std::move(args));
        stack.pop_back();
      }
    }
    Term                             t = *memo[i];
    std::vector<std::vector<elem_t>> columns(su.generators().begin(),
                                             su.generators().end());
    auto values = evaluate_term_columns(su.base(), t, columns);
    auto expect = su.element(i);
    if (!std::equal(values.begin(), values.end(), expect.begin(), expect.end())) {
      throw internal_error("extracted term " + t.to_string()
                           + " does not re-evaluate to its element");
    }
    return t;
  }

  // Columns of the k projections on the n^k argument tuples, in table order.
  inline std::vector<TupleVec> projection_columns(std::size_t n, std::size_t k) {
    std::size_t const     width = checked_power(n, k);
    std::vector<TupleVec> cols(k, TupleVec(width));
    TupleVec              args(k, 0);
    for (std::size_t j = 0; j < width; ++j) {
      for (std::size_t i = 0; i < k; ++i) {
        cols[i][j] = args[i];
      }
      next_tuple(args, n);
    }
    return cols;
  }

  struct TermSlice {
    std::vector<OpTable> ops;
    ClosureStatus        status = ClosureStatus::complete;

    bool complete() const noexcept {
      return status == ClosureStatus::complete;
    }
  };

  // All k-ary term operations (k in {1, 2, 3}) in closure order, named t0, t1,
  // ... by position.
  inline TermSlice term_slice(Algebra const& alg,
                              std::size_t    k,
                              ClosureBudget  budget = {}) {
    if (k < 1 || k > 3) {
      throw error("term slices are supported for arity 1, 2 or 3, got "
                  + std::to_string(k));
    }
    std::size_t const n  = alg.size();
    auto              su = generate_subuniverse(
        alg, checked_power(n, k), projection_columns(n, k), budget);
    TermSlice out;
    out.status = su.status();
    for (std::size_t i = 0; i < su.size(); ++i) {
      out.ops.emplace_back("t" + std::to_string(i), k, n, su.element_vec(i));
    }
    return out;
  }

  struct TermSearchResult {
    std::optional<Term>     term;
    std::optional<TupleVec> values;  // the term's values on the rows
    ClosureStatus           status = ClosureStatus::complete;

    Membership membership() const noexcept {
      if (term) {
        return Membership::found;
      }
      return status == ClosureStatus::complete ? Membership::absent
                                               : Membership::unknown;
    }
  };

  // Transposes argument rows (each of length arity) into generator columns.
  inline std::vector<TupleVec> rows_to_columns(std::size_t                  arity,
                                               std::vector<TupleVec> const& rows) {
    std::vector<TupleVec> cols(arity, TupleVec(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[j].size() != arity) {
        throw error("row length does not match arity");
      }
      for (std::size_t i = 0; i < arity; ++i) {
        cols[i][j] = rows[j][i];
      }
    }
    return cols;
  }

  // Looks for a term t of the given arity whose values on the argument rows
  // meet the goal (coordinate j of the goal is row j).
  inline TermSearchResult search_term(Algebra const&               alg,
                                      std::size_t                  arity,
                                      std::vector<TupleVec> const& rows,
                                      Goal                         goal,
                                      ClosureBudget                budget = {}) {
    if (rows.empty()) {
      throw error("search_term needs at least one row");
    }
    auto su = generate_subuniverse(
        alg, rows.size(), rows_to_columns(arity, rows), budget, std::move(goal));
    TermSearchResult res;
    res.status = su.status();
    if (auto i = su.stop_index()) {
      res.term   = extract_term(su, *i);
      res.values = su.element_vec(*i);
    }
    return res;
  }

  inline TermSearchResult search_term_target(Algebra const&               alg,
                                             std::size_t                  arity,
                                             std::vector<TupleVec> const& rows,
                                             TupleVec const&              target,
                                             ClosureBudget budget = {}) {
    if (target.size() != rows.size()) {
      throw error("target length does not match the number of rows");
    }
    return search_term(alg, arity, rows, Goal::exactly(target), budget);
  }

}  // namespace agraph

#endif  // AGRAPH_SUBPOWER_HPP_
