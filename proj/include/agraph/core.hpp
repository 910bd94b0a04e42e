// agraph - edge structure of finite idempotent algebras
//
// Finite idempotent algebras on {0, ..., n-1}: operation tables, algebras and
// the elementary constructions (evaluation, induced subalgebras, quotients and
// finite products).
//
// Operation tables are stored row-major with the leftmost argument most
// significant, i.e. f(x_1, ..., x_k) lives at index sum_i x_i * n^(k - i).
// This is also the order of values in the .alg file format.

#ifndef AGRAPH_CORE_HPP_
#define AGRAPH_CORE_HPP_

#include <algorithm>    // for sort, unique, max
#include <cstddef>      // for size_t
#include <cstdint>      // for uint8_t
#include <optional>     // for optional
#include <span>         // for span
#include <string>       // for string
#include <type_traits>  // for invoke_result_t
#include <utility>      // for move
#include <vector>       // for vector

#include "error.hpp"      // for error
#include "partition.hpp"  // for Partition

namespace agraph {

  using elem_t = std::uint8_t;

  // Universes are bounded so that elements fit in a byte.
  inline constexpr std::size_t max_universe_size = 255;

  using TupleVec = std::vector<elem_t>;

  inline std::size_t checked_power(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
      if (base != 0 && r > (std::size_t(1) << 40) / base) {
        throw error("table size " + std::to_string(base) + "^"
                    + std::to_string(exp) + " is too large");
      }
      r *= base;
    }
    return r;
  }

  class OpTable {
   public:
    OpTable() = default;

    OpTable(std::string         name,
            std::size_t         arity,
            std::size_t         size,
            std::vector<elem_t> values)
        : _name(std::move(name)),
          _arity(arity),
          _size(size),
          _values(std::move(values)) {
      if (_arity == 0) {
        throw error("operation " + _name + " must have arity >= 1");
      }
      if (_size == 0 || _size > max_universe_size) {
        throw error("operation " + _name + " has unsupported universe size "
                    + std::to_string(_size));
      }
      if (_values.size() != checked_power(_size, _arity)) {
        throw error("operation " + _name + " expects "
                    + std::to_string(checked_power(_size, _arity))
                    + " values, got " + std::to_string(_values.size()));
      }
      for (std::size_t i = 0; i < _values.size(); ++i) {
        if (_values[i] >= _size) {
          throw error("operation " + _name + " value "
                      + std::to_string(_values[i]) + " at position "
                      + std::to_string(i) + " is out of range");
        }
      }
    }

    // Tabulates fn(std::span<elem_t const>) over all argument tuples.
    template <typename Fn>
    static OpTable
    from_function(std::string name, std::size_t arity, std::size_t size, Fn&& fn) {
      std::vector<elem_t> values(checked_power(size, arity));
      TupleVec            args(arity, 0);
      for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = static_cast<elem_t>(fn(std::span<elem_t const>(args)));
        for (std::size_t p = arity; p-- > 0;) {
          if (++args[p] < size) {
            break;
          }
          args[p] = 0;
        }
      }
      return OpTable(std::move(name), arity, size, std::move(values));
    }

    static OpTable projection(std::string name,
                              std::size_t arity,
                              std::size_t size,
                              std::size_t which) {
      return from_function(std::move(name), arity, size, [which](auto args) {
        return args[which];
      });
    }

    std::string const& name() const noexcept {
      return _name;
    }

    std::size_t arity() const noexcept {
      return _arity;
    }

    std::size_t size() const noexcept {
      return _size;
    }

    std::vector<elem_t> const& values() const noexcept {
      return _values;
    }

    std::size_t index(std::span<elem_t const> args) const {
      std::size_t idx = 0;
      for (auto x : args) {
        idx = idx * _size + x;
      }
      return idx;
    }

    elem_t operator()(std::span<elem_t const> args) const {
      return _values[index(args)];
    }

    elem_t operator()(elem_t x, elem_t y) const {
      return _values[std::size_t(x) * _size + y];
    }

    elem_t operator()(elem_t x, elem_t y, elem_t z) const {
      return _values[(std::size_t(x) * _size + y) * _size + z];
    }

    // Checked evaluation; throws on arity mismatch or out-of-range argument.
    elem_t evaluate(std::span<elem_t const> args) const {
      if (args.size() != _arity) {
        throw error("operation " + _name + " has arity "
                    + std::to_string(_arity) + ", got "
                    + std::to_string(args.size()) + " arguments");
      }
      for (auto x : args) {
        if (x >= _size) {
          throw error("argument " + std::to_string(x)
                      + " out of range for operation " + _name);
        }
      }
      return (*this)(args);
    }

    // The least x with f(x, ..., x) != x, if any.
    std::optional<elem_t> idempotency_violation() const {
      std::size_t step = 0;
      for (std::size_t i = 0; i < _arity; ++i) {
        step = step * _size + 1;
      }
      for (std::size_t x = 0; x < _size; ++x) {
        if (_values[x * step] != x) {
          return static_cast<elem_t>(x);
        }
      }
      return std::nullopt;
    }

    bool is_idempotent() const {
      return !idempotency_violation().has_value();
    }

    // Same operation up to its name.
    bool same_table(OpTable const& that) const {
      return _arity == that._arity && _size == that._size
             && _values == that._values;
    }

    OpTable renamed(std::string name) const {
      OpTable r = *this;
      r._name   = std::move(name);
      return r;
    }

    friend bool operator==(OpTable const&, OpTable const&) = default;

   private:
    std::string         _name;
    std::size_t         _arity = 0;
    std::size_t         _size  = 0;
    std::vector<elem_t> _values;
  };

  class Algebra {
   public:
    Algebra() = default;

    Algebra(std::string name, std::size_t size, std::vector<OpTable> ops)
        : _name(std::move(name)), _size(size), _ops(std::move(ops)) {
      if (_size == 0 || _size > max_universe_size) {
        throw error("algebra " + _name + " has unsupported size "
                    + std::to_string(_size));
      }
      if (_ops.empty()) {
        throw error("algebra " + _name + " has no operations");
      }
      for (std::size_t i = 0; i < _ops.size(); ++i) {
        auto const& op = _ops[i];
        if (op.size() != _size) {
          throw error("operation " + op.name() + " is over a universe of size "
                      + std::to_string(op.size()) + ", algebra " + _name
                      + " has size " + std::to_string(_size));
        }
        if (auto x = op.idempotency_violation()) {
          throw error("operation " + op.name() + " is not idempotent: "
                      + op.name() + "(" + std::to_string(*x) + ",...,"
                      + std::to_string(*x)
                      + ") = " + std::to_string(op(TupleVec(op.arity(), *x))));
        }
        for (std::size_t j = 0; j < i; ++j) {
          if (_ops[j].name() == op.name()) {
            throw error("duplicate operation name " + op.name());
          }
        }
      }
      _max_arity = 0;
      for (auto const& op : _ops) {
        _max_arity = std::max(_max_arity, op.arity());
      }
    }

    std::string const& name() const noexcept {
      return _name;
    }

    std::size_t size() const noexcept {
      return _size;
    }

    std::vector<OpTable> const& ops() const noexcept {
      return _ops;
    }

    OpTable const& op(std::size_t i) const {
      return _ops.at(i);
    }

    std::size_t max_arity() const noexcept {
      return _max_arity;
    }

    std::optional<std::size_t> op_index(std::string const& name) const {
      for (std::size_t i = 0; i < _ops.size(); ++i) {
        if (_ops[i].name() == name) {
          return i;
        }
      }
      return std::nullopt;
    }

    // Names and arities agree position by position.
    bool same_signature(Algebra const& that) const {
      if (_ops.size() != that._ops.size()) {
        return false;
      }
      for (std::size_t i = 0; i < _ops.size(); ++i) {
        if (_ops[i].name() != that._ops[i].name()
            || _ops[i].arity() != that._ops[i].arity()) {
          return false;
        }
      }
      return true;
    }

    Algebra renamed(std::string name) const {
      Algebra r = *this;
      r._name   = std::move(name);
      return r;
    }

    friend bool operator==(Algebra const&, Algebra const&) = default;

   private:
    std::string          _name;
    std::size_t          _size = 0;
    std::vector<OpTable> _ops;
    std::size_t          _max_arity = 0;
  };

  // Odometer step over base^k, rightmost position fastest. Returns false after
  // the last tuple (and resets to all zeros).
  template <typename T>
  bool next_tuple(std::vector<T>& pos, std::size_t base) {
    for (std::size_t p = pos.size(); p-- > 0;) {
      if (static_cast<std::size_t>(++pos[p]) < base) {
        return true;
      }
      pos[p] = 0;
    }
    return false;
  }

  inline elem_t evaluate_op(OpTable const& op, std::span<elem_t const> args) {
    return op.evaluate(args);
  }

  // Is the subset closed under every operation? On failure the offending
  // operation index and argument tuple are written to *witness_op/*witness_args.
  inline bool is_closed(Algebra const&           alg,
                        std::vector<bool> const& in,
                        std::size_t*             witness_op   = nullptr,
                        TupleVec*                witness_args = nullptr) {
    std::vector<elem_t> members;
    for (std::size_t x = 0; x < alg.size(); ++x) {
      if (in[x]) {
        members.push_back(static_cast<elem_t>(x));
      }
    }
    if (members.empty()) {
      return true;
    }
    for (std::size_t i = 0; i < alg.ops().size(); ++i) {
      auto const& op = alg.op(i);
      std::vector<std::size_t> pos(op.arity(), 0);
      TupleVec                 args(op.arity());
      do {
        for (std::size_t p = 0; p < args.size(); ++p) {
          args[p] = members[pos[p]];
        }
        if (!in[op(args)]) {
          if (witness_op != nullptr) {
            *witness_op = i;
          }
          if (witness_args != nullptr) {
            *witness_args = args;
          }
          return false;
        }
      } while (next_tuple(pos, members.size()));
    }
    return true;
  }

  inline constexpr std::size_t max_subuniverse_enumeration_size = 8;

  // All nonempty subuniverses as sorted element lists, ordered by size and
  // then lexicographically.
  inline std::vector<std::vector<elem_t>> all_subuniverses(Algebra const& alg) {
    std::size_t const n = alg.size();
    if (n > max_subuniverse_enumeration_size) {
      throw error("subuniverse enumeration is limited to algebras with at most "
                  + std::to_string(max_subuniverse_enumeration_size)
                  + " elements");
    }
    std::vector<std::vector<elem_t>> out;
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
      std::vector<bool>   in(n);
      std::vector<elem_t> members;
      for (std::size_t x = 0; x < n; ++x) {
        in[x] = (mask >> x & 1) != 0;
        if (in[x]) {
          members.push_back(static_cast<elem_t>(x));
        }
      }
      if (is_closed(alg, in)) {
        out.push_back(std::move(members));
      }
    }
    std::sort(out.begin(), out.end(), [](auto const& l, auto const& r) {
      return l.size() != r.size() ? l.size() < r.size() : l < r;
    });
    return out;
  }

  struct InducedAlgebra {
    Algebra             algebra;
    std::vector<elem_t> carrier;   // new index -> original element
    std::vector<int>    index_of;  // original element -> new index or -1
  };

  // Relabels the subalgebra on carrier (any order; it is sorted) to
  // {0, ..., |carrier| - 1}.
  inline InducedAlgebra subalgebra_induced(Algebra const&      alg,
                                           std::vector<elem_t> carrier) {
    std::sort(carrier.begin(), carrier.end());
    carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
    if (carrier.empty()) {
      throw error("empty carrier");
    }
    std::vector<bool> in(alg.size(), false);
    std::vector<int>  index_of(alg.size(), -1);
    for (std::size_t i = 0; i < carrier.size(); ++i) {
      if (carrier[i] >= alg.size()) {
        throw error("carrier element " + std::to_string(carrier[i])
                    + " out of range");
      }
      in[carrier[i]]        = true;
      index_of[carrier[i]] = static_cast<int>(i);
    }
    std::size_t wop = 0;
    TupleVec    wargs;
    if (!is_closed(alg, in, &wop, &wargs)) {
      std::string msg = "carrier not closed: " + alg.op(wop).name() + "(";
      for (std::size_t i = 0; i < wargs.size(); ++i) {
        msg += (i ? "," : "") + std::to_string(wargs[i]);
      }
      msg += ") = " + std::to_string(alg.op(wop)(wargs));
      throw error(msg);
    }
    std::vector<OpTable> ops;
    std::size_t const    m = carrier.size();
    for (auto const& op : alg.ops()) {
      ops.push_back(OpTable::from_function(
          op.name(), op.arity(), m, [&](std::span<elem_t const> args) {
            TupleVec orig(args.size());
            for (std::size_t i = 0; i < args.size(); ++i) {
              orig[i] = carrier[args[i]];
            }
            return static_cast<elem_t>(index_of[op(orig)]);
          }));
    }
    return {Algebra(alg.name() + "_sub", m, std::move(ops)),
            std::move(carrier),
            std::move(index_of)};
  }

  struct QuotientAlgebra {
    Algebra             algebra;
    std::vector<elem_t> block_of;         // element -> block index
    std::vector<elem_t> representatives;  // block index -> least member
  };

  // Blocks are numbered by their least member. Throws when the partition is
  // not compatible with the operations.
  inline QuotientAlgebra quotient_algebra(Algebra const&   alg,
                                          Partition const& theta) {
    if (theta.size() != alg.size()) {
      throw error("partition size does not match algebra size");
    }
    std::size_t const   n = alg.size();
    std::vector<elem_t> block_of(n);
    std::vector<elem_t> reps;
    for (std::size_t x = 0; x < n; ++x) {
      if (theta.block_id(x) == x) {
        reps.push_back(static_cast<elem_t>(x));
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      block_of[x] = static_cast<elem_t>(theta.block_index(x));
    }
    std::size_t const    q = reps.size();
    std::vector<OpTable> ops;
    for (auto const& op : alg.ops()) {
      std::vector<elem_t> values(checked_power(q, op.arity()));
      std::vector<bool>   seen(values.size(), false);
      // walk all argument tuples of alg and check well-definedness
      TupleVec args(op.arity(), 0);
      TupleVec first_args;
      std::vector<TupleVec> witness(values.size());
      for (std::size_t i = 0; i < op.values().size(); ++i) {
        std::size_t bidx = 0;
        for (auto x : args) {
          bidx = bidx * q + block_of[x];
        }
        elem_t const img = block_of[op.values()[i]];
        if (!seen[bidx]) {
          seen[bidx]    = true;
          values[bidx]  = img;
          witness[bidx] = args;
        } else if (values[bidx] != img) {
          std::string msg = "partition is not compatible with "
                            + op.name() + ": arguments (";
          for (std::size_t j = 0; j < args.size(); ++j) {
            msg += (j ? "," : "") + std::to_string(witness[bidx][j]);
          }
          msg += ") and (";
          for (std::size_t j = 0; j < args.size(); ++j) {
            msg += (j ? "," : "") + std::to_string(args[j]);
          }
          msg += ") are blockwise equal but their images are not";
          throw error(msg);
        }
        for (std::size_t p = args.size(); p-- > 0;) {
          if (++args[p] < n) {
            break;
          }
          args[p] = 0;
        }
      }
      ops.emplace_back(op.name(), op.arity(), q, std::move(values));
    }
    return {Algebra(alg.name() + "_quo", q, std::move(ops)),
            std::move(block_of),
            std::move(reps)};
  }

  // Mixed-radix code of a tuple: the first factor is most significant.
  inline std::size_t product_encode(std::span<std::size_t const> sizes,
                                    std::span<elem_t const>      coords) {
    std::size_t code = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      code = code * sizes[i] + coords[i];
    }
    return code;
  }

  inline TupleVec product_decode(std::span<std::size_t const> sizes,
                                 std::size_t                  code) {
    TupleVec coords(sizes.size());
    for (std::size_t i = sizes.size(); i-- > 0;) {
      coords[i] = static_cast<elem_t>(code % sizes[i]);
      code /= sizes[i];
    }
    return coords;
  }

  // Direct product with coordinatewise operations; element codes as in
  // product_encode.
  inline Algebra product_algebra(std::span<Algebra const> algs) {
    if (algs.empty()) {
      throw error("product of an empty list of algebras");
    }
    std::vector<std::size_t> sizes;
    std::size_t              total = 1;
    std::string              name;
    for (auto const& a : algs) {
      if (!a.same_signature(algs.front())) {
        throw error("signature mismatch between " + algs.front().name()
                    + " and " + a.name());
      }
      sizes.push_back(a.size());
      total *= a.size();
      if (total > max_universe_size) {
        throw error("product universe too large");
      }
      name += (name.empty() ? "" : "x") + a.name();
    }
    std::vector<OpTable> ops;
    for (std::size_t i = 0; i < algs.front().ops().size(); ++i) {
      auto const& proto = algs.front().op(i);
      ops.push_back(OpTable::from_function(
          proto.name(), proto.arity(), total, [&](std::span<elem_t const> args) {
            std::vector<TupleVec> decoded;
            for (auto c : args) {
              decoded.push_back(product_decode(sizes, c));
            }
            TupleVec out(sizes.size());
            TupleVec col(args.size());
            for (std::size_t f = 0; f < sizes.size(); ++f) {
              for (std::size_t j = 0; j < args.size(); ++j) {
                col[j] = decoded[j][f];
              }
              out[f] = algs[f].op(i)(col);
            }
            return static_cast<elem_t>(product_encode(sizes, out));
          }));
    }
    return Algebra(name, total, std::move(ops));
  }

  inline Algebra product_algebra(std::vector<Algebra> const& algs) {
    return product_algebra(std::span<Algebra const>(algs));
  }

}  // namespace agraph

#endif  // AGRAPH_CORE_HPP_
