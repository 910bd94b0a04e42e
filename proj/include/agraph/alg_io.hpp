// agraph - edge structure of finite idempotent algebras
//
// The .alg text format:
//
//   # comment
//   algebra NAME
//   size N
//   op NAME ARITY
//   v_0 v_1 ... v_{N^ARITY - 1}
//
// Values are listed in row-major order, leftmost argument most significant;
// line breaks between values carry no meaning. serialize_algebra writes 16
// values per line, ops in declaration order.

#ifndef AGRAPH_ALG_IO_HPP_
#define AGRAPH_ALG_IO_HPP_

#include <cctype>    // for isspace, isdigit
#include <cstddef>   // for size_t
#include <fstream>   // for ifstream, ofstream
#include <iterator>  // for istreambuf_iterator
#include <sstream>   // for ostringstream
#include <string>    // for string
#include <vector>    // for vector

#include "core.hpp"   // for Algebra, OpTable
#include "error.hpp"  // for parse_error

namespace agraph {

  namespace detail {
    struct Token {
      std::string text;
      std::size_t line;
      std::size_t column;
    };

    inline std::vector<Token> tokenize_alg(std::string const& text) {
      std::vector<Token> out;
      std::size_t        line = 1, col = 1;
      std::size_t        i    = 0;
      while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
          while (i < text.size() && text[i] != '\n') {
            ++i;
          }
          continue;
        }
        if (c == '\n') {
          ++line;
          col = 1;
          ++i;
          continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
          ++col;
          ++i;
          continue;
        }
        Token t{"", line, col};
        while (i < text.size() && text[i] != '#'
               && !std::isspace(static_cast<unsigned char>(text[i]))) {
          t.text += text[i];
          ++i;
          ++col;
        }
        out.push_back(std::move(t));
      }
      return out;
    }

    class AlgParser {
     public:
      explicit AlgParser(std::string const& text)
          : _tokens(tokenize_alg(text)) {}

      Algebra parse() {
        expect_keyword("algebra");
        std::string name = identifier("algebra name");
        expect_keyword("size");
        auto const  size_tok = peek_or_fail("universe size");
        std::size_t n        = number("universe size");
        if (n == 0 || n > max_universe_size) {
          throw parse_error("unsupported universe size " + std::to_string(n),
                            size_tok.line,
                            size_tok.column);
        }
        std::vector<OpTable> ops;
        while (_pos < _tokens.size()) {
          expect_keyword("op");
          auto const  op_tok = peek_or_fail("operation name");
          std::string op     = identifier("operation name");
          for (auto const& o : ops) {
            if (o.name() == op) {
              throw parse_error(
                  "duplicate operation name " + op, op_tok.line, op_tok.column);
            }
          }
          auto const  ar_tok = peek_or_fail("arity");
          std::size_t arity  = number("arity");
          if (arity == 0 || arity > 8) {
            throw parse_error("unsupported arity " + std::to_string(arity),
                              ar_tok.line,
                              ar_tok.column);
          }
          std::size_t const   len = checked_power(n, arity);
          std::vector<elem_t> values;
          values.reserve(len);
          for (std::size_t i = 0; i < len; ++i) {
            auto const  vt = peek_or_fail("table value of " + op);
            std::size_t v  = number("table value of " + op);
            if (v >= n) {
              throw parse_error("value " + std::to_string(v) + " of " + op
                                    + " out of range [0, " + std::to_string(n)
                                    + ")",
                                vt.line,
                                vt.column);
            }
            values.push_back(static_cast<elem_t>(v));
          }
          OpTable table(op, arity, n, std::move(values));
          if (auto x = table.idempotency_violation()) {
            throw parse_error("operation " + op + " is not idempotent at x="
                                  + std::to_string(*x) + ": " + op + "("
                                  + std::to_string(*x) + ",...) = "
                                  + std::to_string(
                                      table(TupleVec(arity, *x))),
                              op_tok.line,
                              op_tok.column);
          }
          ops.push_back(std::move(table));
        }
        if (ops.empty()) {
          auto [l, c] = end_position();
          throw parse_error("algebra " + name + " declares no operations", l, c);
        }
        return Algebra(name, n, std::move(ops));
      }

     private:
      std::pair<std::size_t, std::size_t> end_position() const {
        if (_tokens.empty()) {
          return {1, 1};
        }
        auto const& t = _tokens.back();
        return {t.line, t.column + t.text.size()};
      }

      Token const& peek_or_fail(std::string const& what) {
        if (_pos >= _tokens.size()) {
          auto [l, c] = end_position();
          throw parse_error("unexpected end of input, expected " + what, l, c);
        }
        return _tokens[_pos];
      }

      void expect_keyword(std::string const& kw) {
        auto const& t = peek_or_fail("'" + kw + "'");
        if (t.text != kw) {
          throw parse_error(
              "expected '" + kw + "', got '" + t.text + "'", t.line, t.column);
        }
        ++_pos;
      }

      std::string identifier(std::string const& what) {
        auto const& t = peek_or_fail(what);
        if (std::isdigit(static_cast<unsigned char>(t.text[0]))) {
          throw parse_error("expected " + what + ", got '" + t.text + "'",
                            t.line,
                            t.column);
        }
        ++_pos;
        return t.text;
      }

      std::size_t number(std::string const& what) {
        auto const& t = peek_or_fail(what);
        std::size_t v = 0;
        for (char c : t.text) {
          if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw parse_error("expected " + what + ", got '" + t.text + "'",
                              t.line,
                              t.column);
          }
          v = v * 10 + static_cast<std::size_t>(c - '0');
          if (v > (std::size_t(1) << 32)) {
            throw parse_error("number too large", t.line, t.column);
          }
        }
        ++_pos;
        return v;
      }

      std::vector<Token> _tokens;
      std::size_t        _pos = 0;
    };
  }  // namespace detail

  inline Algebra parse_algebra(std::string const& text) {
    return detail::AlgParser(text).parse();
  }

  inline Algebra parse_algebra(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_algebra(text);
  }

  inline Algebra load_algebra(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw error("cannot open " + path);
    }
    return parse_algebra(in);
  }

  inline void write_op(std::ostream& out, OpTable const& op) {
    out << "op " << op.name() << ' ' << op.arity() << '\n';
    auto const& v = op.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      out << static_cast<unsigned>(v[i]);
      out << ((i % 16 == 15 || i + 1 == v.size()) ? '\n' : ' ');
    }
  }

  inline std::string serialize_algebra(Algebra const& alg) {
    std::ostringstream out;
    out << "algebra " << alg.name() << '\n';
    out << "size " << alg.size() << '\n';
    for (auto const& op : alg.ops()) {
      write_op(out, op);
    }
    return out.str();
  }

  inline void save_algebra(Algebra const& alg, std::string const& path) {
    std::ofstream out(path);
    if (!out) {
      throw error("cannot write " + path);
    }
    out << serialize_algebra(alg);
  }

}  // namespace agraph

#endif  // AGRAPH_ALG_IO_HPP_
