// agraph - edge structure of finite idempotent algebras
//
// Exception types. Contract violations by callers raise agraph::error;
// agraph::internal_error signals a broken invariant inside the library (a
// self-check failed) and must never be caught and ignored.

#ifndef AGRAPH_ERROR_HPP_
#define AGRAPH_ERROR_HPP_

#include <cstddef>    // for size_t
#include <stdexcept>  // for runtime_error
#include <string>     // for string, to_string

namespace agraph {

  class error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class parse_error : public error {
   public:
    parse_error(std::string const& msg, std::size_t line, std::size_t column)
        : error("line " + std::to_string(line) + ", column "
                + std::to_string(column) + ": " + msg),
          _line(line),
          _column(column) {}

    std::size_t line() const noexcept {
      return _line;
    }

    std::size_t column() const noexcept {
      return _column;
    }

   private:
    std::size_t _line;
    std::size_t _column;
  };

  class internal_error : public std::logic_error {
   public:
    explicit internal_error(std::string const& msg)
        : std::logic_error("internal error: " + msg) {}
  };

}  // namespace agraph

#endif  // AGRAPH_ERROR_HPP_
