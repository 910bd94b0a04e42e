// agraph - edge structure of finite idempotent algebras
//
// Exhaustive enumeration of small idempotent algebras and the aggregate
// run of theorem suites over them.
//
// Candidates are ordered lexicographically on the free table cells: every
// cell whose arguments are not all equal, binary table before ternary,
// leftmost argument most significant. Candidate i is decoded directly from
// its index, so work can be split across threads without coordination.

#ifndef AGRAPH_ENUMERATE_HPP_
#define AGRAPH_ENUMERATE_HPP_

#include <algorithm>  // for min
#include <chrono>     // for steady_clock
#include <cstdint>    // for uint64_t
#include <optional>   // for optional
#include <string>     // for string
#include <thread>     // for thread
#include <vector>     // for vector

#include "core.hpp"    // for Algebra, OpTable
#include "error.hpp"   // for error
#include "verify.hpp"  // for Verifier, VerificationReport

namespace agraph {

  enum class Signature { binary, ternary, binary_ternary };

  inline char const* to_string(Signature s) {
    switch (s) {
      case Signature::binary:
        return "binary";
      case Signature::ternary:
        return "ternary";
      case Signature::binary_ternary:
        return "binary+ternary";
    }
    return "?";
  }

  inline Signature parse_signature(std::string const& s) {
    for (auto sig : {Signature::binary, Signature::ternary, Signature::binary_ternary}) {
      if (s == to_string(sig)) {
        return sig;
      }
    }
    throw error("unsupported signature '" + s
                + "' (expected binary, ternary or binary+ternary)");
  }

  class IdempotentEnumerator {
   public:
    IdempotentEnumerator(std::size_t n, Signature sig) : _n(n), _sig(sig) {
      if (n != 2 && n != 3) {
        throw error("enumeration supports sizes 2 and 3, got " + std::to_string(n));
      }
      if (sig != Signature::ternary) {
        _arities.push_back(2);
      }
      if (sig != Signature::binary) {
        _arities.push_back(3);
      }
      _count = 1;
      for (auto k : _arities) {
        for (std::size_t c = 0; c < checked_power(n, k) - n; ++c) {
          _count *= n;
        }
      }
    }

    std::uint64_t count() const noexcept {
      return _count;
    }

    std::size_t size() const noexcept {
      return _n;
    }

    Signature signature() const noexcept {
      return _sig;
    }

    // The candidate at position index in lexicographic order.
    Algebra at(std::uint64_t index) const {
      if (index >= _count) {
        throw error("candidate index out of range");
      }
      std::uint64_t const label = index;
      std::vector<std::vector<elem_t>> tables;
      std::size_t                      free = 0;
      for (auto k : _arities) {
        tables.emplace_back(checked_power(_n, k), 0);
        free += tables.back().size() - _n;
      }
      // digits of index in base n, most significant first
      std::vector<elem_t> digits(free, 0);
      for (std::size_t d = free; d-- > 0;) {
        digits[d] = static_cast<elem_t>(index % _n);
        index /= _n;
      }
      std::size_t next = 0;
      for (std::size_t t = 0; t < _arities.size(); ++t) {
        TupleVec args(_arities[t], 0);
        for (auto& v : tables[t]) {
          bool const diagonal
              = std::all_of(args.begin(), args.end(), [&](elem_t x) { return x == args[0]; });
          v = diagonal ? args[0] : digits[next++];
          next_tuple(args, _n);
        }
      }
      std::vector<OpTable> ops;
      for (std::size_t t = 0; t < _arities.size(); ++t) {
        ops.emplace_back(_arities[t] == 2 ? "b" : "t", _arities[t], _n, std::move(tables[t]));
      }
      return Algebra(name(label), _n, std::move(ops));
    }

    // B3_17, T2_5, BT2_200: signature, size and index.
    std::string name(std::uint64_t index) const {
      std::string s = _sig == Signature::binary    ? "B"
                      : _sig == Signature::ternary ? "T"
                                                   : "BT";
      return s + std::to_string(_n) + "_" + std::to_string(index);
    }

   private:
    std::size_t              _n;
    Signature                _sig;
    std::vector<std::size_t> _arities;
    std::uint64_t            _count = 0;
  };

  inline constexpr std::uint64_t max_unlimited_candidates = std::uint64_t(1) << 24;

  struct VerdictCounts {
    std::size_t pass = 0, fail = 0, unknown = 0, skipped = 0;

    void add(Verdict v) {
      switch (v) {
        case Verdict::pass:
          ++pass;
          break;
        case Verdict::fail:
          ++fail;
          break;
        case Verdict::unknown:
          ++unknown;
          break;
        case Verdict::skipped:
          ++skipped;
          break;
      }
    }
  };

  struct EnumerationFailure {
    std::uint64_t      index = 0;
    std::string        name;
    VerificationReport report;
  };

  struct EnumerationOptions {
    std::size_t                  size      = 3;
    Signature                    signature = Signature::binary;
    std::optional<std::uint64_t> limit;
    std::size_t                  parallel = 1;
    std::vector<Theorem>         theorems{Theorem::connectedness};
    ClosureBudget                budget = ClosureBudget::from_env();
  };

  struct EnumerationReport {
    std::size_t                          size      = 0;
    Signature                            signature = Signature::binary;
    std::uint64_t                        candidates = 0;
    std::uint64_t                        siggers_yes = 0;
    std::uint64_t                        siggers_unknown = 0;
    std::vector<std::pair<Theorem, VerdictCounts>> counts;
    std::vector<EnumerationFailure>      failures;   // fail and unknown
    double                               seconds = 0;

    Verdict overall() const {
      Verdict v = Verdict::skipped;
      for (auto const& [t, c] : counts) {
        if (c.fail > 0) {
          v = combine(v, Verdict::fail);
        }
        if (c.unknown > 0) {
          v = combine(v, Verdict::unknown);
        }
        if (c.pass > 0) {
          v = combine(v, Verdict::pass);
        }
      }
      return v == Verdict::skipped ? Verdict::pass : v;
    }
  };

  namespace detail {
    struct CandidateResult {
      Answer                          siggers = Answer::unknown;
      std::vector<VerificationReport> reports;
    };
  }  // namespace detail

  inline EnumerationReport enumerate_and_verify(EnumerationOptions const& opt) {
    auto const           start = std::chrono::steady_clock::now();
    IdempotentEnumerator en(opt.size, opt.signature);
    EnumerationReport    out;
    out.size       = opt.size;
    out.signature  = opt.signature;
    out.candidates = opt.limit ? std::min(*opt.limit, en.count()) : en.count();
    if (out.candidates > max_unlimited_candidates) {
      throw error(std::to_string(en.count()) + " candidates; pass a limit of at most "
                  + std::to_string(max_unlimited_candidates));
    }

    std::vector<detail::CandidateResult> results(out.candidates);
    auto work = [&](std::size_t worker, std::size_t workers) {
      for (std::uint64_t i = worker; i < out.candidates; i += workers) {
        Verifier v(en.at(i), opt.budget);
        results[i].siggers = v.siggers();
        results[i].reports = v.run(opt.theorems);
      }
    };
    std::size_t const workers = std::max<std::size_t>(1, opt.parallel);
    if (workers == 1) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back(work, w, workers);
      }
      for (auto& t : pool) {
        t.join();
      }
    }

    for (auto t : opt.theorems) {
      out.counts.emplace_back(t, VerdictCounts{});
    }
    for (std::uint64_t i = 0; i < out.candidates; ++i) {
      out.siggers_yes += results[i].siggers == Answer::yes;
      out.siggers_unknown += results[i].siggers == Answer::unknown;
      for (std::size_t j = 0; j < opt.theorems.size(); ++j) {
        auto const& r = results[i].reports[j];
        out.counts[j].second.add(r.status);
        if (r.status == Verdict::fail || r.status == Verdict::unknown) {
          out.failures.push_back({i, en.name(i), r});
        }
      }
    }
    out.seconds
        = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }

}  // namespace agraph

#endif  // AGRAPH_ENUMERATE_HPP_
