// agraph - edge structure of finite idempotent algebras
//
// The agraph command line. run_cli parses the arguments, dispatches to one
// subcommand and returns the process exit code:
//
//   0  everything checked passed (or the report has nothing to check)
//   1  a check failed
//   2  malformed input or usage error
//   3  some answer is unknown because a closure budget ran out
//
// JSON goes to stdout unless --json names a file.

#ifndef AGRAPH_CLI_HPP_
#define AGRAPH_CLI_HPP_

#include <filesystem>  // for create_directories, path
#include <fstream>     // for ofstream
#include <optional>    // for optional
#include <ostream>     // for ostream
#include <string>      // for string
#include <vector>      // for vector

#include <CLI11.hpp>  // for CLI::App

#include "agraph.hpp"  // for everything
#include "report.hpp"  // for json reports

namespace agraph {

  namespace cli {
    struct Common {
      std::string                file;
      std::string                json_path;
      std::optional<std::size_t> cap;
      bool                       timing = false;

      ClosureBudget budget() const {
        auto b = ClosureBudget::from_env();
        if (cap) {
          b.max_elements = *cap;
        }
        return b;
      }
    };

    inline void add_common(CLI::App* cmd, Common& c, bool with_file = true) {
      if (with_file) {
        cmd->add_option("file", c.file, "algebra in .alg format")->required();
      }
      cmd->add_option("--json", c.json_path, "write the JSON report to this file");
      cmd->add_option("--cap", c.cap, "closure budget (elements per closure)")
          ->check(CLI::PositiveNumber);
    }

    inline void emit(json const& j, Common const& c, std::ostream& out) {
      std::string const text = j.dump(2) + "\n";
      if (c.json_path.empty()) {
        out << text;
        return;
      }
      std::ofstream f(c.json_path);
      if (!f) {
        throw error("cannot write " + c.json_path);
      }
      f << text;
    }

    inline int from_verdict(Verdict v) {
      return exit_code(v);
    }

    inline std::pair<elem_t, elem_t> parse_edge(std::string const& s, std::size_t n) {
      auto const comma = s.find(',');
      if (comma == std::string::npos) {
        throw error("--edge expects a,b");
      }
      auto num = [&](std::string const& t) {
        std::size_t used = 0;
        unsigned long v  = 0;
        try {
          v = std::stoul(t, &used);
        } catch (std::exception const&) {
          used = 0;
        }
        if (used == 0 || used != t.size() || v >= n) {
          throw error("invalid element '" + t + "' in --edge");
        }
        return static_cast<elem_t>(v);
      };
      auto const a = num(s.substr(0, comma)), b = num(s.substr(comma + 1));
      if (a == b) {
        throw error("--edge needs two distinct elements");
      }
      return {a, b};
    }

    inline std::string failure_file(EnumerationFailure const& f) {
      return f.name + "_" + f.report.theorem + ".alg";
    }
  }  // namespace cli

  inline int run_cli(std::vector<std::string> const& args,
                     std::ostream&                   out,
                     std::ostream&                   err) {
    CLI::App app{"Edge structure of finite idempotent algebras", "agraph"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "agraph 1.0");

    cli::Common c;
    auto*       check = app.add_subcommand("check", "idempotency and Siggers term");
    cli::add_common(check, c);
    auto* edges = app.add_subcommand("edges", "classify every pair");
    cli::add_common(edges, c);

    std::string dot_path;
    auto*       graph = app.add_subcommand("graph", "oriented thin-edge graph");
    cli::add_common(graph, c);
    graph->add_option("--dot", dot_path, "write the graph in DOT format");

    auto* thin = app.add_subcommand("thin", "unified operations and thin edges");
    cli::add_common(thin, c);
    auto* synth = app.add_subcommand("synth", "synthesize f, g, h");
    cli::add_common(synth, c);

    std::string edge_arg;
    auto*       reduct = app.add_subcommand("reduct", "reduct preserving a thick edge");
    cli::add_common(reduct, c);
    reduct->add_option("--edge", edge_arg, "pair a,b")->required();

    std::string theorem = "all";
    auto*       verify  = app.add_subcommand("verify", "run theorem suites");
    cli::add_common(verify, c);
    verify->add_option("--theorem", theorem, "suite name or all");
    verify->add_flag("--timing", c.timing, "include timings in the report");

    EnumerationOptions eo;
    std::string        sig_arg = "binary", enum_theorem = "connectedness";
    std::string        failures_dir = "failures";
    auto* enumerate = app.add_subcommand("enumerate", "run suites over all small algebras");
    cli::add_common(enumerate, c, false);
    enumerate->add_option("--size", eo.size, "universe size (2 or 3)");
    enumerate->add_option("--signature", sig_arg, "binary, ternary or binary+ternary");
    enumerate->add_option("--limit", eo.limit, "first N candidates only");
    enumerate->add_option("--parallel", eo.parallel, "worker threads")
        ->check(CLI::PositiveNumber);
    enumerate->add_option("--theorem", enum_theorem, "suite name or all");
    enumerate->add_option("--failures", failures_dir,
                          "directory for replayable .alg files of failures");
    enumerate->add_flag("--timing", c.timing, "include timings in the report");

    std::vector<char const*> argv{"agraph"};
    for (auto const& a : args) {
      argv.push_back(a.c_str());
    }
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::CallForHelp const& e) {
      return app.exit(e, out, err);
    } catch (CLI::CallForVersion const& e) {
      return app.exit(e, out, err);
    } catch (CLI::ParseError const& e) {
      app.exit(e, out, err);
      return 2;
    }

    try {
      auto const budget = c.budget();
      auto       load   = [&] { return load_algebra(c.file); };

      if (*check) {
        auto const alg = load();
        auto const s   = has_siggers_term(alg, budget);
        cli::emit(check_report(alg, s), c, out);
        return s.answer == Answer::unknown ? 3 : 0;
      }
      if (*edges) {
        auto const alg = load();
        auto const g   = edge_graph(alg, budget);
        cli::emit(edge_report(alg, g), c, out);
        return g.has_unknown() ? 3 : 0;
      }
      if (*graph) {
        auto const alg = load();
        auto const t   = thin_analysis(alg, budget);
        auto const g   = build_oriented_graph(alg, t.thin.arcs, ArcFilter::all);
        auto const rep = verify_as_connectivity(alg, t);
        if (!dot_path.empty()) {
          std::ofstream f(dot_path);
          if (!f) {
            throw error("cannot write " + dot_path);
          }
          f << export_dot(g);
        }
        cli::emit(graph_report(alg, g, rep), c, out);
        return rep.unknown ? 3 : 0;
      }
      if (*thin) {
        auto const alg = load();
        auto const t   = thin_analysis(alg, budget);
        cli::emit(thin_report(alg, t), c, out);
        if (!t.ops.satisfied() || !t.good.verified) {
          return 1;
        }
        return t.thin.unknown || t.ops.unresolved_pairs > 0 ? 3 : 0;
      }
      if (*synth) {
        auto const alg = load();
        auto const ops = enforce_identities(synth_unified(alg, edge_graph(alg, budget), budget), alg);
        cli::emit(synth_report(alg, ops), c, out);
        if (!ops.satisfied()) {
          return 1;
        }
        return ops.unresolved_pairs > 0 ? 3 : 0;
      }
      if (*reduct) {
        auto const alg    = load();
        auto const [a, b] = cli::parse_edge(edge_arg, alg.size());
        auto const e      = classify_pair(alg, a, b, budget);
        auto const red    = build_reduct(alg, thick_edge_subset(e), budget);
        auto const rep    = verify_reduct_claims(alg, red, budget);
        cli::emit(reduct_report(red, rep), c, out);
        return rep.any_fail() ? 1 : rep.any_unknown() ? 3 : 0;
      }
      if (*verify) {
        auto const ts = parse_theorems(theorem);
        Verifier   v(load(), budget);
        auto const rs = v.run(ts);
        cli::emit(verify_report(v.algebra(), rs, c.timing), c, out);
        Verdict overall = Verdict::skipped;
        for (auto const& r : rs) {
          overall = combine(overall, r.status);
        }
        return cli::from_verdict(overall);
      }
      if (*enumerate) {
        eo.signature = parse_signature(sig_arg);
        eo.theorems  = parse_theorems(enum_theorem);
        eo.budget    = budget;
        auto const rep = enumerate_and_verify(eo);
        if (!rep.failures.empty()) {
          std::filesystem::create_directories(failures_dir);
        }
        IdempotentEnumerator const gen(eo.size, eo.signature);
        for (auto const& f : rep.failures) {
          std::ofstream file(std::filesystem::path(failures_dir) / cli::failure_file(f));
          file << "# theorem " << f.report.theorem << "\n# status "
               << to_string(f.report.status) << "\n# " << f.report.detail << "\n";
          if (f.report.counterexample && f.report.counterexample->pair) {
            auto const p = *f.report.counterexample->pair;
            file << "# pair " << unsigned(p.first) << "," << unsigned(p.second) << "\n";
          }
          file << serialize_algebra(gen.at(f.index));
        }
        cli::emit(to_json(rep, c.timing), c, out);
        return cli::from_verdict(rep.overall());
      }
    } catch (parse_error const& e) {
      err << "agraph: parse error: " << e.what() << "\n";
      return 2;
    } catch (error const& e) {
      err << "agraph: " << e.what() << "\n";
      return 2;
    } catch (internal_error const& e) {
      err << "agraph: " << e.what() << "\n";
      return 1;
    }
    return 2;
  }

}  // namespace agraph

#endif  // AGRAPH_CLI_HPP_
