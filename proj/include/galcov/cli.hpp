#pragma once

// Command-line front end. Exit codes: 0 success, 1 domain refusal (with its
// certificate), 2 input error or usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "analysis.hpp"
#include "document.hpp"

namespace galcov {

  using Json = nlohmann::ordered_json;

  ////////////////////////////////////////////////////////////////////////
  // JSON views
  ////////////////////////////////////////////////////////////////////////

  inline Json to_json(Bigraph const& g) {
    Json arrows = Json::array();
    for (auto const& a : g.arrows()) {
      arrows.push_back({{"id", a.id},
                        {"source", g.vertex(a.source)},
                        {"target", g.vertex(a.target)},
                        {"degree", to_string(a.degree)}});
    }
    return {{"vertices", g.vertices()}, {"arrows", arrows}};
  }

  inline Json to_json(TwoComplex const& k) {
    auto j     = to_json(k.skeleton());
    Json cells = Json::array();
    for (auto const& c : k.cells()) {
      cells.push_back({{"id", c.id}, {"boundary", to_string(k.skeleton(), c.boundary)}});
    }
    j["cells"] = cells;
    return j;
  }

  inline Json to_json(ValidationReport const& report) {
    Json out = Json::array();
    for (auto const& v : report) {
      out.push_back({{"rule", v.rule}, {"message", v.message}});
    }
    return out;
  }

  inline Json arrow_ids(Bigraph const& g, std::vector<arrow_index> const& arrows) {
    Json out = Json::array();
    for (auto a : arrows) {
      out.push_back(g.arrow(a).id);
    }
    return out;
  }

  inline Json to_json(Bigraph const& g, Diagnosis const& d) {
    Json j;
    j["verdict"]      = to_string(d.verdict);
    j["bound"]        = d.bound;
    j["dotted_loops"] = arrow_ids(g, d.loops);
    j["counterexample"] = d.counterexample ? Json(*d.counterexample) : Json(nullptr);
    Json cands          = Json::array();
    for (auto const& c : d.search.candidates) {
      Json vs = Json::array();
      for (auto v : c.vertices) {
        vs.push_back(g.vertex(v));
      }
      cands.push_back({{"vertices", vs},
                       {"singular", {g.vertex(c.first), g.vertex(c.second)}},
                       {"root", c.root},
                       {"annihilator", arrow_ids(g, c.annihilator)}});
    }
    j["candidates"]       = cands;
    j["subsets_examined"] = d.search.subsets_examined;
    j["budget_exhausted"] = d.search.budget_exhausted;
    if (d.simply_connected) {
      auto const& s         = *d.simply_connected;
      j["simply_connected"] = {{"answer", to_string(s.answer)}, {"reason", s.reason}};
      j["simply_connected"]["witness"] =
          s.witness ? Json(to_string(g, *s.witness)) : Json(nullptr);
    } else {
      j["simply_connected"] = nullptr;
    }
    if (d.verdict == Diagnosis::Verdict::standard_candidate) {
      j["caveat"] = candidate_caveat;
    }
    return j;
  }

  ////////////////////////////////////////////////////////////////////////
  // Commands
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    struct Context {
      std::ostream& out;
      std::ostream& err;
      bool          machine = false;

      void emit(Json const& j) const {
        out << j.dump(2) << '\n';
      }
    };

    inline ProblemDocument load_document(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        throw InputError("cannot read '" + path + "'");
      }
      std::stringstream buf;
      buf << in.rdbuf();
      return parse_problem(buf.str());
    }

    inline int refuse_invalid(Context const& ctx, std::string const& command, ValidationReport const& r) {
      if (ctx.machine) {
        ctx.emit({{"command", command}, {"valid", false}, {"violations", to_json(r)}});
      } else {
        ctx.out << "invalid problem\n";
        for (auto const& v : r) {
          ctx.out << "  [" << v.rule << "] " << v.message << '\n';
        }
      }
      return 1;
    }

    inline int cmd_validate(Context const& ctx, ProblemDocument const& doc) {
      auto const report = validate_problem(doc.problem);
      if (!report.empty()) {
        return refuse_invalid(ctx, "validate", report);
      }
      if (ctx.machine) {
        ctx.emit({{"command", "validate"}, {"valid", true}, {"violations", Json::array()}});
      } else {
        auto const& g = doc.problem.bigraph;
        ctx.out << "valid: " << g.number_of_vertices() << " vertices, " << g.number_of_arrows()
                << " arrows, " << doc.problem.con.size() << " con entries\n";
      }
      return 0;
    }

    inline int cmd_complex(Context const& ctx, ProblemDocument const& doc) {
      auto const report = validate_problem(doc.problem);
      if (!report.empty()) {
        return refuse_invalid(ctx, "complex", report);
      }
      auto const k = associated_complex(doc.problem);
      if (ctx.machine) {
        auto j = to_json(k);
        ctx.emit({{"command", "complex"}, {"complex", j}});
      } else {
        write_dot(ctx.out, k, "associated");
      }
      return 0;
    }

    inline int cmd_tits(Context const& ctx, ProblemDocument const& doc, std::int64_t bound) {
      auto const& g    = doc.problem.bigraph;
      auto const  q    = form_from_bigraph(g);
      auto const  cert = is_weakly_positive(q, bound);
      Json        coeffs = Json::array();
      for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i; j < q.size(); ++j) {
          if (q.coefficient(i, j) != 0) {
            coeffs.push_back({{"pair", {g.vertex(i), g.vertex(j)}}, {"coefficient", q.coefficient(i, j)}});
          }
        }
      }
      if (!cert.positive()) {
        if (ctx.machine) {
          ctx.emit({{"command", "tits"},
                    {"vertices", g.vertices()},
                    {"coefficients", coeffs},
                    {"bound", bound},
                    {"weakly_positive", false},
                    {"counterexample", *cert.counterexample},
                    {"value", q.evaluate(*cert.counterexample)}});
        } else {
          ctx.out << "not weakly positive: q" << to_string(*cert.counterexample) << " = "
                  << q.evaluate(*cert.counterexample) << " (bound " << bound << ")\n";
        }
        return 1;
      }
      auto const roots = positive_roots(q, bound);
      auto const basic = basic_roots(q, bound);
      if (ctx.machine) {
        Json bj = Json::array();
        for (auto const& b : basic) {
          bj.push_back({{"root", b.root}, {"singular", {g.vertex(b.first), g.vertex(b.second)}}});
        }
        ctx.emit({{"command", "tits"},
                  {"vertices", g.vertices()},
                  {"coefficients", coeffs},
                  {"bound", bound},
                  {"weakly_positive", true},
                  {"roots", roots},
                  {"basic_roots", bj}});
      } else {
        ctx.out << "vertices:";
        for (auto const& v : g.vertices()) {
          ctx.out << ' ' << v;
        }
        ctx.out << "\ncoefficients:\n";
        for (auto const& c : coeffs) {
          ctx.out << "  " << c["pair"][0].get<std::string>() << ',' << c["pair"][1].get<std::string>()
                  << ": " << c["coefficient"].get<std::int64_t>() << '\n';
        }
        ctx.out << "weakly positive within bound " << bound << "\n";
        ctx.out << roots.size() << " positive roots:\n";
        for (auto const& r : roots) {
          ctx.out << "  " << to_string(r) << '\n';
        }
        ctx.out << basic.size() << " basic roots:\n";
        for (auto const& b : basic) {
          ctx.out << "  " << to_string(b.root) << " singular {" << g.vertex(b.first) << ','
                  << g.vertex(b.second) << "}\n";
        }
      }
      return 0;
    }

    inline vertex_index base_vertex(ProblemDocument const& doc, std::string const& flag) {
      auto const& g = doc.problem.bigraph;
      if (!flag.empty()) {
        return g.vertex_index_of(flag);
      }
      if (doc.base) {
        return g.vertex_index_of(*doc.base);
      }
      if (g.number_of_vertices() == 0) {
        throw InputError("problem has no vertices");
      }
      return 0;
    }

    inline int cmd_cover(Context const& ctx, ProblemDocument const& doc, std::string const& base_flag,
                         std::size_t radius, std::size_t budget) {
      auto const report = validate_problem(doc.problem);
      if (!report.empty()) {
        return refuse_invalid(ctx, "cover", report);
      }
      auto const k    = associated_complex(doc.problem);
      auto const base = base_vertex(doc, base_flag);
      UniversalCoverOptions options;
      options.max_vertices = budget;
      auto const  u        = universal_cover(k, base, radius, options);
      auto const& cover    = u.covering.cover();
      Json        frontier = Json::array();
      for (auto v : u.frontier_vertices()) {
        frontier.push_back(cover.skeleton().vertex(v));
      }
      auto const check = check_covering(u.covering);
      if (ctx.machine) {
        ctx.emit({{"command", "cover"},
                  {"base", k.skeleton().vertex(base)},
                  {"radius", radius},
                  {"cover", to_json(cover)},
                  {"frontier", frontier},
                  {"covering_violations", to_json(check)},
                  {"isomorphic_to_base", u.is_isomorphic_to_base()}});
      } else {
        ctx.out << "// universal cover at " << k.skeleton().vertex(base) << ", radius " << radius
                << ": " << cover.skeleton().number_of_vertices() << " vertices, "
                << cover.skeleton().number_of_arrows() << " arrows, " << cover.number_of_cells()
                << " cells\n// frontier:";
        for (auto const& f : frontier) {
          ctx.out << ' ' << f.get<std::string>();
        }
        ctx.out << "\n// covering violations away from the frontier: " << check.size() << '\n';
        write_dot(ctx.out, cover, "cover");
      }
      return 0;
    }

    inline int cmd_quotient(Context const& ctx, ProblemDocument const& doc, std::string const& action) {
      auto const report = validate_problem(doc.problem);
      if (!report.empty()) {
        return refuse_invalid(ctx, "quotient", report);
      }
      auto const k   = associated_complex(doc.problem);
      auto const gen = action_generators(doc, action, k.skeleton());
      GroupAction act;
      try {
        act = make_group_action(k, gen);
      } catch (ValidationError const& e) {
        return refuse_invalid(ctx, "quotient", e.report());
      }
      DeckQuotient q;
      try {
        q = deck_quotient(k, act);
      } catch (Error const& e) {
        if (ctx.machine) {
          ctx.emit({{"command", "quotient"}, {"refused", e.what()}});
        } else {
          ctx.out << "refused: " << e.what() << '\n';
        }
        return 1;
      }
      auto const check = check_covering(q.covering);
      if (ctx.machine) {
        ctx.emit({{"command", "quotient"},
                  {"action", action},
                  {"order", act.elements.size()},
                  {"quotient", to_json(q.complex)},
                  {"covering_violations", to_json(check)}});
      } else {
        ctx.out << "// quotient by '" << action << "' (order " << act.elements.size()
                << "), covering violations: " << check.size() << '\n';
        write_dot(ctx.out, q.complex, "quotient");
      }
      return 0;
    }

    inline int cmd_lift(Context const& ctx, ProblemDocument const& doc, std::string const& base_flag,
                        std::size_t radius, std::size_t budget) {
      auto const report = validate_problem(doc.problem);
      if (!report.empty()) {
        return refuse_invalid(ctx, "lift", report);
      }
      auto const k = associated_complex(doc.problem);
      UniversalCoverOptions options;
      options.max_vertices = budget;
      auto const u         = universal_cover(k, base_vertex(doc, base_flag), radius, options);
      auto const lifted    = lift_problem(doc.problem, u.covering);
      auto const text      = render_problem(lifted.problem);
      if (ctx.machine) {
        Json proj = Json::object();
        for (arrow_index a = 0; a < lifted.problem.bigraph.number_of_arrows(); ++a) {
          proj[lifted.problem.bigraph.arrow(a).id] = doc.problem.bigraph.arrow(lifted.projection.arrows[a]).id;
        }
        ctx.emit({{"command", "lift"}, {"radius", radius}, {"problem", text}, {"arrow_projection", proj}});
      } else {
        ctx.out << text;
      }
      return 0;
    }

    inline int cmd_diagnose(Context const& ctx, ProblemDocument const& doc, DiagnoseOptions const& options) {
      auto const report = validate_problem(doc.problem);
      if (!report.empty()) {
        return refuse_invalid(ctx, "diagnose", report);
      }
      auto const  d = diagnose(doc.problem, options);
      auto const& g = doc.problem.bigraph;
      if (ctx.machine) {
        Json j{{"command", "diagnose"}};
        j.update(to_json(g, d));
        ctx.emit(j);
        return 0;
      }
      ctx.out << "verdict: " << to_string(d.verdict) << '\n';
      switch (d.verdict) {
        case Diagnosis::Verdict::dotted_loop:
          ctx.out << "dotted loops:";
          for (auto a : d.loops) {
            ctx.out << ' ' << g.arrow(a).id;
          }
          ctx.out << '\n';
          break;
        case Diagnosis::Verdict::weakly_positive_failed:
          ctx.out << "counterexample: " << to_string(*d.counterexample) << " (bound " << d.bound << ")\n";
          break;
        case Diagnosis::Verdict::standard_candidate:
          for (auto const& c : d.search.candidates) {
            ctx.out << "candidate S = {";
            for (std::size_t i = 0; i < c.vertices.size(); ++i) {
              ctx.out << (i ? "," : "") << g.vertex(c.vertices[i]);
            }
            ctx.out << "} singular {" << g.vertex(c.first) << ',' << g.vertex(c.second) << "} root "
                    << to_string(c.root) << " annihilator {";
            for (std::size_t i = 0; i < c.annihilator.size(); ++i) {
              ctx.out << (i ? "," : "") << g.arrow(c.annihilator[i]).id;
            }
            ctx.out << "}\n";
          }
          ctx.out << "note: " << candidate_caveat << '\n';
          break;
        case Diagnosis::Verdict::no_obstruction:
          ctx.out << "subsets examined: " << d.search.subsets_examined
                  << (d.search.budget_exhausted ? " (budget exhausted)" : "") << '\n';
          ctx.out << "simply connected: " << to_string(d.simply_connected->answer) << " ("
                  << d.simply_connected->reason << ")\n";
          if (d.simply_connected->witness) {
            ctx.out << "witness: " << to_string(g, *d.simply_connected->witness) << '\n';
          }
          break;
      }
      return 0;
    }
  }  // namespace detail

  // argv excludes the program name.
  inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Galois coverings of bimodule problems", "galcov"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();

    std::string file, base, action;
    std::size_t radius = 0;
    std::size_t budget = 200000;
    DiagnoseOptions dopt;
    std::int64_t bound = default_coordinate_bound;

    auto add_file = [&file, &format](CLI::App* sub) {
      sub->add_option("file", file, "Problem document")->required();
      sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "machine"}));
    };
    auto* validate = app.add_subcommand("validate", "Check the bigraph, structure constants and cell properties");
    auto* complex  = app.add_subcommand("complex", "Emit the associated 2-complex (DOT or machine)");
    auto* tits     = app.add_subcommand("tits", "Tits form, weak positivity, roots and basic roots");
    auto* cover    = app.add_subcommand("cover", "Universal cover of the associated complex up to a radius");
    auto* quotient = app.add_subcommand("quotient", "Quotient of the associated complex by a named action");
    auto* lift     = app.add_subcommand("lift", "Lift the problem to the universal cover");
    auto* diag     = app.add_subcommand("diagnose", "Run the schurity diagnostic pipeline");
    for (auto* sub : {validate, complex, tits, cover, quotient, lift, diag}) {
      add_file(sub);
    }
    tits->add_option("--bound", bound, "Coordinate bound for box scans")->check(CLI::Range(1, 50));
    bool radius_given = false;
    for (auto* sub : {cover, lift}) {
      sub->add_option("--radius", radius, "Radius in reduced-walk length");
      sub->add_option("--base", base, "Base vertex");
      sub->add_option("--budget", budget, "Vertex budget for the cover construction");
    }
    quotient->add_option("--action", action, "Name of the action in the document")->required();
    diag->add_option("--bound", dopt.bound, "Coordinate bound for box scans")->check(CLI::Range(1, 50));
    diag->add_option("--subset-budget", dopt.subset_budget, "Number of vertex subsets to examine");
    diag->add_option("--radius", dopt.radius, "Radius for the simple connectivity check");
    diag->add_option("--cover-budget", dopt.cover_budget, "Vertex budget for the simple connectivity check");

    try {
      std::reverse(args.begin(), args.end());
      app.parse(args);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return 0;
    } catch (CLI::CallForAllHelp const&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (CLI::ParseError const& e) {
      err << "error: " << e.what() << "\n\n" << app.help();
      return 2;
    }

    detail::Context ctx{out, err, format == "machine"};
    try {
      auto const doc = detail::load_document(file);
      radius_given   = (cover->count("--radius") + lift->count("--radius")) > 0;
      if (!radius_given) {
        radius = doc.radius.value_or(3);
      }
      if (validate->parsed()) {
        return detail::cmd_validate(ctx, doc);
      }
      if (complex->parsed()) {
        return detail::cmd_complex(ctx, doc);
      }
      if (tits->parsed()) {
        return detail::cmd_tits(ctx, doc, bound);
      }
      if (cover->parsed()) {
        return detail::cmd_cover(ctx, doc, base, radius, budget);
      }
      if (quotient->parsed()) {
        return detail::cmd_quotient(ctx, doc, action);
      }
      if (lift->parsed()) {
        return detail::cmd_lift(ctx, doc, base, radius, budget);
      }
      return detail::cmd_diagnose(ctx, doc, dopt);
    } catch (InputError const& e) {
      err << "input error: " << e.what() << '\n';
      return 2;
    } catch (ValidationError const& e) {
      err << "refused: " << e.what() << '\n';
      return 1;
    } catch (Error const& e) {
      err << "refused: " << e.what() << '\n';
      return 1;
    }
  }

}  // namespace galcov
