#pragma once

// Problem documents: a line-oriented text format for bigraphs, structure
// constants, named group actions and covering parameters.
//
//   galcov 1
//   vertex A B C
//   arrow a C A solid
//   arrow phi B A dotted
//   con a phi c 1/2
//   action swap A=B a=c
//   base A
//   radius 3
//
// Lines whose first non-blank character is '#' are comments.

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bimodule.hpp"

namespace galcov {

  class ParseError : public InputError {
   public:
    ParseError(std::size_t line, std::size_t column, std::string const& message)
        : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": "
                     + message),
          line_(line),
          column_(column) {}
    std::size_t line() const noexcept {
      return line_;
    }
    std::size_t column() const noexcept {
      return column_;
    }

   private:
    std::size_t line_, column_;
  };

  // item -> image; unlisted items are fixed.
  using ActionGenerator = std::vector<std::pair<std::string, std::string>>;

  struct ProblemDocument {
    BimoduleProblem                                     problem;
    std::map<std::string, std::vector<ActionGenerator>> actions;
    std::optional<std::string>                          base;
    std::optional<std::size_t>                          radius;
  };

  inline constexpr char const* document_header = "galcov 1";

  namespace detail {
    struct Token {
      std::string text;
      std::size_t column;
    };

    inline std::vector<Token> tokenize(std::string const& line) {
      std::vector<Token> out;
      std::size_t        i = 0;
      while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
          ++i;
        }
        auto const start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
          ++i;
        }
        if (i > start) {
          out.push_back({line.substr(start, i - start), start + 1});
        }
      }
      return out;
    }

    inline bool ends_with(std::string const& s, std::string const& suffix) {
      return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
    }

    inline std::optional<std::int64_t> parse_int(std::string const& s) {
      std::int64_t v   = 0;
      auto const*  end = s.data() + s.size();
      auto [ptr, ec]   = std::from_chars(s.data(), end, v);
      if (ec != std::errc() || ptr != end) {
        return std::nullopt;
      }
      return v;
    }
  }  // namespace detail

  inline ProblemDocument parse_problem(std::string const& text) {
    std::istringstream in(text);
    std::string        line;
    std::size_t        lineno = 0;
    bool               header = false;

    std::vector<std::string>                      vertices;
    std::map<std::string, std::size_t>            vertex_line;
    std::vector<ArrowSpec>                        arrows;
    std::map<std::string, std::size_t>            arrow_pos;
    std::vector<std::pair<std::size_t, std::vector<detail::Token>>> cons;
    std::vector<std::pair<std::size_t, std::vector<detail::Token>>> acts;
    std::optional<std::pair<std::size_t, detail::Token>>           base;
    ProblemDocument                                                 doc;

    auto fail = [&lineno](detail::Token const& t, std::string const& msg) -> ParseError {
      return ParseError(lineno, t.column, msg);
    };
    auto check_id = [&](detail::Token const& t) {
      if (t.text.rfind("1_", 0) == 0 || detail::ends_with(t.text, "^-1")
          || t.text.find('=') != std::string::npos) {
        throw fail(t, "identifier '" + t.text + "' is reserved (no '1_' prefix, '^-1' suffix or '=')");
      }
    };

    while (std::getline(in, line)) {
      ++lineno;
      auto toks = detail::tokenize(line);
      if (toks.empty() || toks.front().text.front() == '#') {
        continue;
      }
      auto const& kw = toks.front();
      if (!header) {
        if (toks.size() != 2 || kw.text != "galcov" || toks[1].text != "1") {
          throw fail(kw, "expected header 'galcov 1'");
        }
        header = true;
        continue;
      }
      if (kw.text == "vertex") {
        if (toks.size() < 2) {
          throw fail(kw, "vertex line needs at least one name");
        }
        for (std::size_t i = 1; i < toks.size(); ++i) {
          check_id(toks[i]);
          if (!vertex_line.emplace(toks[i].text, lineno).second) {
            throw fail(toks[i], "duplicate vertex '" + toks[i].text + "'");
          }
          vertices.push_back(toks[i].text);
        }
      } else if (kw.text == "arrow") {
        if (toks.size() != 5) {
          throw fail(kw, "expected 'arrow ID SOURCE TARGET solid|dotted'");
        }
        check_id(toks[1]);
        if (arrow_pos.count(toks[1].text)) {
          throw fail(toks[1], "duplicate arrow '" + toks[1].text + "'");
        }
        for (int i : {2, 3}) {
          if (!vertex_line.count(toks[i].text)) {
            throw fail(toks[i], "arrow '" + toks[1].text + "' references unknown vertex '"
                                    + toks[i].text + "'");
          }
        }
        Degree d;
        if (toks[4].text == "solid") {
          d = Degree::solid;
        } else if (toks[4].text == "dotted") {
          d = Degree::dotted;
        } else {
          throw fail(toks[4], "degree must be 'solid' or 'dotted'");
        }
        arrow_pos[toks[1].text] = arrows.size();
        arrows.push_back({toks[1].text, toks[2].text, toks[3].text, d});
      } else if (kw.text == "con") {
        if (toks.size() != 5) {
          throw fail(kw, "expected 'con A PHI B SCALAR'");
        }
        cons.emplace_back(lineno, toks);
      } else if (kw.text == "action") {
        if (toks.size() < 2) {
          throw fail(kw, "expected 'action NAME ITEM=IMAGE ...'");
        }
        acts.emplace_back(lineno, toks);
      } else if (kw.text == "base") {
        if (toks.size() != 2) {
          throw fail(kw, "expected 'base VERTEX'");
        }
        if (base) {
          throw fail(kw, "base given twice");
        }
        base.emplace(lineno, toks[1]);
      } else if (kw.text == "radius") {
        if (toks.size() != 2) {
          throw fail(kw, "expected 'radius N'");
        }
        if (doc.radius) {
          throw fail(kw, "radius given twice");
        }
        auto r = detail::parse_int(toks[1].text);
        if (!r || *r < 0) {
          throw fail(toks[1], "radius must be a non-negative integer");
        }
        doc.radius = static_cast<std::size_t>(*r);
      } else {
        throw fail(kw, "unknown keyword '" + kw.text + "'");
      }
    }
    if (!header) {
      throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing header 'galcov 1'");
    }

    doc.problem.bigraph = Bigraph(vertices, arrows);
    auto const& g       = doc.problem.bigraph;
    for (auto const& [ln, toks] : cons) {
      lineno = ln;
      arrow_index idx[3];
      for (int i = 0; i < 3; ++i) {
        auto it = arrow_pos.find(toks[i + 1].text);
        if (it == arrow_pos.end()) {
          throw fail(toks[i + 1], "con entry references unknown arrow '" + toks[i + 1].text + "'");
        }
        idx[i] = it->second;
      }
      auto const& s     = toks[4].text;
      auto const  slash = s.find('/');
      auto const  num   = detail::parse_int(s.substr(0, slash));
      auto const  den   = slash == std::string::npos ? std::optional<std::int64_t>(1)
                                                     : detail::parse_int(s.substr(slash + 1));
      if (!num || !den || *den == 0) {
        throw fail(toks[4], "scalar must be an integer or a fraction p/q with q != 0");
      }
      if (*num == 0) {
        throw fail(toks[4], "scalar must be nonzero");
      }
      doc.problem.con.push_back({idx[0], idx[1], idx[2], Scalar(*num, *den)});
    }
    for (auto const& [ln, toks] : acts) {
      lineno = ln;
      ActionGenerator gen;
      std::set<std::string> seen;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        auto const eq = toks[i].text.find('=');
        if (eq == std::string::npos) {
          throw fail(toks[i], "expected ITEM=IMAGE");
        }
        auto const item  = toks[i].text.substr(0, eq);
        auto const image = toks[i].text.substr(eq + 1);
        bool const iv = g.find_vertex(item).has_value(), ia = g.find_arrow(item).has_value();
        bool const jv = g.find_vertex(image).has_value(), ja = g.find_arrow(image).has_value();
        if (!iv && !ia) {
          throw fail(toks[i], "action references unknown item '" + item + "'");
        }
        if (!jv && !ja) {
          throw fail(toks[i], "action references unknown item '" + image + "'");
        }
        if (iv != jv) {
          throw fail(toks[i], "action maps '" + item + "' to an item of another kind");
        }
        if (!seen.insert(item).second) {
          throw fail(toks[i], "item '" + item + "' mapped twice");
        }
        gen.emplace_back(item, image);
      }
      doc.actions[toks[1].text].push_back(std::move(gen));
    }
    if (base) {
      lineno = base->first;
      if (!g.find_vertex(base->second.text)) {
        throw fail(base->second, "base references unknown vertex '" + base->second.text + "'");
      }
      doc.base = base->second.text;
    }
    return doc;
  }

  // Canonical text: one vertex per line, con entries sorted by (phi, a, b).
  inline std::string render_problem(ProblemDocument const& doc) {
    auto const&        g = doc.problem.bigraph;
    std::ostringstream out;
    out << document_header << '\n';
    for (auto const& v : g.vertices()) {
      out << "vertex " << v << '\n';
    }
    for (auto const& a : g.arrows()) {
      out << "arrow " << a.id << ' ' << g.vertex(a.source) << ' ' << g.vertex(a.target) << ' '
          << to_string(a.degree) << '\n';
    }
    auto p = doc.problem;
    p.canonicalize();
    for (auto const& e : p.con) {
      out << "con " << g.arrow(e.a).id << ' ' << g.arrow(e.phi).id << ' ' << g.arrow(e.b).id << ' '
          << to_string(e.value) << '\n';
    }
    for (auto const& [name, gens] : doc.actions) {
      for (auto const& gen : gens) {
        out << "action " << name;
        for (auto const& [item, image] : gen) {
          out << ' ' << item << '=' << image;
        }
        out << '\n';
      }
    }
    if (doc.base) {
      out << "base " << *doc.base << '\n';
    }
    if (doc.radius) {
      out << "radius " << *doc.radius << '\n';
    }
    return out.str();
  }

  inline std::string render_problem(BimoduleProblem const& p) {
    return render_problem(ProblemDocument{p, {}, std::nullopt, std::nullopt});
  }

  // The generators of a named action as bigraph maps of `g`.
  inline std::vector<BigraphMorphism> action_generators(ProblemDocument const& doc, std::string const& name,
                                                        Bigraph const& g) {
    auto it = doc.actions.find(name);
    if (it == doc.actions.end()) {
      throw InputError("unknown action '" + name + "'");
    }
    std::vector<BigraphMorphism> out;
    for (auto const& gen : it->second) {
      auto f = BigraphMorphism::identity(g);
      for (auto const& [item, image] : gen) {
        if (auto v = g.find_vertex(item)) {
          f.vertices[*v] = g.vertex_index_of(image);
        } else {
          f.arrows[g.arrow_index_of(item)] = g.arrow_index_of(image);
        }
      }
      out.push_back(std::move(f));
    }
    return out;
  }

}  // namespace galcov
