#pragma once

// One-sided bimodule problems given by a bigraph and structure constants
// con_a(phi b) for solid a, b and dotted phi.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <boost/rational.hpp>

#include "complex.hpp"
#include "covering.hpp"

namespace galcov {

  using Scalar = boost::rational<std::int64_t>;

  inline std::string to_string(Scalar const& s) {
    auto out = std::to_string(s.numerator());
    if (s.denominator() != 1) {
      out += "/" + std::to_string(s.denominator());
    }
    return out;
  }

  // con_a(phi b) = value.
  struct ConEntry {
    arrow_index a   = 0;
    arrow_index phi = 0;
    arrow_index b   = 0;
    Scalar      value{1};

    auto key() const {
      return std::tuple(phi, a, b);
    }
    bool operator==(ConEntry const&) const = default;
  };

  struct BimoduleProblem {
    Bigraph               bigraph;
    std::vector<ConEntry> con;

    bool operator==(BimoduleProblem const&) const = default;

    // Entries sorted by (phi, a, b).
    void canonicalize() {
      std::sort(con.begin(), con.end(),
                [](ConEntry const& x, ConEntry const& y) { return x.key() < y.key(); });
    }

    // P_phi as the entries on phi, in canonical order.
    std::vector<ConEntry> triangles_on(arrow_index phi) const {
      std::vector<ConEntry> out;
      for (auto const& e : con) {
        if (e.phi == phi) {
          out.push_back(e);
        }
      }
      std::sort(out.begin(), out.end(),
                [](ConEntry const& x, ConEntry const& y) { return x.key() < y.key(); });
      return out;
    }
  };

  namespace detail {
    inline std::string entry_name(Bigraph const& g, ConEntry const& e) {
      auto name = [&g](arrow_index x) {
        return x < g.number_of_arrows() ? g.arrow(x).id : "#" + std::to_string(x);
      };
      return "(" + name(e.a) + "," + name(e.b) + "," + name(e.phi) + ")";
    }
  }  // namespace detail

  inline ValidationReport validate_problem(BimoduleProblem const& p) {
    auto const& g      = p.bigraph;
    auto        report = validate_bigraph(g);
    if (!report.empty()) {
      return report;
    }
    bool typed = true;
    std::set<std::tuple<arrow_index, arrow_index, arrow_index>> seen;
    for (auto const& e : p.con) {
      auto const n = detail::entry_name(g, e);
      if (e.a >= g.number_of_arrows() || e.b >= g.number_of_arrows()
          || e.phi >= g.number_of_arrows()) {
        report.push_back({"con-arrow", "entry " + n + " names a missing arrow"});
        typed = false;
        continue;
      }
      auto const& a   = g.arrow(e.a);
      auto const& b   = g.arrow(e.b);
      auto const& phi = g.arrow(e.phi);
      if (!a.is_solid() || !b.is_solid() || !phi.is_dotted()) {
        report.push_back({"con-degree", "entry " + n + " needs solid a, b and dotted phi"});
        typed = false;
      }
      if (phi.source != b.target || a.source != b.source || a.target != phi.target) {
        report.push_back({"con-composability", "entry " + n + " is not composable"});
        typed = false;
      }
      if (e.value.numerator() == 0) {
        report.push_back({"con-zero", "entry " + n + " has a zero scalar"});
      }
      if (e.a == e.b) {
        report.push_back({"property-2", "entry " + n + " has equal sides a = b"});
        typed = false;
      }
      if (!seen.insert({e.a, e.phi, e.b}).second) {
        report.push_back({"con-duplicate", "entry " + n + " is listed twice"});
      }
    }
    if (!typed) {
      return report;
    }

    std::map<arrow_index, std::vector<ConEntry>> on_phi;
    std::map<std::pair<arrow_index, arrow_index>, std::vector<ConEntry>> on_pair;
    std::set<std::tuple<arrow_index, arrow_index, arrow_index>> counted;
    for (auto const& e : p.con) {
      if (counted.insert({e.a, e.phi, e.b}).second) {
        on_phi[e.phi].push_back(e);
        on_pair[{e.a, e.b}].push_back(e);
      }
    }
    for (auto const& [phi, ts] : on_phi) {
      if (ts.size() > 2) {
        report.push_back({"property-1", "dotted arrow '" + g.arrow(phi).id + "' lies in "
                                            + std::to_string(ts.size()) + " triangles"});
      }
      for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
          if (ts[i].a == ts[j].a || ts[i].b == ts[j].b) {
            report.push_back({"property-3", "triangles " + detail::entry_name(g, ts[i]) + " and "
                                                + detail::entry_name(g, ts[j]) + " share a side"});
          }
        }
      }
    }
    for (auto const& [ab, ts] : on_pair) {
      if (ts.size() > 2) {
        report.push_back({"property-2", "pair ('" + g.arrow(ab.first).id + "','"
                                            + g.arrow(ab.second).id + "') lies in "
                                            + std::to_string(ts.size()) + " triangles"});
      }
      for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
          auto const phi1 = ts[i].phi, phi2 = ts[j].phi;
          if (phi1 == phi2) {
            continue;
          }
          bool found = false;
          for (auto const& t1 : on_phi[phi1]) {
            for (auto const& t2 : on_phi[phi2]) {
              found = found || (t1.a != t2.a && t1.b != t2.b);
            }
          }
          if (!found) {
            report.push_back({"property-4", "triangles " + detail::entry_name(g, ts[i]) + " and "
                                                + detail::entry_name(g, ts[j])
                                                + " have no companions with distinct sides"});
          }
        }
      }
    }
    return report;
  }

  inline void require_valid(BimoduleProblem const& p) {
    auto report = validate_problem(p);
    if (!report.empty()) {
      throw ValidationError("invalid bimodule problem:", std::move(report));
    }
  }

  // Triangles tri(a,b,phi) with boundary <phi b a^-1>, one per entry, then
  // quadrangles quad(phi) with boundary <a2^-1 a1 b1^-1 b2> for each phi
  // with two triangles; (a1,b1) is the canonically first pair.
  inline TwoComplex associated_complex(BimoduleProblem const& p) {
    require_valid(p);
    auto const& g = p.bigraph;
    auto        entries = p.con;
    std::sort(entries.begin(), entries.end(),
              [](ConEntry const& x, ConEntry const& y) { return x.key() < y.key(); });
    std::vector<Cell> cells;
    for (auto const& e : entries) {
      Walk w(g, {{e.phi, 1}, {e.b, 1}, {e.a, -1}});
      cells.push_back({"tri(" + g.arrow(e.a).id + "," + g.arrow(e.b).id + "," + g.arrow(e.phi).id + ")",
                       Cycle::of(g, w)});
    }
    for (arrow_index phi = 0; phi < g.number_of_arrows(); ++phi) {
      auto const ts = p.triangles_on(phi);
      if (ts.size() == 2 && ts[0].a != ts[1].a && ts[0].b != ts[1].b) {
        Walk w(g, {{ts[1].a, -1}, {ts[0].a, 1}, {ts[0].b, -1}, {ts[1].b, 1}});
        cells.push_back({"quad(" + g.arrow(phi).id + ")", Cycle::of(g, w)});
      }
    }
    return TwoComplex(g, std::move(cells));
  }

  namespace detail {
    // Keeps the arrows flagged in `keep_arrow` and vertices flagged in
    // `keep_vertex`; con entries survive when all three arrows do.
    inline BimoduleProblem sub_problem(BimoduleProblem const& p, std::vector<bool> const& keep_vertex,
                                       std::vector<bool> const& keep_arrow) {
      auto const&              g = p.bigraph;
      std::vector<std::string> vs;
      for (vertex_index v = 0; v < g.number_of_vertices(); ++v) {
        if (keep_vertex[v]) {
          vs.push_back(g.vertex(v));
        }
      }
      std::vector<ArrowSpec>   as;
      std::vector<arrow_index> new_index(g.number_of_arrows(), npos);
      for (arrow_index a = 0; a < g.number_of_arrows(); ++a) {
        auto const& x = g.arrow(a);
        if (keep_arrow[a] && keep_vertex[x.source] && keep_vertex[x.target]) {
          new_index[a] = as.size();
          as.push_back({x.id, g.vertex(x.source), g.vertex(x.target), x.degree});
        }
      }
      BimoduleProblem out{Bigraph(std::move(vs), std::move(as)), {}};
      for (auto const& e : p.con) {
        if (new_index[e.a] != npos && new_index[e.b] != npos && new_index[e.phi] != npos) {
          out.con.push_back({new_index[e.a], new_index[e.phi], new_index[e.b], e.value});
        }
      }
      return out;
    }
  }  // namespace detail

  inline BimoduleProblem restrict_problem(BimoduleProblem const& p, std::vector<vertex_index> const& S) {
    auto const& g = p.bigraph;
    std::vector<bool> keep(g.number_of_vertices(), false);
    for (auto v : S) {
      keep.at(v) = true;
    }
    return detail::sub_problem(p, keep, std::vector<bool>(g.number_of_arrows(), true));
  }

  inline BimoduleProblem restrict_problem(BimoduleProblem const& p, std::vector<std::string> const& S) {
    std::vector<vertex_index> idx;
    for (auto const& v : S) {
      idx.push_back(p.bigraph.vertex_index_of(v));
    }
    return restrict_problem(p, idx);
  }

  // Dotted arrows in no triangle.
  inline std::vector<arrow_index> annihilator(BimoduleProblem const& p) {
    std::vector<bool> used(p.bigraph.number_of_arrows(), false);
    for (auto const& e : p.con) {
      used.at(e.phi) = true;
    }
    std::vector<arrow_index> out;
    for (arrow_index a = 0; a < p.bigraph.number_of_arrows(); ++a) {
      if (p.bigraph.arrow(a).is_dotted() && !used[a]) {
        out.push_back(a);
      }
    }
    return out;
  }

  inline BimoduleProblem reduce_problem(BimoduleProblem const& p) {
    auto const&       g = p.bigraph;
    std::vector<bool> keep(g.number_of_arrows(), true);
    for (auto a : annihilator(p)) {
      keep[a] = false;
    }
    return detail::sub_problem(p, std::vector<bool>(g.number_of_vertices(), true), keep);
  }

  inline std::vector<arrow_index> dotted_loops(BimoduleProblem const& p) {
    std::vector<arrow_index> out;
    for (arrow_index a = 0; a < p.bigraph.number_of_arrows(); ++a) {
      auto const& x = p.bigraph.arrow(a);
      if (x.is_dotted() && x.source == x.target) {
        out.push_back(a);
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphisms and lifting along coverings
  ////////////////////////////////////////////////////////////////////////

  // The underlying bigraph morphism must be valid and carry structure
  // constants: every entry maps to an equal entry, and every target entry
  // is hit from each composable configuration over it.
  inline ValidationReport validate_problem_morphism(BimoduleProblem const& from, BimoduleProblem const& to,
                                                    BigraphMorphism const& f) {
    auto report = validate_morphism(from.bigraph, to.bigraph, f);
    if (!report.empty()) {
      return report;
    }
    auto const& g = from.bigraph;
    std::map<std::tuple<arrow_index, arrow_index, arrow_index>, Scalar> target, source;
    for (auto const& e : to.con) {
      target[{e.a, e.phi, e.b}] = e.value;
    }
    for (auto const& e : from.con) {
      source[{e.a, e.phi, e.b}] = e.value;
      auto it = target.find({f.arrows[e.a], f.arrows[e.phi], f.arrows[e.b]});
      if (it == target.end() || it->second != e.value) {
        report.push_back({"con-compatibility", "entry " + detail::entry_name(g, e)
                                                   + " does not map to an equal entry"});
      }
    }
    for (arrow_index ta = 0; ta < g.number_of_arrows(); ++ta) {
      for (arrow_index tb = 0; tb < g.number_of_arrows(); ++tb) {
        for (arrow_index tphi = 0; tphi < g.number_of_arrows(); ++tphi) {
          auto const& a = g.arrow(ta);
          auto const& b = g.arrow(tb);
          auto const& x = g.arrow(tphi);
          if (ta == tb || a.source != b.source || x.source != b.target || x.target != a.target) {
            continue;
          }
          auto it = target.find({f.arrows[ta], f.arrows[tphi], f.arrows[tb]});
          if (it != target.end() && !source.count({ta, tphi, tb})) {
            report.push_back({"con-compatibility",
                              "missing entry " + detail::entry_name(g, {ta, tphi, tb, it->second})});
          }
        }
      }
    }
    return report;
  }

  struct LiftedProblem {
    BimoduleProblem problem;  // on the cover skeleton
    BigraphMorphism projection;
  };

  // For every lift a~ of a and the lifts b~, phi~ determined by s(a~), sets
  // con_{a~}(phi~ b~) = con_a(phi b). Frontier vertices with missing lifts
  // are skipped.
  inline LiftedProblem lift_problem(BimoduleProblem const& p, Covering const& c) {
    require_valid(p);
    auto const& cg = c.cover().skeleton();
    auto const& f  = c.projection().skeleton;
    if (!(c.base().skeleton() == p.bigraph)) {
      throw Error("lift_problem: covering base is not the problem's bigraph");
    }
    auto unique_lift = [&](vertex_index v, Step s) -> std::optional<arrow_index> {
      auto const& ls = c.lifts(v, s);
      if (ls.size() == 1) {
        return ls.front();
      }
      if (ls.empty() && c.is_frontier(v)) {
        return std::nullopt;
      }
      throw Error("lift_problem: covering axiom fails at '" + cg.vertex(v) + "' for arrow '"
                  + p.bigraph.arrow(s.arrow).id + "'");
    };
    LiftedProblem out{{cg, {}}, f};
    for (auto const& e : p.con) {
      for (arrow_index ta = 0; ta < cg.number_of_arrows(); ++ta) {
        if (f.arrows[ta] != e.a) {
          continue;
        }
        auto const u  = cg.arrow(ta).source;
        auto const tb = unique_lift(u, {e.b, 1});
        if (!tb) {
          continue;
        }
        auto const x    = cg.arrow(*tb).target;
        auto const tphi = unique_lift(x, {e.phi, 1});
        if (!tphi) {
          continue;
        }
        if (cg.arrow(*tphi).target != cg.arrow(ta).target) {
          if (c.is_frontier(u) || c.is_frontier(x) || c.is_frontier(cg.arrow(ta).target)) {
            continue;
          }
          throw Error("lift_problem: triangle " + detail::entry_name(p.bigraph, e)
                      + " does not lift to a closed triangle at '" + cg.vertex(u) + "'");
        }
        out.problem.con.push_back({ta, *tphi, *tb, e.value});
      }
    }
    out.problem.canonicalize();
    return out;
  }

  // Base arrows between vertices of S = p(S~) that no cover arrow between
  // the corresponding S~ vertices maps to.
  inline std::vector<arrow_index> covering_defect(BimoduleProblem const& p, LiftedProblem const& lifted,
                                                  std::vector<vertex_index> const& S_tilde) {
    auto const& cg = lifted.problem.bigraph;
    auto const& f  = lifted.projection;
    std::map<vertex_index, vertex_index> over;  // base vertex -> its S~ vertex
    for (auto v : S_tilde) {
      if (v >= cg.number_of_vertices()) {
        throw Error("covering_defect: vertex is not in the cover");
      }
      if (!over.emplace(f.vertices[v], v).second) {
        throw Error("covering_defect: two vertices of the patch lie over '"
                    + p.bigraph.vertex(f.vertices[v]) + "'");
      }
    }
    std::set<arrow_index> hit;
    for (arrow_index ta = 0; ta < cg.number_of_arrows(); ++ta) {
      auto const& x = cg.arrow(ta);
      auto const  s = over.find(f.vertices[x.source]);
      auto const  t = over.find(f.vertices[x.target]);
      if (s != over.end() && t != over.end() && s->second == x.source && t->second == x.target) {
        hit.insert(f.arrows[ta]);
      }
    }
    std::vector<arrow_index> out;
    for (arrow_index a = 0; a < p.bigraph.number_of_arrows(); ++a) {
      auto const& x = p.bigraph.arrow(a);
      if (over.count(x.source) && over.count(x.target) && !hit.count(a)) {
        out.push_back(a);
      }
    }
    return out;
  }

  inline bool all_dotted(Bigraph const& g, std::vector<arrow_index> const& arrows) {
    return std::all_of(arrows.begin(), arrows.end(),
                       [&g](arrow_index a) { return g.arrow(a).is_dotted(); });
  }

}  // namespace galcov
