#pragma once

// Two-dimensional cell complexes over bigraphs: subcomplexes, restrictions,
// quotients and DOT export.

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bigraph.hpp"
#include "walk.hpp"

namespace galcov {

  using cell_index = std::size_t;

  struct Cell {
    std::string id;
    Cycle       boundary;
  };

  class TwoComplex {
   public:
    TwoComplex() = default;

    // Throws if the skeleton is malformed, a cell id repeats, or a boundary is
    // not a cyclically reduced cycle of the skeleton.
    TwoComplex(Bigraph skeleton, std::vector<Cell> cells)
        : skeleton_(std::move(skeleton)), cells_(std::move(cells)) {
      require_well_formed(skeleton_);
      for (cell_index c = 0; c < cells_.size(); ++c) {
        auto const& w = cells_[c].boundary.canonical();
        if (!cell_lookup_.try_emplace(cells_[c].id, c).second) {
          throw Error("TwoComplex: duplicate cell id '" + cells_[c].id + "'");
        }
        check_boundary(cells_[c].id, w);
      }
    }

    Bigraph const& skeleton() const noexcept {
      return skeleton_;
    }
    std::vector<Cell> const& cells() const noexcept {
      return cells_;
    }
    Cell const& cell(cell_index c) const {
      return cells_.at(c);
    }
    std::size_t number_of_cells() const noexcept {
      return cells_.size();
    }

    std::optional<cell_index> find_cell(std::string_view id) const {
      auto it = cell_lookup_.find(std::string(id));
      if (it == cell_lookup_.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    cell_index cell_index_of(std::string_view id) const {
      if (auto c = find_cell(id)) {
        return *c;
      }
      throw InputError("unknown cell '" + std::string(id) + "'");
    }

    // Vertices incident to a cell.
    std::vector<vertex_index> cell_vertices(cell_index c) const {
      return vertices_on(skeleton_, cells_.at(c).boundary.canonical());
    }

    bool operator==(TwoComplex const& that) const {
      if (!(skeleton_ == that.skeleton_) || cells_.size() != that.cells_.size()) {
        return false;
      }
      for (cell_index c = 0; c < cells_.size(); ++c) {
        if (cells_[c].id != that.cells_[c].id
            || !(cells_[c].boundary == that.cells_[c].boundary)) {
          return false;
        }
      }
      return true;
    }

   private:
    void check_boundary(std::string const& id, Walk const& w) const {
      auto const n = skeleton_.number_of_arrows();
      for (auto s : w.steps()) {
        if (s.arrow >= n) {
          throw Error("TwoComplex: boundary of '" + id + "' uses an unknown arrow");
        }
      }
      if (w.is_trivial()) {
        if (w.source() >= skeleton_.number_of_vertices()) {
          throw Error("TwoComplex: boundary of '" + id + "' uses an unknown vertex");
        }
        return;
      }
      // Re-check composability against this skeleton.
      Walk recheck(skeleton_, w.steps());
      if (!(recheck == w)) {
        throw Error("TwoComplex: boundary of '" + id + "' is not a walk in the skeleton");
      }
      if (!is_cyclically_reduced(w)) {
        throw Error("TwoComplex: boundary of '" + id + "' is not cyclically reduced");
      }
    }

    Bigraph                                     skeleton_;
    std::vector<Cell>                           cells_;
    std::unordered_map<std::string, cell_index> cell_lookup_;
  };

  // Convenience: a cell whose boundary is given as a cyclic walk.
  inline Cell make_cell(Bigraph const& g, std::string id, std::string_view walk_text) {
    return {std::move(id), Cycle::of(g, parse_walk(g, walk_text))};
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphisms
  ////////////////////////////////////////////////////////////////////////

  struct ComplexMorphism {
    BigraphMorphism         skeleton;
    std::vector<cell_index> cells;

    bool operator==(ComplexMorphism const&) const = default;

    static ComplexMorphism identity(TwoComplex const& k) {
      ComplexMorphism f{BigraphMorphism::identity(k.skeleton()), {}};
      f.cells.resize(k.number_of_cells());
      std::iota(f.cells.begin(), f.cells.end(), cell_index{0});
      return f;
    }
  };

  inline Cycle map_cycle(Bigraph const& to, BigraphMorphism const& f, Cycle const& c) {
    return Cycle::of(to, map_walk(f, c.canonical()));
  }

  inline ValidationReport validate_complex_morphism(TwoComplex const&      from,
                                                    TwoComplex const&      to,
                                                    ComplexMorphism const& f) {
    auto report = validate_morphism(from.skeleton(), to.skeleton(), f.skeleton);
    if (!report.empty()) {
      return report;
    }
    if (f.cells.size() != from.number_of_cells()) {
      report.push_back({"morphism-shape", "cell map size does not match the source complex"});
      return report;
    }
    for (cell_index c = 0; c < f.cells.size(); ++c) {
      auto const& cell = from.cell(c);
      if (f.cells[c] >= to.number_of_cells()) {
        report.push_back({"morphism-range", "cell '" + cell.id + "' has no image"});
        continue;
      }
      auto const& image = to.cell(f.cells[c]);
      if (!(map_cycle(to.skeleton(), f.skeleton, cell.boundary) == image.boundary)) {
        report.push_back({"morphism-boundary",
                          "image of the boundary of '" + cell.id
                              + "' is not the boundary of '" + image.id + "'"});
      }
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subcomplexes
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // Keeps the marked items in their original order. Marked arrows must have
    // marked endpoints and marked cells must have marked boundaries.
    inline TwoComplex induced_subcomplex(TwoComplex const&        k,
                                         std::vector<bool> const& keep_vertex,
                                         std::vector<bool> const& keep_arrow,
                                         std::vector<bool> const& keep_cell) {
      auto const&                    g = k.skeleton();
      std::vector<std::string>       vertices;
      std::vector<ArrowSpec>         arrows;
      std::vector<arrow_index>       arrow_map(g.number_of_arrows(), npos);
      for (vertex_index v = 0; v < g.number_of_vertices(); ++v) {
        if (keep_vertex[v]) {
          vertices.push_back(g.vertex(v));
        }
      }
      for (arrow_index a = 0; a < g.number_of_arrows(); ++a) {
        if (keep_arrow[a]) {
          auto const& x = g.arrow(a);
          arrow_map[a]  = arrows.size();
          arrows.push_back({x.id, g.vertex(x.source), g.vertex(x.target), x.degree});
        }
      }
      Bigraph           sub(std::move(vertices), std::move(arrows));
      std::vector<Cell> cells;
      for (cell_index c = 0; c < k.number_of_cells(); ++c) {
        if (!keep_cell[c]) {
          continue;
        }
        auto const& w = k.cell(c).boundary.canonical();
        if (w.is_trivial()) {
          cells.push_back({k.cell(c).id,
                           Cycle::of(sub, Walk::trivial(sub.vertex_index_of(g.vertex(w.source()))))});
          continue;
        }
        std::vector<Step> steps;
        for (auto s : w.steps()) {
          steps.push_back({arrow_map[s.arrow], s.exponent});
        }
        cells.push_back({k.cell(c).id, Cycle::of(sub, Walk(sub, std::move(steps)))});
      }
      return TwoComplex(std::move(sub), std::move(cells));
    }
  }  // namespace detail

  struct Seed {
    std::vector<std::string> vertices;
    std::vector<std::string> arrows;
    std::vector<std::string> cells;
  };

  // Smallest subcomplex containing the seed: cells pull in their boundary
  // arrows, arrows pull in their endpoints.
  inline TwoComplex generated_subcomplex(TwoComplex const& k, Seed const& seed) {
    auto const&       g = k.skeleton();
    std::vector<bool> kv(g.number_of_vertices()), ka(g.number_of_arrows()),
        kc(k.number_of_cells());
    for (auto const& v : seed.vertices) {
      kv[g.vertex_index_of(v)] = true;
    }
    for (auto const& a : seed.arrows) {
      ka[g.arrow_index_of(a)] = true;
    }
    for (auto const& c : seed.cells) {
      auto const  ci = k.cell_index_of(c);
      auto const& w  = k.cell(ci).boundary.canonical();
      kc[ci]         = true;
      kv[w.source()] = true;
      for (auto s : w.steps()) {
        ka[s.arrow] = true;
      }
    }
    for (arrow_index a = 0; a < g.number_of_arrows(); ++a) {
      if (ka[a]) {
        kv[g.arrow(a).source] = true;
        kv[g.arrow(a).target] = true;
      }
    }
    return detail::induced_subcomplex(k, kv, ka, kc);
  }

  // Keeps arrows with both endpoints in S and cells whose whole boundary
  // survives.
  inline TwoComplex restrict_to_vertices(TwoComplex const& k, std::vector<std::string> const& S) {
    auto const&       g = k.skeleton();
    std::vector<bool> kv(g.number_of_vertices()), ka(g.number_of_arrows()),
        kc(k.number_of_cells());
    for (auto const& v : S) {
      kv[g.vertex_index_of(v)] = true;
    }
    for (arrow_index a = 0; a < g.number_of_arrows(); ++a) {
      ka[a] = kv[g.arrow(a).source] && kv[g.arrow(a).target];
    }
    for (cell_index c = 0; c < k.number_of_cells(); ++c) {
      auto const& w = k.cell(c).boundary.canonical();
      kc[c]         = kv[w.source()]
              && std::all_of(w.steps().begin(), w.steps().end(),
                             [&ka](Step s) { return static_cast<bool>(ka[s.arrow]); });
    }
    return detail::induced_subcomplex(k, kv, ka, kc);
  }

  ////////////////////////////////////////////////////////////////////////
  // Quotients
  ////////////////////////////////////////////////////////////////////////

  enum class ItemKind { vertex, arrow };

  struct ItemRef {
    ItemKind    kind;
    std::string id;
  };

  // Equivalence given by its non-trivial classes; unmentioned items are
  // singletons.
  using Equivalence = std::vector<std::vector<ItemRef>>;

  struct Quotient {
    TwoComplex      complex;
    ComplexMorphism projection;
  };

  namespace detail {
    // Class labels are arbitrary; each class is named after its least member
    // and ordered by it. Cells in the same class must have equal image
    // boundaries.
    inline Quotient quotient_by_labels(TwoComplex const&               k,
                                       std::vector<std::size_t> const& vertex_label,
                                       std::vector<std::size_t> const& arrow_label,
                                       std::vector<std::size_t> const& cell_label) {
      auto const& g = k.skeleton();

      auto classes = [](std::vector<std::size_t> const& label) {
        // Returns (index -> class number) with classes numbered by least
        // member, plus the least member of each class.
        std::map<std::size_t, std::size_t> first;
        std::vector<std::size_t>           cls(label.size()), rep;
        for (std::size_t i = 0; i < label.size(); ++i) {
          auto [it, fresh] = first.try_emplace(label[i], rep.size());
          if (fresh) {
            rep.push_back(i);
          }
          cls[i] = it->second;
        }
        return std::make_pair(cls, rep);
      };
      auto [vcls, vrep] = classes(vertex_label);
      auto [acls, arep] = classes(arrow_label);
      auto [ccls, crep] = classes(cell_label);

      for (arrow_index a = 0; a < g.number_of_arrows(); ++a) {
        auto const& x = g.arrow(a);
        auto const& r = g.arrow(arep[acls[a]]);
        if (x.degree != r.degree) {
          throw Error("quotient: arrows '" + x.id + "' and '" + r.id
                      + "' are merged but have different degrees");
        }
        if (vcls[x.source] != vcls[r.source] || vcls[x.target] != vcls[r.target]) {
          throw Error("quotient: arrows '" + x.id + "' and '" + r.id
                      + "' are merged but their endpoints are not equivalent");
        }
      }

      std::vector<std::string> vertices;
      for (auto v : vrep) {
        vertices.push_back(g.vertex(v));
      }
      std::vector<ArrowSpec> arrows;
      for (auto a : arep) {
        auto const& x = g.arrow(a);
        arrows.push_back({x.id, g.vertex(vrep[vcls[x.source]]), g.vertex(vrep[vcls[x.target]]),
                          x.degree});
      }
      Bigraph         qg(std::move(vertices), std::move(arrows));
      BigraphMorphism p{vcls, acls};

      std::vector<Cell> cells;
      for (std::size_t i = 0; i < crep.size(); ++i) {
        auto const& cell  = k.cell(crep[i]);
        auto const  image = map_walk(p, cell.boundary.canonical());
        if (!is_cyclically_reduced(image)) {
          throw Error("quotient: image of the boundary of cell '" + cell.id
                      + "' is not cyclically reduced");
        }
        cells.push_back({cell.id, Cycle::of(qg, image)});
      }
      for (cell_index c = 0; c < k.number_of_cells(); ++c) {
        auto const image = map_cycle(qg, p, k.cell(c).boundary);
        if (!(image == cells[ccls[c]].boundary)) {
          throw Error("quotient: merged cells '" + k.cell(c).id + "' and '"
                      + cells[ccls[c]].id + "' have different image boundaries");
        }
      }
      TwoComplex qk(std::move(qg), std::move(cells));
      return {std::move(qk), ComplexMorphism{std::move(p), ccls}};
    }
  }  // namespace detail

  // Quotient by an equivalence on vertices and arrows; every cell survives
  // with its image boundary, which must stay cyclically reduced.
  inline Quotient quotient_complex(TwoComplex const& k, Equivalence const& rel) {
    auto const&       g = k.skeleton();
    detail::UnionFind vu(g.number_of_vertices()), au(g.number_of_arrows());
    for (auto const& cls : rel) {
      if (cls.empty()) {
        continue;
      }
      auto const kind = cls.front().kind;
      for (auto const& item : cls) {
        if (item.kind != kind) {
          throw Error("quotient: class mixes vertices and arrows ('" + cls.front().id
                      + "', '" + item.id + "')");
        }
      }
      if (kind == ItemKind::vertex) {
        auto const first = g.vertex_index_of(cls.front().id);
        for (auto const& item : cls) {
          vu.unite(first, g.vertex_index_of(item.id));
        }
      } else {
        auto const first = g.arrow_index_of(cls.front().id);
        for (auto const& item : cls) {
          au.unite(first, g.arrow_index_of(item.id));
        }
      }
    }
    std::vector<std::size_t> vl(g.number_of_vertices()), al(g.number_of_arrows()),
        cl(k.number_of_cells());
    for (std::size_t i = 0; i < vl.size(); ++i) {
      vl[i] = vu.find(i);
    }
    for (std::size_t i = 0; i < al.size(); ++i) {
      al[i] = au.find(i);
    }
    std::iota(cl.begin(), cl.end(), std::size_t{0});
    return detail::quotient_by_labels(k, vl, al, cl);
  }

  ////////////////////////////////////////////////////////////////////////
  // DOT export
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::string dot_quote(std::string const& s) {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') {
          out += '\\';
        }
        out += c;
      }
      return out + "\"";
    }
  }  // namespace detail

  // Solid arrows are drawn solid, dotted arrows dashed; cells become comment
  // lines listing their boundary cycles.
  inline void write_dot(std::ostream& out, TwoComplex const& k, std::string const& name = "complex") {
    using detail::dot_quote;
    auto const& g = k.skeleton();
    out << "digraph " << dot_quote(name) << " {\n";
    for (auto const& v : g.vertices()) {
      out << "  " << dot_quote(v) << ";\n";
    }
    for (auto const& a : g.arrows()) {
      out << "  " << dot_quote(g.vertex(a.source)) << " -> " << dot_quote(g.vertex(a.target))
          << " [label=" << dot_quote(a.id) << ", style=" << (a.is_solid() ? "solid" : "dashed")
          << "];\n";
    }
    if (k.number_of_cells() != 0) {
      out << "  // cells\n";
    }
    for (auto const& c : k.cells()) {
      out << "  // cell " << c.id << ": " << to_string(g, c.boundary) << "\n";
    }
    out << "}\n";
  }

  inline std::string to_dot(TwoComplex const& k, std::string const& name = "complex") {
    std::ostringstream out;
    write_dot(out, k, name);
    return out.str();
  }

}  // namespace galcov
