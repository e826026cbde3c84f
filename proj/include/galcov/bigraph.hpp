#pragma once

// Directed bigraphs: vertices plus solid (degree 0) and dotted (degree 1)
// arrows. Vertex and arrow ids are opaque strings; dense indices are used
// internally and follow input order.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace galcov {

  using vertex_index = std::size_t;
  using arrow_index  = std::size_t;

  inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

  enum class Degree : std::uint8_t { solid = 0, dotted = 1 };

  inline char const* to_string(Degree d) noexcept {
    return d == Degree::solid ? "solid" : "dotted";
  }

  // Arrow as supplied by the caller, endpoints given by vertex id.
  struct ArrowSpec {
    std::string id;
    std::string source;
    std::string target;
    Degree      degree = Degree::solid;
  };

  // Arrow with resolved endpoints. An unresolved endpoint is `npos`.
  struct Arrow {
    std::string  id;
    vertex_index source = npos;
    vertex_index target = npos;
    Degree       degree = Degree::solid;

    bool is_dotted() const noexcept {
      return degree == Degree::dotted;
    }
    bool is_solid() const noexcept {
      return degree == Degree::solid;
    }
  };

  class Bigraph {
   public:
    Bigraph() = default;

    // Never throws on invariant violations; use validate_bigraph() or
    // require_well_formed() to inspect them.
    Bigraph(std::vector<std::string> vertices, std::vector<ArrowSpec> arrows)
        : vertices_(std::move(vertices)), specs_(std::move(arrows)) {
      for (vertex_index v = 0; v < vertices_.size(); ++v) {
        vertex_lookup_.try_emplace(vertices_[v], v);
      }
      arrows_.reserve(specs_.size());
      for (arrow_index a = 0; a < specs_.size(); ++a) {
        auto const& s = specs_[a];
        Arrow       arr{s.id, npos, npos, s.degree};
        if (auto it = vertex_lookup_.find(s.source); it != vertex_lookup_.end()) {
          arr.source = it->second;
        }
        if (auto it = vertex_lookup_.find(s.target); it != vertex_lookup_.end()) {
          arr.target = it->second;
        }
        arrows_.push_back(std::move(arr));
        arrow_lookup_.try_emplace(s.id, a);
      }
      outgoing_.resize(vertices_.size());
      incoming_.resize(vertices_.size());
      for (arrow_index a = 0; a < arrows_.size(); ++a) {
        if (arrows_[a].source != npos) {
          outgoing_[arrows_[a].source].push_back(a);
        }
        if (arrows_[a].target != npos) {
          incoming_[arrows_[a].target].push_back(a);
        }
      }
    }

    std::size_t number_of_vertices() const noexcept {
      return vertices_.size();
    }
    std::size_t number_of_arrows() const noexcept {
      return arrows_.size();
    }

    std::string const& vertex(vertex_index v) const {
      return vertices_.at(v);
    }
    Arrow const& arrow(arrow_index a) const {
      return arrows_.at(a);
    }

    std::vector<std::string> const& vertices() const noexcept {
      return vertices_;
    }
    std::vector<Arrow> const& arrows() const noexcept {
      return arrows_;
    }
    std::vector<ArrowSpec> const& arrow_specs() const noexcept {
      return specs_;
    }

    std::optional<vertex_index> find_vertex(std::string_view id) const {
      auto it = vertex_lookup_.find(std::string(id));
      if (it == vertex_lookup_.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    std::optional<arrow_index> find_arrow(std::string_view id) const {
      auto it = arrow_lookup_.find(std::string(id));
      if (it == arrow_lookup_.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    vertex_index vertex_index_of(std::string_view id) const {
      if (auto v = find_vertex(id)) {
        return *v;
      }
      throw InputError("unknown vertex '" + std::string(id) + "'");
    }

    arrow_index arrow_index_of(std::string_view id) const {
      if (auto a = find_arrow(id)) {
        return *a;
      }
      throw InputError("unknown arrow '" + std::string(id) + "'");
    }

    std::vector<arrow_index> const& outgoing(vertex_index v) const {
      return outgoing_.at(v);
    }
    std::vector<arrow_index> const& incoming(vertex_index v) const {
      return incoming_.at(v);
    }

    // |s^-1(v)| + |e^-1(v)|; a loop counts twice.
    std::size_t incidence(vertex_index v) const {
      return outgoing_.at(v).size() + incoming_.at(v).size();
    }

    bool operator==(Bigraph const& that) const {
      if (vertices_ != that.vertices_ || arrows_.size() != that.arrows_.size()) {
        return false;
      }
      for (arrow_index a = 0; a < arrows_.size(); ++a) {
        auto const& x = arrows_[a];
        auto const& y = that.arrows_[a];
        if (x.id != y.id || x.source != y.source || x.target != y.target
            || x.degree != y.degree) {
          return false;
        }
      }
      return true;
    }

   private:
    std::vector<std::string>                      vertices_;
    std::vector<ArrowSpec>                        specs_;
    std::vector<Arrow>                            arrows_;
    std::unordered_map<std::string, vertex_index> vertex_lookup_;
    std::unordered_map<std::string, arrow_index>  arrow_lookup_;
    std::vector<std::vector<arrow_index>>         outgoing_;
    std::vector<std::vector<arrow_index>>         incoming_;
  };

  inline ValidationReport validate_bigraph(Bigraph const& g) {
    ValidationReport report;
    std::unordered_map<std::string, std::size_t> seen;
    for (auto const& v : g.vertices()) {
      if (++seen[v] == 2) {
        report.push_back({"duplicate-vertex", "vertex id '" + v + "' is not unique"});
      }
    }
    seen.clear();
    for (auto const& spec : g.arrow_specs()) {
      if (++seen[spec.id] == 2) {
        report.push_back({"duplicate-arrow", "arrow id '" + spec.id + "' is not unique"});
      }
    }
    for (arrow_index a = 0; a < g.number_of_arrows(); ++a) {
      auto const& spec = g.arrow_specs()[a];
      if (g.arrow(a).source == npos) {
        report.push_back({"dangling-source",
                          "arrow '" + spec.id + "' has source '" + spec.source
                              + "' which is not a vertex"});
      }
      if (g.arrow(a).target == npos) {
        report.push_back({"dangling-target",
                          "arrow '" + spec.id + "' has target '" + spec.target
                              + "' which is not a vertex"});
      }
    }
    return report;
  }

  inline void require_well_formed(Bigraph const& g) {
    auto report = validate_bigraph(g);
    if (!report.empty()) {
      throw ValidationError("malformed bigraph:", std::move(report));
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Connectivity
  ////////////////////////////////////////////////////////////////////////

  enum class Connectivity { all_arrows, solid_only };

  namespace detail {
    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
      }
      std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
          parent_[x] = parent_[parent_[x]];
          x          = parent_[x];
        }
        return x;
      }
      // The smaller root survives, so roots are class minima.
      bool unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) {
          return false;
        }
        if (y < x) {
          std::swap(x, y);
        }
        parent_[y] = x;
        return true;
      }

     private:
      std::vector<std::size_t> parent_;
    };
  }  // namespace detail

  // Partition of the vertices, direction ignored. Components are ordered by
  // their first vertex and list vertices in input order.
  inline std::vector<std::vector<vertex_index>>
  connected_components(Bigraph const& g, Connectivity mode = Connectivity::all_arrows) {
    require_well_formed(g);
    detail::UnionFind uf(g.number_of_vertices());
    for (auto const& a : g.arrows()) {
      if (mode == Connectivity::solid_only && !a.is_solid()) {
        continue;
      }
      uf.unite(a.source, a.target);
    }
    std::vector<std::vector<vertex_index>> result;
    std::vector<std::size_t>               slot(g.number_of_vertices(), npos);
    for (vertex_index v = 0; v < g.number_of_vertices(); ++v) {
      auto r = uf.find(v);
      if (slot[r] == npos) {
        slot[r] = result.size();
        result.emplace_back();
      }
      result[slot[r]].push_back(v);
    }
    return result;
  }

  inline bool is_connected(Bigraph const& g, Connectivity mode = Connectivity::all_arrows) {
    return connected_components(g, mode).size() <= 1;
  }

  ////////////////////////////////////////////////////////////////////////
  // Shapes
  ////////////////////////////////////////////////////////////////////////

  enum class ShapeKind { loop, circle, chain, other };

  struct Shape {
    ShapeKind   kind;
    std::size_t size = 0;  // n for circle(n), vertex count otherwise

    bool operator==(Shape const&) const = default;
  };

  inline Shape classify_shape(Bigraph const& g) {
    require_well_formed(g);
    if (!is_connected(g)) {
      throw Error("classify_shape: bigraph is not connected");
    }
    auto const n = g.number_of_vertices();
    auto const m = g.number_of_arrows();
    if (n == 1 && m == 1) {
      return {ShapeKind::loop, 1};
    }
    std::size_t ones = 0, twos = 0;
    for (vertex_index v = 0; v < n; ++v) {
      auto const d = g.incidence(v);
      ones += (d == 1);
      twos += (d == 2);
    }
    if (n >= 2 && m == n && twos == n) {
      return {ShapeKind::circle, n};
    }
    if (ones == 2 && ones + twos == n) {
      return {ShapeKind::chain, n};
    }
    return {ShapeKind::other, n};
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphisms
  ////////////////////////////////////////////////////////////////////////

  // f = (f0, f1) as index maps.
  struct BigraphMorphism {
    std::vector<vertex_index> vertices;
    std::vector<arrow_index>  arrows;

    bool operator==(BigraphMorphism const&) const = default;

    static BigraphMorphism identity(Bigraph const& g) {
      BigraphMorphism f;
      f.vertices.resize(g.number_of_vertices());
      f.arrows.resize(g.number_of_arrows());
      std::iota(f.vertices.begin(), f.vertices.end(), vertex_index{0});
      std::iota(f.arrows.begin(), f.arrows.end(), arrow_index{0});
      return f;
    }
  };

  inline ValidationReport
  validate_morphism(Bigraph const& from, Bigraph const& to, BigraphMorphism const& f) {
    ValidationReport report;
    if (f.vertices.size() != from.number_of_vertices()
        || f.arrows.size() != from.number_of_arrows()) {
      report.push_back({"morphism-shape", "map sizes do not match the source bigraph"});
      return report;
    }
    for (vertex_index v = 0; v < f.vertices.size(); ++v) {
      if (f.vertices[v] >= to.number_of_vertices()) {
        report.push_back({"morphism-range", "vertex '" + from.vertex(v) + "' has no image"});
      }
    }
    if (!report.empty()) {
      return report;
    }
    for (arrow_index a = 0; a < f.arrows.size(); ++a) {
      auto const& x = from.arrow(a);
      if (f.arrows[a] >= to.number_of_arrows()) {
        report.push_back({"morphism-range", "arrow '" + x.id + "' has no image"});
        continue;
      }
      auto const& y = to.arrow(f.arrows[a]);
      if (f.vertices[x.source] != y.source) {
        report.push_back({"morphism-source",
                          "f0(s(" + x.id + ")) differs from s(f1(" + x.id + ")) = "
                              + to.vertex(y.source)});
      }
      if (f.vertices[x.target] != y.target) {
        report.push_back({"morphism-target",
                          "f0(e(" + x.id + ")) differs from e(f1(" + x.id + ")) = "
                              + to.vertex(y.target)});
      }
      if (x.degree != y.degree) {
        report.push_back({"morphism-degree",
                          "arrow '" + x.id + "' and its image '" + y.id
                              + "' have different degrees"});
      }
    }
    return report;
  }

}  // namespace galcov
