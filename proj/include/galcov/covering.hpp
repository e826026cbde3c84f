#pragma once

// Covering morphisms of complexes, radius-bounded universal covers, deck
// actions and Galois quotients.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "homotopy.hpp"
#include "walk.hpp"

namespace galcov {

  // A complex morphism p: cover -> base together with lifting tables. The
  // frontier marks cover vertices where a truncated construction may be
  // missing lifts; local axioms are not checked there.
  class Covering {
   public:
    Covering() = default;

    Covering(TwoComplex cover, TwoComplex base, ComplexMorphism projection,
             std::vector<bool> frontier = {})
        : cover_(std::move(cover)),
          base_(std::move(base)),
          projection_(std::move(projection)),
          frontier_(std::move(frontier)) {
      auto const& g = cover_.skeleton();
      frontier_.resize(g.number_of_vertices(), false);
      if (projection_.skeleton.arrows.size() != g.number_of_arrows()) {
        throw Error("Covering: projection does not match the cover");
      }
      out_.resize(g.number_of_vertices());
      in_.resize(g.number_of_vertices());
      for (arrow_index a = 0; a < g.number_of_arrows(); ++a) {
        auto const& x = g.arrow(a);
        auto const  b = projection_.skeleton.arrows[a];
        out_[x.source][b].push_back(a);
        in_[x.target][b].push_back(a);
      }
    }

    TwoComplex const& cover() const noexcept {
      return cover_;
    }
    TwoComplex const& base() const noexcept {
      return base_;
    }
    ComplexMorphism const& projection() const noexcept {
      return projection_;
    }
    vertex_index project(vertex_index v) const {
      return projection_.skeleton.vertices.at(v);
    }
    bool is_frontier(vertex_index v) const {
      return frontier_.at(v);
    }
    std::vector<bool> const& frontier() const noexcept {
      return frontier_;
    }

    std::vector<std::vector<vertex_index>> fibers() const {
      std::vector<std::vector<vertex_index>> out(base_.skeleton().number_of_vertices());
      for (vertex_index v = 0; v < cover_.skeleton().number_of_vertices(); ++v) {
        out.at(project(v)).push_back(v);
      }
      return out;
    }

    // Cover arrows over `base_step`'s arrow leaving `v` along the step's
    // direction.
    std::vector<arrow_index> const& lifts(vertex_index v, Step base_step) const {
      static std::vector<arrow_index> const none;
      auto const& table = base_step.exponent > 0 ? out_.at(v) : in_.at(v);
      auto        it    = table.find(base_step.arrow);
      return it == table.end() ? none : it->second;
    }

   private:
    TwoComplex      cover_;
    TwoComplex      base_;
    ComplexMorphism projection_;
    std::vector<bool> frontier_;
    std::vector<std::unordered_map<arrow_index, std::vector<arrow_index>>> out_, in_;
  };

  // Empty iff the projection is a well-formed surjective complex morphism
  // with unique walk lifting and unique cell lifting at every non-frontier
  // cover vertex.
  inline ValidationReport check_covering(Covering const& c) {
    auto const& cover = c.cover();
    auto const& base  = c.base();
    auto const& f     = c.projection();
    auto const& cg    = cover.skeleton();
    auto const& bg    = base.skeleton();
    auto report       = validate_complex_morphism(cover, base, f);
    if (!report.empty()) {
      return report;
    }
    // A truncated cover need not reach the whole base, so surjectivity is
    // only asked of covers without a frontier.
    bool const complete = std::none_of(c.frontier().begin(), c.frontier().end(), [](bool b) { return b; });
    std::vector<bool> hit_v(bg.number_of_vertices(), !complete), hit_a(bg.number_of_arrows(), !complete),
        hit_c(base.number_of_cells(), !complete);
    for (auto v : f.skeleton.vertices) {
      hit_v[v] = true;
    }
    for (auto a : f.skeleton.arrows) {
      hit_a[a] = true;
    }
    for (auto x : f.cells) {
      hit_c[x] = true;
    }
    for (vertex_index v = 0; v < hit_v.size(); ++v) {
      if (!hit_v[v]) {
        report.push_back({"surjectivity", "vertex '" + bg.vertex(v) + "' has no preimage"});
      }
    }
    for (arrow_index a = 0; a < hit_a.size(); ++a) {
      if (!hit_a[a]) {
        report.push_back({"surjectivity", "arrow '" + bg.arrow(a).id + "' has no preimage"});
      }
    }
    for (cell_index x = 0; x < hit_c.size(); ++x) {
      if (!hit_c[x]) {
        report.push_back({"surjectivity", "cell '" + base.cell(x).id + "' has no preimage"});
      }
    }
    for (vertex_index v = 0; v < cg.number_of_vertices(); ++v) {
      if (c.is_frontier(v)) {
        continue;
      }
      auto const pv = c.project(v);
      for (auto a : bg.outgoing(pv)) {
        auto const n = c.lifts(v, {a, 1}).size();
        if (n != 1) {
          report.push_back({"walk-lifting", std::to_string(n) + " lifts of arrow '" + bg.arrow(a).id
                                                + "' start at '" + cg.vertex(v) + "'"});
        }
      }
      for (auto a : bg.incoming(pv)) {
        auto const n = c.lifts(v, {a, -1}).size();
        if (n != 1) {
          report.push_back({"walk-lifting", std::to_string(n) + " lifts of arrow '" + bg.arrow(a).id
                                                + "' end at '" + cg.vertex(v) + "'"});
        }
      }
    }
    // Cell lifting is counted per boundary occurrence: a vertex Ã over A must
    // meet each way of reading the boundary of C from A exactly as often as
    // the base cell does, once through each lift.
    using Reading = std::pair<vertex_index, std::vector<Step>>;
    std::vector<std::map<Reading, std::size_t>> seen(base.number_of_cells());
    for (cell_index y = 0; y < cover.number_of_cells(); ++y) {
      auto const w = cover.cell(y).boundary.canonical();
      for (std::size_t r = 0; r < w.length(); ++r) {
        auto const rw = rotate(cg, w, r);
        ++seen[f.cells[y]][{rw.source(), map_walk(f.skeleton, rw).steps()}];
      }
    }
    auto const fibers = c.fibers();
    for (cell_index x = 0; x < base.number_of_cells(); ++x) {
      std::map<std::pair<vertex_index, std::vector<Step>>, std::size_t> expected;
      auto const w = base.cell(x).boundary.canonical();
      for (std::size_t r = 0; r < w.length(); ++r) {
        auto const rw = rotate(bg, w, r);
        ++expected[{rw.source(), rw.steps()}];
      }
      std::set<vertex_index> reported;
      for (auto const& [reading, m] : expected) {
        for (auto At : fibers[reading.first]) {
          if (c.is_frontier(At) || reported.count(At)) {
            continue;
          }
          auto const it = seen[x].find({At, reading.second});
          auto const n  = it == seen[x].end() ? 0 : it->second;
          if (n != m) {
            reported.insert(At);
            report.push_back({"cell-lifting", std::to_string(n / m) + " lifts of cell '" + base.cell(x).id
                                                  + "' contain '" + cg.vertex(At) + "'"});
          }
        }
      }
    }
    return report;
  }

  inline ValidationReport check_covering(TwoComplex const& cover, TwoComplex const& base,
                                         ComplexMorphism const& f) {
    if (f.skeleton.arrows.size() != cover.skeleton().number_of_arrows()
        || f.skeleton.vertices.size() != cover.skeleton().number_of_vertices()) {
      return {{"morphism-shape", "map sizes do not match the source complex"}};
    }
    return check_covering(Covering(cover, base, f));
  }

  // True iff f is a complex morphism bijective on vertices, arrows and cells.
  inline bool is_isomorphism(TwoComplex const& from, TwoComplex const& to, ComplexMorphism const& f) {
    if (!validate_complex_morphism(from, to, f).empty()) {
      return false;
    }
    auto bijective = [](std::vector<std::size_t> const& m, std::size_t n) {
      if (m.size() != n) {
        return false;
      }
      std::vector<bool> hit(n);
      for (auto x : m) {
        if (hit[x]) {
          return false;
        }
        hit[x] = true;
      }
      return true;
    };
    return bijective(f.skeleton.vertices, to.skeleton().number_of_vertices())
           && bijective(f.skeleton.arrows, to.skeleton().number_of_arrows())
           && bijective(f.cells, to.number_of_cells());
  }

  // The unique lift of a base walk starting at `start`.
  inline Walk lift_walk(Covering const& c, Walk const& w, vertex_index start) {
    auto const& cg = c.cover().skeleton();
    if (c.project(start) != w.source()) {
      throw Error("lift_walk: start vertex '" + cg.vertex(start) + "' is not over s(w)");
    }
    std::vector<Step> steps(w.length());
    auto              cur = start;
    for (std::size_t i = w.length(); i-- > 0;) {
      auto const  s  = w.steps()[i];
      auto const& ls = c.lifts(cur, s);
      if (ls.empty()) {
        if (c.is_frontier(cur)) {
          throw TruncationError("lift_walk: lift leaves the truncated cover at '" + cg.vertex(cur)
                                + "'");
        }
        throw Error("lift_walk: no lift of '" + c.base().skeleton().arrow(s.arrow).id + "' at '"
                    + cg.vertex(cur) + "'");
      }
      if (ls.size() > 1) {
        throw Error("lift_walk: lift of '" + c.base().skeleton().arrow(s.arrow).id
                    + "' is not unique at '" + cg.vertex(cur) + "'");
      }
      steps[i] = {ls.front(), s.exponent};
      cur      = head(cg, steps[i]);
    }
    if (steps.empty()) {
      return Walk::trivial(start);
    }
    return Walk(cg, std::move(steps));
  }

  ////////////////////////////////////////////////////////////////////////
  // Universal cover by tree construction and folding
  ////////////////////////////////////////////////////////////////////////

  struct UniversalCoverOptions {
    // Upper bound on the number of reduced walks in the ball.
    std::size_t max_vertices = 200000;
    // Randomizes the order in which identifications are made; the result
    // does not depend on it.
    std::optional<std::uint64_t> shuffle_seed;
  };

  struct TruncatedUniversalCover {
    Covering     covering;
    vertex_index base_vertex = 0;  // in the base complex
    vertex_index root        = 0;  // cover vertex [1_B]
    std::size_t  radius      = 0;
    // Least reduced walk (shortlex) in each cover vertex's class, and the
    // least tree depth of the class.
    std::vector<Walk>        representatives;
    std::vector<std::size_t> depth;

    std::vector<vertex_index> frontier_vertices() const {
      std::vector<vertex_index> out;
      for (vertex_index v = 0; v < depth.size(); ++v) {
        if (covering.is_frontier(v)) {
          out.push_back(v);
        }
      }
      return out;
    }

    // No truncation effects and a bijective projection.
    bool is_isomorphic_to_base() const {
      auto const& f = covering.frontier();
      return std::none_of(f.begin(), f.end(), [](bool b) { return b; })
             && is_isomorphism(covering.cover(), covering.base(), covering.projection());
    }
  };

  namespace detail {
    // Union-find over tree nodes with one outgoing and one incoming slot per
    // base arrow; merging two nodes folds colliding slots.
    class FoldingGraph {
     public:
      std::size_t add_node(Walk walk, std::size_t depth) {
        parent_.push_back(parent_.size());
        out_.emplace_back();
        in_.emplace_back();
        rep_.push_back(std::move(walk));
        depth_.push_back(depth);
        return parent_.size() - 1;
      }

      std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
          parent_[x] = parent_[parent_[x]];
          x          = parent_[x];
        }
        return x;
      }

      void add_edge(std::size_t u, arrow_index x, std::size_t v) {
        auto ru = find(u), rv = find(v);
        if (auto it = out_[ru].find(x); it != out_[ru].end()) {
          pending_.emplace_back(it->second, rv);
        } else {
          out_[ru][x] = rv;
        }
        if (auto it = in_[rv].find(x); it != in_[rv].end()) {
          pending_.emplace_back(it->second, ru);
        } else {
          in_[rv][x] = ru;
        }
        settle();
      }

      void merge(std::size_t u, std::size_t v) {
        pending_.emplace_back(u, v);
        settle();
      }

      std::optional<std::size_t> follow(std::size_t v, Step s) {
        auto const& table = s.exponent > 0 ? out_[find(v)] : in_[find(v)];
        auto        it    = table.find(s.arrow);
        if (it == table.end()) {
          return std::nullopt;
        }
        return find(it->second);
      }

      std::map<arrow_index, std::size_t> const& out(std::size_t root) const {
        return out_[root];
      }
      Walk const& rep(std::size_t root) const {
        return rep_[root];
      }
      std::size_t depth(std::size_t root) const {
        return depth_[root];
      }
      std::size_t size() const {
        return parent_.size();
      }

     private:
      void settle() {
        while (!pending_.empty()) {
          auto [a, b] = pending_.front();
          pending_.pop_front();
          a = find(a);
          b = find(b);
          if (a == b) {
            continue;
          }
          if (rep_[b].shortlex_less(rep_[a])) {
            std::swap(a, b);
          }
          parent_[b] = a;
          depth_[a]  = std::min(depth_[a], depth_[b]);
          fold(out_[a], out_[b]);
          fold(in_[a], in_[b]);
        }
      }

      void fold(std::map<arrow_index, std::size_t>& into, std::map<arrow_index, std::size_t>& from) {
        for (auto const& [x, w] : from) {
          auto [it, fresh] = into.try_emplace(x, w);
          if (!fresh) {
            pending_.emplace_back(it->second, w);
          }
        }
        from.clear();
      }

      std::vector<std::size_t>                        parent_;
      std::vector<std::map<arrow_index, std::size_t>> out_, in_;
      std::vector<Walk>                               rep_;
      std::vector<std::size_t>                        depth_;
      std::deque<std::pair<std::size_t, std::size_t>> pending_;
    };

    // Lifts a cyclic base word from `v`; nullopt if it leaves the graph.
    inline std::optional<std::size_t> follow_word(FoldingGraph& fg, std::size_t v,
                                                  std::vector<Step> const& word) {
      std::optional<std::size_t> cur = fg.find(v);
      for (auto it = word.rbegin(); it != word.rend() && cur; ++it) {
        cur = fg.follow(*cur, *it);
      }
      return cur;
    }

    inline std::string cover_vertex_name(Bigraph const& g, Walk const& rep) {
      return "[" + to_string(g, rep, '.') + "]";
    }
  }  // namespace detail

  // Ball of reduced walks from `base` of length at most `radius`, folded so
  // that every cell boundary lifting inside the ball closes up. Cover
  // vertices are named by their least reduced walk representative.
  inline TruncatedUniversalCover universal_cover(TwoComplex const& k, vertex_index base,
                                                 std::size_t                  radius,
                                                 UniversalCoverOptions const& options = {}) {
    auto const& g = k.skeleton();
    if (base >= g.number_of_vertices()) {
      throw Error("universal_cover: base vertex is not in the complex");
    }
    if (!is_connected(g)) {
      throw Error("universal_cover: complex is not connected");
    }

    // 1. The tree of reduced walks.
    detail::FoldingGraph     fg;
    std::vector<std::size_t> layer{fg.add_node(Walk::trivial(base), 0)};
    std::vector<vertex_index> over{base};
    std::vector<std::pair<std::size_t, std::pair<arrow_index, std::size_t>>> edges;
    for (std::size_t d = 0; d < radius; ++d) {
      std::vector<std::size_t> next;
      for (auto u : layer) {
        Walk const        omega = fg.rep(u);
        auto const        X     = omega.target();
        std::vector<Step> ext;
        for (auto a : g.outgoing(X)) {
          ext.push_back({a, 1});
        }
        for (auto a : g.incoming(X)) {
          ext.push_back({a, -1});
        }
        std::sort(ext.begin(), ext.end());
        for (auto y : ext) {
          if (!omega.is_trivial() && cancels(y, omega.steps().front())) {
            continue;
          }
          auto steps = omega.steps();
          steps.insert(steps.begin(), y);
          auto const child = make_walk_unchecked(base, head(g, y), std::move(steps));
          if (fg.size() >= options.max_vertices) {
            throw Error("universal_cover: ball exceeds the vertex budget of "
                        + std::to_string(options.max_vertices));
          }
          auto const v = fg.add_node(child, d + 1);
          over.push_back(child.target());
          if (y.exponent > 0) {
            fg.add_edge(u, y.arrow, v);
          } else {
            fg.add_edge(v, y.arrow, u);
          }
          next.push_back(v);
        }
      }
      layer = std::move(next);
    }

    // 2. Close lifted cell boundaries and fold until stable.
    auto const         insertions = detail::cell_insertions(k);
    std::mt19937_64    rng(options.shuffle_seed.value_or(0));
    std::vector<std::size_t> nodes(fg.size());
    std::iota(nodes.begin(), nodes.end(), std::size_t{0});
    std::vector<std::size_t> order(insertions.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (bool changed = true; changed;) {
      changed = false;
      if (options.shuffle_seed) {
        std::shuffle(nodes.begin(), nodes.end(), rng);
        std::shuffle(order.begin(), order.end(), rng);
      }
      for (auto v : nodes) {
        if (fg.find(v) != v) {
          continue;
        }
        for (auto i : order) {
          auto const& ins = insertions[i];
          if (ins.base != over[v] || fg.find(v) != v) {
            continue;
          }
          auto const end = detail::follow_word(fg, v, ins.word);
          if (end && *end != fg.find(v)) {
            fg.merge(v, *end);
            changed = true;
          }
        }
      }
    }

    // 3. Read off the cover skeleton.
    std::vector<std::size_t> roots;
    for (std::size_t v = 0; v < fg.size(); ++v) {
      if (fg.find(v) == v) {
        roots.push_back(v);
      }
    }
    std::sort(roots.begin(), roots.end(), [&fg](std::size_t a, std::size_t b) {
      return fg.rep(a).shortlex_less(fg.rep(b));
    });
    std::unordered_map<std::size_t, vertex_index> index_of;
    TruncatedUniversalCover                       result;
    result.base_vertex = base;
    result.radius      = radius;
    std::vector<std::string>  names;
    BigraphMorphism           proj;
    for (auto r : roots) {
      index_of[r] = names.size();
      names.push_back(detail::cover_vertex_name(g, fg.rep(r)));
      result.representatives.push_back(fg.rep(r));
      result.depth.push_back(fg.depth(r));
      proj.vertices.push_back(over[r]);
    }
    result.root = index_of.at(fg.find(0));
    std::vector<ArrowSpec> arrows;
    for (auto r : roots) {
      for (auto const& [x, t] : fg.out(r)) {
        arrows.push_back({g.arrow(x).id + "@" + names[index_of.at(r)], names[index_of.at(r)],
                          names[index_of.at(fg.find(t))], g.arrow(x).degree});
        proj.arrows.push_back(x);
      }
    }
    Bigraph cg(names, std::move(arrows));

    // 4. Cells: closed lifts of every boundary, one per cycle.
    std::vector<Cell>       cells;
    std::vector<cell_index> cell_proj;
    std::vector<bool>       frontier(names.size(), false);
    for (vertex_index v = 0; v < names.size(); ++v) {
      frontier[v] = result.depth[v] >= radius;
    }
    Covering skeleton_only(TwoComplex(cg, {}),
                           TwoComplex(g, {}),
                           ComplexMorphism{proj, {}}, frontier);
    for (cell_index c = 0; c < k.number_of_cells(); ++c) {
      auto const&     b = k.cell(c).boundary.canonical();
      std::set<Cycle> seen;
      for (vertex_index v = 0; v < names.size(); ++v) {
        if (proj.vertices[v] != b.source()) {
          continue;
        }
        try {
          auto const lifted = lift_walk(skeleton_only, b, v);
          if (!lifted.is_cyclic()) {
            throw Error("universal_cover: lifted boundary of '" + k.cell(c).id
                        + "' does not close");
          }
          auto const cyc = Cycle::of(cg, lifted);
          if (seen.insert(cyc).second) {
            cells.push_back({k.cell(c).id + "@" + names[v], cyc});
            cell_proj.push_back(c);
          }
        } catch (TruncationError const&) {
        }
      }
    }
    TwoComplex cover(std::move(cg), std::move(cells));

    // A vertex missing some reading of a base cell boundary is also a
    // truncation artefact.
    std::set<std::tuple<cell_index, vertex_index, std::vector<Step>>> lifted_readings;
    for (cell_index y = 0; y < cover.number_of_cells(); ++y) {
      auto const w = cover.cell(y).boundary.canonical();
      for (std::size_t r = 0; r < w.length(); ++r) {
        auto const rw = rotate(cover.skeleton(), w, r);
        lifted_readings.insert({cell_proj[y], rw.source(), map_walk(proj, rw).steps()});
      }
    }
    for (cell_index c = 0; c < k.number_of_cells(); ++c) {
      auto const w = k.cell(c).boundary.canonical();
      for (std::size_t r = 0; r < w.length(); ++r) {
        auto const rw = rotate(g, w, r);
        for (vertex_index v = 0; v < names.size(); ++v) {
          if (proj.vertices[v] == rw.source() && !lifted_readings.count({c, v, rw.steps()})) {
            frontier[v] = true;
          }
        }
      }
    }
    result.covering = Covering(std::move(cover), k, ComplexMorphism{std::move(proj), cell_proj},
                               std::move(frontier));
    return result;
  }

  // Vertex [w] goes to [w g] wherever both lifts stay inside the ball.
  inline std::vector<std::optional<vertex_index>> deck_translates(TruncatedUniversalCover const& u,
                                                                  Walk const& g) {
    if (!g.is_cyclic() || g.source() != u.base_vertex) {
      throw Error("deck_translates: walk is not cyclic at the base vertex");
    }
    std::vector<std::optional<vertex_index>> out(u.representatives.size());
    vertex_index                             shifted_root;
    try {
      shifted_root = lift_walk(u.covering, g, u.root).target();
    } catch (TruncationError const&) {
      return out;
    }
    for (vertex_index v = 0; v < out.size(); ++v) {
      try {
        out[v] = lift_walk(u.covering, u.representatives[v], shifted_root).target();
      } catch (TruncationError const&) {
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Group actions and Galois quotients
  ////////////////////////////////////////////////////////////////////////

  struct GroupAction {
    // All group elements as complex automorphisms; element 0 is the identity.
    std::vector<ComplexMorphism> elements;
  };

  namespace detail {
    inline ComplexMorphism compose(ComplexMorphism const& f, ComplexMorphism const& h) {
      ComplexMorphism out;
      for (auto v : h.skeleton.vertices) {
        out.skeleton.vertices.push_back(f.skeleton.vertices[v]);
      }
      for (auto a : h.skeleton.arrows) {
        out.skeleton.arrows.push_back(f.skeleton.arrows[a]);
      }
      for (auto c : h.cells) {
        out.cells.push_back(f.cells[c]);
      }
      return out;
    }
  }  // namespace detail

  // Extends bigraph automorphisms to the cells (by boundary images) and
  // closes them under composition.
  inline GroupAction make_group_action(TwoComplex const& k, std::vector<BigraphMorphism> const& generators,
                                       std::size_t max_order = 10000) {
    auto const& g = k.skeleton();
    std::multimap<Cycle, cell_index> by_boundary;
    for (cell_index c = 0; c < k.number_of_cells(); ++c) {
      by_boundary.emplace(k.cell(c).boundary, c);
    }
    std::vector<ComplexMorphism> gens;
    for (auto const& f : generators) {
      auto report = validate_morphism(g, g, f);
      std::set<vertex_index> vs(f.vertices.begin(), f.vertices.end());
      std::set<arrow_index>  as(f.arrows.begin(), f.arrows.end());
      if (report.empty()
          && (vs.size() != g.number_of_vertices() || as.size() != g.number_of_arrows())) {
        report.push_back({"automorphism", "map is not bijective"});
      }
      if (!report.empty()) {
        throw ValidationError("group action element is not an automorphism:", report);
      }
      ComplexMorphism cf{f, std::vector<cell_index>(k.number_of_cells(), npos)};
      std::vector<bool> used(k.number_of_cells(), false);
      for (cell_index c = 0; c < k.number_of_cells(); ++c) {
        auto const image = map_cycle(g, f, k.cell(c).boundary);
        auto [lo, hi]    = by_boundary.equal_range(image);
        for (; lo != hi && used[lo->second]; ++lo) {
        }
        if (lo == hi) {
          throw Error("group action element does not map cell '" + k.cell(c).id + "' to a cell");
        }
        used[lo->second] = true;
        cf.cells[c]      = lo->second;
      }
      gens.push_back(std::move(cf));
    }
    auto key = [](ComplexMorphism const& f) {
      auto out = f.skeleton.vertices;
      out.insert(out.end(), f.skeleton.arrows.begin(), f.skeleton.arrows.end());
      out.insert(out.end(), f.cells.begin(), f.cells.end());
      return out;
    };
    GroupAction act;
    act.elements.push_back(ComplexMorphism::identity(k));
    std::set<std::vector<std::size_t>> seen{key(act.elements.front())};
    for (std::size_t i = 0; i < act.elements.size(); ++i) {
      for (auto const& s : gens) {
        auto prod = detail::compose(s, act.elements[i]);
        if (!seen.insert(key(prod)).second) {
          continue;
        }
        act.elements.push_back(std::move(prod));
        if (act.elements.size() > max_order) {
          throw Error("group action: group has more than " + std::to_string(max_order)
                      + " elements");
        }
      }
    }
    return act;
  }

  struct DeckQuotient {
    TwoComplex complex;
    Covering   covering;  // k -> k/G
  };

  // Orbit quotient by a free action; the projection is a covering.
  inline DeckQuotient deck_quotient(TwoComplex const& k, GroupAction const& act) {
    auto const& g = k.skeleton();
    auto const  id = ComplexMorphism::identity(k);
    for (auto const& e : act.elements) {
      if (e == id) {
        continue;
      }
      for (vertex_index v = 0; v < g.number_of_vertices(); ++v) {
        if (e.skeleton.vertices[v] == v) {
          throw Error("deck_quotient: action is not free, vertex '" + g.vertex(v)
                      + "' is fixed by a non-identity element");
        }
      }
    }
    detail::UnionFind vu(g.number_of_vertices()), au(g.number_of_arrows()),
        cu(k.number_of_cells());
    for (auto const& e : act.elements) {
      for (std::size_t i = 0; i < g.number_of_vertices(); ++i) {
        vu.unite(i, e.skeleton.vertices[i]);
      }
      for (std::size_t i = 0; i < g.number_of_arrows(); ++i) {
        au.unite(i, e.skeleton.arrows[i]);
      }
      for (std::size_t i = 0; i < k.number_of_cells(); ++i) {
        cu.unite(i, e.cells[i]);
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
    for (std::size_t i = 0; i < cl.size(); ++i) {
      cl[i] = cu.find(i);
    }
    auto q = detail::quotient_by_labels(k, vl, al, cl);
    return {q.complex, Covering(k, q.complex, q.projection)};
  }

  // The map h: quotient -> target with h q = p, if p is constant on the
  // fibres of q.
  inline ComplexMorphism factor_through(Covering const& q, ComplexMorphism const& p) {
    auto const&     qf = q.projection();
    ComplexMorphism h;
    auto fill = [](std::vector<std::size_t>& out, std::vector<std::size_t> const& qm,
                   std::vector<std::size_t> const& pm, std::size_t n, char const* what) {
      out.assign(n, npos);
      for (std::size_t i = 0; i < qm.size(); ++i) {
        if (out[qm[i]] != npos && out[qm[i]] != pm[i]) {
          throw Error(std::string("factor_through: map is not constant on a fibre of ") + what);
        }
        out[qm[i]] = pm[i];
      }
    };
    fill(h.skeleton.vertices, qf.skeleton.vertices, p.skeleton.vertices,
         q.base().skeleton().number_of_vertices(), "vertices");
    fill(h.skeleton.arrows, qf.skeleton.arrows, p.skeleton.arrows,
         q.base().skeleton().number_of_arrows(), "arrows");
    fill(h.cells, qf.cells, p.cells, q.base().number_of_cells(), "cells");
    return h;
  }

  ////////////////////////////////////////////////////////////////////////
  // Explicit finite covers from Z/n voltages
  ////////////////////////////////////////////////////////////////////////

  struct VoltageCover {
    Covering        covering;
    BigraphMorphism shift;  // sheet i -> sheet i+1
  };

  // Sheets 0..n-1; arrow x on sheet i runs from (s(x), i) to
  // (e(x), i + voltage(x)). Every cell boundary must have total voltage 0
  // mod n.
  inline VoltageCover voltage_cover(TwoComplex const& k, std::vector<long> const& voltage, std::size_t n) {
    auto const& g = k.skeleton();
    if (n == 0 || voltage.size() != g.number_of_arrows()) {
      throw Error("voltage_cover: need one voltage per arrow and n >= 1");
    }
    auto sheet = [n](long i) {
      auto const m = static_cast<long>(n);
      return static_cast<std::size_t>(((i % m) + m) % m);
    };
    auto vname = [&g](vertex_index v, std::size_t i) {
      return g.vertex(v) + "#" + std::to_string(i);
    };
    std::vector<std::string> vertices;
    BigraphMorphism          proj, shift;
    for (std::size_t i = 0; i < n; ++i) {
      for (vertex_index v = 0; v < g.number_of_vertices(); ++v) {
        vertices.push_back(vname(v, i));
        proj.vertices.push_back(v);
        shift.vertices.push_back(sheet(static_cast<long>(i) + 1) * g.number_of_vertices() + v);
      }
    }
    std::vector<ArrowSpec> arrows;
    for (std::size_t i = 0; i < n; ++i) {
      for (arrow_index a = 0; a < g.number_of_arrows(); ++a) {
        auto const& x = g.arrow(a);
        arrows.push_back({x.id + "#" + std::to_string(i), vname(x.source, i),
                          vname(x.target, sheet(static_cast<long>(i) + voltage[a])), x.degree});
        proj.arrows.push_back(a);
        shift.arrows.push_back(sheet(static_cast<long>(i) + 1) * g.number_of_arrows() + a);
      }
    }
    Bigraph                 cg(std::move(vertices), std::move(arrows));
    std::vector<Cell>       cells;
    std::vector<cell_index> cell_proj;
    Covering                skeleton_only(TwoComplex(cg, {}), TwoComplex(g, {}),
                                          ComplexMorphism{proj, {}});
    for (cell_index c = 0; c < k.number_of_cells(); ++c) {
      auto const&     b = k.cell(c).boundary.canonical();
      std::set<Cycle> seen;
      for (std::size_t i = 0; i < n; ++i) {
        auto const start = i * g.number_of_vertices() + b.source();
        auto const lift  = lift_walk(skeleton_only, b, start);
        if (!lift.is_cyclic()) {
          throw Error("voltage_cover: boundary of '" + k.cell(c).id + "' has nonzero voltage");
        }
        auto cyc = Cycle::of(cg, lift);
        if (seen.insert(cyc).second) {
          cells.push_back({k.cell(c).id + "#" + std::to_string(i), std::move(cyc)});
          cell_proj.push_back(c);
        }
      }
    }
    TwoComplex cover(std::move(cg), std::move(cells));
    return {Covering(std::move(cover), k, ComplexMorphism{std::move(proj), std::move(cell_proj)}),
            std::move(shift)};
  }

}  // namespace galcov
