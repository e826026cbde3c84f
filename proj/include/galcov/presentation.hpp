#pragma once

// Spanning-tree presentations of fundamental groups of connected complexes.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "complex.hpp"
#include "walk.hpp"

namespace galcov {

  // A letter g^{±1} over the generator list of a presentation.
  struct Letter {
    std::size_t generator = 0;
    int         exponent  = 1;

    auto operator<=>(Letter const&) const = default;
  };

  using Relator = std::vector<Letter>;

  struct GroupPresentation {
    vertex_index base = 0;
    vertex_index root = 0;  // root of the spanning tree
    // Spanning-tree arrows, and for every vertex the tree walk from the root.
    std::vector<bool> tree_arrow;
    std::vector<Walk> tree_path;
    // Generators are the non-tree arrows in arrow order; relators are cell
    // boundaries with tree arrows deleted.
    std::vector<arrow_index> generators;
    std::vector<Relator>     relators;
    // After free reduction and elimination through length-1 relators.
    std::vector<std::size_t> remaining;  // indices into `generators`
    std::vector<Relator>     simplified;

    bool is_trivial() const noexcept {
      return remaining.empty();
    }
    // Rank when the simplified presentation has no relators left.
    std::optional<std::size_t> free_rank() const {
      if (!simplified.empty()) {
        return std::nullopt;
      }
      return remaining.size();
    }
  };

  namespace detail {
    inline bool letters_cancel(Letter x, Letter y) {
      return x.generator == y.generator && x.exponent == -y.exponent;
    }

    inline Relator cyclically_reduce_relator(Relator const& r) {
      Relator out;
      for (auto l : r) {
        if (!out.empty() && letters_cancel(out.back(), l)) {
          out.pop_back();
        } else {
          out.push_back(l);
        }
      }
      std::size_t lo = 0, hi = out.size();
      while (hi - lo >= 2 && letters_cancel(out[lo], out[hi - 1])) {
        ++lo;
        --hi;
      }
      return Relator(out.begin() + lo, out.begin() + hi);
    }
  }  // namespace detail

  // Breadth-first spanning tree from the lexicographically least vertex id;
  // neighbours are scanned in arrow order.
  inline GroupPresentation fundamental_group_presentation(TwoComplex const& k, vertex_index base) {
    auto const& g = k.skeleton();
    if (g.number_of_vertices() == 0 || base >= g.number_of_vertices()) {
      throw Error("fundamental_group_presentation: base vertex is not in the complex");
    }
    if (!is_connected(g)) {
      throw Error("fundamental_group_presentation: complex is not connected");
    }
    GroupPresentation pres;
    pres.base = base;
    pres.root = static_cast<vertex_index>(
        std::min_element(g.vertices().begin(), g.vertices().end()) - g.vertices().begin());
    pres.tree_arrow.assign(g.number_of_arrows(), false);
    pres.tree_path.assign(g.number_of_vertices(), Walk::trivial(pres.root));
    std::vector<bool>        seen(g.number_of_vertices(), false);
    std::deque<vertex_index> queue{pres.root};
    seen[pres.root] = true;
    while (!queue.empty()) {
      auto const u = queue.front();
      queue.pop_front();
      std::vector<arrow_index> around = g.outgoing(u);
      around.insert(around.end(), g.incoming(u).begin(), g.incoming(u).end());
      std::sort(around.begin(), around.end());
      for (auto a : around) {
        auto const& x = g.arrow(a);
        auto const  v = x.source == u ? x.target : x.source;
        if (seen[v]) {
          continue;
        }
        seen[v]             = true;
        pres.tree_arrow[a]  = true;
        auto const step     = Walk::of_arrow(g, a, x.source == u ? 1 : -1);
        pres.tree_path[v]   = compose_walks(step, pres.tree_path[u]);
        queue.push_back(v);
      }
    }
    std::vector<std::size_t> gen_of(g.number_of_arrows(), npos);
    for (arrow_index a = 0; a < g.number_of_arrows(); ++a) {
      if (!pres.tree_arrow[a]) {
        gen_of[a] = pres.generators.size();
        pres.generators.push_back(a);
      }
    }
    for (auto const& cell : k.cells()) {
      Relator r;
      for (auto s : cell.boundary.canonical().steps()) {
        if (gen_of[s.arrow] != npos) {
          r.push_back({gen_of[s.arrow], s.exponent});
        }
      }
      pres.relators.push_back(std::move(r));
    }

    // Simplification: free reduction and elimination via length-1 relators.
    std::vector<bool> alive(pres.generators.size(), true);
    auto              rels = pres.relators;
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<Relator> next;
      for (auto const& r : rels) {
        auto red = detail::cyclically_reduce_relator(r);
        if (!red.empty()) {
          next.push_back(std::move(red));
        }
      }
      rels = std::move(next);
      for (auto const& r : rels) {
        if (r.size() == 1) {
          auto const gen = r.front().generator;
          alive[gen]     = false;
          for (auto& other : rels) {
            std::erase_if(other, [gen](Letter l) { return l.generator == gen; });
          }
          changed = true;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < alive.size(); ++i) {
      if (alive[i]) {
        pres.remaining.push_back(i);
      }
    }
    pres.simplified = std::move(rels);
    return pres;
  }

  // Cyclic walk at the base vertex realising a generator: tree path to s(x),
  // the arrow x, tree path back. Freely reduced.
  inline Walk generator_loop(TwoComplex const& k, GroupPresentation const& pres, std::size_t gen) {
    auto const& g   = k.skeleton();
    auto const  a   = pres.generators.at(gen);
    auto const& x   = g.arrow(a);
    auto const  to_base = compose_walks(inverse(pres.tree_path[x.target]) , Walk::of_arrow(g, a));
    auto const  path    = compose_walks(to_base, pres.tree_path[x.source]);
    auto const  from_base = pres.tree_path[pres.base];
    return reduce_walk(compose_walks(compose_walks(from_base, path), inverse(from_base)));
  }

  // A generator whose class has infinite order in the abelianization (over
  // the rationals), if any. Its loop is then not contractible.
  inline std::optional<std::size_t> infinite_order_generator(GroupPresentation const& pres) {
    using Q = boost::rational<std::int64_t>;
    auto const n = pres.generators.size();
    std::vector<std::vector<Q>> rows;
    for (auto const& r : pres.relators) {
      std::vector<Q> row(n, Q(0));
      for (auto l : r) {
        row[l.generator] += l.exponent;
      }
      rows.push_back(std::move(row));
    }
    // Row echelon form; pivot columns span the image of the relators.
    std::vector<std::size_t> pivot_col;
    std::size_t              rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
      std::size_t piv = rank;
      while (piv < rows.size() && rows[piv][col].numerator() == 0) {
        ++piv;
      }
      if (piv == rows.size()) {
        continue;
      }
      std::swap(rows[piv], rows[rank]);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r != rank && rows[r][col].numerator() != 0) {
          auto const f = rows[r][col] / rows[rank][col];
          for (std::size_t c = col; c < n; ++c) {
            rows[r][c] -= f * rows[rank][c];
          }
        }
      }
      pivot_col.push_back(col);
      ++rank;
    }
    if (rank == n) {
      return std::nullopt;
    }
    // e_j for a non-pivot column j lies outside the row space.
    for (std::size_t col = 0; col < n; ++col) {
      if (std::find(pivot_col.begin(), pivot_col.end(), col) == pivot_col.end()) {
        return col;
      }
    }
    return std::nullopt;
  }

  inline std::string to_string(Bigraph const& g, GroupPresentation const& pres, Relator const& r) {
    if (r.empty()) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < r.size(); ++i) {
      out += (i == 0 ? "" : " ") + g.arrow(pres.generators[r[i].generator]).id
             + (r[i].exponent < 0 ? "^-1" : "");
    }
    return out;
  }

}  // namespace galcov
