#pragma once

// Elementary homotopies and a budgeted decision procedure for homotopy of
// walks. The word problem for 2-complexes is undecidable in general, so the
// search answers equal, distinct or unknown.

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "complex.hpp"
#include "walk.hpp"

namespace galcov {

  struct ElementaryHomotopy {
    enum class Kind { insert_pair, delete_pair, insert_cell, delete_cell };

    Kind        kind;
    std::size_t position = 0;  // number of written steps before the move
    // Pair moves: the step x of x x^-1.
    Step step{};
    // Cell moves: the inserted or deleted word is rotate(boundary, rotation),
    // inverted when `inverted` is set.
    cell_index  cell     = 0;
    std::size_t rotation = 0;
    bool        inverted = false;

    bool operator==(ElementaryHomotopy const&) const = default;

    static ElementaryHomotopy insert_pair_at(std::size_t p, Step x) {
      return {Kind::insert_pair, p, x};
    }
    static ElementaryHomotopy delete_pair_at(std::size_t p, Step x) {
      return {Kind::delete_pair, p, x};
    }
    static ElementaryHomotopy insert_cell_at(std::size_t p, cell_index c, std::size_t r,
                                             bool inv) {
      return {Kind::insert_cell, p, {}, c, r, inv};
    }
    static ElementaryHomotopy delete_cell_at(std::size_t p, cell_index c, std::size_t r,
                                             bool inv) {
      return {Kind::delete_cell, p, {}, c, r, inv};
    }
  };

  inline ElementaryHomotopy inverse(ElementaryHomotopy m) {
    using K = ElementaryHomotopy::Kind;
    switch (m.kind) {
      case K::insert_pair: m.kind = K::delete_pair; break;
      case K::delete_pair: m.kind = K::insert_pair; break;
      case K::insert_cell: m.kind = K::delete_cell; break;
      case K::delete_cell: m.kind = K::insert_cell; break;
    }
    return m;
  }

  // The cyclic word a cell move inserts or deletes.
  inline Walk cell_move_word(TwoComplex const& k, cell_index c, std::size_t rotation, bool inverted) {
    if (c >= k.number_of_cells()) {
      throw Error("homotopy: unknown cell index");
    }
    auto const& w = k.cell(c).boundary.canonical();
    if (!w.is_trivial() && rotation >= w.length()) {
      throw Error("homotopy: rotation out of range");
    }
    auto r = rotate(k.skeleton(), w, rotation);
    return inverted ? inverse(r) : r;
  }

  // Applies one move; throws if it is not applicable at the stated position.
  inline Walk apply_elementary_homotopy(TwoComplex const& k, Walk const& w, ElementaryHomotopy const& m) {
    using K       = ElementaryHomotopy::Kind;
    auto const& g = k.skeleton();
    auto const& s = w.steps();
    if (m.position > s.size()) {
      throw Error("homotopy: position out of range");
    }
    auto const v = vertex_at(g, w, m.position);
    auto       steps = s;
    switch (m.kind) {
      case K::insert_pair: {
        if (m.step.arrow >= g.number_of_arrows() || head(g, m.step) != v) {
          throw Error("homotopy: x x^-1 is not based at the insertion vertex");
        }
        steps.insert(steps.begin() + m.position, {m.step, inverse(m.step)});
        break;
      }
      case K::delete_pair: {
        if (m.position + 2 > s.size() || s[m.position] != m.step
            || s[m.position + 1] != inverse(m.step)) {
          throw Error("homotopy: no x x^-1 at the deletion position");
        }
        steps.erase(steps.begin() + m.position, steps.begin() + m.position + 2);
        break;
      }
      case K::insert_cell: {
        auto const word = cell_move_word(k, m.cell, m.rotation, m.inverted);
        if (word.source() != v) {
          throw Error("homotopy: cell boundary is not based at the insertion vertex");
        }
        steps.insert(steps.begin() + m.position, word.steps().begin(), word.steps().end());
        break;
      }
      case K::delete_cell: {
        auto const  word = cell_move_word(k, m.cell, m.rotation, m.inverted);
        auto const& ws   = word.steps();
        if (word.source() != v || m.position + ws.size() > s.size()
            || !std::equal(ws.begin(), ws.end(), s.begin() + m.position)) {
          throw Error("homotopy: cell boundary does not occur at the deletion position");
        }
        steps.erase(steps.begin() + m.position, steps.begin() + m.position + ws.size());
        break;
      }
    }
    return make_walk_unchecked(w.source(), w.target(), std::move(steps));
  }

  inline Walk replay(TwoComplex const& k, Walk w, std::vector<ElementaryHomotopy> const& moves) {
    for (auto const& m : moves) {
      w = apply_elementary_homotopy(k, w, m);
    }
    return w;
  }

  // Free reduction recorded as pair deletions.
  inline std::vector<ElementaryHomotopy> reduction_moves(std::vector<Step> steps) {
    std::vector<ElementaryHomotopy> moves;
    std::size_t                     i = 0;
    while (i + 1 < steps.size()) {
      if (cancels(steps[i], steps[i + 1])) {
        moves.push_back(ElementaryHomotopy::delete_pair_at(i, steps[i]));
        steps.erase(steps.begin() + i, steps.begin() + i + 2);
        i = i == 0 ? 0 : i - 1;
      } else {
        ++i;
      }
    }
    return moves;
  }

  struct HomotopyVerdict {
    enum class Outcome { equal, distinct, unknown };

    Outcome outcome = Outcome::unknown;
    // Present when outcome is equal; replaying it turns the first walk into
    // the second.
    std::optional<std::vector<ElementaryHomotopy>> witness;
    std::size_t                                    states = 0;
  };

  inline char const* to_string(HomotopyVerdict::Outcome o) noexcept {
    switch (o) {
      case HomotopyVerdict::Outcome::equal: return "equal";
      case HomotopyVerdict::Outcome::distinct: return "distinct";
      default: return "unknown";
    }
  }

  namespace detail {
    struct CellInsertion {
      cell_index        cell;
      std::size_t       rotation;
      bool              inverted;
      vertex_index      base;
      std::vector<Step> word;
    };

    // Every rotation of every boundary and of its inverse, deduplicated by
    // word.
    inline std::vector<CellInsertion> cell_insertions(TwoComplex const& k) {
      std::vector<CellInsertion> out;
      std::set<std::vector<Step>> seen;
      for (cell_index c = 0; c < k.number_of_cells(); ++c) {
        auto const n = std::max<std::size_t>(1, k.cell(c).boundary.length());
        for (bool inv : {false, true}) {
          for (std::size_t r = 0; r < n; ++r) {
            auto w = cell_move_word(k, c, r, inv);
            if (w.is_trivial() || !seen.insert(w.steps()).second) {
              continue;
            }
            out.push_back({c, r, inv, w.source(), w.steps()});
          }
        }
      }
      return out;
    }

    struct SearchNode {
      std::vector<Step> parent;
      std::size_t       position  = 0;
      std::size_t       insertion = npos;  // npos marks a root
    };

    using SearchTree = std::unordered_map<std::vector<Step>, SearchNode, WordHash>;

    // Moves turning `from` into the reduced word obtained by inserting a
    // boundary at `position` and reducing.
    inline std::vector<ElementaryHomotopy> expand_edge(TwoComplex const&    k,
                                                       Walk const&          from,
                                                       std::size_t          position,
                                                       CellInsertion const& ins) {
      std::vector<ElementaryHomotopy> moves{
          ElementaryHomotopy::insert_cell_at(position, ins.cell, ins.rotation, ins.inverted)};
      auto const grown = apply_elementary_homotopy(k, from, moves.front());
      auto       red   = reduction_moves(grown.steps());
      moves.insert(moves.end(), red.begin(), red.end());
      return moves;
    }

    // Chain of words from the root of `tree` to `word`.
    inline std::vector<std::vector<Step>> path_to(SearchTree const& tree, std::vector<Step> word) {
      std::vector<std::vector<Step>> path{word};
      while (tree.at(word).insertion != npos) {
        word = tree.at(word).parent;
        path.push_back(word);
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
  }  // namespace detail

  // Bidirectional breadth-first search over reduced walks; a state is expanded
  // by inserting a cell boundary rotation at any position and reducing.
  // `budget` caps the number of distinct states stored on both sides.
  inline HomotopyVerdict homotopy_equivalent(TwoComplex const& k, Walk const& w1, Walk const& w2,
                                             std::size_t budget = 10000) {
    using Outcome = HomotopyVerdict::Outcome;
    auto const& g = k.skeleton();
    HomotopyVerdict verdict;
    if (w1.source() != w2.source() || w1.target() != w2.target()) {
      verdict.outcome = Outcome::distinct;
      return verdict;
    }
    auto const insertions = detail::cell_insertions(k);
    auto const r1         = reduce_walk(w1);
    auto const r2         = reduce_walk(w2);

    detail::SearchTree                              tree[2];
    std::deque<std::vector<Step>>                   queue[2];
    std::optional<std::vector<Step>>                meet;
    tree[0].emplace(r1.steps(), detail::SearchNode{});
    tree[1].emplace(r2.steps(), detail::SearchNode{});
    queue[0].push_back(r1.steps());
    queue[1].push_back(r2.steps());
    if (r1.steps() == r2.steps()) {
      meet = r1.steps();
    }

    auto walk_of = [&](std::vector<Step> const& s) {
      return make_walk_unchecked(w1.source(), w1.target(), s);
    };

    bool exhausted = false;
    while (!meet) {
      if (queue[0].empty() || queue[1].empty()) {
        exhausted = true;
        break;
      }
      if (tree[0].size() + tree[1].size() >= budget) {
        break;
      }
      int const side  = queue[0].size() <= queue[1].size() ? 0 : 1;
      auto      word  = std::move(queue[side].front());
      queue[side].pop_front();
      auto const current = walk_of(word);
      for (std::size_t p = 0; p <= word.size() && !meet; ++p) {
        auto const v = vertex_at(g, current, p);
        for (std::size_t i = 0; i < insertions.size() && !meet; ++i) {
          auto const& ins = insertions[i];
          if (ins.base != v) {
            continue;
          }
          std::vector<Step> next(word.begin(), word.begin() + p);
          next.insert(next.end(), ins.word.begin(), ins.word.end());
          next.insert(next.end(), word.begin() + p, word.end());
          next = reduce_word(next);
          if (tree[side].count(next) != 0) {
            continue;
          }
          tree[side].emplace(next, detail::SearchNode{word, p, i});
          if (tree[1 - side].count(next) != 0) {
            meet = next;
          } else {
            queue[side].push_back(std::move(next));
          }
        }
      }
    }
    verdict.states = tree[0].size() + tree[1].size();
    if (!meet) {
      verdict.outcome = exhausted ? Outcome::distinct : Outcome::unknown;
      return verdict;
    }

    // Assemble the witness: reduce w1, walk the forward tree to the meeting
    // word, walk the backward tree in reverse, then undo the reduction of w2.
    std::vector<ElementaryHomotopy> moves = reduction_moves(w1.steps());
    auto const                      forward = detail::path_to(tree[0], *meet);
    for (std::size_t i = 1; i < forward.size(); ++i) {
      auto const& node = tree[0].at(forward[i]);
      auto edge = detail::expand_edge(k, walk_of(forward[i - 1]), node.position,
                                      insertions[node.insertion]);
      moves.insert(moves.end(), edge.begin(), edge.end());
    }
    auto const backward = detail::path_to(tree[1], *meet);
    for (std::size_t i = backward.size(); i-- > 1;) {
      auto const& node = tree[1].at(backward[i]);
      auto edge = detail::expand_edge(k, walk_of(backward[i - 1]), node.position,
                                      insertions[node.insertion]);
      for (auto it = edge.rbegin(); it != edge.rend(); ++it) {
        moves.push_back(inverse(*it));
      }
    }
    auto const undo = reduction_moves(w2.steps());
    for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
      moves.push_back(inverse(*it));
    }
    verdict.outcome = Outcome::equal;
    verdict.witness = std::move(moves);
    return verdict;
  }

  // Homotopy against the trivial walk at the cycle's base.
  inline HomotopyVerdict is_contractible(TwoComplex const& k, Cycle const& c, std::size_t budget = 10000) {
    auto const& w = c.canonical();
    return homotopy_equivalent(k, w, Walk::trivial(w.source()), budget);
  }

}  // namespace galcov
