#pragma once

// Walks, reduction and cycles.
//
// Walks compose right to left: the walk x1 x2 ... xm is stored in that
// written order, starts at s(xm) and ends at e(x1). Consecutive steps satisfy
// s(x_i) = e(x_{i+1}). Everything in the library uses this convention.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bigraph.hpp"

namespace galcov {

  // An arrow or its formal inverse.
  struct Step {
    arrow_index arrow    = 0;
    int         exponent = 1;  // +1 or -1

    auto operator<=>(Step const&) const = default;
  };

  inline Step inverse(Step s) noexcept {
    return {s.arrow, -s.exponent};
  }

  inline bool cancels(Step x, Step y) noexcept {
    return x.arrow == y.arrow && x.exponent == -y.exponent;
  }

  // s(x) for x in the doubled bigraph.
  inline vertex_index tail(Bigraph const& g, Step s) {
    auto const& a = g.arrow(s.arrow);
    return s.exponent > 0 ? a.source : a.target;
  }

  // e(x) for x in the doubled bigraph.
  inline vertex_index head(Bigraph const& g, Step s) {
    auto const& a = g.arrow(s.arrow);
    return s.exponent > 0 ? a.target : a.source;
  }

  struct StepHash {
    std::size_t operator()(Step s) const noexcept {
      return std::hash<std::size_t>()(s.arrow * 2 + (s.exponent < 0 ? 1 : 0));
    }
  };

  struct WordHash {
    std::size_t operator()(std::vector<Step> const& w) const noexcept {
      std::size_t h = w.size();
      for (auto s : w) {
        h ^= StepHash()(s) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return h;
    }
  };

  class Walk {
   public:
    // The trivial walk 1_v.
    explicit Walk(vertex_index base = 0) : source_(base), target_(base) {}

    // Throws if `steps` is empty or not composable in `g`.
    Walk(Bigraph const& g, std::vector<Step> steps) : steps_(std::move(steps)) {
      if (steps_.empty()) {
        throw Error("Walk: a trivial walk needs an explicit base vertex");
      }
      for (auto s : steps_) {
        if (s.arrow >= g.number_of_arrows() || (s.exponent != 1 && s.exponent != -1)) {
          throw Error("Walk: step does not name an arrow of the bigraph");
        }
      }
      for (std::size_t i = 0; i + 1 < steps_.size(); ++i) {
        if (tail(g, steps_[i]) != head(g, steps_[i + 1])) {
          throw Error("Walk: steps " + std::to_string(i + 1) + " and "
                      + std::to_string(i + 2) + " are not composable");
        }
      }
      source_ = tail(g, steps_.back());
      target_ = head(g, steps_.front());
    }

    static Walk trivial(vertex_index v) {
      return Walk(v);
    }

    static Walk of_arrow(Bigraph const& g, arrow_index a, int exponent = 1) {
      return Walk(g, {Step{a, exponent}});
    }

    vertex_index source() const noexcept {
      return source_;
    }
    vertex_index target() const noexcept {
      return target_;
    }
    std::vector<Step> const& steps() const noexcept {
      return steps_;
    }
    std::size_t length() const noexcept {
      return steps_.size();
    }
    bool is_trivial() const noexcept {
      return steps_.empty();
    }
    bool is_cyclic() const noexcept {
      return source_ == target_;
    }

    bool operator==(Walk const&) const = default;

    // Shortlex order on (length, steps), ties broken by endpoints.
    bool shortlex_less(Walk const& that) const {
      if (steps_.size() != that.steps_.size()) {
        return steps_.size() < that.steps_.size();
      }
      if (steps_ != that.steps_) {
        return steps_ < that.steps_;
      }
      return std::tie(source_, target_) < std::tie(that.source_, that.target_);
    }

   private:
    friend Walk make_walk_unchecked(vertex_index, vertex_index, std::vector<Step>);

    vertex_index      source_ = 0;
    vertex_index      target_ = 0;
    std::vector<Step> steps_;
  };

  // For internal use where composability is already known.
  inline Walk make_walk_unchecked(vertex_index source, vertex_index target, std::vector<Step> steps) {
    Walk w(source);
    w.target_ = target;
    w.steps_  = std::move(steps);
    return w;
  }

  // The vertex between x_p and x_{p+1}: position 0 is e(w), position m is s(w).
  inline vertex_index vertex_at(Bigraph const& g, Walk const& w, std::size_t p) {
    if (p > w.length()) {
      throw Error("vertex_at: position out of range");
    }
    return p == 0 ? w.target() : tail(g, w.steps()[p - 1]);
  }

  // w1 w2, defined when s(w1) = e(w2). Runs from s(w2) to e(w1).
  inline Walk compose_walks(Walk const& w1, Walk const& w2) {
    if (w1.source() != w2.target()) {
      throw Error("compose_walks: s(w1) differs from e(w2)");
    }
    auto steps = w1.steps();
    steps.insert(steps.end(), w2.steps().begin(), w2.steps().end());
    return make_walk_unchecked(w2.source(), w1.target(), std::move(steps));
  }

  inline Walk inverse(Walk const& w) {
    std::vector<Step> steps;
    steps.reserve(w.length());
    for (auto it = w.steps().rbegin(); it != w.steps().rend(); ++it) {
      steps.push_back(inverse(*it));
    }
    return make_walk_unchecked(w.target(), w.source(), std::move(steps));
  }

  inline std::vector<Step> reduce_word(std::vector<Step> const& word) {
    std::vector<Step> out;
    out.reserve(word.size());
    for (auto s : word) {
      if (!out.empty() && cancels(out.back(), s)) {
        out.pop_back();
      } else {
        out.push_back(s);
      }
    }
    return out;
  }

  inline bool is_reduced(std::vector<Step> const& word) {
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      if (cancels(word[i], word[i + 1])) {
        return false;
      }
    }
    return true;
  }

  inline bool is_reduced(Walk const& w) {
    return is_reduced(w.steps());
  }

  // Cancels adjacent pairs x x^-1 until none remain. Endpoints are kept.
  inline Walk reduce_walk(Walk const& w) {
    return make_walk_unchecked(w.source(), w.target(), reduce_word(w.steps()));
  }

  inline bool is_cyclically_reduced(Walk const& w) {
    auto const& s = w.steps();
    return w.is_cyclic() && is_reduced(s)
           && (s.size() < 2 || !cancels(s.front(), s.back()));
  }

  // Cyclic walk x_{k+1} ... x_m x_1 ... x_k.
  inline Walk rotate(Bigraph const& g, Walk const& w, std::size_t k) {
    if (!w.is_cyclic()) {
      throw Error("rotate: walk is not cyclic");
    }
    if (w.is_trivial()) {
      return w;
    }
    k %= w.length();
    std::vector<Step> steps(w.steps().begin() + k, w.steps().end());
    steps.insert(steps.end(), w.steps().begin(), w.steps().begin() + k);
    auto const base = tail(g, steps.back());
    return make_walk_unchecked(base, base, std::move(steps));
  }

  // Cyclic-equivalence class of a cyclic walk, stored as its canonical
  // representative: the rotation with the lexicographically least step
  // sequence under (arrow index, exponent).
  class Cycle {
   public:
    Cycle() = default;

    static Cycle of(Bigraph const& g, Walk const& w) {
      if (!w.is_cyclic()) {
        throw Error("Cycle: walk is not cyclic");
      }
      Cycle c;
      c.canonical_ = w;
      for (std::size_t k = 1; k < w.length(); ++k) {
        auto r = rotate(g, w, k);
        if (r.steps() < c.canonical_.steps()) {
          c.canonical_ = std::move(r);
        }
      }
      return c;
    }

    Walk const& canonical() const noexcept {
      return canonical_;
    }
    std::size_t length() const noexcept {
      return canonical_.length();
    }

    bool operator==(Cycle const&) const = default;

    bool operator<(Cycle const& that) const {
      return canonical_.shortlex_less(that.canonical_);
    }

   private:
    Walk canonical_;
  };

  // Reduce, then cancel across the wrap-around until stable.
  inline Cycle cyclically_reduce(Bigraph const& g, Cycle const& c) {
    auto        steps = reduce_word(c.canonical().steps());
    std::size_t lo = 0, hi = steps.size();
    while (hi - lo >= 2 && cancels(steps[lo], steps[hi - 1])) {
      ++lo;
      --hi;
    }
    if (lo == hi) {
      // Everything cancelled; the class is trivial at the vertex the
      // remaining conjugate sits on.
      auto const v = lo == 0 ? c.canonical().source() : tail(g, steps[lo - 1]);
      return Cycle::of(g, Walk::trivial(v));
    }
    std::vector<Step> core(steps.begin() + lo, steps.begin() + hi);
    return Cycle::of(g, Walk(g, std::move(core)));
  }

  // Vertices met by a walk, in order of first appearance along the
  // traversal (from s(w) to e(w)).
  inline std::vector<vertex_index> vertices_on(Bigraph const& g, Walk const& w) {
    std::vector<vertex_index> out;
    auto add = [&out](vertex_index v) {
      if (std::find(out.begin(), out.end(), v) == out.end()) {
        out.push_back(v);
      }
    };
    for (std::size_t p = w.length() + 1; p-- > 0;) {
      add(vertex_at(g, w, p));
    }
    return out;
  }

  // Image of a walk under a bigraph morphism.
  inline Walk map_walk(BigraphMorphism const& f, Walk const& w) {
    std::vector<Step> steps;
    steps.reserve(w.length());
    for (auto s : w.steps()) {
      steps.push_back({f.arrows.at(s.arrow), s.exponent});
    }
    return make_walk_unchecked(f.vertices.at(w.source()), f.vertices.at(w.target()),
                               std::move(steps));
  }

  ////////////////////////////////////////////////////////////////////////
  // Text form: "x1 x2^-1 x3" for non-trivial walks, "1_V" for trivial ones.
  ////////////////////////////////////////////////////////////////////////

  inline std::string to_string(Bigraph const& g, Step s) {
    return g.arrow(s.arrow).id + (s.exponent < 0 ? "^-1" : "");
  }

  inline std::string to_string(Bigraph const& g, Walk const& w, char sep = ' ') {
    if (w.is_trivial()) {
      return "1_" + g.vertex(w.source());
    }
    std::string out;
    for (std::size_t i = 0; i < w.length(); ++i) {
      if (i != 0) {
        out += sep;
      }
      out += to_string(g, w.steps()[i]);
    }
    return out;
  }

  inline std::string to_string(Bigraph const& g, Cycle const& c) {
    return "<" + to_string(g, c.canonical()) + ">";
  }

  inline Step parse_step(Bigraph const& g, std::string_view token) {
    constexpr std::string_view inv = "^-1";
    int exponent = 1;
    if (token.size() > inv.size() && token.substr(token.size() - inv.size()) == inv) {
      token.remove_suffix(inv.size());
      exponent = -1;
    }
    return {g.arrow_index_of(token), exponent};
  }

  inline Walk parse_walk(Bigraph const& g, std::vector<std::string> const& tokens) {
    if (tokens.size() == 1 && tokens[0].rfind("1_", 0) == 0) {
      return Walk::trivial(g.vertex_index_of(tokens[0].substr(2)));
    }
    if (tokens.empty()) {
      throw InputError("empty walk; write 1_V for the trivial walk at V");
    }
    std::vector<Step> steps;
    for (auto const& t : tokens) {
      steps.push_back(parse_step(g, t));
    }
    try {
      return Walk(g, std::move(steps));
    } catch (Error const& e) {
      throw InputError(e.what());
    }
  }

  inline Walk parse_walk(Bigraph const& g, std::string_view text) {
    std::istringstream       in{std::string(text)};
    std::vector<std::string> tokens;
    for (std::string t; in >> t;) {
      tokens.push_back(t);
    }
    return parse_walk(g, tokens);
  }

}  // namespace galcov
