#pragma once

// Fixtures, builders and independent oracles shared by the test binaries.

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <galcov/galcov.hpp>

namespace testing_support {

  using namespace galcov;

  inline std::string fixture_path(std::string const& name) {
    return std::string(GALCOV_FIXTURES) + "/" + name;
  }

  inline std::string read_file(std::string const& path) {
    std::ifstream     in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  inline ProblemDocument load_fixture(std::string const& name) {
    return parse_problem(read_file(fixture_path(name)));
  }

  inline ArrowSpec solid(std::string id, std::string s, std::string t) {
    return {std::move(id), std::move(s), std::move(t), Degree::solid};
  }
  inline ArrowSpec dotted(std::string id, std::string s, std::string t) {
    return {std::move(id), std::move(s), std::move(t), Degree::dotted};
  }

  // Chain A_n: vertices 1..n, solid arrows i -> i+1.
  inline Bigraph chain(std::size_t n) {
    std::vector<std::string> vs;
    std::vector<ArrowSpec>   as;
    for (std::size_t i = 1; i <= n; ++i) {
      vs.push_back(std::to_string(i));
      if (i > 1) {
        as.push_back(solid("a" + std::to_string(i - 1), std::to_string(i - 1), std::to_string(i)));
      }
    }
    return Bigraph(vs, as);
  }

  inline TwoComplex loop_complex() {
    return TwoComplex(Bigraph({"V"}, {solid("l", "V", "V")}), {});
  }

  // Two parallel arrows a, b: X -> Y with one cell <b a^-1>.
  inline TwoComplex parallel_with_cell() {
    Bigraph g({"X", "Y"}, {solid("a", "X", "Y"), solid("b", "X", "Y")});
    return TwoComplex(g, {make_cell(g, "C", "b a^-1")});
  }

  inline TwoComplex triangle_complex() {
    Bigraph g({"A", "B", "C"}, {solid("a", "C", "A"), solid("c", "C", "B"), dotted("phi", "B", "A")});
    return TwoComplex(g, {make_cell(g, "T", "phi c a^-1")});
  }

  inline TwoComplex wedge_of_two_loops() {
    return TwoComplex(Bigraph({"V"}, {solid("x", "V", "V"), solid("y", "V", "V")}), {});
  }

  ////////////////////////////////////////////////////////////////////////
  // Oracles
  ////////////////////////////////////////////////////////////////////////

  // The defining double sum over ordered vertex pairs, counting arrows by a
  // fresh scan of the arrow list for every pair.
  inline std::int64_t naive_tits(Bigraph const& g, std::vector<std::int64_t> const& x) {
    std::int64_t total = 0;
    for (std::size_t A = 0; A < g.number_of_vertices(); ++A) {
      for (std::size_t B = 0; B < g.number_of_vertices(); ++B) {
        std::int64_t coeff = A == B ? 1 : 0;
        for (auto const& arr : g.arrows()) {
          if (arr.source == A && arr.target == B) {
            coeff += arr.is_dotted() ? 1 : -1;
          }
        }
        total += coeff * x[A] * x[B];
      }
    }
    return total;
  }

  // Recursive enumeration of 0 <= x <= bound counting nonzero x with
  // q(x) == 1. Coefficients come from one naive arrow scan per ordered pair.
  inline std::size_t brute_force_root_count(Bigraph const& g, std::int64_t bound) {
    auto const n = g.number_of_vertices();
    std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t A = 0; A < n; ++A) {
      for (std::size_t B = 0; B < n; ++B) {
        m[A][B] = A == B ? 1 : 0;
        for (auto const& arr : g.arrows()) {
          if (arr.source == A && arr.target == B) {
            m[A][B] += arr.is_dotted() ? 1 : -1;
          }
        }
      }
    }
    std::vector<std::int64_t> x(n, 0);
    std::size_t               count = 0;
    std::function<void(std::size_t, bool)> rec = [&](std::size_t i, bool nonzero) {
      if (i == n) {
        if (!nonzero) {
          return;
        }
        std::int64_t total = 0;
        for (std::size_t A = 0; A < n; ++A) {
          for (std::size_t B = 0; B < n; ++B) {
            total += m[A][B] * x[A] * x[B];
          }
        }
        count += total == 1;
        return;
      }
      for (std::int64_t c = 0; c <= bound; ++c) {
        x[i] = c;
        rec(i + 1, nonzero || c != 0);
      }
    };
    rec(0, false);
    return count;
  }

  // Every walk (reduced or not) of length 0..max_length starting at `from`.
  inline std::vector<Walk> walks_from(Bigraph const& g, vertex_index from, std::size_t max_length) {
    std::vector<Walk> out{Walk::trivial(from)};
    std::vector<Walk> layer{Walk::trivial(from)};
    for (std::size_t len = 1; len <= max_length; ++len) {
      std::vector<Walk> next;
      for (auto const& w : layer) {
        for (arrow_index a = 0; a < g.number_of_arrows(); ++a) {
          for (int e : {1, -1}) {
            Step s{a, e};
            if (tail(g, s) != w.target()) {
              continue;
            }
            next.push_back(compose_walks(Walk::of_arrow(g, a, e), w));
          }
        }
      }
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  // Every walk of length 0..max_length from any vertex.
  inline std::vector<Walk> all_walks(Bigraph const& g, std::size_t max_length) {
    std::vector<Walk> out;
    for (vertex_index v = 0; v < g.number_of_vertices(); ++v) {
      auto ws = walks_from(g, v, max_length);
      out.insert(out.end(), ws.begin(), ws.end());
    }
    return out;
  }

  // Free reduction by repeatedly deleting the leftmost cancelling pair.
  inline std::vector<Step> naive_reduce(std::vector<Step> steps) {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
        if (steps[i].arrow == steps[i + 1].arrow && steps[i].exponent == -steps[i + 1].exponent) {
          steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(i),
                      steps.begin() + static_cast<std::ptrdiff_t>(i) + 2);
          changed = true;
          break;
        }
      }
    }
    return steps;
  }

  // Vertices "v0".."v{n-1}" and m arrows with random ends and degrees.
  template <class Rng>
  Bigraph random_bigraph(Rng& rng, std::size_t n, std::size_t m, bool allow_dotted = true) {
    std::vector<std::string> vs;
    for (std::size_t i = 0; i < n; ++i) {
      vs.push_back("v" + std::to_string(i));
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::bernoulli_distribution                coin(0.3);
    std::vector<ArrowSpec>                     as;
    for (std::size_t j = 0; j < m; ++j) {
      auto const d = allow_dotted && coin(rng) ? Degree::dotted : Degree::solid;
      as.push_back({"x" + std::to_string(j), vs[pick(rng)], vs[pick(rng)], d});
    }
    return Bigraph(vs, as);
  }

  // A random walk of up to `length` steps from `from`.
  template <class Rng>
  Walk random_walk(Rng& rng, Bigraph const& g, vertex_index from, std::size_t length) {
    Walk w = Walk::trivial(from);
    for (std::size_t i = 0; i < length; ++i) {
      std::vector<Step> options;
      for (arrow_index a = 0; a < g.number_of_arrows(); ++a) {
        for (int e : {1, -1}) {
          if (tail(g, Step{a, e}) == w.target()) {
            options.push_back({a, e});
          }
        }
      }
      if (options.empty()) {
        break;
      }
      auto const s = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      w            = compose_walks(Walk::of_arrow(g, s.arrow, s.exponent), w);
    }
    return w;
  }

  // Cell boundaries of a complex as a multiset of rendered cycles.
  inline std::multiset<std::string> boundary_multiset(TwoComplex const& k) {
    std::multiset<std::string> out;
    for (auto const& c : k.cells()) {
      out.insert(to_string(k.skeleton(), c.boundary));
    }
    return out;
  }

}  // namespace testing_support
