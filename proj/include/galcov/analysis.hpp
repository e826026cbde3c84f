#pragma once

// Schurity diagnostics: dotted loops, weak positivity of the Tits form, and
// the search for standard minimal non-schurian restrictions.

#include <optional>
#include <string>
#include <vector>

#include "bimodule.hpp"
#include "covering.hpp"
#include "presentation.hpp"
#include "tits_form.hpp"

namespace galcov {

  inline constexpr char const* candidate_caveat =
      "A candidate satisfies the combinatorial conditions required of a standard minimal "
      "non-schurian restriction with the stated singular vertices. Minimality and "
      "non-schurity are representation-theoretic and are not verified.";

  // Fails with a vector when q is not weakly positive within the bound; a
  // pass is inconclusive for schurity.
  inline PositivityCertificate schurity_necessary_check(BimoduleProblem const& p,
                                                        std::int64_t bound = default_coordinate_bound) {
    return is_weakly_positive(form_from_bigraph(p.bigraph), bound);
  }

  struct StandardCandidate {
    std::vector<vertex_index> vertices;  // S, in the problem's vertex order
    vertex_index              first  = 0;  // singular pair
    vertex_index              second = 0;
    IntVector                 root;         // indexed like `vertices`
    std::vector<arrow_index>  annihilator;  // of the restriction, as arrows of the problem
  };

  struct CandidateSearch {
    std::vector<StandardCandidate> candidates;
    std::size_t                    subsets_examined = 0;
    bool                           budget_exhausted = false;
  };

  struct CandidateOptions {
    std::size_t  subset_budget = 100000;
    std::int64_t bound         = default_coordinate_bound;
  };

  namespace detail {
    // Next k-subset of {0..n-1} in lexicographic order.
    inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
      auto const k = c.size();
      for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
          ++c[i];
          for (std::size_t j = i + 1; j < k; ++j) {
            c[j] = c[j - 1] + 1;
          }
          return true;
        }
      }
      return false;
    }

    inline std::optional<StandardCandidate> examine_subset(BimoduleProblem const&           p,
                                                           std::vector<vertex_index> const& S,
                                                           std::int64_t                     bound) {
      auto const sub = restrict_problem(p, S);
      if (!is_connected(sub.bigraph, Connectivity::solid_only)) {
        return std::nullopt;
      }
      auto const ann = annihilator(sub);
      if (ann.empty()) {
        return std::nullopt;
      }
      auto const red = reduce_problem(sub);
      auto const q   = form_from_bigraph(red.bigraph);
      if (!is_weakly_positive(q, bound).positive()) {
        return std::nullopt;
      }
      for (auto const& cert : basic_roots(q, bound)) {
        bool between = true;
        for (auto a : ann) {
          auto const& x = sub.bigraph.arrow(a);
          between       = between
                    && ((x.source == cert.first && x.target == cert.second)
                        || (x.source == cert.second && x.target == cert.first));
        }
        if (!between) {
          continue;
        }
        StandardCandidate c{S, S[cert.first], S[cert.second], cert.root, {}};
        for (auto a : ann) {
          c.annihilator.push_back(p.bigraph.arrow_index_of(sub.bigraph.arrow(a).id));
        }
        return c;
      }
      return std::nullopt;
    }
  }  // namespace detail

  // Subsets of size >= 3 in size-ascending, then lexicographic order.
  inline CandidateSearch find_standard_candidates(BimoduleProblem const& p,
                                                  CandidateOptions const& options = {}) {
    CandidateSearch out;
    auto const      n = p.bigraph.number_of_vertices();
    for (std::size_t k = 3; k <= n; ++k) {
      std::vector<std::size_t> S(k);
      std::iota(S.begin(), S.end(), std::size_t{0});
      do {
        if (out.subsets_examined == options.subset_budget) {
          out.budget_exhausted = true;
          return out;
        }
        ++out.subsets_examined;
        if (auto c = detail::examine_subset(p, S, options.bound)) {
          out.candidates.push_back(std::move(*c));
        }
      } while (detail::next_combination(S, n));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Simple connectivity
  ////////////////////////////////////////////////////////////////////////

  struct SimplyConnectedReport {
    enum class Answer { yes, no, unknown };
    Answer              answer = Answer::unknown;
    std::string         reason;
    std::optional<Walk> witness;  // non-contractible cyclic walk for `no`
  };

  inline char const* to_string(SimplyConnectedReport::Answer a) noexcept {
    switch (a) {
      case SimplyConnectedReport::Answer::yes: return "yes";
      case SimplyConnectedReport::Answer::no: return "no";
      case SimplyConnectedReport::Answer::unknown: return "unknown";
    }
    return "unknown";
  }

  inline SimplyConnectedReport simply_connected(TwoComplex const& k, std::size_t radius = 4,
                                                std::size_t budget = 20000) {
    using Answer = SimplyConnectedReport::Answer;
    if (k.skeleton().number_of_vertices() == 0 || !is_connected(k.skeleton())) {
      throw Error("simply_connected: complex is not connected");
    }
    auto const pres = fundamental_group_presentation(k, 0);
    if (pres.is_trivial()) {
      return {Answer::yes, "presentation simplifies to the trivial group", std::nullopt};
    }
    if (auto gen = infinite_order_generator(pres)) {
      return {Answer::no,
              "generator '" + k.skeleton().arrow(pres.generators[*gen]).id
                  + "' has infinite order in the abelianization",
              generator_loop(k, pres, *gen)};
    }
    try {
      UniversalCoverOptions options;
      options.max_vertices = budget;
      auto const u         = universal_cover(k, 0, radius, options);
      if (u.is_isomorphic_to_base()) {
        return {Answer::yes,
                "universal cover at radius " + std::to_string(radius) + " is isomorphic to the base",
                std::nullopt};
      }
    } catch (Error const&) {
    }
    return {Answer::unknown, "neither the presentation nor the cover at radius "
                                 + std::to_string(radius) + " settles the question",
            std::nullopt};
  }

  inline SimplyConnectedReport simply_connected(BimoduleProblem const& p, std::size_t radius = 4,
                                                std::size_t budget = 20000) {
    return simply_connected(associated_complex(p), radius, budget);
  }

  ////////////////////////////////////////////////////////////////////////
  // Diagnosis
  ////////////////////////////////////////////////////////////////////////

  struct DiagnoseOptions {
    std::int64_t bound         = default_coordinate_bound;
    std::size_t  subset_budget = 100000;
    std::size_t  radius        = 4;
    std::size_t  cover_budget  = 20000;
  };

  struct Diagnosis {
    enum class Verdict { dotted_loop, weakly_positive_failed, standard_candidate, no_obstruction };

    Verdict                              verdict = Verdict::no_obstruction;
    std::int64_t                         bound   = default_coordinate_bound;
    std::vector<arrow_index>             loops;
    std::optional<IntVector>             counterexample;
    CandidateSearch                      search;
    std::optional<SimplyConnectedReport> simply_connected;
  };

  inline char const* to_string(Diagnosis::Verdict v) noexcept {
    switch (v) {
      case Diagnosis::Verdict::dotted_loop: return "dotted-loop";
      case Diagnosis::Verdict::weakly_positive_failed: return "weakly-positive-failed";
      case Diagnosis::Verdict::standard_candidate: return "standard-min-nonschurian-candidate";
      case Diagnosis::Verdict::no_obstruction: return "no-obstruction-found";
    }
    return "no-obstruction-found";
  }

  inline Diagnosis diagnose(BimoduleProblem const& p, DiagnoseOptions const& options = {}) {
    require_valid(p);
    if (p.bigraph.number_of_vertices() == 0 || !is_connected(p.bigraph)) {
      throw InputError("diagnose: problem is not connected");
    }
    Diagnosis d;
    d.bound = options.bound;
    d.loops = dotted_loops(p);
    if (!d.loops.empty()) {
      d.verdict = Diagnosis::Verdict::dotted_loop;
      return d;
    }
    auto cert = schurity_necessary_check(p, options.bound);
    if (!cert.positive()) {
      d.verdict        = Diagnosis::Verdict::weakly_positive_failed;
      d.counterexample = cert.counterexample;
      return d;
    }
    d.search = find_standard_candidates(p, {options.subset_budget, options.bound});
    if (!d.search.candidates.empty()) {
      d.verdict = Diagnosis::Verdict::standard_candidate;
      return d;
    }
    d.verdict          = Diagnosis::Verdict::no_obstruction;
    d.simply_connected = simply_connected(p, options.radius, options.cover_budget);
    return d;
  }

}  // namespace galcov
