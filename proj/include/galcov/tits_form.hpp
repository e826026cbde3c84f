#pragma once

// Integral quadratic forms of bigraphs and their roots.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bigraph.hpp"

namespace galcov {

  using IntVector = std::vector<std::int64_t>;

  // q(x) = sum_A d_A x_A^2 + sum_{A<B} q_AB x_A x_B. With loops present the
  // diagonal moves off 1: d_A = 1 + #dotted loops - #solid loops at A.
  class UnitForm {
   public:
    UnitForm() = default;

    UnitForm(std::vector<std::string> labels, std::vector<std::int64_t> diagonal,
             std::vector<std::vector<std::int64_t>> off_diagonal)
        : labels_(std::move(labels)), diag_(std::move(diagonal)), off_(std::move(off_diagonal)) {
      auto const n = labels_.size();
      if (diag_.size() != n || off_.size() != n) {
        throw Error("UnitForm: coefficient table does not match the index set");
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (off_[i].size() != n) {
          throw Error("UnitForm: coefficient table does not match the index set");
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (off_[i][j] != off_[j][i]) {
            throw Error("UnitForm: off-diagonal table is not symmetric");
          }
        }
        off_[i][i] = 0;
      }
    }

    std::size_t size() const noexcept {
      return labels_.size();
    }
    std::vector<std::string> const& labels() const noexcept {
      return labels_;
    }
    std::int64_t diagonal(std::size_t i) const {
      return diag_.at(i);
    }
    // q_AB for A != B.
    std::int64_t coefficient(std::size_t i, std::size_t j) const {
      return i == j ? diag_.at(i) : off_.at(i).at(j);
    }
    // Every diagonal coefficient equals 1.
    bool is_unit() const {
      for (auto d : diag_) {
        if (d != 1) {
          return false;
        }
      }
      return true;
    }

    std::int64_t evaluate(IntVector const& x) const {
      check(x);
      std::int64_t out = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) {
          continue;
        }
        out += diag_[i] * x[i] * x[i];
        for (std::size_t j = i + 1; j < x.size(); ++j) {
          out += off_[i][j] * x[i] * x[j];
        }
      }
      return out;
    }

    // 2(x, y) = q(x + y) - q(x) - q(y).
    std::int64_t bilinear2(IntVector const& x, IntVector const& y) const {
      check(x);
      check(y);
      std::int64_t out = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        out += 2 * diag_[i] * x[i] * y[i];
        for (std::size_t j = 0; j < x.size(); ++j) {
          if (j != i) {
            out += off_[i][j] * x[i] * y[j];
          }
        }
      }
      return out;
    }

    // 2(e_i, x).
    std::int64_t pairing_with_unit(std::size_t i, IntVector const& x) const {
      check(x);
      std::int64_t out = 2 * diag_.at(i) * x[i];
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (j != i) {
          out += off_[i][j] * x[j];
        }
      }
      return out;
    }

    IntVector unit_vector(std::size_t i) const {
      IntVector e(size(), 0);
      e.at(i) = 1;
      return e;
    }

   private:
    void check(IntVector const& x) const {
      if (x.size() != size()) {
        throw Error("UnitForm: vector has " + std::to_string(x.size()) + " coordinates, expected "
                    + std::to_string(size()));
      }
    }

    std::vector<std::string>               labels_;
    std::vector<std::int64_t>              diag_;
    std::vector<std::vector<std::int64_t>> off_;
  };

  inline UnitForm form_from_bigraph(Bigraph const& g) {
    auto const n = g.number_of_vertices();
    std::vector<std::int64_t>              diag(n, 1);
    std::vector<std::vector<std::int64_t>> off(n, std::vector<std::int64_t>(n, 0));
    for (auto const& a : g.arrows()) {
      if (a.source >= n || a.target >= n) {
        throw InputError("form_from_bigraph: arrow '" + a.id + "' has a missing endpoint");
      }
      auto const sign = a.is_dotted() ? 1 : -1;
      if (a.source == a.target) {
        diag[a.source] += sign;
      } else {
        off[a.source][a.target] += sign;
        off[a.target][a.source] += sign;
      }
    }
    return UnitForm(g.vertices(), std::move(diag), std::move(off));
  }

  ////////////////////////////////////////////////////////////////////////
  // Box scans
  ////////////////////////////////////////////////////////////////////////

  inline constexpr std::int64_t default_coordinate_bound = 6;

  struct PositivityCertificate {
    std::int64_t             bound = default_coordinate_bound;
    std::optional<IntVector> counterexample;  // least in lex order with q <= 0

    bool positive() const noexcept {
      return !counterexample.has_value();
    }
  };

  namespace detail {
    // Calls f on every 0 < x <= bound in lexicographic order; stops when f
    // returns false.
    template <class F>
    void scan_box(std::size_t n, std::int64_t bound, F&& f) {
      if (n == 0 || bound <= 0) {
        return;
      }
      IntVector x(n, 0);
      for (;;) {
        std::size_t i = n;
        while (i > 0 && x[i - 1] == bound) {
          x[i - 1] = 0;
          --i;
        }
        if (i == 0) {
          return;
        }
        ++x[i - 1];
        if (!f(static_cast<IntVector const&>(x))) {
          return;
        }
      }
    }
  }  // namespace detail

  inline PositivityCertificate is_weakly_positive(UnitForm const& q,
                                                  std::int64_t bound = default_coordinate_bound) {
    PositivityCertificate cert{bound, std::nullopt};
    detail::scan_box(q.size(), bound, [&](IntVector const& x) {
      if (q.evaluate(x) <= 0) {
        cert.counterexample = x;
        return false;
      }
      return true;
    });
    return cert;
  }

  class NotWeaklyPositive : public Error {
   public:
    NotWeaklyPositive(PositivityCertificate cert)
        : Error("form is not weakly positive within bound " + std::to_string(cert.bound)),
          cert_(std::move(cert)) {}
    PositivityCertificate const& certificate() const noexcept {
      return cert_;
    }

   private:
    PositivityCertificate cert_;
  };

  // All 0 < x <= bound with q(x) = 1, lexicographically sorted.
  inline std::vector<IntVector> positive_roots(UnitForm const& q,
                                               std::int64_t bound = default_coordinate_bound) {
    auto cert = is_weakly_positive(q, bound);
    if (!cert.positive()) {
      throw NotWeaklyPositive(std::move(cert));
    }
    std::vector<IntVector> out;
    detail::scan_box(q.size(), bound, [&](IntVector const& x) {
      if (q.evaluate(x) == 1) {
        out.push_back(x);
      }
      return true;
    });
    return out;
  }

  inline bool is_sincere(IntVector const& x) {
    for (auto c : x) {
      if (c < 1) {
        return false;
      }
    }
    return !x.empty();
  }

  inline bool is_positive_root(UnitForm const& q, IntVector const& x) {
    bool nonzero = false;
    for (auto c : x) {
      if (c < 0) {
        return false;
      }
      nonzero = nonzero || c != 0;
    }
    return nonzero && q.evaluate(x) == 1;
  }

  struct Reflection {
    IntVector    result;
    std::int64_t pairing = 0;  // 2(e_i, z)
    // z sincere, q weakly positive and at least two indices: the pairing is
    // then expected in {0, 1, -1}.
    bool guarantee_applies = false;
    bool guarantee_holds   = true;
    bool result_is_positive_root = false;
  };

  // z - 2(e_i, z) e_i. Throws if z is not a root of q.
  inline Reflection reflect(UnitForm const& q, IntVector const& z, std::size_t i,
                            std::optional<bool> weakly_positive = std::nullopt) {
    if (q.evaluate(z) != 1) {
      throw Error("reflect: vector is not a root");
    }
    if (i >= q.size()) {
      throw Error("reflect: index out of range");
    }
    Reflection r;
    r.pairing = q.pairing_with_unit(i, z);
    r.result  = z;
    r.result[i] -= r.pairing;
    if (!weakly_positive) {
      weakly_positive = is_weakly_positive(q).positive();
    }
    r.guarantee_applies       = *weakly_positive && is_sincere(z) && q.size() >= 2;
    r.guarantee_holds         = !r.guarantee_applies || (r.pairing >= -1 && r.pairing <= 1);
    r.result_is_positive_root = is_positive_root(q, r.result);
    return r;
  }

  struct BasicRootCertificate {
    IntVector   root;
    std::size_t first  = 0;  // singular vertices, first < second
    std::size_t second = 0;
  };

  // Checks the certificate conditions for a given root and pair.
  inline bool is_basic_root_certificate(UnitForm const& q, BasicRootCertificate const& c) {
    auto const& x = c.root;
    if (x.size() != q.size() || c.first >= c.second || c.second >= q.size()) {
      return false;
    }
    if (!is_sincere(x) || q.evaluate(x) != 1 || x[c.first] != 1 || x[c.second] != 1) {
      return false;
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
      auto const want = (i == c.first || i == c.second) ? 1 : 0;
      if (q.pairing_with_unit(i, x) != want) {
        return false;
      }
    }
    return true;
  }

  inline std::vector<BasicRootCertificate> basic_roots(UnitForm const& q,
                                                       std::int64_t bound = default_coordinate_bound) {
    std::vector<BasicRootCertificate> out;
    for (auto const& x : positive_roots(q, bound)) {
      if (!is_sincere(x)) {
        continue;
      }
      std::vector<std::size_t> ones;
      bool                     ok = true;
      for (std::size_t i = 0; i < q.size() && ok; ++i) {
        auto const p = q.pairing_with_unit(i, x);
        if (p == 1) {
          ones.push_back(i);
        } else if (p != 0) {
          ok = false;
        }
      }
      if (ok && ones.size() == 2) {
        BasicRootCertificate c{x, ones[0], ones[1]};
        if (is_basic_root_certificate(q, c)) {
          out.push_back(std::move(c));
        }
      }
    }
    return out;
  }

  inline std::string to_string(IntVector const& x) {
    std::string out = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
      out += (i == 0 ? "" : ",") + std::to_string(x[i]);
    }
    return out + ")";
  }

}  // namespace galcov
