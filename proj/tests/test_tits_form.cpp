#include <catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace galcov;
using namespace testing_support;

namespace {

  Bigraph fork_bigraph() {
    return Bigraph({"A", "B", "C"}, {solid("a", "C", "A"), solid("c", "C", "B")});
  }

  IntVector random_vector(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<std::int64_t> d(-7, 7);
    IntVector                                   x(n);
    for (auto& c : x) {
      c = d(rng);
    }
    return x;
  }

}  // namespace

TEST_CASE("coefficients of bigraph forms") {
  auto const empty = form_from_bigraph(Bigraph({"P", "Q", "R"}, {}));
  CHECK(empty.evaluate({1, 2, 3}) == 14);
  CHECK(empty.is_unit());

  auto const q = form_from_bigraph(fork_bigraph());
  CHECK(q.coefficient(0, 2) == -1);
  CHECK(q.coefficient(1, 2) == -1);
  CHECK(q.coefficient(0, 1) == 0);
  CHECK(q.evaluate({1, 1, 1}) == 1);
  CHECK(q.evaluate({2, 0, 1}) == 3);

  auto const loop = form_from_bigraph(Bigraph({"V"}, {solid("l", "V", "V")}));
  CHECK(loop.diagonal(0) == 0);
  CHECK(loop.evaluate({1}) == 0);
  CHECK_FALSE(loop.is_unit());

  auto const a3 = form_from_bigraph(chain(3));
  CHECK(a3.evaluate({1, 1, 1}) == 1);

  // Parallel arrows add up and dotted arrows count positively.
  Bigraph mixed({"X", "Y"}, {solid("s", "X", "Y"), solid("t", "Y", "X"), dotted("d", "X", "Y")});
  CHECK(form_from_bigraph(mixed).coefficient(0, 1) == -1);
  CHECK_THROWS(q.evaluate({1, 1}));
}

TEST_CASE("evaluate agrees with the naive double sum") {
  std::mt19937 rng(20);
  std::vector<Bigraph> graphs{fork_bigraph(), chain(5), Bigraph({"V"}, {solid("l", "V", "V"), dotted("m", "V", "V")}),
                              load_fixture("joint.gcp").problem.bigraph,
                              load_fixture("lambda.gcp").problem.bigraph};
  for (auto const& g : graphs) {
    auto const q = form_from_bigraph(g);
    for (int trial = 0; trial < 1000; ++trial) {
      auto const x = random_vector(rng, g.number_of_vertices());
      REQUIRE(q.evaluate(x) == naive_tits(g, x));
      auto const y = random_vector(rng, g.number_of_vertices());
      CHECK(q.bilinear2(x, x) == 2 * q.evaluate(x));
      CHECK(q.bilinear2(x, y) == q.bilinear2(y, x));
    }
  }
}

TEST_CASE("doubled pairing") {
  auto const q = form_from_bigraph(fork_bigraph());
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(q.bilinear2(q.unit_vector(i), q.unit_vector(i)) == 2);
  }
  CHECK(q.bilinear2(q.unit_vector(0), {1, 1, 1}) == 1);
  CHECK(q.bilinear2(q.unit_vector(2), {1, 1, 1}) == 0);
  CHECK(q.pairing_with_unit(0, {1, 1, 1}) == 1);
}

TEST_CASE("weak positivity with least counterexamples") {
  auto const fork_cert = is_weakly_positive(form_from_bigraph(fork_bigraph()));
  CHECK(fork_cert.positive());
  CHECK(fork_cert.bound == 6);

  auto const loop = is_weakly_positive(form_from_bigraph(Bigraph({"V"}, {solid("l", "V", "V")})));
  REQUIRE(loop.counterexample);
  CHECK(*loop.counterexample == IntVector{1});

  auto const par = is_weakly_positive(
      form_from_bigraph(Bigraph({"X", "Y"}, {solid("p", "X", "Y"), solid("q", "X", "Y")})));
  REQUIRE(par.counterexample);
  CHECK(*par.counterexample == IntVector{1, 1});

  // Kronecker-like form with three parallel arrows: q(1,1) < 0.
  auto const k3 = form_from_bigraph(
      Bigraph({"X", "Y"}, {solid("p", "X", "Y"), solid("q", "X", "Y"), solid("r", "X", "Y")}));
  auto const c3 = is_weakly_positive(k3);
  REQUIRE(c3.counterexample);
  CHECK(*c3.counterexample == IntVector{1, 1});
  CHECK(k3.evaluate(*c3.counterexample) == -1);

  // The extended D4 star has a radical vector outside the bound-1 box.
  Bigraph d4t({"Z", "P", "Q", "R", "S"},
              {solid("p", "P", "Z"), solid("q", "Q", "Z"), solid("r", "R", "Z"), solid("s", "S", "Z")});
  auto const q = form_from_bigraph(d4t);
  CHECK(is_weakly_positive(q, 1).positive());
  auto const c = is_weakly_positive(q, 2);
  REQUIRE(c.counterexample);
  CHECK(*c.counterexample == IntVector{2, 1, 1, 1, 1});
  CHECK(c.bound == 2);
}

TEST_CASE("positive roots") {
  CHECK(positive_roots(form_from_bigraph(Bigraph({"V"}, {}))) == std::vector<IntVector>{{1}});

  auto const a3 = positive_roots(form_from_bigraph(chain(3)));
  CHECK(a3 == std::vector<IntVector>{{0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}});

  auto const f = positive_roots(form_from_bigraph(fork_bigraph()));
  CHECK(f.size() == 6);
  CHECK(std::find(f.begin(), f.end(), IntVector{1, 1, 1}) != f.end());
  CHECK(std::is_sorted(f.begin(), f.end()));

  try {
    positive_roots(form_from_bigraph(Bigraph({"V"}, {solid("l", "V", "V")})));
    FAIL("expected a refusal");
  } catch (NotWeaklyPositive const& e) {
    CHECK(*e.certificate().counterexample == IntVector{1});
  }
}

TEST_CASE("chain root counts match the brute-force scan") {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto const g     = chain(n);
    auto const roots = positive_roots(form_from_bigraph(g));
    CHECK(roots.size() == n * (n + 1) / 2);
    CHECK(roots.size() == brute_force_root_count(g, 6));
  }
}

TEST_CASE("reflections") {
  auto const q = form_from_bigraph(fork_bigraph());
  auto const r = reflect(q, {1, 1, 1}, 0);
  CHECK(r.pairing == 1);
  CHECK(r.result == IntVector{0, 1, 1});
  CHECK(r.result_is_positive_root);
  CHECK(r.guarantee_applies);
  CHECK(r.guarantee_holds);

  auto const a3 = form_from_bigraph(chain(3));
  auto const s  = reflect(a3, {1, 1, 1}, 1);
  CHECK(s.pairing == 0);
  CHECK(s.result == IntVector{1, 1, 1});

  // e_1 reflected at 1 becomes -e_1, which is a root but not positive.
  auto const neg = reflect(a3, {1, 0, 0}, 0);
  CHECK(neg.result == IntVector{-1, 0, 0});
  CHECK_FALSE(neg.result_is_positive_root);
  CHECK_FALSE(neg.guarantee_applies);

  CHECK_THROWS(reflect(a3, {1, 0, 1}, 0));
}

TEST_CASE("reflection closure on the fixture forms") {
  for (auto const& name : {"chain_a3.gcp", "chain_a5.gcp", "fork.gcp", "fork_phi.gcp", "joint.gcp",
                           "star_d4.gcp", "star_d5.gcp", "dotted_circle.gcp"}) {
    INFO(name);
    auto const q = form_from_bigraph(load_fixture(name).problem.bigraph);
    REQUIRE(is_weakly_positive(q).positive());
    auto const roots = positive_roots(q);
    for (auto const& z : roots) {
      for (std::size_t i = 0; i < q.size(); ++i) {
        auto const r = reflect(q, z, i, true);
        CHECK(q.evaluate(r.result) == 1);
        CHECK(r.guarantee_holds);
        bool nonnegative = std::all_of(r.result.begin(), r.result.end(), [](auto c) { return c >= 0; });
        bool in_box = std::all_of(r.result.begin(), r.result.end(), [](auto c) { return c <= 6; });
        if (nonnegative && in_box && r.result != IntVector(q.size(), 0)) {
          CHECK(std::binary_search(roots.begin(), roots.end(), r.result));
        }
      }
    }
  }
}

TEST_CASE("basic roots") {
  auto const f = basic_roots(form_from_bigraph(fork_bigraph()));
  REQUIRE(f.size() == 1);
  CHECK(f[0].root == IntVector{1, 1, 1});
  CHECK(f[0].first == 0);
  CHECK(f[0].second == 1);

  auto const a3 = basic_roots(form_from_bigraph(chain(3)));
  REQUIRE(a3.size() == 1);
  CHECK(a3[0].first == 0);
  CHECK(a3[0].second == 2);

  CHECK(basic_roots(form_from_bigraph(Bigraph({"V"}, {}))).empty());

  // The fork with its dotted arrow has q(1,1,1) = 2, so no sincere root.
  CHECK(basic_roots(form_from_bigraph(load_fixture("fork_phi.gcp").problem.bigraph)).empty());

  auto const q = form_from_bigraph(fork_bigraph());
  CHECK_FALSE(is_basic_root_certificate(q, {{1, 1, 1}, 0, 2}));
  CHECK_FALSE(is_basic_root_certificate(q, {{1, 1, 1}, 1, 0}));
  CHECK(is_basic_root_certificate(q, {{1, 1, 1}, 0, 1}));
}

TEST_CASE("vector rendering") {
  CHECK(to_string(IntVector{1, -2, 3}) == "(1,-2,3)");
  CHECK(to_string(IntVector{}) == "()");
}
