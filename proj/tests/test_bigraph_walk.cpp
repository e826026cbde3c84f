#include <catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace galcov;
using namespace testing_support;

TEST_CASE("validate_bigraph reports malformed input by name") {
  CHECK(validate_bigraph(Bigraph({"V"}, {})).empty());
  CHECK(validate_bigraph(chain(3)).empty());

  auto report = validate_bigraph(Bigraph({"A"}, {solid("x", "A", "Q")}));
  REQUIRE(report.size() == 1);
  CHECK(report[0].rule == "dangling-target");
  CHECK(report[0].message.find("'x'") != std::string::npos);

  report = validate_bigraph(Bigraph({"A", "A"}, {solid("x", "A", "A"), solid("x", "A", "A")}));
  REQUIRE(report.size() == 2);
  CHECK(report[0].rule == "duplicate-vertex");
  CHECK(report[1].rule == "duplicate-arrow");
  CHECK_THROWS_AS(require_well_formed(Bigraph({"A"}, {solid("x", "Z", "A")})), ValidationError);
}

TEST_CASE("classify_shape") {
  auto loop = classify_shape(Bigraph({"V"}, {solid("l", "V", "V")}));
  CHECK(loop.kind == ShapeKind::loop);

  auto circle = classify_shape(
      Bigraph({"1", "2", "3"}, {solid("a", "1", "2"), solid("b", "2", "3"), solid("c", "3", "1")}));
  CHECK(circle.kind == ShapeKind::circle);
  CHECK(circle.size == 3);

  CHECK(classify_shape(chain(3)).kind == ShapeKind::chain);
  CHECK(classify_shape(Bigraph({"V"}, {solid("x", "V", "V"), solid("y", "V", "V")})).kind
        == ShapeKind::other);
  CHECK_THROWS(classify_shape(Bigraph({"A", "B"}, {})));
}

TEST_CASE("connected_components in both modes") {
  CHECK(connected_components(chain(3)).size() == 1);
  CHECK(connected_components(chain(3), Connectivity::solid_only).size() == 1);

  Bigraph dot({"A", "B"}, {dotted("f", "A", "B")});
  CHECK(connected_components(dot).size() == 1);
  CHECK(connected_components(dot, Connectivity::solid_only).size() == 2);

  auto parts = connected_components(Bigraph({"A", "B", "C"}, {}));
  REQUIRE(parts.size() == 3);
  CHECK(parts[2] == std::vector<vertex_index>{2});
}

TEST_CASE("walks compose right to left") {
  auto const g = chain(3);  // a1: 1->2, a2: 2->3
  auto const a = Walk::of_arrow(g, g.arrow_index_of("a1"));
  auto const b = Walk::of_arrow(g, g.arrow_index_of("a2"));
  auto const ba = compose_walks(b, a);
  CHECK(g.vertex(ba.source()) == "1");
  CHECK(g.vertex(ba.target()) == "3");
  CHECK(to_string(g, ba) == "a2 a1");
  CHECK(ba == parse_walk(g, "a2 a1"));

  CHECK(compose_walks(Walk::trivial(ba.target()), ba) == ba);
  CHECK(compose_walks(ba, Walk::trivial(ba.source())) == ba);
  CHECK_THROWS(compose_walks(a, b));
  CHECK_THROWS_AS(parse_walk(g, "a1 a2"), InputError);
}

TEST_CASE("reduce_walk") {
  Bigraph g({"X", "Y", "Z"}, {solid("a", "X", "Y"), solid("b", "Y", "Z")});
  auto const aa = parse_walk(g, "a a^-1");
  auto const r  = reduce_walk(aa);
  CHECK(r.is_trivial());
  CHECK(r.source() == g.vertex_index_of("Y"));

  auto const nested = parse_walk(g, "b a a^-1 b^-1");
  CHECK(reduce_walk(nested) == Walk::trivial(g.vertex_index_of("Z")));

  auto const reduced = parse_walk(g, "b a");
  CHECK(reduce_walk(reduced) == reduced);
  CHECK(is_reduced(reduced));
  CHECK_FALSE(is_reduced(nested));
}

TEST_CASE("cycles and cyclic reduction") {
  Bigraph g({"X", "Y"}, {solid("x", "X", "Y"), solid("l", "Y", "Y"), solid("m", "Y", "Y")});
  auto const w   = parse_walk(g, "l m");
  auto const rot = rotate(g, w, 1);
  CHECK(to_string(g, rot) == "m l");
  CHECK(Cycle::of(g, w) == Cycle::of(g, rot));

  // <x w x^-1> reduces to <w>.
  auto const conj = Cycle::of(g, parse_walk(g, "x^-1 l m x"));
  CHECK(cyclically_reduce(g, conj) == Cycle::of(g, w));

  auto const trivial = Cycle::of(g, Walk::trivial(0));
  CHECK(cyclically_reduce(g, trivial) == trivial);

  Bigraph tri({"1", "2", "3"}, {solid("a", "1", "2"), solid("b", "2", "3"), solid("c", "3", "1")});
  auto const circle = Cycle::of(tri, parse_walk(tri, "c b a"));
  CHECK(cyclically_reduce(tri, circle) == circle);
  CHECK(to_string(tri, circle) == "<a c b>");
}

TEST_CASE("vertex_at and vertices_on follow the traversal") {
  auto const g = chain(3);
  auto const w = parse_walk(g, "a2 a1");
  CHECK(g.vertex(vertex_at(g, w, 0)) == "3");
  CHECK(g.vertex(vertex_at(g, w, 1)) == "2");
  CHECK(g.vertex(vertex_at(g, w, 2)) == "1");
  CHECK(vertices_on(g, w) == std::vector<vertex_index>{0, 1, 2});
}

TEST_CASE("bigraph morphisms preserve endpoints and degree") {
  Bigraph from({"A", "B"}, {solid("x", "A", "B"), solid("y", "A", "B")});
  Bigraph to({"P", "Q"}, {solid("z", "P", "Q"), dotted("d", "P", "Q")});
  CHECK(validate_morphism(from, to, {{0, 1}, {0, 0}}).empty());
  CHECK(validate_morphism(from, from, BigraphMorphism::identity(from)).empty());

  auto bad_degree = validate_morphism(from, to, {{0, 1}, {0, 1}});
  REQUIRE(bad_degree.size() == 1);
  CHECK(bad_degree[0].rule == "morphism-degree");

  auto bad_end = validate_morphism(from, to, {{1, 0}, {0, 0}});
  CHECK_FALSE(bad_end.empty());
}

TEST_CASE("parse and print walks round trip") {
  Bigraph g({"V"}, {solid("x", "V", "V"), solid("y", "V", "V")});
  for (auto const& w : walks_from(g, 0, 4)) {
    CHECK(parse_walk(g, to_string(g, w)) == w);
  }
  CHECK(to_string(g, Walk::trivial(0)) == "1_V");
}

TEST_CASE("reduction is confluent under random cancellation orders") {
  Bigraph g({"V", "W"}, {solid("x", "V", "V"), solid("y", "V", "W"), dotted("z", "W", "V")});
  std::mt19937 rng(7);
  auto const   walks = walks_from(g, 0, 6);
  std::size_t  checked = 0;
  for (auto const& w : walks) {
    auto const expected = reduce_walk(w);
    for (int trial = 0; trial < 4; ++trial) {
      auto steps = w.steps();
      for (;;) {
        std::vector<std::size_t> spots;
        for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
          if (cancels(steps[i], steps[i + 1])) {
            spots.push_back(i);
          }
        }
        if (spots.empty()) {
          break;
        }
        auto const i = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng)];
        steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(i),
                    steps.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      }
      CHECK(steps == expected.steps());
      ++checked;
    }
    CHECK(reduce_walk(expected) == expected);
  }
  CHECK(checked > 1000);
}
