#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include <galcov/cli.hpp>

#include "support.hpp"

using namespace galcov;
using namespace testing_support;
using nlohmann::json;

namespace {

  struct Run {
    int         code;
    std::string out;
    std::string err;
  };

  Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int const          code = run_command(std::move(args), out, err);
    return {code, out.str(), err.str()};
  }

  bool contains(std::string const& s, std::string const& part) {
    return s.find(part) != std::string::npos;
  }

  ParseError parse_error(std::string const& text) {
    try {
      parse_problem(text);
    } catch (ParseError const& e) {
      return e;
    }
    FAIL("document parsed: " << text);
    return ParseError(0, 0, "");
  }

}  // namespace

TEST_CASE("minimal documents and fixtures parse") {
  auto const one = parse_problem("galcov 1\nvertex V\n");
  CHECK(one.problem.bigraph.number_of_vertices() == 1);
  CHECK(one.problem.con.empty());

  auto const fork = load_fixture("fork_phi.gcp");
  auto const& g   = fork.problem.bigraph;
  CHECK(g.vertices() == std::vector<std::string>{"A", "B", "C"});
  REQUIRE(fork.problem.con.size() == 1);
  CHECK(g.arrow(fork.problem.con[0].phi).id == "phi");
  CHECK(fork.base == std::optional<std::string>("A"));
  CHECK(fork.radius == std::optional<std::size_t>(3));

  auto const joint = load_fixture("joint.gcp");
  CHECK(joint.problem.con[1].value == Scalar(-1, 2));

  auto const sheets = load_fixture("two_sheet_loop.gcp");
  CHECK(sheets.actions.at("swap").size() == 1);
  CHECK(sheets.actions.at("none").size() == 1);
}

TEST_CASE("parse errors carry line and column") {
  auto e = parse_error("galcov 1\nvertex A B\narrow x A B solid\ncon x y x 1\n");
  CHECK(e.line() == 4);
  CHECK(e.column() == 7);
  CHECK(contains(e.what(), "unknown arrow 'y'"));

  e = parse_error("galcov 1\nvertex A A\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 10);

  e = parse_error("galcov 1\nvertex A\narrow x A Q solid\n");
  CHECK(contains(e.what(), "unknown vertex 'Q'"));

  e = parse_error("vertex A\n");
  CHECK(e.line() == 1);

  e = parse_error("galcov 1\nvertex A B\narrow x A B solid\narrow p B B dotted\ncon x p x 0\n");
  CHECK(contains(e.what(), "nonzero"));

  CHECK(contains(parse_error("galcov 1\nvertex 1_A\n").what(), "reserved"));
  CHECK(contains(parse_error("galcov 1\nvertex A\narrow a^-1 A A solid\n").what(), "reserved"));
  CHECK(contains(parse_error("galcov 1\nvertex A\narrow a A A wavy\n").what(), "degree"));
  CHECK(contains(parse_error("galcov 1\nvertex A\nradius -1\n").what(), "radius"));
  CHECK(contains(parse_error("galcov 1\nvertex A\nfoo\n").what(), "unknown keyword"));
  CHECK(contains(parse_error("galcov 1\nvertex A\naction g A=Q\n").what(), "unknown item 'Q'"));
  CHECK(parse_error("").line() == 1);
}

TEST_CASE("render then parse is the identity on canonical documents") {
  for (auto const& name : {"fork_phi.gcp", "fork_phi_psi.gcp", "joint.gcp", "two_sheet_loop.gcp",
                           "lambda.gcp", "loop.gcp", "star_e6.gcp"}) {
    INFO(name);
    auto const doc  = load_fixture(name);
    auto const text = render_problem(doc);
    auto const back = parse_problem(text);
    CHECK(render_problem(back) == text);
    auto canon = doc.problem;
    canon.canonicalize();
    auto again = back.problem;
    again.canonicalize();
    CHECK(again == canon);
  }
  auto const scaled = parse_problem("galcov 1\nvertex A B C\narrow a C A solid\narrow c C B solid\n"
                                    "arrow phi B A dotted\ncon a phi c 6/-4\n");
  CHECK(contains(render_problem(scaled), "con a phi c -3/2\n"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"tits"}).code == 2);
  CHECK(run({"tits", fixture_path("chain_a3.gcp"), "--format", "xml"}).code == 2);
  auto const missing = run({"validate", "/nonexistent/file.gcp"});
  CHECK(missing.code == 2);
  CHECK(contains(missing.err, "cannot read"));
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("validate and complex") {
  auto const ok = run({"validate", fixture_path("joint.gcp")});
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "valid: 4 vertices, 5 arrows, 2 con entries"));

  auto const dot = run({"complex", fixture_path("joint.gcp")});
  CHECK(dot.code == 0);
  CHECK(contains(dot.out, "digraph"));
  CHECK(contains(dot.out, "quad(phi)"));

  auto const m = run({"complex", fixture_path("fork_phi.gcp"), "--format", "machine"});
  REQUIRE(m.code == 0);
  auto const j = json::parse(m.out);
  CHECK(j["command"] == "complex");
  CHECK(j["complex"]["cells"].size() == 1);
}

TEST_CASE("invalid problems are refused with the violated property") {
  auto const path = std::filesystem::temp_directory_path() / "galcov_shared_side.gcp";
  {
    std::ofstream f(path);
    f << "galcov 1\nvertex U Z W\narrow a U W solid\narrow b1 U Z solid\narrow b2 U Z solid\n"
         "arrow phi Z W dotted\ncon a phi b1 1\ncon a phi b2 1\n";
  }
  auto const r = run({"validate", path.string()});
  CHECK(r.code == 1);
  CHECK(contains(r.out, "[property-3]"));
  auto const m = run({"diagnose", path.string(), "--format", "machine"});
  CHECK(m.code == 1);
  CHECK(json::parse(m.out)["violations"][0]["rule"] == "property-3");
  std::filesystem::remove(path);
}

TEST_CASE("tits reports roots or a counterexample") {
  auto const a3 = run({"tits", fixture_path("chain_a3.gcp")});
  CHECK(a3.code == 0);
  CHECK(contains(a3.out, "6 positive roots"));
  CHECK(contains(a3.out, "(1,1,1)"));

  auto const m = run({"tits", fixture_path("chain_a3.gcp"), "--format", "machine"});
  auto const j = json::parse(m.out);
  CHECK(j["roots"].size() == 6);
  CHECK(j["basic_roots"][0]["singular"] == json({"A1", "A3"}));

  auto const loop = run({"tits", fixture_path("loop.gcp")});
  CHECK(loop.code == 1);
  CHECK(contains(loop.out, "q(1) = 0"));

  auto const par = run({"--format", "machine", "tits", fixture_path("double_parallel.gcp")});
  CHECK(par.code == 1);
  CHECK(json::parse(par.out)["counterexample"] == json({1, 1}));
}

TEST_CASE("cover, quotient and lift") {
  auto const c = run({"cover", "--radius", "2", fixture_path("loop.gcp")});
  CHECK(c.code == 0);
  CHECK(contains(c.out, "5 vertices"));
  CHECK(contains(c.out, "frontier: [l^-1.l^-1] [l.l]"));

  auto const cm = run({"cover", fixture_path("fork_phi.gcp"), "--format", "machine"});
  auto const cj = json::parse(cm.out);
  CHECK(cj["radius"] == 3);
  CHECK(cj["base"] == "A");
  CHECK(cj["isomorphic_to_base"] == true);

  auto const q = run({"quotient", "--action", "swap", fixture_path("two_sheet_loop.gcp"), "--format", "machine"});
  REQUIRE(q.code == 0);
  auto const qj = json::parse(q.out);
  CHECK(qj["order"] == 2);
  CHECK(qj["quotient"]["vertices"].size() == 1);
  CHECK(qj["covering_violations"].empty());

  auto const none = run({"quotient", "--action", "none", fixture_path("two_sheet_loop.gcp")});
  CHECK(none.code == 0);
  CHECK(contains(none.out, "order 1"));
  CHECK(run({"quotient", "--action", "missing", fixture_path("two_sheet_loop.gcp")}).code == 2);

  auto const l = run({"lift", fixture_path("fork_phi.gcp")});
  CHECK(l.code == 0);
  auto const lifted = parse_problem(l.out);
  CHECK(lifted.problem.bigraph.number_of_vertices() == 3);
  CHECK(lifted.problem.con.size() == 1);
}

TEST_CASE("diagnose reports") {
  auto const lambda = run({"diagnose", fixture_path("lambda.gcp")});
  CHECK(lambda.code == 0);
  CHECK(contains(lambda.out, "verdict: dotted-loop"));
  CHECK(contains(lambda.out, "dotted loops: lambda"));

  auto const fork = run({"diagnose", fixture_path("fork_phi.gcp"), "--format", "machine"});
  auto const j    = json::parse(fork.out);
  CHECK(j["verdict"] == "no-obstruction-found");
  CHECK(j["simply_connected"]["answer"] == "yes");

  auto const again = run({"diagnose", fixture_path("fork_phi.gcp"), "--format", "machine"});
  CHECK(again.out == fork.out);

  auto const loop = run({"diagnose", fixture_path("loop.gcp")});
  CHECK(contains(loop.out, "counterexample: (1)"));
}
