#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "coarseprox/cli.hpp"
#include "coarseprox/expr.hpp"
#include "coarseprox/normality.hpp"

using namespace coarseprox;

namespace {

// Runs the CLI in-process with stderr swallowed, so expected usage errors
// do not pollute the test log.
int cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"coarseprox"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream sink;
  std::streambuf* old = std::cerr.rdbuf(sink.rdbuf());
  int code = run_cli((int)argv.size(), argv.data());
  std::cerr.rdbuf(old);
  return code;
}

nlohmann::json load(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  nlohmann::json j;
  f >> j;
  return j;
}

}  // namespace

TEST_CASE("parse then print is a fixed point") {
  for (const char* text : {
           "empty",
           "all",
           "evens",
           "odds",
           "nat",
           "finite{-3,0,5}",
           "finite{1/2,3/4}",
           "ap(0,2)",
           "ap(1/3,1/3)",
           "interval(0,1,open,open)",
           "interval(5,6,closed,open)",
           "neg(ap(0,2))",
           "compl(union(ap(0,2),finite{1}))",
           "diff(inter(all,evens),union(odds,finite{7}))",
       }) {
    ExprPtr e = parse_expr(text);
    CHECK(e->print() == text);
    CHECK(expr_equal(*e, *parse_expr(e->print())));
  }
  // whitespace is insignificant
  CHECK(parse_expr("  union( evens ,\n odds )")->print() == "union(evens,odds)");
  CHECK_FALSE(expr_equal(*parse_expr("ap(0,2)"), *parse_expr("ap(0,3)")));
}

TEST_CASE("syntax errors carry 1-based positions") {
  try {
    parse_expr("ap(0,)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col == 6);
    CHECK(std::string(e.what()).find("line 1, column 6") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_expr(""), ParseError);
  CHECK_THROWS_AS(parse_expr("union(evens)"), ParseError);
  CHECK_THROWS_AS(parse_expr("frob(1,2)"), ParseError);
  CHECK_THROWS_AS(parse_expr("finite{1,}"), ParseError);
  CHECK_THROWS_AS(parse_expr("interval(0,1,open)"), ParseError);
  CHECK_THROWS_AS(parse_expr("ap(1/0,2)"), ParseError);
  CHECK_THROWS_AS(parse_expr("evens odds"), ParseError);
  try {
    parse_expr("union(evens,\n  frob)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 3);
  }
}

TEST_CASE("integer elaboration") {
  CHECK(elaborate_z(*parse_expr("evens")) == EPSet::normalize(2, {0}, {0}, 0, {}));
  CHECK(elaborate_z(*parse_expr("odds")) == EPSet::normalize(2, {1}, {1}, 0, {}));
  CHECK(elaborate_z(*parse_expr("finite{-3,0,5}")) == EPSet::finite_set({-3, 0, 5}));
  CHECK(elaborate_z(*parse_expr("ap(1,3)")) == EPSet::tail_ap(1, 3));
  CHECK(elaborate_z(*parse_expr("neg(ap(0,2))")) == EPSet::tail_ap(0, 2).reflected());
  CHECK(elaborate_z(*parse_expr("compl(empty)")) == EPSet::all());
  CHECK(elaborate_z(*parse_expr("diff(all,odds)")) ==
        EPSet::normalize(2, {0}, {0}, 0, {}));
  CHECK(elaborate_z(*parse_expr("union(evens,odds)")) == EPSet::all());

  CHECK_THROWS_AS(elaborate_z(*parse_expr("nat")), ElaborationError);
  CHECK_THROWS_AS(elaborate_z(*parse_expr("interval(0,1,open,open)")), ElaborationError);
  CHECK_THROWS_AS(elaborate_z(*parse_expr("finite{1/2}")), ElaborationError);
  CHECK_THROWS_AS(elaborate_z(*parse_expr("ap(0,1/2)")), ElaborationError);
  CHECK_THROWS_AS(elaborate_z(*parse_expr("ap(0,0)")), ElaborationError);
}

TEST_CASE("half-line elaboration") {
  CHECK(elaborate_q(*parse_expr("interval(0,1,open,open)")).to_json() ==
        halfline_a().to_json());
  CHECK(elaborate_q(*parse_expr("compl(nat)")).to_json() == halfline_b().to_json());
  CHECK(elaborate_q(*parse_expr("evens")).to_json() ==
        QSet::from_ap(RatAP(Rat(0), Rat(2))).to_json());
  QSet halves = elaborate_q(*parse_expr("finite{1/2,3/4}"));
  CHECK(halves.member(Rat(1, 2)));
  CHECK(halves.member(Rat(3, 4)));
  CHECK_FALSE(halves.member(Rat(1, 4)));
  QSet thirds = elaborate_q(*parse_expr("ap(1/3,1/3)"));
  CHECK(thirds.member(Rat(1, 3)));
  CHECK(thirds.member(Rat(2, 3)));
  CHECK_FALSE(thirds.member(Rat(1, 2)));

  CHECK_THROWS_AS(elaborate_q(*parse_expr("neg(evens)")), ElaborationError);
  CHECK_THROWS_AS(elaborate_q(*parse_expr("finite{-1}")), ElaborationError);
  CHECK_THROWS_AS(elaborate_q(*parse_expr("ap(-1,2)")), ElaborationError);
  CHECK_THROWS_AS(elaborate_q(*parse_expr("interval(1,1,open,open)")), ElaborationError);
  CHECK_THROWS_AS(elaborate_q(*parse_expr("interval(-1,1,open,open)")), ElaborationError);
}

TEST_CASE("cli: decide on both exact backends") {
  std::string out = "/tmp/coarseprox_expr_decide.json";
  CHECK(cli({"decide", "prec", "--backend", "q-halfline",
             "interval(0,1,open,open)", "compl(nat)", "--out", out}) == 0);
  nlohmann::json j = load(out);
  CHECK(j.at("command") == "decide");
  CHECK(j.at("backend") == "q-halfline");
  CHECK(j.at("result") == true);
  CHECK(j.at("version") == "1");

  CHECK(cli({"decide", "b", "--backend", "z-metric", "ap(0,2)", "ap(1,2)",
             "--out", out}) == 0);
  j = load(out);
  CHECK(j.at("result") == true);
  CHECK(j.at("witness").at("r") == 2);

  CHECK(cli({"decide", "prec", "--mode", "pairs", "ap(0,2)", "finite{1}",
             "--out", out}) == 0);
  j = load(out);
  CHECK(j.at("mode") == "pairs");
  CHECK(j.at("result") == false);
  std::remove(out.c_str());
}

TEST_CASE("cli: windowed backend reports evidence or unknown") {
  std::string out = "/tmp/coarseprox_expr_windowed.json";
  CHECK(cli({"decide", "b", "--backend", "windowed", "ap(0,2)", "ap(1,2)",
             "--windows", "100", "--out", out}) == 0);
  nlohmann::json j = load(out);
  CHECK(j.at("result") == true);
  CHECK(j.at("witness").at("window") == 100);

  // disjoint rays: the window finds no proximity evidence, so no verdict
  CHECK(cli({"decide", "b", "--backend", "windowed", "ap(0,2)", "neg(ap(1,2))",
             "--windows", "100", "--out", out}) == 0);
  j = load(out);
  CHECK(j.at("result").is_object());
  CHECK(j.at("result").at("unknown_at_window") == 100);
  std::remove(out.c_str());
}

TEST_CASE("cli: certificate round trip through files") {
  std::string cert = "/tmp/coarseprox_expr_cert.json";
  std::string out = "/tmp/coarseprox_expr_validate.json";
  CHECK(cli({"certify", "nonnormal", "--candidate", "compl(nat)", "--out", cert}) == 0);
  nlohmann::json j = load(cert);
  CHECK(j.at("certificate").at("offset") == "1/2");
  CHECK(j.at("certificate").at("trace").size() == 50);
  CHECK(cli({"validate", cert, "--out", out}) == 0);
  CHECK(load(out).at("result") == true);

  // an offset on the integer lattice cannot certify anything
  j.at("certificate")["offset"] = "1";
  {
    std::ofstream f(cert);
    f << j.dump();
  }
  CHECK(cli({"validate", cert, "--out", out}) == 1);
  CHECK(load(out).at("result") == false);
  std::remove(cert.c_str());
  std::remove(out.c_str());
}

TEST_CASE("cli: witness construction and refusal") {
  std::string out = "/tmp/coarseprox_expr_witness.json";
  CHECK(cli({"witness", "normal", "ap(0,2)", "all", "--out", out}) == 0);
  nlohmann::json j = load(out);
  CHECK(j.at("witness").contains("C"));
  // ap(0,2) is not coarsely inside a bounded set: the witness must refuse
  CHECK(cli({"witness", "normal", "ap(0,2)", "finite{1}", "--out", out}) == 1);
  j = load(out);
  CHECK(j.at("error").at("kind") == "prec-fails");
  std::remove(out.c_str());
}

TEST_CASE("cli: usage and input errors exit with 2") {
  CHECK(cli({"decide", "b", "nat", "all"}) == 2);                      // wrong carrier
  CHECK(cli({"decide", "b", "ap(0,)", "all"}) == 2);                   // syntax error
  CHECK(cli({"decide", "frob", "evens", "odds"}) == 2);                // bad relation
  CHECK(cli({"decide", "lambda", "--mode", "pairs", "evens", "odds"}) == 2);
  CHECK(cli({"witness", "normal", "--backend", "q-halfline", "a", "b"}) == 2);
  CHECK(cli({"check", "--backend", "windowed"}) == 2);
  CHECK(cli({"validate", "/tmp/coarseprox_no_such_file.json"}) == 2);
  CHECK(cli({}) == 2);
  CHECK(cli({"--help"}) == 0);
}

TEST_CASE("cli: check runs a suite and reports the pattern verdict") {
  std::string out = "/tmp/coarseprox_expr_check.json";
  CHECK(cli({"check", "--backend", "z-metric", "--suite", "bornology", "--seed",
             "5", "--sets", "15", "--pairs", "40", "--triples", "10",
             "--oracle-pairs", "5", "--out", out}) == 0);
  nlohmann::json j = load(out);
  CHECK(j.at("expected_pattern_match") == true);
  CHECK(j.at("plan").at("seed") == 5);
  REQUIRE(j.at("reports").size() == 1);
  CHECK(j.at("reports")[0].at("suite") == "bornology");
  std::remove(out.c_str());
}
