#include <catch2/catch_amalgamated.hpp>

#include "pact/examples.hpp"
#include "pact/instance.hpp"

using namespace pact;

TEST_CASE("parse-serialize round trip is byte-identical on the corpus") {
  for (const std::string& name : example_names()) {
    Instance inst = gen_example(name);
    std::string text = serialize_instance(inst);
    Instance reparsed = parse_instance(text);
    INFO(name);
    REQUIRE(serialize_instance(reparsed) == text);
  }
}

TEST_CASE("hand-written instances normalize and re-serialize stably") {
  std::string text =
      "pact instance v1\n"
      "# a hand-written file with relaxed ordering and comments\n"
      "space\n"
      "point eta\n"
      "point a\n"
      "point b\n"
      "le b eta   # closure relation\n"
      "le a eta\n"
      "group finite\n"
      "elements e s\n"
      "mul e e e\n"
      "mul s s e\n"
      "mul e s s\n"
      "mul s e s\n"
      "generators s\n"
      "action\n"
      "map s: a -> b\n"
      "map s: b -> a\n"
      "map s: eta -> eta\n"
      "subset X\n"
      "in eta\n"
      "in a\n";
  Instance inst = parse_instance(text);
  REQUIRE(inst.carrier->size() == 3);
  REQUIRE(inst.space->leq(inst.carrier->index_of("a"), inst.carrier->index_of("eta")));
  std::string canon = serialize_instance(inst);
  REQUIRE(serialize_instance(parse_instance(canon)) == canon);
}

TEST_CASE("parse errors carry line and column information") {
  auto expect_parse_error = [](const std::string& text, const std::string& needle) {
    try {
      parse_instance(text);
      FAIL("expected a parse error");
    } catch (const error& e) {
      REQUIRE(e.code() == errc::parse_error);
      INFO(e.what());
      REQUIRE(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_parse_error("nonsense\n", "header");
  expect_parse_error("pact instance v1\nspace\npoint a\nwiggle b\n", "line 4");
  expect_parse_error("pact instance v1\nspace\npoint a\nle a\n", "line 4");
}

TEST_CASE("unknown identifiers are rejected") {
  std::string base =
      "pact instance v1\n"
      "space\n"
      "point a\n"
      "group free\n"
      "generators f\n"
      "action\n";
  REQUIRE_THROWS_AS(parse_instance(base + "map f: a -> zz\n"), error);
  REQUIRE_THROWS_AS(parse_instance(base + "map q: a -> a\n"), error);
  REQUIRE_THROWS_AS(parse_instance(base + "subset X\nin zz\n"), error);
}

TEST_CASE("duplicate points and malformed maps are rejected") {
  REQUIRE_THROWS_AS(parse_instance("pact instance v1\nspace\npoint a\npoint a\n"), error);
  REQUIRE_THROWS_AS(
      parse_instance("pact instance v1\nspace\npoint a\ngroup free\ngenerators f\n"
                     "action\nmap f a -> a\n"),
      error);
}

TEST_CASE("zset instances parse both forms") {
  std::string text =
      "pact instance v1\n"
      "group cyclic\n"
      "generators u\n"
      "zset X\n"
      "base N\n"
      "delta 3 -1\n"
      "zset E\n"
      "periodic 2 0\n";
  Instance inst = parse_instance(text);
  REQUIRE(inst.symbolic());
  const auto& x = std::get<SymbolicZSet>(inst.zsubset("X"));
  REQUIRE(x.contains(5));
  REQUIRE_FALSE(x.contains(3));  // delta removes it
  REQUIRE(x.contains(-1));       // delta adds it
  const auto& e = std::get<PeriodicZSet>(inst.zsubset("E"));
  REQUIRE(e.contains(-4));
  REQUIRE_FALSE(e.contains(3));
  REQUIRE(serialize_instance(parse_instance(serialize_instance(inst))) ==
          serialize_instance(inst));
}

TEST_CASE("the digest is stable and sensitive") {
  std::string a = serialize_instance(gen_example("a1-z2"));
  REQUIRE(instance_digest(a) == instance_digest(a));
  std::string b = a;
  b[b.find("c1") + 1] = '7';
  REQUIRE(instance_digest(a) != instance_digest(b));
  REQUIRE(instance_digest(a).rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("group table parsing validates the table") {
  std::string bad =
      "pact instance v1\n"
      "space\npoint a\n"
      "group finite\n"
      "elements e s\n"
      "mul e e e\nmul e s s\nmul s e s\nmul s s s\n"  // s*s = s: no inverse
      "generators s\n";
  REQUIRE_THROWS_AS(parse_instance(bad), error);
}
