#include <catch2/catch_amalgamated.hpp>

#include "pact/examples.hpp"
#include "pact/fq.hpp"
#include "support.hpp"

using namespace pact;

TEST_CASE("field axioms hold for every supported q") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    Fq f(q);
    for (int a = 0; a < q; ++a) {
      REQUIRE(f.add(a, 0) == a);
      REQUIRE(f.mul(a, 1) == a);
      REQUIRE(f.mul(a, 0) == 0);
      if (a != 0) REQUIRE(f.mul(a, f.inv(a)) == 1);
      for (int b = 0; b < q; ++b) {
        REQUIRE(f.add(a, b) == f.add(b, a));
        REQUIRE(f.mul(a, b) == f.mul(b, a));
        for (int c = 0; c < q; ++c) {
          REQUIRE(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
          REQUIRE(f.add(a, f.add(b, c)) == f.add(f.add(a, b), c));
          REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
  REQUIRE_THROWS_AS(Fq(6), error);
  REQUIRE_THROWS_AS(Fq(11), error);
}

TEST_CASE("projective plane has q^2+q+1 canonical points") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    Fq f(q);
    auto pts = projective_plane(f);
    REQUIRE(static_cast<int>(pts.size()) == q * q + q + 1);
    // canonical: first nonzero coordinate is 1, all distinct
    for (const auto& p : pts) {
      int first = p.c[0] != 0 ? p.c[0] : (p.c[1] != 0 ? p.c[1] : p.c[2]);
      REQUIRE(first == 1);
    }
  }
}

TEST_CASE("cremona over F_2: a single fixed point carries the involution") {
  Instance inst = gen_cremona(2);
  REQUIRE(inst.carrier->size() == 7);
  const PartialBijection& sigma = inst.action->generator_image(0);
  REQUIRE(sigma.pair_count() == 1);
  int p = inst.carrier->index_of("1:1:1");
  REQUIRE(sigma.apply(p) == p);
}

TEST_CASE("cremona over F_3: four-point domain, involution on it") {
  Instance inst = gen_cremona(3);
  REQUIRE(inst.carrier->size() == 13);
  const PartialBijection& sigma = inst.action->generator_image(0);
  REQUIRE(sigma.pair_count() == 4);
  // applying sigma twice is the identity on the domain
  PartialBijection sq = compose(sigma, sigma);
  REQUIRE(sq.pair_count() == 4);
  for (auto [src, dst] : sq.pairs()) REQUIRE(src == dst);
  // and strictly smaller than the carrier, with the domain formula intact
  REQUIRE(sq.domain().count() < static_cast<std::size_t>(inst.carrier->size()));
  REQUIRE(sq.domain() == pact_tests::compose_domain_oracle(sigma, sigma));
  REQUIRE(inst.action->validate(2).ok());
}

TEST_CASE("cremona generators: coordinate permutations are total") {
  for (int q : {2, 3, 4, 8, 9}) {
    Instance inst = gen_cremona(q);
    REQUIRE(inst.action->generator_image(1).is_total());  // tau
    REQUIRE(inst.action->generator_image(2).is_total());  // rho
    // tau^2 = id, rho^3 = id
    const PartialBijection& tau = inst.action->generator_image(1);
    const PartialBijection& rho = inst.action->generator_image(2);
    REQUIRE(compose(tau, tau).is_identity());
    REQUIRE(compose(rho, compose(rho, rho)).is_identity());
    // sigma is an involution on its (q-1)^2-point domain
    const PartialBijection& sigma = inst.action->generator_image(0);
    REQUIRE(sigma.pair_count() == static_cast<std::size_t>((q - 1) * (q - 1)));
    for (auto [src, dst] : compose(sigma, sigma).pairs()) REQUIRE(src == dst);
  }
}

TEST_CASE("zshift variants produce the documented verdicts") {
  REQUIRE(std::holds_alternative<SymbolicZSet>(gen_zshift("N").zsubset("X")));
  REQUIRE(std::holds_alternative<PeriodicZSet>(gen_zshift("evens").zsubset("X")));
  Instance broken = gen_zshift("broken-shift");
  REQUIRE(broken.carrier->size() == 8);
  REQUIRE(broken.action->generator_image(0).pair_count() == 6);
  REQUIRE_FALSE(broken.action->generator_image(0).defined(broken.carrier->index_of("0")));
  REQUIRE_THROWS_AS(gen_zshift("nonsense"), error);
}

TEST_CASE("every corpus instance is generated consistently") {
  for (const std::string& name : example_names()) {
    Instance inst = gen_example(name);
    if (inst.action && name != "broken-involution") {
      ValidationReport rep = inst.action->validate(2);
      INFO(name);
      REQUIRE(rep.ok());
    }
  }
  REQUIRE_THROWS_AS(gen_example("no-such-example"), error);
}
