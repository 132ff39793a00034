#include <map>

#include <catch2/catch_amalgamated.hpp>

#include "pact/examples.hpp"
#include "pact/regularization.hpp"
#include "support.hpp"

using namespace pact;

namespace {

PointSet classes_named(const Globalization& g, std::initializer_list<const char*> names) {
  PointSet s(static_cast<std::size_t>(g.num_points()));
  for (const char* n : names) {
    bool found = false;
    for (int c = 0; c < g.num_points(); ++c)
      if (g.point_name(c) == n) {
        s.set(c);
        found = true;
      }
    REQUIRE(found);
  }
  return s;
}

}  // namespace

TEST_CASE("glued topology of an already-global action is the original space") {
  Instance inst = gen_example("a1-z2-global");
  Globalization g = globalize(*inst.action, 1);
  REQUIRE(g.num_points() == inst.carrier->size());
  TopGlobalization t = glued_topology(g, *inst.space);
  for (int a = 0; a < inst.carrier->size(); ++a)
    for (int b = 0; b < inst.carrier->size(); ++b)
      REQUIRE(inst.space->leq(a, b) == t.space.leq(g.embed(a), g.embed(b)));
  REQUIRE(t.x_dense);
}

TEST_CASE("glued topology of the Z/2 affine-line model adds one closed point") {
  Instance inst = gen_example("a1-z2");
  Globalization g = globalize(*inst.action, 1);
  REQUIRE(g.num_points() == 5);
  TopGlobalization t = glued_topology(g, *inst.space);
  PointSet eta = classes_named(g, {"[1,eta]"});
  int eta_c = static_cast<int>(eta.find_first());
  // all four closed points sit below eta; eta is the unique generic point
  auto [irr, generic] = t.space.irreducible();
  REQUIRE(irr);
  REQUIRE(generic == eta_c);
  auto strata = t.space.strata();
  REQUIRE(strata.size() == 2);
  REQUIRE(strata[0].count() == 4);
  REQUIRE(strata[1].count() == 1);
  // sigma swaps the new point with c0
  PointSet c0 = classes_named(g, {"[1,c0]"});
  PointSet extra = classes_named(g, {"[s,c0]"});
  int rank_s = 0;  // generator letter s
  auto img = g.apply_letter(rank_s, static_cast<int>(c0.find_first()));
  REQUIRE(img.has_value());
  REQUIRE(*img == static_cast<int>(extra.find_first()));
  REQUIRE(t.x_dense);
}

TEST_CASE("a generator with non-dense domain leaves X open but not dense") {
  Instance inst = gen_example("z2-swap-restricted");
  Globalization g = globalize(*inst.action, 1);
  TopGlobalization t = glued_topology(g, *inst.space);
  REQUIRE(t.space.is_open(t.embedded));
  REQUIRE_FALSE(t.x_dense);
}

TEST_CASE("stage at i = d is the invariant-singleton base case") {
  Instance inst = gen_example("a1-z2");
  Globalization g = globalize(*inst.action, 1);
  TopGlobalization t = glued_topology(g, *inst.space);
  std::vector<Word> j = {Word{}};
  StageRecord st = sepcore_stage(t, 1, j, inst.carrier->all(),
                                 TransfixStrategy::finite_exact());
  REQUIRE(st.Y_i == classes_named(g, {"[1,eta]"}));
  REQUIRE(st.L.none());
  REQUIRE(st.neumann_degenerate);
  REQUIRE(st.J_out.size() == 1);
  REQUIRE(st.Z_out == inst.carrier->all());
}

TEST_CASE("stage at i = 0 replays the worked example") {
  Instance inst = gen_example("a1-z2");
  Globalization g = globalize(*inst.action, 1);
  TopGlobalization t = glued_topology(g, *inst.space);
  std::vector<Word> j = {Word{}};
  StageRecord st = sepcore_stage(t, 0, j, inst.carrier->all(),
                                 TransfixStrategy::finite_exact());
  // frozen values from the independent replay:
  //   K0 = {[s,c0]}, Y0 = embedded closed points, L = {[1,c0]},
  //   Ldot = {[1,c0]}, Z' = {eta,c1,c2}, Y'0 = {[1,c1],[1,c2]}, h = 1
  REQUIRE(st.K == classes_named(g, {"[s,c0]"}));
  REQUIRE(st.K_i == classes_named(g, {"[s,c0]"}));
  REQUIRE(st.Y_i == classes_named(g, {"[1,c0]", "[1,c1]", "[1,c2]"}));
  REQUIRE(st.L == classes_named(g, {"[1,c0]"}));
  REQUIRE(st.L_closed == classes_named(g, {"[1,c0]"}));
  PointSet zprime(static_cast<std::size_t>(inst.carrier->size()));
  zprime.set(inst.carrier->index_of("eta"));
  zprime.set(inst.carrier->index_of("c1"));
  zprime.set(inst.carrier->index_of("c2"));
  REQUIRE(st.Z_out == zprime);
  REQUIRE(st.Y_out == classes_named(g, {"[1,eta]", "[1,c1]", "[1,c2]"}));
  REQUIRE(st.neumann_degenerate);
  REQUIRE(st.neumann_h.empty());
  REQUIRE(st.J_out.size() == 1);
  // the commensuration evidence: |hK_0 ∩ Y_0| = 1 for h = s (s carries the
  // extra point onto c0), 0 for the identity
  for (const auto& [h, size] : st.commensuration) {
    if (h == "1") REQUIRE(size == 0);
    if (h == "s") REQUIRE(size == 1);
  }
}

TEST_CASE("regularize: already-global action keeps the whole space") {
  Instance inst = gen_example("a1-z2-global");
  RegularizationResult res =
      regularize(*inst.action, *inst.space, TransfixStrategy::finite_exact());
  REQUIRE(res.completed);
  REQUIRE(res.final_J.size() == 1);
  REQUIRE(res.noetherian_open == full_set(static_cast<std::size_t>(res.top.points())));
  REQUIRE(res.core.U == full_set(static_cast<std::size_t>(res.top.points())));
  for (const auto& st : res.stages) {
    REQUIRE(st.L.none());
    REQUIRE(st.neumann_degenerate);
  }
}

TEST_CASE("regularize: the Z/2 affine-line model yields U = {eta, c1, c2}") {
  Instance inst = gen_example("a1-z2");
  RegularizationResult res =
      regularize(*inst.action, *inst.space, TransfixStrategy::finite_exact());
  REQUIRE(res.completed);
  const Globalization& g = res.top.base;
  REQUIRE(res.noetherian_open == classes_named(g, {"[1,eta]", "[1,c1]", "[1,c2]"}));
  PointSet u(static_cast<std::size_t>(g.num_points()));
  for (auto k = res.core.U.find_first(); k != PointSet::npos; k = res.core.U.find_next(k))
    u.set(res.core_points[static_cast<int>(k)]);
  REQUIRE(u == classes_named(g, {"[1,eta]", "[1,c1]", "[1,c2]"}));
  // identity pair-witnesses: every pair is already inside X
  for (const auto& [xy, w] : res.core.pair_witness) {
    (void)xy;
    REQUIRE(w.empty());
  }
}

TEST_CASE("regularize re-verifies its own invariants") {
  for (const char* name : {"a1-z2", "a1-z2-global"}) {
    Instance inst = gen_example(name);
    RegularizationResult res =
        regularize(*inst.action, *inst.space, TransfixStrategy::finite_exact());
    REQUIRE(res.completed);
    const PointSet& y = res.noetherian_open;
    REQUIRE(res.top.space.is_open(y));
    REQUIRE(res.top.space.is_dense(y));
    REQUIRE(res.top.saturate(y) == y);
    // |J| <= 2^(d-i) at every stage
    for (const auto& st : res.stages)
      REQUIRE(static_cast<std::int64_t>(st.J_out.size()) <=
              (std::int64_t{1} << (res.dim - st.i)));
    // stage invariant re-checked from the records
    for (const auto& st : res.stages) {
      PointSet translated(static_cast<std::size_t>(res.top.points()));
      for (const Word& w : st.J_out) {
        std::vector<int> p = res.top.word_perm(w);
        for (auto z = st.Z_out.find_first(); z != PointSet::npos; z = st.Z_out.find_next(z))
          translated.set(p[res.top.base.embed(static_cast<int>(z))]);
      }
      PointSet ge = translated & res.top.space.stratum_at_least(st.i);
      REQUIRE(res.top.saturate(ge) == ge);
    }
  }
}

TEST_CASE("regularize: idempotence on the recovered open") {
  Instance inst = gen_example("a1-z2");
  RegularizationResult res =
      regularize(*inst.action, *inst.space, TransfixStrategy::finite_exact());
  // restrict the induced global action to U and regularize again
  PointSet u(static_cast<std::size_t>(res.top.points()));
  for (auto k = res.core.U.find_first(); k != PointSet::npos; k = res.core.U.find_next(k))
    u.set(res.core_points[static_cast<int>(k)]);
  std::vector<int> old_of_new;
  FiniteSpace u_space = res.top.space.subspace(u, &old_of_new);
  std::vector<std::string> names;
  for (int p : old_of_new) names.push_back(res.top.base.point_name(p));
  Carrier u_carrier(names);
  std::vector<int> sub_of_class(res.top.points(), -1);
  for (int k = 0; k < static_cast<int>(old_of_new.size()); ++k)
    sub_of_class[old_of_new[k]] = k;
  std::map<std::string, PartialBijection> images;
  const GroupHandle& grp = *inst.group;
  for (int e = 0; e < grp.num_symbols(); ++e) {
    if (e == grp.identity_element()) continue;
    std::vector<int> perm = res.top.word_perm(grp.min_word(e));
    std::vector<std::pair<int, int>> pairs;
    for (int k = 0; k < static_cast<int>(old_of_new.size()); ++k)
      pairs.emplace_back(k, sub_of_class[perm[old_of_new[k]]]);
    images.emplace(grp.symbol(e), PartialBijection::from_pairs(u_carrier.size(), pairs));
  }
  PartialAction restricted = PartialAction::make_finite(grp, u_carrier, images);
  RegularizationResult again =
      regularize(restricted, u_space, TransfixStrategy::finite_exact());
  REQUIRE(again.completed);
  REQUIRE(again.noetherian_open.count() == u.count());
  REQUIRE(again.core.U.count() == u.count());
}

TEST_CASE("regularize rejects bad inputs") {
  SECTION("not irreducible") {
    Instance inst = gen_two_orbits();  // discrete space
    REQUIRE_THROWS_AS(
        regularize(*inst.action, *inst.space, TransfixStrategy::finite_exact()), error);
  }
  SECTION("symbolic transfixer cannot feed the finite pipeline") {
    Instance inst = gen_example("a1-z2");
    REQUIRE_THROWS_AS(regularize(*inst.action, *inst.space, TransfixStrategy::symbolic()),
                      error);
  }
}

TEST_CASE("chart-separation analog: witnesses land in the base chart") {
  Instance inst = gen_example("a1-z2");
  RegularizationResult res =
      regularize(*inst.action, *inst.space, TransfixStrategy::finite_exact());
  for (const auto& [xy, w] : res.core.pair_witness) {
    std::vector<int> perm = res.top.word_perm(w);
    int a = res.core_points[xy.first], b = res.core_points[xy.second];
    REQUIRE(res.top.embedded.test(perm[a]));
    REQUIRE(res.top.embedded.test(perm[b]));
  }
}
