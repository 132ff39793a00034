#include <catch2/catch_amalgamated.hpp>

#include "pact/commensuration.hpp"
#include "pact/examples.hpp"
#include "support.hpp"

using namespace pact;

namespace {

// windowed brute force on [-N, N]: counts X \ (X+k) inside the window
int windowed_difference(const ZSubset& x, int k, int window) {
  int count = 0;
  for (int n = -window; n <= window; ++n)
    if (zsubset_contains(x, n) && !zsubset_contains(x, n - k)) ++count;
  return count;
}

FiniteGSetBackend backend_of(const Instance& inst, int radius = 2) {
  return FiniteGSetBackend::from_globalization(globalize(*inst.action, radius));
}

}  // namespace

TEST_CASE("N under the shift is commensurated but not transfixed") {
  ZSubset n = SymbolicZSet::naturals();
  CommensurationReport cr = is_commensurated_z(n);
  REQUIRE(cr.commensurated);
  REQUIRE(cr.per_generator[0].size == 1);  // N \ (N+1) = {0}
  REQUIRE(cr.per_generator[1].size == 0);  // N \ (N-1) is empty
  TransfixCertificate tf = transfix_z(n);
  REQUIRE(tf.verdict == TransfixCertificate::Verdict::not_transfixed);
  REQUIRE_FALSE(tf.above);
}

TEST_CASE("a singleton is transfixed with Y = empty, but not transfixed above") {
  TransfixCertificate tf = transfix_z(ZSubset(SymbolicZSet::singleton(0)));
  REQUIRE(tf.verdict == TransfixCertificate::Verdict::transfixed);
  REQUIRE(tf.z_invariant_set->is_empty());
  REQUIRE(tf.z_delta->finite_elements() == std::vector<std::int64_t>{0});
  REQUIRE_FALSE(tf.above);
  REQUIRE_FALSE(tf.finely_above);
}

TEST_CASE("the evens are not commensurated") {
  Instance inst = gen_example("zshift-evens");
  CommensurationReport cr = is_commensurated_z(inst.zsubset("X"));
  REQUIRE_FALSE(cr.commensurated);
  // windowed oracle agrees: the difference keeps growing with the window
  int d1 = windowed_difference(inst.zsubset("X"), 1, 10);
  int d2 = windowed_difference(inst.zsubset("X"), 1, 20);
  REQUIRE(d1 >= 9);
  REQUIRE(d2 > d1);
}

TEST_CASE("every subset of a finite G-set is commensurated") {
  Instance inst = gen_two_orbits();
  FiniteGSetBackend e = backend_of(inst);
  auto& gen = pact_tests::rng();
  for (int trial = 0; trial < 10; ++trial) {
    PointSet x(e.size());
    for (int i = 0; i < e.size(); ++i)
      if (std::uniform_int_distribution<int>(0, 1)(gen)) x.set(i);
    CommensurationReport cr = is_commensurated(e, x);
    REQUIRE(cr.commensurated);
    for (const auto& gd : cr.per_generator) REQUIRE(gd.finite);
  }
}

TEST_CASE("symbolic decisions agree with windowed brute force") {
  std::vector<SymbolicZSet> sets = {
      SymbolicZSet::naturals(),
      SymbolicZSet::singleton(0),
      SymbolicZSet::make(SymbolicZSet::Base::nonpos, {-2, 5}),
      SymbolicZSet::make(SymbolicZSet::Base::all, {0, 1, 7}),
      SymbolicZSet::make(SymbolicZSet::Base::empty, {-3, -1, 4}),
  };
  for (const SymbolicZSet& s : sets) {
    std::int64_t maxd = 1;
    for (auto d : s.delta()) maxd = std::max(maxd, d < 0 ? -d : d);
    int window = static_cast<int>(3 * (maxd + 1));
    CommensurationReport cr = is_commensurated_z(ZSubset(s));
    REQUIRE(cr.commensurated);
    REQUIRE(cr.per_generator[0].size == windowed_difference(ZSubset(s), 1, window));
    REQUIRE(cr.per_generator[1].size == windowed_difference(ZSubset(s), -1, window));
  }
}

TEST_CASE("transfix on a full orbit: Y = X with empty delta, finely above") {
  Instance inst = gen_two_orbits();
  FiniteGSetBackend e = backend_of(inst);
  // X = one full orbit, embedded
  Globalization g = globalize(*inst.action, 2);
  PointSet x(e.size());
  x.set(g.embed(0));
  x.set(g.embed(1));
  TransfixCertificate tf = transfix(e, x);
  REQUIRE(tf.verdict == TransfixCertificate::Verdict::transfixed);
  REQUIRE(*tf.invariant_set == x);
  REQUIRE(tf.delta->none());
  REQUIRE(tf.above);
  REQUIRE(tf.finely_above);
  REQUIRE(tf.fine_strip->none());
}

TEST_CASE("finite-exact transfix minimizes |Y triangle X| (<= 4 orbits, exhaustive)") {
  // Z/2 x ... : build a 4-orbit action from two swap instances side by side
  Carrier carrier({"1", "2", "3", "4", "5", "6", "7"});
  GroupHandle grp = cyclic_group(2, "s");
  PartialAction a = PartialAction::make_finite(
      grp, carrier,
      {{"s", PartialBijection::from_pairs(
                 7, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {4, 5}, {5, 4}, {6, 6}})}});
  FiniteGSetBackend e = FiniteGSetBackend::from_action(a);
  REQUIRE(e.orbits().size() == 4);
  auto& gen = pact_tests::rng();
  for (int trial = 0; trial < 50; ++trial) {
    PointSet x(7);
    for (int i = 0; i < 7; ++i)
      if (std::uniform_int_distribution<int>(0, 1)(gen)) x.set(i);
    TransfixCertificate tf = transfix(e, x);
    std::size_t got = tf.delta->count();
    // exhaustive search over all unions of orbits
    std::size_t best = SIZE_MAX;
    for (std::uint32_t mask = 0; mask < (1u << 4); ++mask) {
      PointSet y(7);
      for (int o = 0; o < 4; ++o)
        if (mask & (1u << o))
          for (int p : e.orbits()[o]) y.set(p);
      best = std::min(best, (y ^ x).count());
    }
    REQUIRE(got == best);
  }
}

TEST_CASE("neumann: empty F yields the identity") {
  Instance inst = gen_two_orbits();
  FiniteGSetBackend e = backend_of(inst);
  NeumannResult res = neumann_witness(e, PointSet(e.size()), 4);
  REQUIRE(res.witness.has_value());
  REQUIRE(res.witness->empty());
  REQUIRE_FALSE(res.hypothesis_violated);
}

TEST_CASE("neumann on the shift: F = {0,3} gives the +1 shift") {
  NeumannResult res = neumann_witness_z(SymbolicZSet::make(SymbolicZSet::Base::empty, {0, 3}), 8);
  REQUIRE(res.shift.has_value());
  REQUIRE(*res.shift == 1);
  REQUIRE_FALSE(res.hypothesis_violated);
}

TEST_CASE("neumann with a full finite orbit: hypothesis violated, no witness") {
  Carrier carrier({"1", "2"});
  GroupHandle grp = cyclic_group(2, "s");
  PartialAction swap = PartialAction::make_finite(
      grp, carrier, {{"s", PartialBijection::from_pairs(2, {{0, 1}, {1, 0}})}});
  FiniteGSetBackend e = FiniteGSetBackend::from_action(swap);
  NeumannResult res = neumann_witness(e, full_set(2), 4);
  REQUIRE(res.hypothesis_violated);
  REQUIRE_FALSE(res.found());
}

TEST_CASE("neumann witnesses re-validate and are length-lex minimal") {
  auto& gen = pact_tests::rng();
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int64_t> pts;
    int sz = std::uniform_int_distribution<int>(1, 6)(gen);
    for (int i = 0; i < sz; ++i)
      pts.push_back(std::uniform_int_distribution<int>(-10, 10)(gen));
    SymbolicZSet f = SymbolicZSet::make(SymbolicZSet::Base::empty, pts);
    auto elems = f.finite_elements();
    std::int64_t diam = elems.empty() ? 0 : elems.back() - elems.front();
    int bound = static_cast<int>(2 * diam + 2);
    NeumannResult res = neumann_witness_z(f, bound);
    REQUIRE(res.shift.has_value());
    // re-validate
    for (auto p : elems) REQUIRE_FALSE(f.contains(p - *res.shift));
    // minimality in the order 0, +1, -1, +2, -2, ...
    auto disjoint = [&](std::int64_t k) {
      for (auto p : elems)
        if (f.contains(p - k)) return false;
      return true;
    };
    for (std::int64_t k = 0;; ++k) {
      if (disjoint(k)) {
        REQUIRE(*res.shift == k);
        break;
      }
      if (k > 0 && disjoint(-k)) {
        REQUIRE(*res.shift == -k);
        break;
      }
    }
  }
}

TEST_CASE("transfixed above => transfixed => commensurated across the corpus") {
  for (const char* name : {"a1-z2", "a1-z2-global", "z3-self", "two-z2-orbits",
                           "z2-swap-restricted"}) {
    Instance inst = gen_example(name);
    Globalization g = globalize(*inst.action, 2);
    FiniteGSetBackend e = FiniteGSetBackend::from_globalization(g);
    PointSet x(e.size());
    const PointSet& sub = inst.subset("X");
    for (auto p = sub.find_first(); p != PointSet::npos; p = sub.find_next(p))
      x.set(g.embed(static_cast<int>(p)));
    TransfixCertificate tf = transfix(e, x);
    CommensurationReport cr = is_commensurated(e, x);
    // the chain: above implies transfixed implies commensurated
    if (tf.above) REQUIRE(tf.verdict == TransfixCertificate::Verdict::transfixed);
    if (tf.verdict == TransfixCertificate::Verdict::transfixed) REQUIRE(cr.commensurated);
    // the claimed invariant sets really are invariant
    REQUIRE(e.is_invariant(*tf.invariant_set));
    REQUIRE(e.is_invariant(*tf.above_set));
    REQUIRE((x - *tf.fine_strip).is_subset_of(e.saturate(x - *tf.fine_strip)));
    // X minus the strip is finely transfixed above: its saturation adds no
    // point of any orbit meeting the strip side
    PointSet rest = x - *tf.fine_strip;
    PointSet sat = e.saturate(rest);
    REQUIRE(sat == rest);  // finite case: finely above means invariant
  }
}

TEST_CASE("symbolic facts also hold for the symbolic strategy handle") {
  TransfixStrategy sym = TransfixStrategy::symbolic();
  TransfixCertificate tf = sym.run_z(ZSubset(SymbolicZSet::singleton(0)));
  REQUIRE(tf.verdict == TransfixCertificate::Verdict::transfixed);
}

TEST_CASE("user certificate: Y = empty is accepted for the singleton") {
  TransfixStrategy s = TransfixStrategy::user_certificate_z(SymbolicZSet::empty_set());
  TransfixCertificate tf = s.run_z(ZSubset(SymbolicZSet::singleton(0)));
  REQUIRE(tf.verdict == TransfixCertificate::Verdict::transfixed);
  REQUIRE(tf.z_invariant_set->is_empty());
  REQUIRE(tf.z_delta->finite_elements() == std::vector<std::int64_t>{0});
}

TEST_CASE("user certificate: Y = N is rejected with the boundary witness") {
  TransfixStrategy s = TransfixStrategy::user_certificate_z(SymbolicZSet::naturals());
  try {
    s.run_z(ZSubset(SymbolicZSet::naturals()));
    FAIL("expected invalid-certificate");
  } catch (const error& e) {
    REQUIRE(e.code() == errc::invalid_certificate);
    REQUIRE(std::string(e.what()).find("-1") != std::string::npos);
  }
}

TEST_CASE("user certificate on a finite backend validates invariance") {
  Instance inst = gen_two_orbits();
  Globalization g = globalize(*inst.action, 2);
  FiniteGSetBackend e = FiniteGSetBackend::from_globalization(g);
  PointSet x(e.size());
  x.set(g.embed(0));
  SECTION("a valid Y is accepted and yields a strip") {
    TransfixStrategy s = TransfixStrategy::user_certificate(
        {g.point_name(g.embed(0)), g.point_name(g.embed(1))});
    TransfixCertificate tf = s.run(e, x);
    REQUIRE(tf.verdict == TransfixCertificate::Verdict::transfixed);
    REQUIRE(e.is_invariant(*tf.invariant_set));
  }
  SECTION("a non-invariant Y is rejected with a witness") {
    TransfixStrategy s = TransfixStrategy::user_certificate({g.point_name(g.embed(0))});
    REQUIRE_THROWS_AS(s.run(e, x), error);
  }
}

TEST_CASE("dictionary: the two languages agree on exact corpus instances") {
  for (const char* name :
       {"a1-z2", "a1-z2-global", "z3-self", "two-z2-orbits", "z2-swap-restricted"}) {
    Instance inst = gen_example(name);
    Globalization g = globalize(*inst.action, 2);
    REQUIRE(g.exact());
    DictionaryReport rep = dictionary_check(*inst.action, g);
    REQUIRE(rep.exact);
    for (const auto& entry : rep.entries) {
      INFO(name << ": " << entry.notion << " partial=" << entry.partial_value
                << " gset=" << entry.gset_value);
      REQUIRE(entry.agree);
    }
  }
}

TEST_CASE("dictionary: already-global actions degenerate as expected") {
  Instance inst = gen_example("a1-z2-global");
  Globalization g = globalize(*inst.action, 2);
  DictionaryReport rep = dictionary_check(*inst.action, g);
  for (const auto& entry : rep.entries) {
    if (entry.notion.rfind("cofinite", 0) == 0) REQUIRE(entry.partial_value == "0");
    if (entry.notion == "transfixed-above") REQUIRE(entry.partial_value == "0");
  }
}

TEST_CASE("dictionary: broken shift matches cofinite with commensurated at radius") {
  Instance inst = gen_example("zshift-broken");
  Globalization g = globalize(*inst.action, 3);
  REQUIRE_FALSE(g.exact());
  DictionaryReport rep = dictionary_check(*inst.action, g);
  REQUIRE_FALSE(rep.exact);
  // X \ D_u = {0, 3} (the broken step and the right window edge)
  REQUIRE(rep.entries[0].partial_value == "2");
  REQUIRE(rep.entries[0].agree);
}
