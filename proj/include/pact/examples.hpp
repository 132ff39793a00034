#ifndef PACT_EXAMPLES_HPP
#define PACT_EXAMPLES_HPP

#include <map>
#include <string>
#include <vector>

#include "pact/fq.hpp"
#include "pact/instance.hpp"

namespace pact {

// --- small group tables -------------------------------------------------------

inline GroupHandle cyclic_group(int n, const std::string& prefix = "u") {
  std::vector<std::string> elems = {"e"};
  for (int i = 1; i < n; ++i) elems.push_back(i == 1 ? prefix : prefix + std::to_string(i));
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return GroupHandle::finite(elems, table,
                             n > 1 ? std::vector<std::string>{elems[1]}
                                   : std::vector<std::string>{});
}

inline GroupHandle klein_four() {
  std::vector<std::string> elems = {"e", "a", "b", "c"};
  auto x = [](int i, int j) { return i == 0 ? j : (j == 0 ? i : (i == j ? 0 : 6 - i - j)); };
  std::vector<std::vector<int>> table(4, std::vector<int>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) table[i][j] = x(i, j);
  return GroupHandle::finite(elems, table, {"a", "b"});
}

inline GroupHandle sym3() {
  // elements as permutations of 3 letters: e, r=(123), r2, s=(12), sr, sr2
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                           {1, 0, 2}, {2, 1, 0}, {0, 2, 1}};
  std::vector<std::string> elems = {"e", "r", "r2", "s", "sr", "sr2"};
  auto find = [&](const std::array<int, 3>& p) {
    for (int i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    return -1;
  };
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> p;
      for (int i = 0; i < 3; ++i) p[i] = perms[a][perms[b][i]];
      table[a][b] = find(p);
    }
  return GroupHandle::finite(elems, table, {"r", "s"});
}

inline GroupHandle dihedral(int n) {
  // 2n elements r^i s^j, j in {0,1}
  std::vector<std::string> elems;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < n; ++i) {
      if (i == 0)
        elems.push_back(j ? "s" : "e");
      else
        elems.push_back((j ? "sr" : "r") + std::to_string(i));
    }
  auto idx = [n](int i, int j) { return j * n + i; };
  std::vector<std::vector<int>> table(2 * n, std::vector<int>(2 * n));
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          // (r^i1 s^j1)(r^i2 s^j2) = r^(i1 + i2*(-1)^j1) s^(j1+j2)
          int i = ((i1 + (j1 ? n - i2 : i2)) % n + n) % n;
          int j = (j1 + j2) % 2;
          table[idx(i1, j1)][idx(i2, j2)] = idx(i, j);
        }
  return GroupHandle::finite(elems, table, n >= 2 ? std::vector<std::string>{"r1", "s"}
                                                  : std::vector<std::string>{"s"});
}

// --- example generators -------------------------------------------------------

// The Cremona involution (x:y:z) -> (yz:xz:xy) on P^2(F_q), defined where all
// three coordinates are nonzero, together with the coordinate swap and cycle
// as total bijections; the group handle is free on the three symbols.
inline Instance gen_cremona(int q) {
  Fq f(q);
  std::vector<ProjectivePoint> pts = projective_plane(f);
  std::map<std::string, int> index;
  std::vector<std::string> names;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    names.push_back(pts[i].name());
    index[names.back()] = i;
  }
  Carrier carrier(names);
  const int n = carrier.size();

  std::vector<std::pair<int, int>> sigma, tau, rho;
  for (int i = 0; i < n; ++i) {
    auto [x, y, z] = std::array<int, 3>{pts[i].c[0], pts[i].c[1], pts[i].c[2]};
    if (x != 0 && y != 0 && z != 0)
      sigma.emplace_back(
          i, index[projective_canonical(f, {f.mul(y, z), f.mul(x, z), f.mul(x, y)}).name()]);
    tau.emplace_back(i, index[projective_canonical(f, {y, x, z}).name()]);
    rho.emplace_back(i, index[projective_canonical(f, {y, z, x}).name()]);
  }

  Instance inst;
  inst.space = FiniteSpace::discrete(n);
  inst.carrier = carrier;
  inst.group = GroupHandle::free_group({"sigma", "tau", "rho"});
  inst.action = PartialAction::make_free(*inst.group, carrier,
                                         {PartialBijection::from_pairs(n, sigma),
                                          PartialBijection::from_pairs(n, tau),
                                          PartialBijection::from_pairs(n, rho)});
  PointSet dom = inst.action->generator_image(0).domain();
  inst.subsets.emplace_back("X", dom);
  return inst;
}

// The shift examples: N is commensurated but not transfixed, a singleton is
// transfixed but not transfixed above, the evens are not even commensurated,
// and the broken shift is a finite window of Z with the step at 0 removed.
inline Instance gen_zshift(const std::string& variant, int window = 3) {
  Instance inst;
  if (variant == "N" || variant == "singleton" || variant == "evens") {
    inst.group = GroupHandle::cyclic_infinite("u");
    if (variant == "N")
      inst.zsubsets.emplace_back("X", SymbolicZSet::naturals());
    else if (variant == "singleton")
      inst.zsubsets.emplace_back("X", SymbolicZSet::singleton(0));
    else
      inst.zsubsets.emplace_back("X", PeriodicZSet::make(2, {0}));
    return inst;
  }
  require(variant == "broken-shift", errc::unknown_symbol,
          "unknown zshift variant '" + variant + "'");
  std::vector<std::string> names = {"eta"};
  for (int i = -window; i <= window; ++i) names.push_back(std::to_string(i));
  Carrier carrier(names);
  const int n = carrier.size();
  std::vector<std::pair<int, int>> shift = {{0, 0}};  // eta is fixed
  for (int i = -window; i < window; ++i) {
    if (i == 0) continue;  // the broken step
    shift.emplace_back(carrier.index_of(std::to_string(i)),
                       carrier.index_of(std::to_string(i + 1)));
  }
  inst.space = FiniteSpace::discrete(n);
  inst.carrier = carrier;
  inst.group = GroupHandle::cyclic_infinite("u");
  inst.action = PartialAction::make_free(*inst.group, carrier,
                                         {PartialBijection::from_pairs(n, shift)});
  PointSet x(static_cast<std::size_t>(n));
  x.set();
  inst.subsets.emplace_back("X", x);
  return inst;
}

// The affine-line model: closed points under one generic point.
inline Instance gen_a1_model(int closed_points, bool partial_sigma) {
  std::vector<std::string> names = {"eta"};
  for (int i = 0; i < closed_points; ++i) names.push_back("c" + std::to_string(i));
  Carrier carrier(names);
  const int n = carrier.size();
  std::vector<std::pair<int, int>> rel;
  for (int i = 1; i < n; ++i) rel.emplace_back(i, 0);

  Instance inst;
  inst.space = FiniteSpace::from_relations(n, rel);
  inst.carrier = carrier;
  inst.group = cyclic_group(2, "s");
  // sigma fixes eta, swaps c1 and c2; when partial it is undefined at c0
  std::vector<std::pair<int, int>> sigma = {{0, 0}};
  for (int i = 0; i < closed_points; ++i) {
    int p = carrier.index_of("c" + std::to_string(i));
    if (i == 1)
      sigma.emplace_back(p, carrier.index_of("c2"));
    else if (i == 2)
      sigma.emplace_back(p, carrier.index_of("c1"));
    else if (!partial_sigma)
      sigma.emplace_back(p, p);
  }
  inst.action = PartialAction::make_finite(*inst.group, carrier,
                                           {{"s", PartialBijection::from_pairs(n, sigma)}});
  PointSet x(static_cast<std::size_t>(n));
  x.set();
  x.reset(carrier.index_of("c0"));
  inst.subsets.emplace_back("X", x);
  return inst;
}

// Z/3 acting on itself by translation; X = {0} meets the single orbit.
inline Instance gen_z3_self() {
  Carrier carrier({"0", "1", "2"});
  Instance inst;
  inst.space = FiniteSpace::discrete(3);
  inst.carrier = carrier;
  inst.group = cyclic_group(3);
  inst.action = PartialAction::make_finite(
      *inst.group, carrier,
      {{"u", PartialBijection::from_pairs(3, {{0, 1}, {1, 2}, {2, 0}})},
       {"u2", PartialBijection::from_pairs(3, {{0, 2}, {1, 0}, {2, 1}})}});
  inst.subsets.emplace_back("X", set_of(3, {0}));
  return inst;
}

// Two Z/2 orbits {1,2} and {3,4}; X meets only the first.
inline Instance gen_two_orbits() {
  Carrier carrier({"1", "2", "3", "4"});
  Instance inst;
  inst.space = FiniteSpace::discrete(4);
  inst.carrier = carrier;
  inst.group = cyclic_group(2, "s");
  inst.action = PartialAction::make_finite(
      *inst.group, carrier,
      {{"s", PartialBijection::from_pairs(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}})}});
  inst.subsets.emplace_back("X", set_of(4, {0}));
  return inst;
}

// Z/2 swap on {1,2} restricted to {1}: sigma has empty domain and the
// globalization has two points swapped by sigma.
inline Instance gen_swap_restricted() {
  Carrier carrier({"1"});
  Instance inst;
  inst.space = FiniteSpace::discrete(1);
  inst.carrier = carrier;
  inst.group = cyclic_group(2, "s");
  inst.action = PartialAction::make_finite(*inst.group, carrier,
                                           {{"s", PartialBijection::empty_map(1)}});
  PointSet x(1);
  x.set();
  inst.subsets.emplace_back("X", x);
  return inst;
}

// A deliberately broken finite action: alpha(s) is not an involution on its
// domain, so both the inverse axiom and the containment axiom fail at (s, s).
inline Instance gen_broken_involution() {
  Carrier carrier({"a", "b", "c"});
  Instance inst;
  inst.space = FiniteSpace::discrete(3);
  inst.carrier = carrier;
  inst.group = cyclic_group(2, "s");
  inst.action = PartialAction::make_finite(
      *inst.group, carrier, {{"s", PartialBijection::from_pairs(3, {{0, 1}, {1, 2}})}});
  return inst;
}

// The noetherian-core worked example: Y = {eta, a, b} with a, b below eta,
// Z/2 swapping a and b, X = {eta, a}.
inline Instance gen_core_swap() {
  Carrier carrier({"eta", "a", "b"});
  Instance inst;
  inst.space = FiniteSpace::from_relations(3, {{1, 0}, {2, 0}});
  inst.carrier = carrier;
  inst.group = cyclic_group(2, "s");
  inst.action = PartialAction::make_finite(
      *inst.group, carrier,
      {{"s", PartialBijection::from_pairs(3, {{0, 0}, {1, 2}, {2, 1}})}});
  inst.subsets.emplace_back("X", set_of(3, {0, 1}));
  return inst;
}

inline std::vector<std::string> example_names() {
  return {"cremona-f2",   "cremona-f3", "cremona-f4",      "zshift-N",
          "zshift-singleton", "zshift-evens", "zshift-broken", "a1-z2",
          "a1-z2-global", "z3-self",    "two-z2-orbits",   "z2-swap-restricted",
          "broken-involution", "core-swap"};
}

inline Instance gen_example(const std::string& name) {
  if (name == "cremona-f2") return gen_cremona(2);
  if (name == "cremona-f3") return gen_cremona(3);
  if (name == "cremona-f4") return gen_cremona(4);
  if (name == "zshift-N") return gen_zshift("N");
  if (name == "zshift-singleton") return gen_zshift("singleton");
  if (name == "zshift-evens") return gen_zshift("evens");
  if (name == "zshift-broken") return gen_zshift("broken-shift");
  if (name == "a1-z2") return gen_a1_model(3, true);
  if (name == "a1-z2-global") return gen_a1_model(3, false);
  if (name == "z3-self") return gen_z3_self();
  if (name == "two-z2-orbits") return gen_two_orbits();
  if (name == "z2-swap-restricted") return gen_swap_restricted();
  if (name == "broken-involution") return gen_broken_involution();
  if (name == "core-swap") return gen_core_swap();
  fail(errc::unknown_symbol, "unknown example '" + name + "'");
}

}  // namespace pact

#endif
