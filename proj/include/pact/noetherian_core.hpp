#ifndef PACT_NOETHERIAN_CORE_HPP
#define PACT_NOETHERIAN_CORE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pact/error.hpp"
#include "pact/finite_space.hpp"
#include "pact/orbit.hpp"

namespace pact {

// Output of the noetherian-core computation: a dense invariant open U, the
// full pair-witness table, and the intermediates of the construction so the
// whole run can be replayed from the certificate.
struct CoreCertificate {
  PointSet U, K, W, Uprime, V0;
  std::vector<PointSet> Ux;                    // U_x for every point x
  std::map<std::pair<int, int>, Word> pair_witness;
  std::vector<WordPerm> elements;              // the closed group, word-labeled
};

// Given a finite space Y, a continuous action by total homeomorphisms (the
// named generators; the finite group they generate is closed internally), and
// a dense open X, produce a dense G-invariant open U such that every pair of
// U-points is simultaneously movable into X:
//
//   U_x = { y : some g has gx and gy both in X } = union of g⁻¹X over gx in X
//   K   = closure of the union of F_x = Y∖U_x over the minimal dense open
//   W   = Y∖K,  U' = interior of the intersection of U_y over y in W,
//   U   = U'∩W.
//
// On a finite space the set of dense opens has a minimum (the maximal
// points), which replaces the noetherian choice of V; that shortcut is
// exercised against the enumerate-all-dense-opens oracle in the tests.
inline CoreCertificate noetherian_core(const FiniteSpace& y,
                                       const std::vector<std::vector<int>>& generators,
                                       const PointSet& x) {
  const int n = y.size();
  require(y.is_open(x) && y.is_dense(x), errc::x_not_dense_open, "X must be dense open in Y");
  require(!generators.empty(), errc::bad_group, "action needs at least one generator");
  for (const auto& p : generators) {
    require(static_cast<int>(p.size()) == n, errc::carrier_mismatch, "generator size mismatch");
    std::vector<char> seen(n, 0);
    for (int v : p) {
      require(v >= 0 && v < n && !seen[v], errc::action_not_continuous,
              "generator is not a bijection");
      seen[v] = 1;
    }
    require(y.is_automorphism(p), errc::action_not_continuous,
            "generator is not a homeomorphism of Y");
  }

  CoreCertificate cert;
  cert.elements = close_generators(generators);

  // U_x, with the symmetry y∈U_x ⟺ x∈U_y and equivariance U_{hx} = hU_x
  // asserted as internal sanity checks.
  cert.Ux.assign(n, PointSet(n));
  for (const auto& el : cert.elements) {
    PointSet pre_x(n);  // g⁻¹X
    for (int p = 0; p < n; ++p)
      if (x.test(el.perm[p])) pre_x.set(p);
    for (int p = 0; p < n; ++p)
      if (x.test(el.perm[p])) cert.Ux[p] |= pre_x;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      require(cert.Ux[a].test(b) == cert.Ux[b].test(a), errc::internal,
              "U_x symmetry violated");
  for (const auto& el : cert.elements)
    for (int p = 0; p < n; ++p)
      require(set_image(cert.Ux[p], el.perm) == cert.Ux[el.perm[p]], errc::internal,
              "U_x equivariance violated");

  cert.V0 = y.minimal_dense_open();
  PointSet f_union(n);
  for (auto v = cert.V0.find_first(); v != PointSet::npos; v = cert.V0.find_next(v))
    f_union |= ~cert.Ux[v];
  cert.K = y.closure(f_union);
  cert.W = ~cert.K;

  PointSet inter = full_set(n);
  for (auto w = cert.W.find_first(); w != PointSet::npos; w = cert.W.find_next(w))
    inter &= cert.Ux[w];
  cert.Uprime = y.interior(inter);
  cert.U = cert.Uprime & cert.W;

  require(y.is_open(cert.U) && y.is_dense(cert.U), errc::internal,
          "core output is not a dense open");
  for (const auto& el : cert.elements)
    require(set_image(cert.U, el.perm) == cert.U, errc::internal, "core output not invariant");

  for (auto a = cert.U.find_first(); a != PointSet::npos; a = cert.U.find_next(a))
    for (auto b = cert.U.find_first(); b != PointSet::npos; b = cert.U.find_next(b)) {
      bool found = false;
      for (const auto& el : cert.elements)
        if (x.test(el.perm[a]) && x.test(el.perm[b])) {
          cert.pair_witness[{static_cast<int>(a), static_cast<int>(b)}] = el.word;
          found = true;
          break;
        }
      require(found, errc::internal, "pair witness missing; the lemma guarantees one");
    }
  return cert;
}

}  // namespace pact

#endif
