// Shared enumeration utilities and independent brute-force oracles for the
// test suites. Everything here is deliberately written in the dumbest way
// that works, so it can serve as an oracle for the library implementations.
#ifndef PACT_TESTS_SUPPORT_HPP
#define PACT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "pact/finite_space.hpp"
#include "pact/partial_bijection.hpp"
#include "pact/point_set.hpp"

namespace pact_tests {

using pact::FiniteSpace;
using pact::PartialBijection;
using pact::PointSet;

// All labeled preorders on n points; brute force over off-diagonal relation
// bit masks, keeping the transitive ones. Fine for n <= 4.
inline std::vector<FiniteSpace> all_labeled_preorders(int n) {
  std::vector<std::pair<int, int>> cells;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) cells.emplace_back(a, b);
  std::vector<FiniteSpace> out;
  for (std::uint64_t mask = 0; mask < (1ull << cells.size()); ++mask) {
    bool rel[6][6] = {};
    for (int i = 0; i < n; ++i) rel[i][i] = true;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (mask & (1ull << c)) rel[cells[c].first][cells[c].second] = true;
    bool transitive = true;
    for (int a = 0; a < n && transitive; ++a)
      for (int b = 0; b < n && transitive; ++b) {
        if (!rel[a][b]) continue;
        for (int c = 0; c < n; ++c)
          if (rel[b][c] && !rel[a][c]) {
            transitive = false;
            break;
          }
      }
    if (!transitive) continue;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && rel[a][b]) pairs.emplace_back(a, b);
    out.push_back(FiniteSpace::from_relations(n, pairs));
  }
  return out;
}

// All posets on k sorted labels (every relation points up in label order),
// deduplicated up to isomorphism. Each isomorphism class of posets appears
// exactly once.
inline std::vector<std::vector<std::pair<int, int>>> posets_upto_iso(int k) {
  std::vector<std::pair<int, int>> cells;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) cells.emplace_back(a, b);
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<int> perm(k);
  for (std::uint64_t mask = 0; mask < (1ull << cells.size()); ++mask) {
    bool rel[6][6] = {};
    for (int i = 0; i < k; ++i) rel[i][i] = true;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (mask & (1ull << c)) rel[cells[c].first][cells[c].second] = true;
    bool transitive = true;
    for (int a = 0; a < k && transitive; ++a)
      for (int b = 0; b < k && transitive; ++b) {
        if (!rel[a][b]) continue;
        for (int c = 0; c < k; ++c)
          if (rel[b][c] && !rel[a][c]) {
            transitive = false;
            break;
          }
      }
    if (!transitive) continue;
    // canonical form: minimal relation matrix over all relabelings
    for (int i = 0; i < k; ++i) perm[i] = i;
    std::vector<std::uint8_t> best;
    std::vector<int> p(perm);
    std::sort(p.begin(), p.end());
    do {
      std::vector<std::uint8_t> key(k * k, 0);
      bool ok = true;
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) key[p[a] * k + p[b]] = rel[a][b];
      (void)ok;
      if (best.empty() || key < best) best = key;
    } while (std::next_permutation(p.begin(), p.end()));
    if (!seen.insert(best).second) continue;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (a != b && rel[a][b]) pairs.emplace_back(a, b);
    out.push_back(std::move(pairs));
  }
  return out;
}

// Every finite space with exactly n points, up to homeomorphism: a poset of
// k <= n classes with class sizes summing to n (points within a class are
// topologically indistinguishable). Assignments may repeat isomorphic spaces;
// coverage is what matters here.
inline std::vector<FiniteSpace> all_spaces_upto_iso(int n) {
  std::vector<FiniteSpace> out;
  for (int k = 1; k <= n; ++k) {
    auto posets = posets_upto_iso(k);
    // multiplicities m_i >= 1 with sum n
    std::vector<int> m(k, 1);
    auto emit = [&](const std::vector<std::pair<int, int>>& poset_rel) {
      std::vector<int> offset(k + 1, 0);
      for (int i = 0; i < k; ++i) offset[i + 1] = offset[i] + m[i];
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < k; ++i)
        for (int a = offset[i]; a < offset[i + 1]; ++a)
          for (int b = offset[i]; b < offset[i + 1]; ++b)
            if (a != b) pairs.emplace_back(a, b);
      for (auto [i, j] : poset_rel)
        for (int a = offset[i]; a < offset[i + 1]; ++a)
          for (int b = offset[j]; b < offset[j + 1]; ++b) pairs.emplace_back(a, b);
      out.push_back(FiniteSpace::from_relations(n, pairs));
    };
    // enumerate compositions of n into k positive parts
    std::vector<int> comp(k, 1);
    int rest = n - k;
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == k - 1) {
        comp[pos] = 1 + left;
        m = comp;
        for (const auto& rel : posets) emit(rel);
        return;
      }
      for (int take = 0; take <= left; ++take) {
        comp[pos] = 1 + take;
        rec(pos + 1, left - take);
      }
    };
    rec(0, rest);
  }
  return out;
}

// All partial homeomorphisms of a space: order isomorphisms between a pair of
// open subsets, by backtracking.
inline std::vector<PartialBijection> all_partial_homeos(const FiniteSpace& s) {
  const int n = s.size();
  std::vector<PointSet> opens;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    PointSet u(n);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) u.set(i);
    if (s.is_open(u)) opens.push_back(u);
  }
  std::vector<PartialBijection> out;
  for (const PointSet& u : opens)
    for (const PointSet& v : opens) {
      if (u.count() != v.count()) continue;
      std::vector<int> src = pact::set_to_indices(u), dst = pact::set_to_indices(v);
      std::vector<int> img(src.size(), -1);
      std::vector<bool> used(dst.size(), false);
      std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == src.size()) {
          std::vector<std::pair<int, int>> pairs;
          for (std::size_t i = 0; i < src.size(); ++i) pairs.emplace_back(src[i], img[i]);
          out.push_back(PartialBijection::from_pairs(n, pairs));
          return;
        }
        for (std::size_t d = 0; d < dst.size(); ++d) {
          if (used[d]) continue;
          bool ok = true;
          for (std::size_t prev = 0; prev < pos && ok; ++prev)
            ok = (s.leq(src[prev], src[pos]) == s.leq(img[prev], dst[d])) &&
                 (s.leq(src[pos], src[prev]) == s.leq(dst[d], img[prev]));
          if (!ok) continue;
          img[pos] = dst[d];
          used[d] = true;
          rec(pos + 1);
          used[d] = false;
          img[pos] = -1;
        }
      };
      rec(0);
    }
  return out;
}

inline std::vector<PointSet> all_dense_opens(const FiniteSpace& s) {
  const int n = s.size();
  std::vector<PointSet> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    PointSet u(n);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) u.set(i);
    if (s.is_open(u) && s.is_dense(u)) out.push_back(u);
  }
  return out;
}

// Independent oracle for the composition-domain formula:
//   dom(g∘f) = U_f ∩ f⁻¹(U_g ∩ U_{f⁻¹}),
// computed purely with set operations.
inline PointSet compose_domain_oracle(const PartialBijection& f, const PartialBijection& g) {
  PointSet uf = f.domain();
  PointSet ug = g.domain();
  PointSet ufinv = f.codomain();  // domain of f⁻¹
  PointSet inner = ug & ufinv;
  PointSet pre(f.size());
  PartialBijection finv = f.inverse();
  for (auto y = inner.find_first(); y != PointSet::npos; y = inner.find_next(y))
    if (finv.defined(static_cast<int>(y))) pre.set(finv.apply(static_cast<int>(y)));
  return uf & pre;
}

struct Subgroup {
  std::vector<int> elements;    // sorted indices into the parent element list
  std::vector<int> generators;  // indices of a generating set (may be empty: trivial)
};

// All subgroups of a finite permutation group given by its element list.
// Extension only tries the minimal representative of each right coset, which
// keeps the search affordable up to S6.
inline std::vector<Subgroup> all_subgroups(const std::vector<std::vector<int>>& elements) {
  const int m = static_cast<int>(elements.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < m; ++i) index[elements[i]] = i;
  int identity = -1;
  std::vector<std::vector<int>> mult(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a) {
    bool is_id = true;
    for (std::size_t i = 0; i < elements[a].size(); ++i)
      is_id &= elements[a][i] == static_cast<int>(i);
    if (is_id) identity = a;
    for (int b = 0; b < m; ++b) {
      std::vector<int> prod(elements[a].size());
      for (std::size_t i = 0; i < elements[a].size(); ++i) prod[i] = elements[a][elements[b][i]];
      mult[a][b] = index.at(prod);
    }
  }

  auto close = [&](std::vector<int> gens) {
    std::vector<char> in(m, 0);
    std::vector<int> worklist = {identity};
    in[identity] = 1;
    for (std::size_t h = 0; h < worklist.size(); ++h)
      for (int g : gens) {
        int x = mult[worklist[h]][g];
        if (!in[x]) {
          in[x] = 1;
          worklist.push_back(x);
        }
      }
    std::sort(worklist.begin(), worklist.end());
    return worklist;
  };

  std::set<std::vector<int>> found;
  std::vector<Subgroup> queue;
  std::vector<int> trivial = {identity};
  found.insert(trivial);
  queue.push_back({trivial, {}});
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::vector<int> h_elems = queue[head].elements;
    std::vector<int> h_gens = queue[head].generators;
    std::vector<char> in_h(m, 0), covered(m, 0);
    for (int e : h_elems) in_h[e] = 1;
    for (int g = 0; g < m; ++g) {
      if (in_h[g] || covered[g]) continue;
      for (int e : h_elems) covered[mult[e][g]] = 1;  // the whole coset Hg
      std::vector<int> gens = h_gens;
      gens.push_back(g);
      std::vector<int> k = close(gens);
      if (found.insert(k).second) queue.push_back({std::move(k), std::move(gens)});
    }
  }
  return queue;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20191017u);  // fixed seed: deterministic test data
  return gen;
}

}  // namespace pact_tests

#endif
