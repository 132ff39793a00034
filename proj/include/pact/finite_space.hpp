#ifndef PACT_FINITE_SPACE_HPP
#define PACT_FINITE_SPACE_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "pact/error.hpp"
#include "pact/partial_bijection.hpp"
#include "pact/point_set.hpp"

namespace pact {

// A finite Alexandrov space: points plus the specialization preorder, where
// x <= y means x lies in the closure of {y}. Opens are the up-closed sets,
// the generic point of an irreducible space is the unique maximal point, and
// dimension is strict-chain height. The relation is stored transitively
// closed.
class FiniteSpace {
 public:
  FiniteSpace() = default;

  static FiniteSpace discrete(int n) {
    FiniteSpace s;
    s.init(n);
    return s;
  }

  static FiniteSpace from_relations(int n, const std::vector<std::pair<int, int>>& le_pairs) {
    FiniteSpace s;
    s.init(n);
    for (auto [a, b] : le_pairs) {
      require(a >= 0 && a < n && b >= 0 && b < n, errc::carrier_mismatch,
              "le relation outside carrier");
      s.below_[b].set(a);
    }
    // reflexive-transitive closure (n is small everywhere in this library)
    bool changed = true;
    while (changed) {
      changed = false;
      for (int y = 0; y < n; ++y) {
        PointSet acc = s.below_[y];
        for (auto m = s.below_[y].find_first(); m != PointSet::npos;
             m = s.below_[y].find_next(m))
          acc |= s.below_[m];
        if (acc != s.below_[y]) {
          s.below_[y] = acc;
          changed = true;
        }
      }
    }
    for (int y = 0; y < n; ++y)
      for (auto m = s.below_[y].find_first(); m != PointSet::npos; m = s.below_[y].find_next(m))
        s.above_[m].set(y);
    return s;
  }

  int size() const { return n_; }

  bool leq(int a, int b) const { return below_[b].test(a); }

  // closure({y}) as a set
  const PointSet& below(int y) const { return below_[y]; }
  const PointSet& above(int x) const { return above_[x]; }

  PointSet closure(const PointSet& s) const {
    PointSet out(n_);
    for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) out |= below_[i];
    return out;
  }

  bool is_open(const PointSet& s) const {
    for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i))
      if (!above_[i].is_subset_of(s)) return false;
    return true;
  }

  bool is_closed(const PointSet& s) const {
    for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i))
      if (!below_[i].is_subset_of(s)) return false;
    return true;
  }

  PointSet interior(const PointSet& s) const {
    PointSet out(n_);
    for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i))
      if (above_[i].is_subset_of(s)) out.set(i);
    return out;
  }

  bool is_dense(const PointSet& s) const { return closure(s).count() == static_cast<std::size_t>(n_); }

  // Strict-chain height below each point. Points within one specialization
  // cycle (x <= y <= x) share a height.
  std::vector<int> dims() const {
    std::vector<int> dim(n_, -1);
    for (int x = 0; x < n_; ++x) height(x, dim);
    return dim;
  }

  int dim() const {
    int d = 0;
    for (int v : dims()) d = std::max(d, v);
    return d;
  }

  // Partition by dimension: strata()[i] = X_i. Every index 0..dim is present.
  std::vector<PointSet> strata() const {
    std::vector<int> dim = dims();
    std::vector<PointSet> out(static_cast<std::size_t>(dim.empty() ? 0 : dim_max(dim) + 1),
                              PointSet(n_));
    for (int x = 0; x < n_; ++x) out[dim[x]].set(x);
    return out;
  }

  PointSet stratum_at_least(int i) const {
    std::vector<int> dim = dims();
    PointSet out(n_);
    for (int x = 0; x < n_; ++x)
      if (dim[x] >= i) out.set(x);
    return out;
  }

  // (irreducible?, generic point or -1): irreducible iff a unique point has
  // closure equal to the whole space.
  std::pair<bool, int> irreducible() const {
    int eta = -1;
    for (int x = 0; x < n_; ++x)
      if (below_[x].count() == static_cast<std::size_t>(n_)) {
        if (eta >= 0) return {false, -1};
        eta = x;
      }
    return {eta >= 0, eta};
  }

  // The set of maximal points: up-closed, dense, and contained in every dense
  // open subset. On finite spaces this is the minimum of the dense opens.
  PointSet minimal_dense_open() const {
    PointSet out(n_);
    for (int x = 0; x < n_; ++x)
      if (above_[x].is_subset_of(below_[x])) out.set(x);  // everything above is equivalent
    return out;
  }

  bool is_automorphism(const std::vector<int>& perm) const {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (leq(a, b) != leq(perm[a], perm[b])) return false;
    return true;
  }

  // All order automorphisms, by backtracking with up/down degree pruning.
  std::vector<std::vector<int>> homeomorphism_group(int cap = 10) const {
    require(n_ <= cap, errc::cap_exceeded, "homeomorphism_group: space larger than cap");
    std::vector<std::vector<int>> out;
    std::vector<int> perm(n_, -1);
    std::vector<bool> used(n_, false);
    backtrack_automorphisms(0, perm, used, out);
    return out;
  }

  // Partial homeomorphism: domain and codomain open, order-isomorphism
  // between them.
  bool is_partial_homeomorphism(const PartialBijection& f) const {
    if (f.size() != n_) return false;
    if (!is_open(f.domain()) || !is_open(f.codomain())) return false;
    for (int a = 0; a < n_; ++a) {
      if (!f.defined(a)) continue;
      for (int b = 0; b < n_; ++b) {
        if (!f.defined(b)) continue;
        if (leq(a, b) != leq(f.apply(a), f.apply(b))) return false;
      }
    }
    return true;
  }

  // Subspace on `keep`; old_of_new receives the original indices in order.
  FiniteSpace subspace(const PointSet& keep, std::vector<int>* old_of_new = nullptr) const {
    std::vector<int> idx = set_to_indices(keep);
    if (old_of_new) *old_of_new = idx;
    FiniteSpace s;
    s.init(static_cast<int>(idx.size()));
    for (int a = 0; a < s.n_; ++a)
      for (int b = 0; b < s.n_; ++b)
        if (leq(idx[a], idx[b])) {
          s.below_[b].set(a);
          s.above_[a].set(b);
        }
    return s;
  }

  std::vector<std::pair<int, int>> relation_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int b = 0; b < n_; ++b)
      for (auto a = below_[b].find_first(); a != PointSet::npos; a = below_[b].find_next(a))
        if (static_cast<int>(a) != b) out.emplace_back(static_cast<int>(a), b);
    return out;
  }

  bool operator==(const FiniteSpace& o) const { return n_ == o.n_ && below_ == o.below_; }

 private:
  void init(int n) {
    n_ = n;
    below_.assign(n, PointSet(n));
    above_.assign(n, PointSet(n));
    for (int i = 0; i < n; ++i) {
      below_[i].set(i);
      above_[i].set(i);
    }
  }

  static int dim_max(const std::vector<int>& dim) {
    int d = 0;
    for (int v : dim) d = std::max(d, v);
    return d;
  }

  int height(int x, std::vector<int>& memo) const {
    if (memo[x] >= 0) return memo[x];
    memo[x] = 0;  // also cuts cycles: equivalent points share height 0 first
    int best = 0;
    for (auto y = below_[x].find_first(); y != PointSet::npos; y = below_[x].find_next(y)) {
      int yi = static_cast<int>(y);
      if (yi == x || leq(x, yi)) continue;  // skip the equivalence class of x
      best = std::max(best, height(yi, memo) + 1);
    }
    memo[x] = best;
    return best;
  }

  void backtrack_automorphisms(int pos, std::vector<int>& perm, std::vector<bool>& used,
                               std::vector<std::vector<int>>& out) const {
    if (pos == n_) {
      out.push_back(perm);
      return;
    }
    for (int img = 0; img < n_; ++img) {
      if (used[img]) continue;
      if (below_[pos].count() != below_[img].count() || above_[pos].count() != above_[img].count())
        continue;
      bool ok = true;
      for (int prev = 0; prev < pos && ok; ++prev)
        ok = leq(prev, pos) == leq(perm[prev], img) && leq(pos, prev) == leq(img, perm[prev]);
      if (!ok) continue;
      perm[pos] = img;
      used[img] = true;
      backtrack_automorphisms(pos + 1, perm, used, out);
      used[img] = false;
      perm[pos] = -1;
    }
  }

  int n_ = 0;
  std::vector<PointSet> below_;
  std::vector<PointSet> above_;
};

}  // namespace pact

#endif
