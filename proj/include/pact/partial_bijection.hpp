#ifndef PACT_PARTIAL_BIJECTION_HPP
#define PACT_PARTIAL_BIJECTION_HPP

#include <utility>
#include <vector>

#include "pact/error.hpp"
#include "pact/point_set.hpp"

namespace pact {

// An injective partial map on a carrier of n points, stored as a forward
// table with -1 for "undefined". Injectivity is enforced at construction and
// preserved by every operation here.
class PartialBijection {
 public:
  PartialBijection() = default;

  static PartialBijection identity(int n) {
    PartialBijection f(n);
    for (int i = 0; i < n; ++i) f.fwd_[i] = i;
    return f;
  }

  static PartialBijection empty_map(int n) { return PartialBijection(n); }

  static PartialBijection from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    PartialBijection f(n);
    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    for (auto [src, dst] : pairs) {
      require(src >= 0 && src < n && dst >= 0 && dst < n, errc::carrier_mismatch,
              "pair outside carrier");
      require(f.fwd_[src] < 0, errc::not_injective, "source repeated in partial bijection");
      require(!hit[dst], errc::not_injective, "target repeated in partial bijection");
      f.fwd_[src] = dst;
      hit[dst] = 1;
    }
    return f;
  }

  int size() const { return static_cast<int>(fwd_.size()); }

  bool defined(int x) const { return fwd_[x] >= 0; }
  int apply(int x) const { return fwd_[x]; }  // -1 when undefined

  PointSet domain() const {
    PointSet d(fwd_.size());
    for (std::size_t i = 0; i < fwd_.size(); ++i)
      if (fwd_[i] >= 0) d.set(i);
    return d;
  }

  PointSet codomain() const {
    PointSet d(fwd_.size());
    for (int v : fwd_)
      if (v >= 0) d.set(v);
    return d;
  }

  std::size_t pair_count() const {
    std::size_t c = 0;
    for (int v : fwd_)
      if (v >= 0) ++c;
    return c;
  }

  bool is_total() const { return pair_count() == fwd_.size(); }

  bool is_identity() const {
    for (std::size_t i = 0; i < fwd_.size(); ++i)
      if (fwd_[i] != static_cast<int>(i)) return false;
    return true;
  }

  PartialBijection inverse() const {
    PartialBijection g(size());
    for (std::size_t i = 0; i < fwd_.size(); ++i)
      if (fwd_[i] >= 0) g.fwd_[fwd_[i]] = static_cast<int>(i);
    return g;
  }

  // Intersect with subset×subset.
  PartialBijection restricted(const PointSet& s) const {
    PartialBijection g(size());
    for (std::size_t i = 0; i < fwd_.size(); ++i)
      if (fwd_[i] >= 0 && s.test(i) && s.test(fwd_[i])) g.fwd_[i] = fwd_[i];
    return g;
  }

  // Re-index onto the sub-carrier selected by `s`; old_of_new lists the kept
  // original indices in order.
  PartialBijection reindexed(const PointSet& s, const std::vector<int>& old_of_new) const {
    std::vector<int> new_of_old(fwd_.size(), -1);
    for (int k = 0; k < static_cast<int>(old_of_new.size()); ++k) new_of_old[old_of_new[k]] = k;
    PartialBijection g(static_cast<int>(old_of_new.size()));
    for (int k = 0; k < static_cast<int>(old_of_new.size()); ++k) {
      int x = old_of_new[k];
      if (fwd_[x] >= 0 && s.test(fwd_[x])) g.fwd_[k] = new_of_old[fwd_[x]];
    }
    return g;
  }

  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < fwd_.size(); ++i)
      if (fwd_[i] >= 0) out.emplace_back(static_cast<int>(i), fwd_[i]);
    return out;
  }

  bool operator==(const PartialBijection& o) const { return fwd_ == o.fwd_; }
  bool operator!=(const PartialBijection& o) const { return fwd_ != o.fwd_; }

  // True when this map is contained in g as a set of pairs.
  bool subset_of(const PartialBijection& g) const {
    for (std::size_t i = 0; i < fwd_.size(); ++i)
      if (fwd_[i] >= 0 && g.fwd_[i] != fwd_[i]) return false;
    return true;
  }

 private:
  explicit PartialBijection(int n) : fwd_(static_cast<std::size_t>(n), -1) {}

  std::vector<int> fwd_;
};

// Relational composition "f then g": pairs (x, g(f(x))). When f and g are the
// partial-bijection shadows of birational maps this realizes the domain
// formula dom = U_f ∩ f⁻¹(U_g ∩ U_{f⁻¹}).
inline PartialBijection compose(const PartialBijection& f, const PartialBijection& g) {
  require(f.size() == g.size(), errc::carrier_mismatch, "compose: carriers differ");
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < f.size(); ++x) {
    int y = f.apply(x);
    if (y >= 0 && g.defined(y)) pairs.emplace_back(x, g.apply(y));
  }
  return PartialBijection::from_pairs(f.size(), pairs);
}

}  // namespace pact

#endif
