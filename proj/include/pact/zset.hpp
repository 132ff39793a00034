#ifndef PACT_ZSET_HPP
#define PACT_ZSET_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pact/error.hpp"

namespace pact {

// A subset of Z at finite symmetric difference from one of the four shift-
// commensurated bases {∅, Z, Z≥0, Z≤0}. The base is determined by the set
// itself (membership near −∞ and +∞), so the representation is canonical
// once delta is deduplicated.
class SymbolicZSet {
 public:
  enum class Base { empty, all, nonneg, nonpos };

  SymbolicZSet() = default;

  static SymbolicZSet make(Base base, std::vector<std::int64_t> delta = {}) {
    SymbolicZSet s;
    s.left_ = base == Base::all || base == Base::nonpos;
    s.right_ = base == Base::all || base == Base::nonneg;
    std::sort(delta.begin(), delta.end());
    delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
    s.delta_ = std::move(delta);
    return s;
  }

  static SymbolicZSet empty_set() { return make(Base::empty); }
  static SymbolicZSet all_set() { return make(Base::all); }
  static SymbolicZSet naturals() { return make(Base::nonneg); }
  static SymbolicZSet singleton(std::int64_t n) { return make(Base::empty, {n}); }

  Base base() const {
    if (left_ && right_) return Base::all;
    if (left_) return Base::nonpos;
    if (right_) return Base::nonneg;
    return Base::empty;
  }

  const std::vector<std::int64_t>& delta() const { return delta_; }

  bool base_contains(std::int64_t n) const { return n >= 0 ? right_ : left_; }

  bool contains(std::int64_t n) const {
    return base_contains(n) != std::binary_search(delta_.begin(), delta_.end(), n);
  }

  bool is_finite() const { return !left_ && !right_; }
  bool is_cofinite() const { return left_ && right_; }
  bool is_empty() const { return is_finite() && delta_.empty(); }

  // size when finite
  std::int64_t finite_size() const {
    require(is_finite(), errc::internal, "finite_size of an infinite set");
    return static_cast<std::int64_t>(delta_.size());
  }

  std::vector<std::int64_t> finite_elements() const {
    require(is_finite(), errc::internal, "finite_elements of an infinite set");
    return delta_;
  }

  SymbolicZSet shifted(std::int64_t k) const {
    SymbolicZSet out;
    out.left_ = left_;
    out.right_ = right_;
    std::vector<std::int64_t> candidates;
    for (auto d : delta_) candidates.push_back(d + k);
    for (std::int64_t n = std::min<std::int64_t>(0, k); n < std::max<std::int64_t>(0, k); ++n)
      candidates.push_back(n);
    for (auto n : candidates)
      if (contains(n - k) != out.base_contains(n)) out.delta_.push_back(n);
    std::sort(out.delta_.begin(), out.delta_.end());
    out.delta_.erase(std::unique(out.delta_.begin(), out.delta_.end()), out.delta_.end());
    return out;
  }

  SymbolicZSet complemented() const {
    SymbolicZSet out = *this;
    out.left_ = !left_;
    out.right_ = !right_;
    return out;
  }

  template <typename Op>
  static SymbolicZSet combine(const SymbolicZSet& a, const SymbolicZSet& b, Op op) {
    SymbolicZSet out;
    out.left_ = op(a.left_, b.left_);
    out.right_ = op(a.right_, b.right_);
    std::vector<std::int64_t> candidates = a.delta_;
    candidates.insert(candidates.end(), b.delta_.begin(), b.delta_.end());
    for (auto n : candidates)
      if (op(a.contains(n), b.contains(n)) != out.base_contains(n)) out.delta_.push_back(n);
    std::sort(out.delta_.begin(), out.delta_.end());
    out.delta_.erase(std::unique(out.delta_.begin(), out.delta_.end()), out.delta_.end());
    return out;
  }

  friend SymbolicZSet set_union(const SymbolicZSet& a, const SymbolicZSet& b) {
    return combine(a, b, [](bool x, bool y) { return x || y; });
  }
  friend SymbolicZSet set_intersection(const SymbolicZSet& a, const SymbolicZSet& b) {
    return combine(a, b, [](bool x, bool y) { return x && y; });
  }
  friend SymbolicZSet set_difference(const SymbolicZSet& a, const SymbolicZSet& b) {
    return combine(a, b, [](bool x, bool y) { return x && !y; });
  }
  friend SymbolicZSet set_symdiff(const SymbolicZSet& a, const SymbolicZSet& b) {
    return combine(a, b, [](bool x, bool y) { return x != y; });
  }

  bool operator==(const SymbolicZSet& o) const {
    return left_ == o.left_ && right_ == o.right_ && delta_ == o.delta_;
  }
  bool operator!=(const SymbolicZSet& o) const { return !(*this == o); }

  static const char* base_name(Base b) {
    switch (b) {
      case Base::empty: return "empty";
      case Base::all: return "Z";
      case Base::nonneg: return "N";
      case Base::nonpos: return "negN";
    }
    return "?";
  }

  static Base base_from_name(const std::string& s) {
    if (s == "empty") return Base::empty;
    if (s == "Z") return Base::all;
    if (s == "N") return Base::nonneg;
    if (s == "negN") return Base::nonpos;
    fail(errc::parse_error, "unknown zset base '" + s + "'");
  }

 private:
  bool left_ = false;   // membership near -inf
  bool right_ = false;  // membership near +inf
  std::vector<std::int64_t> delta_;
};

// Residue classes mod m. Not representable as a SymbolicZSet unless trivial;
// used to express non-commensurated subsets of the shift such as the evens.
struct PeriodicZSet {
  std::int64_t modulus = 1;
  std::vector<int> residues;  // sorted, within [0, modulus)

  static PeriodicZSet make(std::int64_t m, std::vector<int> rs) {
    require(m >= 1, errc::parse_error, "periodic modulus must be >= 1");
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    for (int r : rs)
      require(r >= 0 && r < m, errc::parse_error, "periodic residue out of range");
    return PeriodicZSet{m, std::move(rs)};
  }

  bool contains(std::int64_t n) const {
    int r = static_cast<int>(((n % modulus) + modulus) % modulus);
    return std::binary_search(residues.begin(), residues.end(), r);
  }

  bool trivial() const {
    return residues.empty() || static_cast<std::int64_t>(residues.size()) == modulus;
  }

  SymbolicZSet as_symbolic() const {
    require(trivial(), errc::inexpressible_subset, "periodic subset is not base-form representable");
    return residues.empty() ? SymbolicZSet::empty_set() : SymbolicZSet::all_set();
  }
};

using ZSubset = std::variant<SymbolicZSet, PeriodicZSet>;

inline bool zsubset_contains(const ZSubset& s, std::int64_t n) {
  return std::visit([n](const auto& v) { return v.contains(n); }, s);
}

}  // namespace pact

#endif
