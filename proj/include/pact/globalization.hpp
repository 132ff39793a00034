#ifndef PACT_GLOBALIZATION_HPP
#define PACT_GLOBALIZATION_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pact/error.hpp"
#include "pact/orbit.hpp"
#include "pact/partial_action.hpp"

namespace pact {

// Canonical representative of a class of G×X: the length-lex minimal explored
// member.
struct GlobalPoint {
  Word word;
  int carrier_point = -1;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<int> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace detail

// The universal globalization of a partial action, truncated to a word ball
// for infinite groups. Pairs (g,x) and (h,y) are merged whenever some k in
// the same ball has (kg)x and (kh)y defined and equal; the embedding sends x
// to the class of (1,x). `exact` is claimed only when the class structure
// provably stabilized inside the ball.
class Globalization {
 public:
  int num_points() const { return static_cast<int>(reps_.size()); }
  const GlobalPoint& rep(int cls) const { return reps_[cls]; }
  const std::vector<std::pair<int, int>>& members(int cls) const { return members_[cls]; }

  const GroupHandle& group() const { return group_; }
  const Carrier& carrier() const { return carrier_; }
  const std::vector<Word>& ball() const { return ball_; }

  int embed(int carrier_point) const { return embed_[carrier_point]; }
  const std::vector<int>& embedding() const { return embed_; }

  // carrier point of an embedded class, -1 otherwise
  int embedded_point(int cls) const { return embedded_point_[cls]; }

  bool exact() const { return exact_; }
  int radius() const { return radius_; }
  const std::string& note() const { return note_; }

  int num_letters() const { return 2 * group_.num_generators(); }
  Letter letter_of_rank(int rank) const {
    return Letter{rank % group_.num_generators(), rank >= group_.num_generators()};
  }

  std::optional<int> apply_letter(int rank, int cls) const {
    int img = letter_action_[rank][cls];
    if (img < 0) return std::nullopt;
    return img;
  }

  std::optional<int> apply(const Word& w, int cls) const {
    // last letter acts first
    int cur = cls;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
      int rank = it->inverse ? group_.num_generators() + it->gen : it->gen;
      int img = letter_action_[rank][cur];
      if (img < 0) return std::nullopt;
      cur = img;
    }
    return cur;
  }

  std::optional<int> class_of(const Word& w, int x) const {
    Word n = group_.normalize(w);
    auto it = ball_index_.find(group_.word_to_string(n));
    if (it == ball_index_.end()) return std::nullopt;
    return class_of_pair_[static_cast<std::size_t>(it->second) * carrier_.size() + x];
  }

  std::string point_name(int cls) const {
    return "[" + group_.word_to_string(reps_[cls].word) + "," +
           carrier_.name(reps_[cls].carrier_point) + "]";
  }

  friend Globalization globalize(const PartialAction& a, int radius);

 private:
  GroupHandle group_;
  Carrier carrier_;
  std::vector<Word> ball_;
  std::map<std::string, int> ball_index_;
  std::vector<int> class_of_pair_;
  std::vector<GlobalPoint> reps_;
  std::vector<std::vector<std::pair<int, int>>> members_;
  std::vector<int> embed_;
  std::vector<int> embedded_point_;
  std::vector<std::vector<int>> letter_action_;
  bool exact_ = false;
  int radius_ = -1;
  std::string note_;
};

namespace detail {

// One union-find pass over the first `active` ball words.
inline void merge_pass(const PartialAction& a, const std::vector<Word>& ball, int active,
                       UnionFind& uf) {
  const int n = a.carrier().size();
  const GroupHandle& grp = a.group();
  std::unordered_map<std::string, PartialBijection> cache;
  std::vector<int> first_pair(n);
  for (int k = 0; k < active; ++k) {
    std::fill(first_pair.begin(), first_pair.end(), -1);
    for (int g = 0; g < active; ++g) {
      Word prod = grp.is_finite() ? grp.normalize(grp.concat_reduced(ball[k], ball[g]))
                                  : grp.concat_reduced(ball[k], ball[g]);
      const PartialBijection* pb;
      if (grp.is_finite()) {
        pb = &a.element_image(grp.element_of(prod));
      } else {
        std::string key = grp.word_to_string(prod);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, a.evaluate(prod)).first;
        pb = &it->second;
      }
      for (int x = 0; x < n; ++x) {
        int v = pb->apply(x);
        if (v < 0) continue;
        int id = g * n + x;
        if (first_pair[v] < 0)
          first_pair[v] = id;
        else
          uf.unite(first_pair[v], id);
      }
    }
  }
}

}  // namespace detail

inline Globalization globalize(const PartialAction& a, int radius = 1) {
  const GroupHandle& grp = a.group();
  const int n = a.carrier().size();
  require(grp.is_finite() || radius >= 1, errc::bad_group, "globalize needs radius >= 1");

  Globalization g;
  g.group_ = grp;
  g.carrier_ = a.carrier();
  g.ball_ = grp.is_finite() ? grp.ball(0) : grp.ball(radius);
  g.radius_ = grp.is_finite() ? -1 : radius;
  const int nb = static_cast<int>(g.ball_.size());
  for (int i = 0; i < nb; ++i) g.ball_index_.emplace(grp.word_to_string(g.ball_[i]), i);

  detail::UnionFind uf(static_cast<std::size_t>(nb) * n);
  detail::merge_pass(a, g.ball_, nb, uf);

  // classes, canonically ordered by their minimal member
  std::map<int, std::vector<std::pair<int, int>>> by_root;
  for (int w = 0; w < nb; ++w)
    for (int x = 0; x < n; ++x) by_root[uf.find(w * n + x)].emplace_back(w, x);
  std::vector<std::vector<std::pair<int, int>>> classes;
  for (auto& [root, mem] : by_root) {
    (void)root;
    std::sort(mem.begin(), mem.end());
    classes.push_back(std::move(mem));
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a_, const auto& b_) { return a_.front() < b_.front(); });

  g.class_of_pair_.assign(static_cast<std::size_t>(nb) * n, -1);
  for (int c = 0; c < static_cast<int>(classes.size()); ++c) {
    for (auto [w, x] : classes[c]) g.class_of_pair_[static_cast<std::size_t>(w) * n + x] = c;
    g.reps_.push_back({g.ball_[classes[c].front().first], classes[c].front().second});
  }
  g.members_ = std::move(classes);

  g.embed_.assign(n, -1);
  for (int x = 0; x < n; ++x) g.embed_[x] = g.class_of_pair_[x];  // word index 0 is the empty word
  g.embedded_point_.assign(g.reps_.size(), -1);
  for (int x = 0; x < n; ++x) g.embedded_point_[g.embed_[x]] = x;

  // letter action on classes; records inconsistencies for the exactness flag
  const int nl = 2 * grp.num_generators();
  bool action_consistent = true;
  g.letter_action_.assign(nl, std::vector<int>(g.reps_.size(), -1));
  for (int rank = 0; rank < nl; ++rank) {
    Letter l = g.letter_of_rank(rank);
    Word lw;
    lw.letters.push_back(l);
    for (int c = 0; c < static_cast<int>(g.members_.size()); ++c) {
      int img = -1;
      for (auto [w, x] : g.members_[c]) {
        Word moved = grp.is_finite() ? grp.normalize(grp.concat_reduced(lw, g.ball_[w]))
                                     : grp.concat_reduced(lw, g.ball_[w]);
        auto it = g.ball_index_.find(grp.word_to_string(moved));
        if (it == g.ball_index_.end()) continue;
        int found = g.class_of_pair_[static_cast<std::size_t>(it->second) * n + x];
        if (img < 0)
          img = found;
        else if (img != found)
          action_consistent = false;
      }
      g.letter_action_[rank][c] = img;
    }
  }

  if (grp.is_finite()) {
    g.exact_ = true;
    return g;
  }

  // Conservative exactness for free/cyclic kinds: the last layer merged no
  // interior classes, every boundary class steps into interior classes, and
  // the induced letter action is single-valued.
  int nb_small = 0;
  while (nb_small < nb && g.ball_[nb_small].length() < static_cast<std::size_t>(radius))
    ++nb_small;
  detail::UnionFind uf_small(static_cast<std::size_t>(nb_small) * n);
  detail::merge_pass(a, g.ball_, nb_small, uf_small);

  bool interior_stable = true;
  {
    std::map<int, int> small_of_full;
    for (int w = 0; w < nb_small && interior_stable; ++w)
      for (int x = 0; x < n && interior_stable; ++x) {
        int full_root = g.class_of_pair_[static_cast<std::size_t>(w) * n + x];
        int small_root = uf_small.find(w * n + x);
        auto it = small_of_full.find(full_root);
        if (it == small_of_full.end())
          small_of_full.emplace(full_root, small_root);
        else if (it->second != small_root)
          interior_stable = false;  // two radius-(r-1) classes were merged by layer r
      }
  }

  bool boundary_resolved = true;
  for (int c = 0; c < static_cast<int>(g.members_.size()) && boundary_resolved; ++c) {
    bool has_boundary = false;
    for (auto [w, x] : g.members_[c]) {
      (void)x;
      if (g.ball_[w].length() == static_cast<std::size_t>(radius)) has_boundary = true;
    }
    if (!has_boundary) continue;
    for (int rank = 0; rank < nl && boundary_resolved; ++rank) {
      int img = g.letter_action_[rank][c];
      if (img < 0) {
        boundary_resolved = false;
        break;
      }
      bool interior_rep = false;
      for (auto [w, x] : g.members_[img]) {
        (void)x;
        if (g.ball_[w].length() < static_cast<std::size_t>(radius)) interior_rep = true;
      }
      if (!interior_rep) boundary_resolved = false;
    }
  }

  g.exact_ = interior_stable && boundary_resolved && action_consistent;
  if (!g.exact_) {
    g.note_ = "truncation-inconclusive:";
    if (!interior_stable) g.note_ += " classes-still-merging-at-boundary";
    if (!boundary_resolved) g.note_ += " boundary-classes-unresolved";
    if (!action_consistent) g.note_ += " letter-action-ambiguous";
  }
  return g;
}

// True iff restricting the induced global action to the embedded carrier
// reproduces the original partial action exactly.
inline bool check_restriction(const Globalization& g, const PartialAction& a) {
  if (!(g.carrier() == a.carrier())) return false;
  const int n = a.carrier().size();
  for (int s = 0; s < a.group().num_generators(); ++s) {
    const PartialBijection& pb = a.generator_image(s);
    for (int x = 0; x < n; ++x) {
      auto img = g.apply_letter(s, g.embed(x));
      int y = pb.apply(x);
      if (y >= 0) {
        if (!img || *img != g.embed(y)) return false;
      } else {
        // defined image may exist outside the embedded carrier, but must not
        // land on an embedded point
        if (img && g.embedded_point(*img) >= 0) return false;
      }
    }
  }
  return true;
}

struct RecoveryReport {
  bool ok = false;
  std::vector<std::vector<int>> missed_orbits;  // orbits of E not meeting X
  std::vector<int> iso;                         // globalization class -> E point
  std::string failure;
};

// Restrict a finite global G-set E to X, globalize, and identify the result
// with E by a G-equivariant bijection fixing X.
inline RecoveryReport recover_action_on_subset(const PartialAction& E, const PointSet& X,
                                               int radius = -1) {
  require(E.is_global(), errc::bad_group, "recover_action_on_subset needs a global action");
  const int n = E.carrier().size();
  RecoveryReport rep;

  std::vector<std::vector<int>> gens;
  for (int s = 0; s < E.group().num_generators(); ++s) {
    std::vector<int> p(n);
    for (int x = 0; x < n; ++x) p[x] = E.generator_image(s).apply(x);
    gens.push_back(std::move(p));
  }
  for (const auto& orbit : perm_orbits(n, gens)) {
    bool meets = false;
    for (int x : orbit) meets |= X.test(x);
    if (!meets) rep.missed_orbits.push_back(orbit);
  }
  if (!rep.missed_orbits.empty()) {
    rep.failure = "orbit-missed";
    return rep;
  }

  PartialAction restricted = E.restricted(X);
  std::vector<int> old_of_new = set_to_indices(X);
  Globalization g = globalize(restricted, radius > 0 ? radius : n + 2);

  rep.iso.assign(g.num_points(), -1);
  std::vector<int> hit(n, 0);
  for (int c = 0; c < g.num_points(); ++c) {
    int value = -1;
    for (auto [w, x] : g.members(c)) {
      int v = E.evaluate(g.ball()[w]).apply(old_of_new[x]);
      if (v < 0) {
        rep.failure = "internal: total action undefined";
        return rep;
      }
      if (value < 0) value = v;
      if (value != v) {
        rep.failure = "quotient identifies points that differ in E";
        return rep;
      }
    }
    rep.iso[c] = value;
    if (hit[value]++) {
      rep.failure = "recovered map not injective (exploration radius too small, or "
                    "free-kind restriction lost transitions)";
      return rep;
    }
  }
  for (int x = 0; x < n; ++x)
    if (!hit[x]) {
      rep.failure = "recovered map not surjective onto E";
      return rep;
    }
  for (int k = 0; k < static_cast<int>(old_of_new.size()); ++k)
    if (rep.iso[g.embed(k)] != old_of_new[k]) {
      rep.failure = "recovered map does not fix X";
      return rep;
    }
  for (int s = 0; s < E.group().num_generators(); ++s)
    for (int c = 0; c < g.num_points(); ++c) {
      auto img = g.apply_letter(s, c);
      if (!img) {
        rep.failure = "induced action undefined at explored radius";
        return rep;
      }
      if (rep.iso[*img] != gens[s][rep.iso[c]]) {
        rep.failure = "recovered map not equivariant";
        return rep;
      }
    }
  rep.ok = true;
  return rep;
}

}  // namespace pact

#endif
