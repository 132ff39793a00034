#ifndef PACT_PARTIAL_ACTION_HPP
#define PACT_PARTIAL_ACTION_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pact/carrier.hpp"
#include "pact/error.hpp"
#include "pact/group.hpp"
#include "pact/partial_bijection.hpp"

namespace pact {

struct ActionViolation {
  enum class Kind { identity_not_id, inverse_mismatch, containment };
  Kind kind;
  Word g, h;   // containment: the pair (g, h); inverse: only g
  int point;   // carrier index witnessing the violation, -1 if none
  std::string note;
};

struct ValidationReport {
  std::vector<ActionViolation> violations;
  long pairs_checked = 0;
  bool ok() const { return violations.empty(); }
};

// A group handle plus generator-image assignment.
//
// Finite-kind actions store the image of every group element explicitly and
// evaluate() returns the stored value; the containment axiom α(gh) ⊇ α(g)α(h)
// is a property validate() checks, never an assumption. Free/cyclic-kind
// actions define α(w) as the composition of generator images along the
// reduced word, which is a partial action by construction.
class PartialAction {
 public:
  PartialAction() = default;

  // Free or cyclic kind: one image per generator.
  static PartialAction make_free(GroupHandle group, Carrier carrier,
                                 std::vector<PartialBijection> generator_images) {
    require(group.kind() != GroupKind::finite_kind, errc::bad_group,
            "make_free needs a free or cyclic group");
    require(static_cast<int>(generator_images.size()) == group.num_generators(),
            errc::bad_group, "one image per generator required");
    for (const auto& pb : generator_images)
      require(pb.size() == carrier.size(), errc::carrier_mismatch, "image size != carrier");
    PartialAction a;
    a.group_ = std::move(group);
    a.carrier_ = std::move(carrier);
    a.images_ = std::move(generator_images);
    return a;
  }

  // Finite kind: images keyed by element name; missing elements get the empty
  // map, the identity element is forced to the identity map.
  static PartialAction make_finite(GroupHandle group, Carrier carrier,
                                   const std::map<std::string, PartialBijection>& by_element) {
    require(group.is_finite(), errc::bad_group, "make_finite needs a finite group");
    PartialAction a;
    const int n = carrier.size();
    a.images_.assign(group.num_symbols(), PartialBijection::empty_map(n));
    a.images_[group.identity_element()] = PartialBijection::identity(n);
    for (const auto& [name, pb] : by_element) {
      require(pb.size() == n, errc::carrier_mismatch, "image size != carrier");
      int e = -1;
      for (int i = 0; i < group.num_symbols(); ++i)
        if (group.symbol(i) == name) e = i;
      require(e >= 0, errc::unknown_symbol, "unknown element '" + name + "'");
      require(e != group.identity_element(), errc::bad_group,
              "identity image is fixed and cannot be assigned");
      a.images_[e] = pb;
    }
    a.group_ = std::move(group);
    a.carrier_ = std::move(carrier);
    return a;
  }

  const GroupHandle& group() const { return group_; }
  const Carrier& carrier() const { return carrier_; }

  const PartialBijection& generator_image(int gen) const {
    return group_.is_finite() ? images_[group_.generator_element(gen)] : images_[gen];
  }

  const PartialBijection& element_image(int element) const {
    require(group_.is_finite(), errc::internal, "element_image on infinite group");
    return images_[element];
  }

  PartialBijection letter_image(const Letter& l) const {
    const PartialBijection& pb = generator_image(l.gen);
    return l.inverse ? pb.inverse() : pb;
  }

  PartialBijection evaluate(const Word& w) const {
    for (const Letter& l : w.letters)
      require(l.gen >= 0 && l.gen < group_.num_generators(), errc::unknown_symbol,
              "word uses unknown generator");
    if (group_.is_finite()) return images_[group_.element_of(w)];
    // Apply the last letter first: α(w) = α(l₁)∘…∘α(l_k).
    Word r = group_.reduce(w);
    PartialBijection acc = PartialBijection::identity(carrier_.size());
    for (const Letter& l : r.letters) acc = compose(letter_image(l), acc);
    return acc;
  }

  bool is_global() const {
    if (group_.is_finite()) {
      for (const auto& pb : images_)
        if (!pb.is_total()) return false;
      return true;
    }
    for (int g = 0; g < group_.num_generators(); ++g)
      if (!generator_image(g).is_total()) return false;
    return true;
  }

  // Exhaustive axiom check for finite groups; bounded self-test over reduced
  // words for free/cyclic kinds (those satisfy the axioms by construction).
  ValidationReport validate(int word_length_bound = 3) const {
    ValidationReport rep;
    const int n = carrier_.size();
    if (group_.is_finite()) {
      const int m = group_.num_symbols();
      if (!images_[group_.identity_element()].is_identity())
        rep.violations.push_back({ActionViolation::Kind::identity_not_id, Word{}, Word{}, -1,
                                  "alpha(1) is not the identity"});
      for (int g = 0; g < m; ++g) {
        if (images_[group_.inverse_element(g)] != images_[g].inverse()) {
          int witness = -1;
          for (int x = 0; x < n; ++x) {
            int via_inv = images_[group_.inverse_element(g)].apply(x);
            int expect = images_[g].inverse().apply(x);
            if (via_inv != expect) {
              witness = x;
              break;
            }
          }
          rep.violations.push_back({ActionViolation::Kind::inverse_mismatch,
                                    group_.min_word(g), Word{}, witness,
                                    "alpha(g^-1) != alpha(g)^-1"});
        }
      }
      for (int g = 0; g < m; ++g)
        for (int h = 0; h < m; ++h) {
          ++rep.pairs_checked;
          const PartialBijection& gh = images_[group_.product(g, h)];
          for (int x = 0; x < n; ++x) {
            int y = images_[h].apply(x);
            if (y < 0) continue;
            int z = images_[g].apply(y);
            if (z < 0) continue;
            if (gh.apply(x) != z) {
              rep.violations.push_back({ActionViolation::Kind::containment, group_.min_word(g),
                                        group_.min_word(h), x,
                                        "alpha(gh) does not extend alpha(g)alpha(h)"});
              break;
            }
          }
        }
      return rep;
    }
    // free / cyclic self-test
    std::vector<Word> words = group_.ball(word_length_bound);
    std::vector<PartialBijection> vals;
    vals.reserve(words.size());
    for (const Word& w : words) vals.push_back(evaluate(w));
    for (std::size_t i = 0; i < words.size(); ++i)
      if (evaluate(group_.inverse_word(words[i])) != vals[i].inverse())
        rep.violations.push_back({ActionViolation::Kind::inverse_mismatch, words[i], Word{}, -1,
                                  "alpha(w^-1) != alpha(w)^-1"});
    // Containment for every pair (w1, w2): a DFS over the w2 tree keeps the
    // value of reduced(w1·w2) incrementally, so each product is evaluated once.
    const int nl = 2 * group_.num_generators();
    for (std::size_t i = 0; i < words.size(); ++i) {
      std::vector<Letter> prod = words[i].letters;   // reduced(w1 · w2-prefix)
      std::vector<PartialBijection> prod_vals;       // values of its prefixes
      prod_vals.push_back(PartialBijection::identity(n));
      for (const Letter& l : prod) prod_vals.push_back(compose(letter_image(l), prod_vals.back()));
      PartialBijection w2_val = PartialBijection::identity(n);
      Word w2;
      std::function<void()> dfs = [&]() {
        ++rep.pairs_checked;
        PartialBijection rhs = compose(w2_val, vals[i]);  // apply w2 first, then w1
        const PartialBijection& lhs = prod_vals.back();
        if (!rhs.subset_of(lhs)) {
          int witness = -1;
          for (int x = 0; x < n; ++x)
            if (rhs.defined(x) && lhs.apply(x) != rhs.apply(x)) witness = x;
          rep.violations.push_back({ActionViolation::Kind::containment, words[i], w2, witness,
                                    "alpha(w1:w2) does not extend alpha(w1)alpha(w2)"});
        }
        if (w2.length() == static_cast<std::size_t>(word_length_bound)) return;
        for (int rank = 0; rank < nl; ++rank) {
          Letter l{rank % group_.num_generators(), rank >= group_.num_generators()};
          if (!w2.letters.empty() && w2.letters.back().gen == l.gen &&
              w2.letters.back().inverse != l.inverse)
            continue;  // w2 must stay reduced
          PartialBijection saved_w2 = w2_val;
          w2.letters.push_back(l);
          w2_val = compose(letter_image(l), w2_val);
          bool cancelled = !prod.empty() && prod.back().gen == l.gen &&
                           prod.back().inverse != l.inverse;
          Letter saved_letter{};
          PartialBijection saved_val;
          if (cancelled) {
            saved_letter = prod.back();
            saved_val = prod_vals.back();
            prod.pop_back();
            prod_vals.pop_back();
          } else {
            prod.push_back(l);
            prod_vals.push_back(compose(letter_image(l), prod_vals.back()));
          }
          dfs();
          if (cancelled) {
            prod.push_back(saved_letter);
            prod_vals.push_back(saved_val);
          } else {
            prod.pop_back();
            prod_vals.pop_back();
          }
          w2.letters.pop_back();
          w2_val = saved_w2;
        }
      };
      dfs();
    }
    return rep;
  }

  // The restricted partial action on a subset: every image intersected with
  // subset×subset, carrier cut down to the subset.
  PartialAction restricted(const PointSet& subset) const {
    require(subset.size() == static_cast<std::size_t>(carrier_.size()), errc::carrier_mismatch,
            "subset size != carrier");
    std::vector<int> old_of_new = set_to_indices(subset);
    PartialAction a;
    a.group_ = group_;
    a.carrier_ = carrier_.restricted(subset);
    a.images_.reserve(images_.size());
    for (const auto& pb : images_) a.images_.push_back(pb.reindexed(subset, old_of_new));
    return a;
  }

 private:
  GroupHandle group_;
  Carrier carrier_;
  // finite kind: one image per element (identity included);
  // free/cyclic kind: one image per generator.
  std::vector<PartialBijection> images_;
};

}  // namespace pact

#endif
