#ifndef PACT_COMMENSURATION_HPP
#define PACT_COMMENSURATION_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pact/error.hpp"
#include "pact/globalization.hpp"
#include "pact/orbit.hpp"
#include "pact/zset.hpp"

namespace pact {

// A finite G-set presented through the permutations its generators induce,
// with every group element labeled by its minimal word. Built either from a
// global finite action or from an exact globalization.
class FiniteGSetBackend {
 public:
  static FiniteGSetBackend from_action(const PartialAction& a) {
    require(a.is_global(), errc::bad_group, "finite G-set backend needs a global action");
    FiniteGSetBackend e;
    e.n_ = a.carrier().size();
    for (int x = 0; x < e.n_; ++x) e.names_.push_back(a.carrier().name(x));
    for (int s = 0; s < a.group().num_generators(); ++s) {
      std::vector<int> p(e.n_);
      for (int x = 0; x < e.n_; ++x) p[x] = a.generator_image(s).apply(x);
      e.gens_.push_back(std::move(p));
      e.gen_names_.push_back(a.group().generator_name(s));
    }
    e.finish();
    return e;
  }

  static FiniteGSetBackend from_globalization(const Globalization& g) {
    require(g.exact(), errc::requires_exact_globalization,
            "finite G-set backend needs an exact globalization");
    FiniteGSetBackend e;
    e.n_ = g.num_points();
    for (int c = 0; c < e.n_; ++c) e.names_.push_back(g.point_name(c));
    for (int s = 0; s < g.group().num_generators(); ++s) {
      std::vector<int> p(e.n_);
      for (int c = 0; c < e.n_; ++c) {
        auto img = g.apply_letter(s, c);
        require(img.has_value(), errc::requires_exact_globalization,
                "exact globalization has a partial generator action");
        p[c] = *img;
      }
      e.gens_.push_back(std::move(p));
      e.gen_names_.push_back(g.group().generator_name(s));
    }
    e.finish();
    return e;
  }

  // Arbitrary permutation action, e.g. the restriction of a glued action to
  // one dimension stratum.
  static FiniteGSetBackend from_perms(std::vector<std::string> names,
                                      std::vector<std::string> gen_names,
                                      std::vector<std::vector<int>> perms) {
    FiniteGSetBackend e;
    e.n_ = static_cast<int>(names.size());
    e.names_ = std::move(names);
    e.gen_names_ = std::move(gen_names);
    e.gens_ = std::move(perms);
    e.finish();
    return e;
  }

  int size() const { return n_; }
  const std::string& point_name(int x) const { return names_[x]; }
  int num_generators() const { return static_cast<int>(gens_.size()); }
  const std::vector<int>& generator_perm(int s) const { return gens_[s]; }
  const std::string& generator_name(int s) const { return gen_names_[s]; }
  const std::vector<WordPerm>& elements() const { return elements_; }
  const std::vector<std::vector<int>>& orbits() const { return orbits_; }
  int orbit_of(int x) const { return orbit_of_[x]; }

  std::string word_to_string(const Word& w) const {
    if (w.letters.empty()) return "1";
    std::string out;
    for (const Letter& l : w.letters) {
      if (!out.empty()) out += '.';
      out += gen_names_[l.gen];
      if (l.inverse) out += '\'';
    }
    return out;
  }

  PointSet orbit_set(int id) const {
    PointSet s(n_);
    for (int x : orbits_[id]) s.set(x);
    return s;
  }

  // Union of the orbits meeting X: the minimal invariant superset.
  PointSet saturate(const PointSet& x) const {
    PointSet out(n_);
    for (const auto& o : orbits_) {
      bool meets = false;
      for (int p : o) meets |= x.test(p);
      if (meets)
        for (int p : o) out.set(p);
    }
    return out;
  }

  bool is_invariant(const PointSet& s) const {
    for (const auto& g : gens_)
      if (set_image(s, g) != s) return false;
    return true;
  }

 private:
  void finish() {
    elements_ = close_generators(gens_);
    orbits_ = perm_orbits(n_, gens_);
    orbit_of_.assign(n_, -1);
    for (int i = 0; i < static_cast<int>(orbits_.size()); ++i)
      for (int x : orbits_[i]) orbit_of_[x] = i;
  }

  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> gens_;
  std::vector<std::string> gen_names_;
  std::vector<WordPerm> elements_;
  std::vector<std::vector<int>> orbits_;
  std::vector<int> orbit_of_;
};

struct GenDelta {
  std::string gen;
  bool finite = true;
  std::int64_t size = 0;    // |X \ g⁻¹X| when finite
  std::string note;
};

struct CommensurationReport {
  bool commensurated = false;
  std::vector<GenDelta> per_generator;
  int radius = -1;  // >= 0 when the answer is radius-qualified
  std::string note;
};

inline CommensurationReport is_commensurated(const FiniteGSetBackend& e, const PointSet& x) {
  CommensurationReport rep;
  rep.commensurated = true;  // everything is finite here
  for (int s = 0; s < e.num_generators(); ++s) {
    PointSet gx = set_image(x, e.generator_perm(s));
    rep.per_generator.push_back(
        {e.generator_name(s), true, static_cast<std::int64_t>((x - gx).count()), ""});
  }
  return rep;
}

// Exact decision for the shift action on Z: X is commensurated iff it is
// base-form representable; X \ (X±1) is then automatically finite.
inline CommensurationReport is_commensurated_z(const ZSubset& x) {
  CommensurationReport rep;
  if (std::holds_alternative<SymbolicZSet>(x)) {
    const auto& s = std::get<SymbolicZSet>(x);
    rep.commensurated = true;
    rep.per_generator.push_back(
        {"u", true, set_difference(s, s.shifted(1)).finite_size(), ""});
    rep.per_generator.push_back(
        {"u'", true, set_difference(s, s.shifted(-1)).finite_size(), ""});
    return rep;
  }
  const auto& p = std::get<PeriodicZSet>(x);
  if (p.trivial()) return is_commensurated_z(ZSubset(p.as_symbolic()));
  rep.commensurated = false;
  for (const char* gen : {"u", "u'"}) {
    // X \ (X+k) is a union of residue classes; nontrivial periodic sets shift
    // to a genuinely different residue pattern in at least one direction
    int k = gen[1] == '\'' ? -1 : 1;
    bool moved = false;
    for (int r : p.residues)
      if (!p.contains(r + k)) moved = true;
    rep.per_generator.push_back({gen, !moved, 0,
                                 moved ? "difference is a nonempty union of residue classes"
                                       : "shift fixes the residue pattern"});
  }
  rep.note = "periodic subset with nontrivial residues";
  return rep;
}

struct TransfixCertificate {
  enum class Verdict { transfixed, not_transfixed, inconclusive };
  Verdict verdict = Verdict::inconclusive;

  // finite-backend payloads
  std::optional<PointSet> invariant_set;  // Y minimizing |Y △ X|
  std::optional<PointSet> delta;          // Y △ X
  std::optional<PointSet> above_set;      // minimal invariant superset of X
  std::optional<PointSet> fine_strip;     // minimal L with X∖L finely transfixed above

  // symbolic payloads
  std::optional<SymbolicZSet> z_invariant_set;
  std::optional<SymbolicZSet> z_delta;
  std::optional<SymbolicZSet> z_fine_strip;

  bool above = false;
  bool finely_above = false;
  std::string obstruction;
  int radius = -1;
};

// Exact transfix on a finite G-set. Y keeps exactly the orbits where X holds
// a strict majority (ties excluded), which minimizes |Y △ X|; the above-
// variant uses the union of orbits meeting X; the fine strip removes the
// X-part of every straddling orbit.
inline TransfixCertificate transfix(const FiniteGSetBackend& e, const PointSet& x) {
  TransfixCertificate cert;
  cert.verdict = TransfixCertificate::Verdict::transfixed;
  PointSet y(x.size()), above(x.size()), inside(x.size());
  for (const auto& orbit : e.orbits()) {
    std::size_t in = 0;
    for (int p : orbit)
      if (x.test(p)) ++in;
    if (2 * in > orbit.size())
      for (int p : orbit) y.set(p);
    if (in > 0)
      for (int p : orbit) above.set(p);
    if (in == orbit.size())
      for (int p : orbit) inside.set(p);
  }
  cert.invariant_set = y;
  cert.delta = x ^ y;
  cert.above_set = above;
  cert.above = true;                  // `above` itself is finite and invariant
  cert.finely_above = (above == x);   // every orbit here is finite
  cert.fine_strip = x - inside;
  return cert;
}

inline TransfixCertificate transfix_z(const ZSubset& xs) {
  require(std::holds_alternative<SymbolicZSet>(xs) ||
              std::get<PeriodicZSet>(xs).trivial(),
          errc::not_commensurated, "transfix requires a commensurated subset");
  SymbolicZSet x = std::holds_alternative<SymbolicZSet>(xs)
                       ? std::get<SymbolicZSet>(xs)
                       : std::get<PeriodicZSet>(xs).as_symbolic();
  TransfixCertificate cert;
  // The only shift-invariant subsets of Z are ∅ and Z.
  switch (x.base()) {
    case SymbolicZSet::Base::empty:
      cert.verdict = TransfixCertificate::Verdict::transfixed;
      cert.z_invariant_set = SymbolicZSet::empty_set();
      cert.z_delta = x;
      cert.above = x.is_empty();  // Z would leave an infinite difference
      cert.finely_above = cert.above;
      cert.z_fine_strip = x;  // removing all of X leaves the empty set, already invariant
      break;
    case SymbolicZSet::Base::all:
      cert.verdict = TransfixCertificate::Verdict::transfixed;
      cert.z_invariant_set = SymbolicZSet::all_set();
      cert.z_delta = x.complemented();
      cert.above = true;
      cert.finely_above = true;  // the shift has no finite orbit at all
      cert.z_fine_strip = SymbolicZSet::empty_set();
      break;
    case SymbolicZSet::Base::nonneg:
    case SymbolicZSet::Base::nonpos:
      cert.verdict = TransfixCertificate::Verdict::not_transfixed;
      cert.obstruction = "both candidate invariant sets fail: |X triangle empty| and "
                         "|X triangle Z| are infinite";
      break;
  }
  return cert;
}

struct NeumannResult {
  std::optional<Word> witness;        // finite / lazy backends
  std::optional<std::int64_t> shift;  // symbolic backend: witness is u^shift
  int checked_bound = 0;
  bool hypothesis_violated = false;
  bool found() const { return witness.has_value() || shift.has_value(); }
  std::string note;
};

// First g in length-lex order with F ∩ gF = ∅. A nonempty F inside a finite
// G-set always meets a finite orbit, so the theorem's hypothesis fails there;
// per the search contract that is a warning and the scan still runs.
inline NeumannResult neumann_witness(const FiniteGSetBackend& e, const PointSet& f, int bound) {
  NeumannResult res;
  res.checked_bound = bound;
  for (auto p = f.find_first(); p != PointSet::npos; p = f.find_next(p)) {
    (void)p;
    res.hypothesis_violated = true;  // all orbits of a finite G-set are finite
    break;
  }
  for (const auto& el : e.elements()) {
    if (static_cast<int>(el.word.length()) > bound) break;
    if ((set_image(f, el.perm) & f).none()) {
      res.witness = el.word;
      return res;
    }
  }
  res.note = "no witness within bound";
  return res;
}

inline NeumannResult neumann_witness_z(const SymbolicZSet& f, int bound) {
  require(f.is_finite(), errc::inexpressible_subset, "Neumann search needs a finite subset");
  NeumannResult res;
  res.checked_bound = bound;
  res.hypothesis_violated = false;  // the shift has no finite orbits
  auto pts = f.finite_elements();
  auto disjoint_at = [&](std::int64_t k) {
    for (auto p : pts)
      if (std::binary_search(pts.begin(), pts.end(), p - k)) return false;
    return true;
  };
  for (std::int64_t k = 0; k <= bound; ++k) {
    if (disjoint_at(k)) {
      res.shift = k;
      return res;
    }
    if (k > 0 && disjoint_at(-k)) {
      res.shift = -k;
      return res;
    }
  }
  res.note = "no witness within bound";
  return res;
}

// --- transfixing strategies (Property FW as an oracle) ----------------------

// The pipeline consumes a strategy that produces, for a commensurated X, a
// finite strip L such that X∖L is finely transfixed above. Property FW
// guarantees such data exists for every commensurated subset; the strategy
// either computes it exactly (finite case), validates user-supplied data, or
// decides the symbolic shift model.
class TransfixStrategy {
 public:
  enum class Kind { finite_exact, user_certificate, symbolic };

  static TransfixStrategy finite_exact() { return TransfixStrategy(Kind::finite_exact); }
  static TransfixStrategy symbolic() { return TransfixStrategy(Kind::symbolic); }

  static TransfixStrategy user_certificate(std::vector<std::string> invariant_names) {
    TransfixStrategy s(Kind::user_certificate);
    s.user_names_ = std::move(invariant_names);
    return s;
  }

  static TransfixStrategy user_certificate_z(SymbolicZSet y) {
    TransfixStrategy s(Kind::user_certificate);
    s.user_z_ = std::move(y);
    return s;
  }

  Kind kind() const { return kind_; }

  const char* name() const {
    switch (kind_) {
      case Kind::finite_exact: return "exact";
      case Kind::user_certificate: return "cert";
      case Kind::symbolic: return "symbolic";
    }
    return "?";
  }

  TransfixCertificate run(const FiniteGSetBackend& e, const PointSet& x) const {
    switch (kind_) {
      case Kind::finite_exact:
        return transfix(e, x);
      case Kind::symbolic:
        fail(errc::inexpressible_subset, "symbolic transfixer cannot consume a finite G-set");
      case Kind::user_certificate: {
        PointSet y(static_cast<std::size_t>(e.size()));
        for (const auto& nm : user_names_) {
          int idx = -1;
          for (int i = 0; i < e.size(); ++i)
            if (e.point_name(i) == nm) idx = i;
          require(idx >= 0, errc::invalid_certificate,
                  "transfixer certificate names unknown point '" + nm + "'");
          y.set(idx);
        }
        for (int s = 0; s < e.num_generators(); ++s) {
          PointSet gy = set_image(y, e.generator_perm(s));
          if (gy != y) {
            PointSet bad = gy ^ y;
            fail(errc::invalid_certificate,
                 "supplied set is not invariant: generator " + e.generator_name(s) +
                     " moves it at point " + e.point_name(static_cast<int>(bad.find_first())));
          }
        }
        TransfixCertificate cert;
        cert.verdict = TransfixCertificate::Verdict::transfixed;
        cert.invariant_set = y;
        cert.delta = x ^ y;
        cert.above_set = e.saturate(x);
        cert.above = x.is_subset_of(y);
        cert.finely_above = (*cert.above_set == x);
        // strip X∖Y, then the X-part of every orbit straddling X∩Y
        PointSet strip = x - y;
        PointSet core = x & y;
        for (const auto& orbit : e.orbits()) {
          std::size_t in = 0;
          for (int p : orbit)
            if (core.test(p)) ++in;
          if (in > 0 && in < orbit.size())
            for (int p : orbit)
              if (core.test(p)) strip.set(p);
        }
        cert.fine_strip = strip;
        return cert;
      }
    }
    fail(errc::internal, "unreachable");
  }

  TransfixCertificate run_z(const ZSubset& x) const {
    switch (kind_) {
      case Kind::finite_exact:
      case Kind::symbolic:
        return transfix_z(x);
      case Kind::user_certificate: {
        require(user_z_.has_value(), errc::invalid_certificate,
                "symbolic backend needs a zset transfixer certificate");
        const SymbolicZSet& y = *user_z_;
        SymbolicZSet moved = set_symdiff(y, y.shifted(1));
        if (!moved.is_empty()) {
          std::int64_t boundary = moved.finite_elements().front();
          fail(errc::invalid_certificate,
               "supplied set is not shift-invariant: membership flips between " +
                   std::to_string(boundary - 1) + " and " + std::to_string(boundary) +
                   " (witness generator u at the " + std::to_string(boundary - 1) +
                   "-boundary)");
        }
        require(std::holds_alternative<SymbolicZSet>(x), errc::inexpressible_subset,
                "certificate strategy needs a base-form subset");
        SymbolicZSet delta = set_symdiff(std::get<SymbolicZSet>(x), y);
        require(delta.is_finite(), errc::invalid_certificate,
                "supplied invariant set has infinite symmetric difference with X");
        TransfixCertificate cert = transfix_z(x);
        cert.z_invariant_set = y;
        cert.z_delta = delta;
        return cert;
      }
    }
    fail(errc::internal, "unreachable");
  }

 private:
  explicit TransfixStrategy(Kind k) : kind_(k) {}

  Kind kind_;
  std::vector<std::string> user_names_;
  std::optional<SymbolicZSet> user_z_;
};

// --- the dictionary between the two languages ---------------------------------

struct DictionaryEntry {
  std::string notion;
  std::string partial_value;
  std::string gset_value;
  bool agree = false;
};

struct DictionaryReport {
  std::vector<DictionaryEntry> entries;
  bool all_agree = true;
  bool exact = false;
  int radius = -1;

  void add(std::string notion, std::string pv, std::string gv) {
    bool agree = pv == gv;
    entries.push_back({std::move(notion), std::move(pv), std::move(gv), agree});
    all_agree &= agree;
  }
};

// Verifies, instance by instance, that the partial-action language (cofinite,
// X̂∖X finite, ...) and the G-set language (commensurated, transfixed above,
// ...) agree across the globalization. Exact globalizations get the full four
// notions; truncated ones get radius-qualified commensuration only.
inline DictionaryReport dictionary_check(const PartialAction& a, const Globalization& g) {
  DictionaryReport rep;
  rep.exact = g.exact();
  rep.radius = g.radius();
  const int n = a.carrier().size();

  // cofinite vs commensurated, generator by generator (sizes must match)
  for (int s = 0; s < a.group().num_generators(); ++s) {
    std::int64_t undefined = 0;
    for (int x = 0; x < n; ++x)
      if (!a.generator_image(s).defined(x)) ++undefined;
    std::int64_t outside = 0;
    bool unknown = false;
    for (int x = 0; x < n; ++x) {
      auto img = g.apply_letter(s, g.embed(x));
      if (!img)
        unknown = true;
      else if (g.embedded_point(*img) < 0)
        ++outside;
    }
    // partial side counts X∖D_g, the G-set side counts X∖g⁻¹X inside X̂
    rep.add("cofinite/commensurated[" + a.group().generator_name(s) + "]",
            std::to_string(undefined),
            unknown ? "unknown-at-radius" : std::to_string(outside));
  }

  if (!g.exact()) {
    rep.entries.push_back({"transfixing-notions", "skipped", "skipped (truncated globalization)",
                           true});
    return rep;
  }

  FiniteGSetBackend e = FiniteGSetBackend::from_globalization(g);
  PointSet embedded(static_cast<std::size_t>(e.size()));
  for (int x = 0; x < n; ++x) embedded.set(g.embed(x));

  // transfixed above: |X̂∖X| finite  vs  minimal invariant superset leaves a
  // finite difference
  // partial side: |X̂∖X|; G-set side: difference left by the minimal invariant superset
  std::int64_t hat_minus = e.size() - static_cast<std::int64_t>(embedded.count());
  PointSet sat = e.saturate(embedded);
  rep.add("transfixed-above", std::to_string(hat_minus),
          std::to_string((sat - embedded).count()));

  // transfixed: some finite F ⊆ X makes the rest transfixed above  vs  an
  // invariant set at finite symmetric difference exists
  TransfixCertificate cert = transfix(e, embedded);
  bool partial_transfixed = true;  // F=∅ already works on a finite carrier
  rep.add("transfixed", partial_transfixed ? "true" : "false",
          cert.verdict == TransfixCertificate::Verdict::transfixed ? "true" : "false");

  // finely transfixed above: X̂∖X finite and missing every finite orbit  vs
  // every finite orbit meeting X is contained in X
  bool partial_fine = true;
  for (const auto& orbit : e.orbits()) {
    bool meets_complement = false;
    for (int p : orbit)
      if (!embedded.test(p)) meets_complement = true;
    bool meets_x = false;
    for (int p : orbit)
      if (embedded.test(p)) meets_x = true;
    if (meets_complement && meets_x) partial_fine = false;  // finite orbit hit by X̂∖X
  }
  bool gset_fine = true;
  for (const auto& orbit : e.orbits()) {
    std::size_t in = 0;
    for (int p : orbit)
      if (embedded.test(p)) ++in;
    if (in > 0 && in < orbit.size()) gset_fine = false;
  }
  rep.add("finely-transfixed-above", partial_fine ? "true" : "false",
          gset_fine ? "true" : "false");
  return rep;
}

}  // namespace pact

#endif
