#ifndef PACT_REGULARIZATION_HPP
#define PACT_REGULARIZATION_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pact/commensuration.hpp"
#include "pact/error.hpp"
#include "pact/finite_space.hpp"
#include "pact/globalization.hpp"
#include "pact/noetherian_core.hpp"

namespace pact {

// An exact globalization equipped with the glued Alexandrov topology: the
// specialization order generated by pushing the carrier order through every
// chart g·X. Charts are verified to be open and order-isomorphic copies of X,
// and the group is verified to act by homeomorphisms.
struct TopGlobalization {
  Globalization base;
  FiniteSpace carrier_space;
  FiniteSpace space;                       // glued topology on the classes
  std::vector<Word> chart_words;
  std::vector<std::vector<int>> charts;    // chart_words[i]: carrier point -> class
  PointSet embedded;                       // image of X in the classes
  bool x_dense = false;
  std::vector<std::vector<int>> letter_perms;  // generator letters acting on classes
  std::vector<WordPerm> elements;              // closed group on classes, word-labeled

  int points() const { return base.num_points(); }

  std::vector<int> word_perm(const Word& w) const {
    std::vector<int> p(points());
    for (int c = 0; c < points(); ++c) p[c] = c;
    // last letter acts first
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
      int rank = it->inverse ? base.group().num_generators() + it->gen : it->gen;
      p = perm_compose_apply_first(p, letter_perms[rank]);
    }
    return p;
  }

  PointSet saturate(const PointSet& s) const {
    PointSet out = s;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& p : letter_perms) {
        PointSet img = set_image(out, p);
        if (!img.is_subset_of(out)) {
          out |= img;
          grew = true;
        }
      }
    }
    return out;
  }
};

inline TopGlobalization glued_topology(const Globalization& g, const FiniteSpace& carrier_space) {
  require(g.exact(), errc::requires_exact_globalization,
          "glued topology needs an exact globalization");
  const int n = g.carrier().size();
  require(carrier_space.size() == n, errc::carrier_mismatch, "space size != carrier");

  TopGlobalization t;
  t.base = g;
  t.carrier_space = carrier_space;

  const int m = g.num_points();
  std::vector<std::pair<int, int>> rel;
  for (int w = 0; w < static_cast<int>(g.ball().size()); ++w) {
    std::vector<int> chart(n, -1);
    for (int x = 0; x < n; ++x) {
      auto c = g.class_of(g.ball()[w], x);
      require(c.has_value(), errc::internal, "explored pair missing from the quotient");
      chart[x] = *c;
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (carrier_space.leq(a, b)) rel.emplace_back(chart[a], chart[b]);
    t.chart_words.push_back(g.ball()[w]);
    t.charts.push_back(std::move(chart));
  }
  t.space = FiniteSpace::from_relations(m, rel);

  // every chart is an open, order-isomorphic copy of X
  for (const auto& chart : t.charts) {
    PointSet img(m);
    for (int x = 0; x < n; ++x) img.set(chart[x]);
    require(t.space.is_open(img), errc::non_homeomorphic_chart, "chart image is not open");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        require(carrier_space.leq(a, b) == t.space.leq(chart[a], chart[b]),
                errc::non_homeomorphic_chart, "chart map is not an order isomorphism");
  }

  // the induced action is by homeomorphisms
  for (int rank = 0; rank < g.num_letters(); ++rank) {
    std::vector<int> p(m);
    for (int c = 0; c < m; ++c) {
      auto img = g.apply_letter(rank, c);
      require(img.has_value(), errc::requires_exact_globalization,
              "generator action partial on an exact globalization");
      p[c] = *img;
    }
    require(t.space.is_automorphism(p), errc::non_homeomorphic_chart,
            "induced generator is not a homeomorphism of the glued space");
    t.letter_perms.push_back(std::move(p));
  }
  std::vector<std::vector<int>> gens(t.letter_perms.begin(),
                                     t.letter_perms.begin() + g.group().num_generators());
  t.elements = close_generators(gens);

  t.embedded = PointSet(m);
  for (int x = 0; x < n; ++x) t.embedded.set(g.embed(x));
  t.x_dense = t.space.is_dense(t.embedded);
  return t;
}

// One stage of the dimension-descending induction.
struct StageRecord {
  int i = 0;
  std::vector<Word> J_in;
  PointSet Z_in;                            // dense open subset of the carrier
  PointSet Y, K, Y_i, K_i;                  // class sets
  std::vector<std::pair<std::string, std::int64_t>> commensuration;  // |hK_i ∩ Y_i| per h
  PointSet L, L_closed;
  PointSet Z_out;                           // carrier subset Z'
  PointSet Y_out;                           // Y' = ∪ g Z'
  TransfixCertificate transfix_cert;
  Word neumann_h;
  bool neumann_degenerate = false;
  std::vector<Word> J_out;
};

namespace detail {

inline PointSet union_of_translates(const TopGlobalization& t, const std::vector<Word>& J,
                                    const PointSet& Z) {
  PointSet out(static_cast<std::size_t>(t.points()));
  for (const Word& g : J) {
    std::vector<int> p = t.word_perm(g);
    for (auto z = Z.find_first(); z != PointSet::npos; z = Z.find_next(z))
      out.set(p[t.base.embed(static_cast<int>(z))]);
  }
  return out;
}

inline std::vector<Word> sorted_words(const GroupHandle& grp, std::vector<Word> ws) {
  for (Word& w : ws) w = grp.normalize(w);
  std::sort(ws.begin(), ws.end(), [&](const Word& a, const Word& b) { return grp.word_less(a, b); });
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  return ws;
}

}  // namespace detail

// Executes one induction step at dimension i: given J, Z with (∪_{g∈J} gZ)_{≥i+1}
// invariant, returns J', Z' with (∪_{g∈J'} gZ')_{≥i} invariant and |J'| ≤ 2|J|.
inline StageRecord sepcore_stage(const TopGlobalization& t, int i, const std::vector<Word>& J,
                                 const PointSet& Z, const TransfixStrategy& strategy,
                                 int neumann_bound = 16) {
  const GroupHandle& grp = t.base.group();
  const int m = t.points();
  StageRecord st;
  st.i = i;
  st.J_in = J;
  st.Z_in = Z;

  st.Y = detail::union_of_translates(t, J, Z);
  st.K = ~st.Y;
  PointSet stratum = t.space.strata().size() > static_cast<std::size_t>(i)
                         ? t.space.strata()[i]
                         : PointSet(static_cast<std::size_t>(m));
  st.Y_i = st.Y & stratum;
  st.K_i = st.K & stratum;

  // hK_i ∩ Y_i must be finite for every h; on the finite model the sizes are
  // recorded as commensuration evidence.
  for (const auto& el : t.elements) {
    PointSet moved = set_image(st.K_i, el.perm);
    st.commensuration.emplace_back(grp.word_to_string(el.word),
                                   static_cast<std::int64_t>((moved & st.Y_i).count()));
  }

  // the transfixer produces L ⊆ Y_i with Y_i ∖ L finely transfixed above
  std::vector<int> strat_points = set_to_indices(stratum);
  std::vector<int> sub_of_class(m, -1);
  for (int k = 0; k < static_cast<int>(strat_points.size()); ++k)
    sub_of_class[strat_points[k]] = k;
  std::vector<std::string> names;
  for (int p : strat_points) names.push_back(t.base.point_name(p));
  std::vector<std::string> gen_names;
  for (int s = 0; s < grp.num_generators(); ++s) gen_names.push_back(grp.generator_name(s));
  std::vector<std::vector<int>> sub_perms;
  for (int s = 0; s < grp.num_generators(); ++s) {
    std::vector<int> p(strat_points.size());
    for (int k = 0; k < static_cast<int>(strat_points.size()); ++k)
      p[k] = sub_of_class[t.letter_perms[s][strat_points[k]]];
    sub_perms.push_back(std::move(p));
  }
  FiniteGSetBackend stratum_backend =
      FiniteGSetBackend::from_perms(names, gen_names, sub_perms);
  PointSet y_i_sub(strat_points.size());
  for (int k = 0; k < static_cast<int>(strat_points.size()); ++k)
    if (st.Y_i.test(strat_points[k])) y_i_sub.set(k);

  st.transfix_cert = strategy.run(stratum_backend, y_i_sub);
  require(st.transfix_cert.verdict == TransfixCertificate::Verdict::transfixed &&
              st.transfix_cert.fine_strip.has_value(),
          errc::transfixer_failed, "strategy produced no transfixing data at stage " +
                                       std::to_string(i));
  st.L = PointSet(static_cast<std::size_t>(m));
  const PointSet& strip = *st.transfix_cert.fine_strip;
  for (auto k = strip.find_first(); k != PointSet::npos; k = strip.find_next(k))
    st.L.set(strat_points[k]);

  st.L_closed = t.space.closure(st.L);
  st.Z_out = PointSet(static_cast<std::size_t>(t.carrier_space.size()));
  for (auto z = st.Z_in.find_first(); z != PointSet::npos; z = st.Z_in.find_next(z)) {
    bool removed = false;
    for (const Word& g : J)
      if (st.L_closed.test(t.word_perm(g)[t.base.embed(static_cast<int>(z))])) removed = true;
    if (!removed) st.Z_out.set(z);
  }
  st.Y_out = detail::union_of_translates(t, J, st.Z_out);

  // Neumann step: Y'_i is finely transfixed above, so either it is already
  // invariant (forced whenever every orbit is finite) or one translate fills
  // the gap.
  PointSet y_out_i = st.Y_out & stratum;
  PointSet sat = t.saturate(y_out_i);
  PointSet f = sat - y_out_i;
  if (f.none()) {
    st.neumann_h = Word{};
    st.neumann_degenerate = true;
  } else {
    PointSet f_sub(strat_points.size());
    for (auto c = f.find_first(); c != PointSet::npos; c = f.find_next(c))
      f_sub.set(sub_of_class[static_cast<int>(c)]);
    NeumannResult nr = neumann_witness(stratum_backend, f_sub, neumann_bound);
    require(nr.witness.has_value(), errc::no_witness_within_bound,
            "Neumann step found no witness at stage " + std::to_string(i));
    st.neumann_h = *nr.witness;
    st.neumann_degenerate = false;
    PointSet joined = y_out_i | set_image(y_out_i, t.word_perm(st.neumann_h));
    require(t.saturate(joined) == joined, errc::internal,
            "stage side condition violated: Y'_i ∪ hY'_i is not invariant");
  }

  std::vector<Word> j_out = J;
  if (!st.neumann_degenerate)
    for (const Word& g : J) j_out.push_back(grp.concat_reduced(st.neumann_h, g));
  st.J_out = detail::sorted_words(grp, j_out);

  // the induction invariant, re-checked directly
  PointSet next_y = detail::union_of_translates(t, st.J_out, st.Z_out);
  PointSet next_y_ge = next_y & t.space.stratum_at_least(i);
  require(t.saturate(next_y_ge) == next_y_ge, errc::internal,
          "stage side condition violated: (∪ gZ)_{>=i} is not invariant");
  return st;
}

struct RegularizationResult {
  TopGlobalization top;
  std::vector<StageRecord> stages;
  std::vector<Word> final_J;
  PointSet final_Z;            // carrier subset
  PointSet noetherian_open;    // class subset: Y = ∪_{g∈J} gZ
  CoreCertificate core;        // over the subspace on Y
  std::vector<int> core_points;  // core sub-index -> class
  int dim = 0;
  bool completed = false;
  std::string abort_reason;
};

// The full pipeline: glue the topology on Compl(G,X), descend through the
// dimension strata producing an invariant dense open noetherian Y, then apply
// the noetherian core inside Y. Every invariant is re-verified on the way out.
inline RegularizationResult regularize(const PartialAction& a, const FiniteSpace& carrier_space,
                                       const TransfixStrategy& strategy, int radius = 4,
                                       int neumann_bound = 16) {
  const int n = a.carrier().size();
  require(carrier_space.size() == n, errc::carrier_mismatch, "space size != carrier");
  auto [irr, eta] = carrier_space.irreducible();
  (void)eta;
  require(irr, errc::not_irreducible, "carrier space must be irreducible");
  for (int s = 0; s < a.group().num_generators(); ++s) {
    const PartialBijection& pb = a.generator_image(s);
    require(carrier_space.is_partial_homeomorphism(pb), errc::action_not_continuous,
            "generator " + a.group().generator_name(s) + " is not a partial homeomorphism");
    require(carrier_space.is_dense(pb.domain()) && carrier_space.is_dense(pb.codomain()),
            errc::domain_not_dense,
            "generator " + a.group().generator_name(s) + " has a non-dense domain");
  }

  Globalization g = globalize(a, radius);
  require(g.exact(), errc::requires_exact_globalization,
          "globalization did not stabilize within the radius (" + g.note() + ")");

  RegularizationResult res;
  res.top = glued_topology(g, carrier_space);
  require(res.top.x_dense, errc::domain_not_dense, "embedded carrier is not dense");
  res.dim = carrier_space.dim();

  std::vector<Word> J = {Word{}};
  PointSet Z = full_set(static_cast<std::size_t>(n));
  for (int i = res.dim; i >= 0; --i) {
    StageRecord st;
    try {
      st = sepcore_stage(res.top, i, J, Z, strategy, neumann_bound);
    } catch (const error& e) {
      if (e.code() == errc::transfixer_failed || e.code() == errc::no_witness_within_bound) {
        res.abort_reason = e.what();
        return res;  // partial certificate: stages completed so far
      }
      throw;
    }
    J = st.J_out;
    Z = st.Z_out;
    require(static_cast<std::int64_t>(J.size()) <= (std::int64_t{1} << (res.dim - i)),
            errc::internal, "|J| exceeds the 2^(d-i) bound");
    res.stages.push_back(std::move(st));
  }
  res.final_J = J;
  res.final_Z = Z;
  res.noetherian_open = detail::union_of_translates(res.top, J, Z);

  const PointSet& y = res.noetherian_open;
  require(res.top.space.is_open(y) && res.top.space.is_dense(y), errc::internal,
          "final Y is not a dense open");
  require(res.top.saturate(y) == y, errc::internal, "final Y is not invariant");

  FiniteSpace y_space = res.top.space.subspace(y, &res.core_points);
  std::vector<int> sub_of_class(res.top.points(), -1);
  for (int k = 0; k < static_cast<int>(res.core_points.size()); ++k)
    sub_of_class[res.core_points[k]] = k;
  std::vector<std::vector<int>> sub_gens;
  for (int s = 0; s < a.group().num_generators(); ++s) {
    std::vector<int> p(res.core_points.size());
    for (int k = 0; k < static_cast<int>(res.core_points.size()); ++k)
      p[k] = sub_of_class[res.top.letter_perms[s][res.core_points[k]]];
    sub_gens.push_back(std::move(p));
  }
  PointSet x_in_y(res.core_points.size());
  for (int k = 0; k < static_cast<int>(res.core_points.size()); ++k)
    if (res.top.embedded.test(res.core_points[k])) x_in_y.set(k);

  res.core = noetherian_core(y_space, sub_gens, x_in_y);
  res.completed = true;
  return res;
}

}  // namespace pact

#endif
