#ifndef PACT_CERTIFICATE_HPP
#define PACT_CERTIFICATE_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pact/commensuration.hpp"
#include "pact/error.hpp"
#include "pact/examples.hpp"
#include "pact/instance.hpp"
#include "pact/noetherian_core.hpp"
#include "pact/regularization.hpp"

namespace pact {

// Everything a subcommand needs, normalized; the `command` echo line of a
// certificate round-trips through this struct, which is what makes
// certificates replayable.
struct CommandSpec {
  std::string name;
  std::string subset = "X";
  int radius = 4;
  int bound = 8;
  std::string transfixer = "exact";               // exact | cert | symbolic
  std::vector<std::string> transfixer_points;     // payload for cert strategy, finite backend
  std::optional<SymbolicZSet> transfixer_z;       // payload for cert strategy, symbolic backend

  std::string echo() const {
    std::ostringstream out;
    out << "command " << name;
    if (name == "commensurated" || name == "transfix" || name == "neumann" ||
        name == "noetherian-core")
      out << " --subset " << subset;
    if (name == "globalize" || name == "commensurated" || name == "transfix" ||
        name == "neumann" || name == "regularize")
      out << " --radius " << radius;
    if (name == "validate" || name == "neumann" || name == "regularize")
      out << " --bound " << bound;
    if (name == "transfix" || name == "regularize") out << " --transfixer " << transfixer;
    return out.str();
  }

  TransfixStrategy strategy() const {
    if (transfixer == "exact") return TransfixStrategy::finite_exact();
    if (transfixer == "symbolic") return TransfixStrategy::symbolic();
    if (transfixer == "cert") {
      if (transfixer_z) return TransfixStrategy::user_certificate_z(*transfixer_z);
      return TransfixStrategy::user_certificate(transfixer_points);
    }
    fail(errc::parse_error, "unknown transfixer '" + transfixer + "'");
  }
};

struct CommandOutcome {
  std::string certificate;
  int exit_family = 0;  // 0 ok, 4 claim failed, 5 bounded search / truncation
};

namespace certdetail {

inline std::string point_or_dash(const Carrier& c, int p) { return p < 0 ? "-" : c.name(p); }

inline void write_set_line(std::ostringstream& out, const std::string& tag,
                           const Carrier& carrier, const PointSet& s) {
  out << tag;
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i))
    out << " " << carrier.name(static_cast<int>(i));
  out << "\n";
}

inline void write_class_set_line(std::ostringstream& out, const std::string& tag,
                                 const Globalization& g, const PointSet& s) {
  out << tag;
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i))
    out << " " << g.point_name(static_cast<int>(i));
  out << "\n";
}

inline void write_zset(std::ostringstream& out, const std::string& tag, const SymbolicZSet& s) {
  out << tag << " base " << SymbolicZSet::base_name(s.base());
  if (!s.delta().empty()) {
    out << " delta";
    for (auto d : s.delta()) out << " " << d;
  }
  out << "\n";
}

inline const char* verdict_name(TransfixCertificate::Verdict v) {
  switch (v) {
    case TransfixCertificate::Verdict::transfixed: return "transfixed";
    case TransfixCertificate::Verdict::not_transfixed: return "not-transfixed";
    case TransfixCertificate::Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace certdetail

// --- payload writers ----------------------------------------------------------

inline void write_validate_payload(std::ostringstream& out, const Instance& inst,
                                   const ValidationReport& rep, int bound) {
  out << "bound " << bound << "\n";
  out << "result " << (rep.ok() ? "pass" : "fail") << "\n";
  out << "violations " << rep.violations.size() << "\n";
  const GroupHandle& grp = inst.action->group();
  for (const auto& v : rep.violations) {
    const char* kind = v.kind == ActionViolation::Kind::identity_not_id ? "identity"
                       : v.kind == ActionViolation::Kind::inverse_mismatch ? "inverse"
                                                                           : "containment";
    out << "violation " << kind << " " << grp.word_to_string(v.g) << " "
        << (v.kind == ActionViolation::Kind::containment ? grp.word_to_string(v.h) : "-") << " "
        << certdetail::point_or_dash(inst.action->carrier(), v.point) << "\n";
  }
}

inline void write_globalize_payload(std::ostringstream& out, const Globalization& g) {
  out << "radius " << (g.radius() < 0 ? std::string("full") : std::to_string(g.radius()))
      << "\n";
  out << "exact " << (g.exact() ? "true" : "false") << "\n";
  if (!g.note().empty()) out << "note " << g.note() << "\n";
  out << "points " << g.num_points() << "\n";
  for (int c = 0; c < g.num_points(); ++c) out << "gpoint " << g.point_name(c) << "\n";
  for (int x = 0; x < g.carrier().size(); ++x)
    out << "embed " << g.carrier().name(x) << " " << g.point_name(g.embed(x)) << "\n";
  for (int rank = 0; rank < g.num_letters(); ++rank) {
    Letter l = g.letter_of_rank(rank);
    Word lw;
    lw.letters.push_back(l);
    for (int c = 0; c < g.num_points(); ++c) {
      auto img = g.apply_letter(rank, c);
      if (img)
        out << "gact " << g.group().word_to_string(lw) << " " << g.point_name(c) << " "
            << g.point_name(*img) << "\n";
    }
  }
}

inline void write_commensurated_payload(std::ostringstream& out, const std::string& subset,
                                        const CommensurationReport& rep) {
  out << "subset " << subset << "\n";
  out << "verdict " << (rep.commensurated ? "commensurated" : "not-commensurated") << "\n";
  if (rep.radius >= 0) out << "at-radius " << rep.radius << "\n";
  for (const auto& gd : rep.per_generator) {
    out << "gendelta " << gd.gen << " " << (gd.finite ? "finite" : "infinite") << " "
        << (gd.finite ? std::to_string(gd.size) : "-");
    if (!gd.note.empty()) out << " # " << gd.note;
    out << "\n";
  }
}

inline void write_transfix_payload(std::ostringstream& out, const std::string& subset,
                                   const TransfixCertificate& cert, const Carrier* carrier) {
  out << "subset " << subset << "\n";
  out << "verdict " << certdetail::verdict_name(cert.verdict) << "\n";
  if (cert.radius >= 0) out << "at-radius " << cert.radius << "\n";
  if (carrier) {
    if (cert.invariant_set) certdetail::write_set_line(out, "invariant-set", *carrier, *cert.invariant_set);
    if (cert.delta) certdetail::write_set_line(out, "delta", *carrier, *cert.delta);
    if (cert.above_set) certdetail::write_set_line(out, "above-set", *carrier, *cert.above_set);
    if (cert.fine_strip) certdetail::write_set_line(out, "strip", *carrier, *cert.fine_strip);
  }
  if (cert.z_invariant_set) certdetail::write_zset(out, "zinvariant", *cert.z_invariant_set);
  if (cert.z_delta) certdetail::write_zset(out, "zdelta", *cert.z_delta);
  if (cert.z_fine_strip) certdetail::write_zset(out, "zstrip", *cert.z_fine_strip);
  if (cert.verdict == TransfixCertificate::Verdict::transfixed) {
    out << "above " << (cert.above ? "true" : "false") << "\n";
    out << "finely-above " << (cert.finely_above ? "true" : "false") << "\n";
  }
  if (!cert.obstruction.empty()) out << "obstruction " << cert.obstruction << "\n";
}

inline void write_neumann_payload(std::ostringstream& out, const std::string& subset,
                                  const NeumannResult& res, const GroupHandle* grp) {
  out << "subset " << subset << "\n";
  out << "bound " << res.checked_bound << "\n";
  out << "hypothesis-violated " << (res.hypothesis_violated ? "true" : "false") << "\n";
  if (res.shift)
    out << "witness-shift " << *res.shift << "\n";
  else if (res.witness && grp)
    out << "witness " << grp->word_to_string(*res.witness) << "\n";
  else
    out << "witness none\n";
  if (!res.note.empty()) out << "note " << res.note << "\n";
}

// The core certificate in carrier terms; `prefix` distinguishes a standalone
// run from the one embedded in a regularization certificate.
template <typename NameOf>
inline void write_core_payload(std::ostringstream& out, const std::string& prefix,
                               const CoreCertificate& cert, const GroupHandle& grp,
                               NameOf name_of) {
  out << prefix << "elements " << cert.elements.size() << "\n";
  for (const auto& el : cert.elements)
    out << prefix << "gword " << grp.word_to_string(el.word) << "\n";
  auto set_line = [&](const std::string& tag, const PointSet& s) {
    out << prefix << tag;
    for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i))
      out << " " << name_of(static_cast<int>(i));
    out << "\n";
  };
  set_line("vset", cert.V0);
  set_line("kset", cert.K);
  set_line("wset", cert.W);
  set_line("uprimeset", cert.Uprime);
  set_line("uset", cert.U);
  for (int x = 0; x < static_cast<int>(cert.Ux.size()); ++x) {
    out << prefix << "ux " << name_of(x) << " :";
    for (auto i = cert.Ux[x].find_first(); i != PointSet::npos; i = cert.Ux[x].find_next(i))
      out << " " << name_of(static_cast<int>(i));
    out << "\n";
  }
  for (const auto& [xy, w] : cert.pair_witness)
    out << prefix << "pair " << name_of(xy.first) << " " << name_of(xy.second) << " "
        << grp.word_to_string(w) << "\n";
}

inline void write_regularize_payload(std::ostringstream& out, const RegularizationResult& res,
                                     const std::string& transfixer_name) {
  const Globalization& g = res.top.base;
  const GroupHandle& grp = g.group();
  const Carrier& carrier = g.carrier();
  out << "dim " << res.dim << "\n";
  out << "transfixer " << transfixer_name << "\n";
  out << "xdense " << (res.top.x_dense ? "true" : "false") << "\n";
  auto words_line = [&](const std::string& tag, const std::vector<Word>& ws) {
    out << tag;
    for (const Word& w : ws) out << " " << grp.word_to_string(w);
    out << "\n";
  };
  for (const auto& st : res.stages) {
    out << "stage " << st.i << "\n";
    words_line("sj", st.J_in);
    certdetail::write_set_line(out, "sz", carrier, st.Z_in);
    certdetail::write_class_set_line(out, "sy", g, st.Y);
    certdetail::write_class_set_line(out, "sk", g, st.K);
    for (const auto& [h, sz] : st.commensuration) out << "comm " << h << " " << sz << "\n";
    out << "stransfix " << certdetail::verdict_name(st.transfix_cert.verdict) << " "
        << (st.transfix_cert.above ? "true" : "false") << " "
        << (st.transfix_cert.finely_above ? "true" : "false") << "\n";
    certdetail::write_class_set_line(out, "sl", g, st.L);
    certdetail::write_class_set_line(out, "sldot", g, st.L_closed);
    certdetail::write_set_line(out, "szout", carrier, st.Z_out);
    certdetail::write_class_set_line(out, "syout", g, st.Y_out);
    out << "neumann-h " << grp.word_to_string(st.neumann_h) << "\n";
    out << "neumann-degenerate " << (st.neumann_degenerate ? "true" : "false") << "\n";
    words_line("sjout", st.J_out);
  }
  if (!res.completed) {
    out << "aborted " << res.abort_reason << "\n";
    return;
  }
  words_line("final-j", res.final_J);
  certdetail::write_set_line(out, "final-z", carrier, res.final_Z);
  certdetail::write_class_set_line(out, "final-y", g, res.noetherian_open);
  write_core_payload(out, "core-", res.core, grp,
                     [&](int k) { return g.point_name(res.core_points[k]); });
}

// --- lazy-ball flavors of the commensuration operations ------------------------

inline CommensurationReport is_commensurated_lazy(const Globalization& g, const PointSet& x) {
  CommensurationReport rep;
  rep.commensurated = true;
  rep.radius = g.radius();
  rep.note = "generator commensuration suffices for a finitely generated group";
  for (int s = 0; s < g.group().num_generators(); ++s) {
    std::int64_t outside = 0, unknown = 0;
    for (auto p = x.find_first(); p != PointSet::npos; p = x.find_next(p)) {
      auto img = g.apply_letter(s, g.embed(static_cast<int>(p)));
      if (!img)
        ++unknown;
      else if (g.embedded_point(*img) < 0 || !x.test(g.embedded_point(*img)))
        ++outside;
    }
    GenDelta gd{g.group().generator_name(s), true, outside, ""};
    if (unknown > 0) gd.note = std::to_string(unknown) + " images unknown at this radius";
    rep.per_generator.push_back(gd);
  }
  return rep;
}

inline TransfixCertificate transfix_lazy(const Globalization& g) {
  TransfixCertificate cert;
  cert.verdict = TransfixCertificate::Verdict::inconclusive;
  cert.radius = g.radius();
  cert.obstruction = "globalization truncated; transfix undecidable at this radius";
  return cert;
}

inline NeumannResult neumann_witness_lazy(const Globalization& g, const PointSet& f, int bound) {
  NeumannResult res;
  res.checked_bound = bound;
  std::vector<int> fpts;
  for (auto p = f.find_first(); p != PointSet::npos; p = f.find_next(p))
    fpts.push_back(g.embed(static_cast<int>(p)));
  // finite orbits are only visible as closed explored components
  for (int start : fpts) {
    std::vector<int> stack = {start};
    std::vector<char> seen(g.num_points(), 0);
    seen[start] = 1;
    bool closed = true;
    std::vector<int> comp;
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      comp.push_back(c);
      for (int rank = 0; rank < g.num_letters(); ++rank) {
        auto img = g.apply_letter(rank, c);
        if (!img) {
          closed = false;
          continue;
        }
        if (!seen[*img]) {
          seen[*img] = 1;
          stack.push_back(*img);
        }
      }
    }
    if (closed) res.hypothesis_violated = true;
  }
  for (const Word& w : g.ball()) {
    if (static_cast<int>(w.length()) > bound) break;
    bool all_defined = true, disjoint = true;
    for (int c : fpts) {
      auto img = g.apply(w, c);
      if (!img) {
        all_defined = false;
        break;
      }
      for (int d : fpts) disjoint &= (*img != d);
    }
    if (all_defined && disjoint) {
      res.witness = w;
      return res;
    }
  }
  res.note = "no witness within bound (exploration truncated at radius " +
             std::to_string(g.radius()) + ")";
  return res;
}

// --- the command driver ---------------------------------------------------------

inline CommandOutcome run_command(const Instance& inst, const CommandSpec& spec) {
  std::ostringstream payload;
  int exit_family = 0;

  if (spec.name == "validate") {
    require(inst.action.has_value(), errc::parse_error, "validate needs an action");
    ValidationReport rep = inst.action->validate(spec.bound);
    write_validate_payload(payload, inst, rep, spec.bound);
    if (!rep.ok()) exit_family = 4;
  } else if (spec.name == "globalize") {
    require(inst.action.has_value(), errc::parse_error, "globalize needs an action");
    Globalization g = globalize(*inst.action, spec.radius);
    write_globalize_payload(payload, g);
    if (!g.exact()) exit_family = 5;
  } else if (spec.name == "commensurated") {
    if (inst.symbolic()) {
      CommensurationReport rep = is_commensurated_z(inst.zsubset(spec.subset));
      write_commensurated_payload(payload, spec.subset, rep);
      if (!rep.commensurated) exit_family = 0;  // a verdict, not an error
    } else {
      Globalization g = globalize(*inst.action, spec.radius);
      if (g.exact()) {
        FiniteGSetBackend e = FiniteGSetBackend::from_globalization(g);
        PointSet embedded(static_cast<std::size_t>(e.size()));
        const PointSet& sub = inst.subset(spec.subset);
        for (auto p = sub.find_first(); p != PointSet::npos; p = sub.find_next(p))
          embedded.set(g.embed(static_cast<int>(p)));
        write_commensurated_payload(payload, spec.subset, is_commensurated(e, embedded));
      } else {
        write_commensurated_payload(payload, spec.subset,
                                    is_commensurated_lazy(g, inst.subset(spec.subset)));
      }
    }
  } else if (spec.name == "transfix") {
    if (inst.symbolic()) {
      TransfixCertificate cert = spec.strategy().run_z(inst.zsubset(spec.subset));
      write_transfix_payload(payload, spec.subset, cert, nullptr);
      if (cert.verdict == TransfixCertificate::Verdict::inconclusive) exit_family = 5;
    } else {
      Globalization g = globalize(*inst.action, spec.radius);
      if (!g.exact()) {
        TransfixCertificate cert = transfix_lazy(g);
        write_transfix_payload(payload, spec.subset, cert, nullptr);
        exit_family = 5;
      } else {
        FiniteGSetBackend e = FiniteGSetBackend::from_globalization(g);
        PointSet embedded(static_cast<std::size_t>(e.size()));
        const PointSet& sub = inst.subset(spec.subset);
        for (auto p = sub.find_first(); p != PointSet::npos; p = sub.find_next(p))
          embedded.set(g.embed(static_cast<int>(p)));
        TransfixCertificate cert = spec.strategy().run(e, embedded);
        // report in class names via a synthetic carrier
        std::vector<std::string> names;
        for (int c = 0; c < e.size(); ++c) names.push_back(e.point_name(c));
        Carrier class_carrier(names);
        write_transfix_payload(payload, spec.subset, cert, &class_carrier);
      }
    }
  } else if (spec.name == "neumann") {
    std::string subset = spec.subset;
    if (inst.symbolic()) {
      const ZSubset& zs = inst.zsubset(subset);
      require(std::holds_alternative<SymbolicZSet>(zs), errc::inexpressible_subset,
              "Neumann search needs a base-form subset");
      NeumannResult res = neumann_witness_z(std::get<SymbolicZSet>(zs), spec.bound);
      write_neumann_payload(payload, subset, res, nullptr);
      if (!res.found()) exit_family = 5;
    } else {
      Globalization g = globalize(*inst.action, spec.radius);
      NeumannResult res;
      if (g.exact()) {
        FiniteGSetBackend e = FiniteGSetBackend::from_globalization(g);
        PointSet f(static_cast<std::size_t>(e.size()));
        const PointSet& sub = inst.subset(subset);
        for (auto p = sub.find_first(); p != PointSet::npos; p = sub.find_next(p))
          f.set(g.embed(static_cast<int>(p)));
        res = neumann_witness(e, f, spec.bound);
      } else {
        res = neumann_witness_lazy(g, inst.subset(subset), spec.bound);
      }
      write_neumann_payload(payload, subset, res, &inst.action->group());
      if (!res.found()) exit_family = 5;
    }
  } else if (spec.name == "noetherian-core") {
    require(inst.action.has_value() && inst.space.has_value(), errc::parse_error,
            "noetherian-core needs a space and an action");
    require(inst.action->is_global(), errc::action_not_continuous,
            "noetherian-core needs a total action by homeomorphisms");
    std::vector<std::vector<int>> gens;
    for (int s = 0; s < inst.action->group().num_generators(); ++s) {
      std::vector<int> p(inst.carrier->size());
      for (int x = 0; x < inst.carrier->size(); ++x)
        p[x] = inst.action->generator_image(s).apply(x);
      gens.push_back(std::move(p));
    }
    CoreCertificate cert = noetherian_core(*inst.space, gens, inst.subset(spec.subset));
    payload << "subset " << spec.subset << "\n";
    write_core_payload(payload, "", cert, inst.action->group(),
                       [&](int x) { return inst.carrier->name(x); });
  } else if (spec.name == "regularize") {
    require(inst.action.has_value() && inst.space.has_value(), errc::parse_error,
            "regularize needs a space and an action");
    RegularizationResult res =
        regularize(*inst.action, *inst.space, spec.strategy(), spec.radius, spec.bound);
    write_regularize_payload(payload, res, spec.transfixer);
    if (!res.completed) exit_family = 5;
  } else {
    fail(errc::parse_error, "unknown command '" + spec.name + "'");
  }

  std::string instance_text = serialize_instance(inst);
  std::ostringstream out;
  out << "pact certificate v1\n";
  out << spec.echo() << "\n";
  out << "instance-digest " << instance_digest(instance_text) << "\n";
  out << "begin-instance\n" << instance_text << "end-instance\n";
  if (spec.transfixer == "cert") {
    out << "begin-transfixer\n";
    if (spec.transfixer_z) {
      certdetail::write_zset(out, "invariant", *spec.transfixer_z);
    } else {
      for (const auto& p : spec.transfixer_points) out << "in " << p << "\n";
    }
    out << "end-transfixer\n";
  }
  out << payload.str();
  out << "end-certificate\n";
  return {out.str(), exit_family};
}

}  // namespace pact

#endif
