#ifndef PACT_VERIFY_HPP
#define PACT_VERIFY_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pact/certificate.hpp"

namespace pact {

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> reasons;

  void reject(const std::string& why) {
    ok = false;
    reasons.push_back(why);
  }
};

namespace verifydetail {

struct ParsedCertificate {
  CommandSpec spec;
  std::string digest_line;
  std::string instance_text;
  std::vector<std::vector<std::string>> payload;  // tokenized payload lines
};

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

inline ParsedCertificate parse_certificate(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  require(lines.size() >= 5 && lines[0] == "pact certificate v1", errc::invalid_certificate,
          "missing certificate header");
  std::vector<std::string> cmd = tokens_of(lines[1]);
  require(cmd.size() >= 2 && cmd[0] == "command", errc::invalid_certificate,
          "missing command echo");
  ParsedCertificate pc;
  pc.spec.name = cmd[1];
  for (std::size_t i = 2; i + 1 < cmd.size(); i += 2) {
    const std::string& flag = cmd[i];
    const std::string& val = cmd[i + 1];
    if (flag == "--subset")
      pc.spec.subset = val;
    else if (flag == "--radius")
      pc.spec.radius = std::stoi(val);
    else if (flag == "--bound")
      pc.spec.bound = std::stoi(val);
    else if (flag == "--transfixer")
      pc.spec.transfixer = val;
    else
      fail(errc::invalid_certificate, "unknown flag in command echo: " + flag);
  }
  std::vector<std::string> dig = tokens_of(lines[2]);
  require(dig.size() == 2 && dig[0] == "instance-digest", errc::invalid_certificate,
          "missing instance digest");
  pc.digest_line = dig[1];
  require(lines[3] == "begin-instance", errc::invalid_certificate, "missing instance block");
  std::size_t i = 4;
  std::ostringstream itext;
  for (; i < lines.size() && lines[i] != "end-instance"; ++i) itext << lines[i] << "\n";
  require(i < lines.size(), errc::invalid_certificate, "unterminated instance block");
  pc.instance_text = itext.str();
  ++i;
  if (i < lines.size() && lines[i] == "begin-transfixer") {
    ++i;
    for (; i < lines.size() && lines[i] != "end-transfixer"; ++i) {
      std::vector<std::string> toks = tokens_of(lines[i]);
      if (toks.empty()) continue;
      if (toks[0] == "in") {
        require(toks.size() == 2, errc::invalid_certificate, "bad transfixer line");
        pc.spec.transfixer_points.push_back(toks[1]);
      } else if (toks[0] == "invariant") {
        require(toks.size() >= 3 && toks[1] == "base", errc::invalid_certificate,
                "bad transfixer zset line");
        std::vector<std::int64_t> delta;
        for (std::size_t k = 4; k < toks.size(); ++k) delta.push_back(std::stoll(toks[k]));
        pc.spec.transfixer_z =
            SymbolicZSet::make(SymbolicZSet::base_from_name(toks[2]), delta);
      } else {
        fail(errc::invalid_certificate, "bad transfixer line '" + lines[i] + "'");
      }
    }
    require(i < lines.size(), errc::invalid_certificate, "unterminated transfixer block");
    ++i;
  }
  bool terminated = false;
  for (; i < lines.size(); ++i) {
    if (lines[i] == "end-certificate") {
      terminated = true;
      break;
    }
    pc.payload.push_back(tokens_of(lines[i]));
  }
  require(terminated, errc::invalid_certificate, "missing end-certificate");
  return pc;
}

inline const std::vector<std::string>* find_line(
    const std::vector<std::vector<std::string>>& payload, const std::string& tag) {
  for (const auto& l : payload)
    if (!l.empty() && l[0] == tag) return &l;
  return nullptr;
}

inline PointSet parse_set_line(const std::vector<std::string>& line, const Carrier& carrier) {
  PointSet s(static_cast<std::size_t>(carrier.size()));
  for (std::size_t i = 1; i < line.size(); ++i) s.set(carrier.index_of(line[i]));
  return s;
}

}  // namespace verifydetail

// Re-checks a certificate: the digest must match the embedded instance, the
// deterministic replay of the echoed command must reproduce the file byte for
// byte, and the recorded witnesses must re-validate against the instance on
// their own.
inline VerifyResult verify_certificate(const std::string& text) {
  using namespace verifydetail;
  VerifyResult res;
  ParsedCertificate pc;
  Instance inst;
  try {
    pc = parse_certificate(text);
    if (instance_digest(pc.instance_text) != pc.digest_line) {
      res.reject("instance digest mismatch");
      return res;
    }
    inst = parse_instance(pc.instance_text);
  } catch (const error& e) {
    res.reject(e.what());
    return res;
  }

  // deterministic replay
  try {
    CommandOutcome regen = run_command(inst, pc.spec);
    if (regen.certificate != text) {
      std::vector<std::string> a = split_lines(regen.certificate), b = split_lines(text);
      std::size_t k = 0;
      while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
      res.reject("certificate differs from deterministic replay at line " + std::to_string(k + 1));
    }
  } catch (const error& e) {
    res.reject(std::string("replay failed: ") + e.what());
  }
  if (!res.ok) return res;

  // independent witness re-validation
  try {
    if (pc.spec.name == "validate") {
      const PartialAction& a = *inst.action;
      const GroupHandle& grp = a.group();
      std::size_t count = 0;
      for (const auto& l : pc.payload) {
        if (l.empty() || l[0] != "violation") continue;
        ++count;
        require(l.size() == 5, errc::invalid_certificate, "bad violation line");
        if (l[1] == "containment") {
          Word g = grp.word_from_string(l[2]), h = grp.word_from_string(l[3]);
          int x = a.carrier().index_of(l[4]);
          int y = a.evaluate(h).apply(x);
          require(y >= 0, errc::verification_failed, "containment witness: h undefined at x");
          int z = a.evaluate(g).apply(y);
          require(z >= 0, errc::verification_failed, "containment witness: g undefined at hx");
          require(a.evaluate(grp.concat_reduced(g, h)).apply(x) != z, errc::verification_failed,
                  "containment witness does not violate the axiom");
        } else if (l[1] == "inverse") {
          Word g = grp.word_from_string(l[2]);
          require(a.evaluate(grp.inverse_word(g)) != a.evaluate(g).inverse(),
                  errc::verification_failed, "inverse witness does not violate the axiom");
        }
      }
      const auto* vc = find_line(pc.payload, "violations");
      require(vc && std::stoul((*vc)[1]) == count, errc::verification_failed,
              "violation count mismatch");
      const auto* rl = find_line(pc.payload, "result");
      require(rl && ((*rl)[1] == "pass") == (count == 0), errc::verification_failed,
              "result line inconsistent with violations");
    } else if (pc.spec.name == "neumann") {
      const auto* wl = find_line(pc.payload, "witness");
      const auto* ws = find_line(pc.payload, "witness-shift");
      if (ws) {
        std::int64_t k = std::stoll((*ws)[1]);
        const auto& zs = inst.zsubset(pc.spec.subset);
        const auto& f = std::get<SymbolicZSet>(zs);
        for (auto p : f.finite_elements())
          require(!f.contains(p - k), errc::verification_failed,
                  "shift witness does not separate F from itself");
      } else if (wl && (*wl)[1] != "none") {
        Word w = inst.action->group().word_from_string((*wl)[1]);
        Globalization g = globalize(*inst.action, pc.spec.radius);
        const PointSet& sub = inst.subset(pc.spec.subset);
        for (auto p = sub.find_first(); p != PointSet::npos; p = sub.find_next(p)) {
          auto img = g.apply(w, g.embed(static_cast<int>(p)));
          require(img.has_value(), errc::verification_failed, "witness image undefined");
          for (auto q = sub.find_first(); q != PointSet::npos; q = sub.find_next(q))
            require(*img != g.embed(static_cast<int>(q)), errc::verification_failed,
                    "witness does not separate F from itself");
        }
      }
    } else if (pc.spec.name == "globalize") {
      // presented tables must reproduce the original partial action
      std::map<std::string, int> cls;
      for (const auto& l : pc.payload)
        if (!l.empty() && l[0] == "gpoint") cls.emplace(l[1], static_cast<int>(cls.size()));
      std::map<std::string, int> embed;
      for (const auto& l : pc.payload)
        if (!l.empty() && l[0] == "embed") {
          require(cls.count(l[2]), errc::verification_failed, "embed names unknown point");
          require(embed.emplace(l[1], cls[l[2]]).second, errc::verification_failed,
                  "duplicate embed line");
        }
      std::map<std::pair<std::string, int>, int> act;
      for (const auto& l : pc.payload)
        if (!l.empty() && l[0] == "gact") {
          require(cls.count(l[2]) && cls.count(l[3]), errc::verification_failed,
                  "gact names unknown point");
          act[{l[1], cls[l[2]]}] = cls[l[3]];
        }
      const PartialAction& a = *inst.action;
      std::map<int, int> embedded_class_to_point;
      for (int x = 0; x < a.carrier().size(); ++x) {
        require(embed.count(a.carrier().name(x)), errc::verification_failed,
                "embedding not total");
        bool fresh =
            embedded_class_to_point.emplace(embed[a.carrier().name(x)], x).second;
        require(fresh, errc::verification_failed, "embedding not injective");
      }
      for (int s = 0; s < a.group().num_generators(); ++s) {
        std::string gname = a.group().generator_name(s);
        for (int x = 0; x < a.carrier().size(); ++x) {
          auto it = act.find({gname, embed[a.carrier().name(x)]});
          int y = a.generator_image(s).apply(x);
          if (y >= 0) {
            require(it != act.end() && it->second == embed[a.carrier().name(y)],
                    errc::verification_failed,
                    "embedded action does not restrict to the partial action");
          } else if (it != act.end()) {
            require(!embedded_class_to_point.count(it->second), errc::verification_failed,
                    "action is defined inside X where the partial action is not");
          }
        }
      }
      // every class must be reachable from the embedded carrier
      std::vector<char> reach(cls.size(), 0);
      std::vector<int> stack;
      for (const auto& [name, c] : embed) {
        (void)name;
        if (!reach[c]) {
          reach[c] = 1;
          stack.push_back(c);
        }
      }
      while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        for (const auto& [key, img] : act)
          if (key.second == c && !reach[img]) {
            reach[img] = 1;
            stack.push_back(img);
          }
      }
      for (char r : reach)
        require(r, errc::verification_failed, "some orbit misses the embedded carrier");
    } else if (pc.spec.name == "transfix" && !inst.symbolic()) {
      Globalization g = globalize(*inst.action, pc.spec.radius);
      if (g.exact()) {
        const auto* yl = find_line(pc.payload, "invariant-set");
        if (yl) {
          std::map<std::string, int> cls;
          for (int c = 0; c < g.num_points(); ++c) cls.emplace(g.point_name(c), c);
          PointSet y(static_cast<std::size_t>(g.num_points()));
          for (std::size_t k = 1; k < yl->size(); ++k) {
            require(cls.count((*yl)[k]), errc::verification_failed,
                    "invariant-set names unknown point");
            y.set(cls[(*yl)[k]]);
          }
          for (int rank = 0; rank < g.num_letters(); ++rank) {
            PointSet moved(static_cast<std::size_t>(g.num_points()));
            for (auto p = y.find_first(); p != PointSet::npos; p = y.find_next(p)) {
              auto img = g.apply_letter(rank, static_cast<int>(p));
              require(img.has_value(), errc::verification_failed, "action partial on Y");
              moved.set(*img);
            }
            require(moved == y, errc::verification_failed,
                    "claimed invariant set is not invariant");
          }
        }
      }
    } else if (pc.spec.name == "noetherian-core") {
      const Carrier& carrier = *inst.carrier;
      const auto* ul = find_line(pc.payload, "uset");
      require(ul != nullptr, errc::verification_failed, "missing uset line");
      PointSet u = parse_set_line(*ul, carrier);
      require(inst.space->is_open(u) && inst.space->is_dense(u), errc::verification_failed,
              "claimed U is not a dense open");
      const PointSet& x = inst.subset(pc.spec.subset);
      std::map<std::pair<int, int>, bool> covered;
      for (const auto& l : pc.payload) {
        if (l.empty() || l[0] != "pair") continue;
        require(l.size() == 4, errc::invalid_certificate, "bad pair line");
        int a = carrier.index_of(l[1]), b = carrier.index_of(l[2]);
        PartialBijection gb = inst.action->evaluate(inst.action->group().word_from_string(l[3]));
        require(gb.defined(a) && x.test(gb.apply(a)) && gb.defined(b) && x.test(gb.apply(b)),
                errc::verification_failed, "pair witness does not move the pair into X");
        covered[{a, b}] = true;
      }
      for (auto a = u.find_first(); a != PointSet::npos; a = u.find_next(a))
        for (auto b = u.find_first(); b != PointSet::npos; b = u.find_next(b))
          require(covered.count({static_cast<int>(a), static_cast<int>(b)}),
                  errc::verification_failed, "pair witness table does not cover U x U");
      // invariance of U under the recorded group elements
      for (const auto& l : pc.payload) {
        if (l.empty() || l[0] != "gword") continue;
        PartialBijection gb = inst.action->evaluate(inst.action->group().word_from_string(l[1]));
        PointSet moved(static_cast<std::size_t>(carrier.size()));
        for (auto p = u.find_first(); p != PointSet::npos; p = u.find_next(p))
          moved.set(gb.apply(static_cast<int>(p)));
        require(moved == u, errc::verification_failed, "claimed U is not invariant");
      }
    } else if (pc.spec.name == "regularize") {
      if (find_line(pc.payload, "aborted") == nullptr) {
        Globalization g = globalize(*inst.action, pc.spec.radius);
        TopGlobalization top = glued_topology(g, *inst.space);
        std::map<std::string, int> cls;
        for (int c = 0; c < g.num_points(); ++c) cls.emplace(g.point_name(c), c);
        const auto* yl = find_line(pc.payload, "final-y");
        require(yl != nullptr, errc::verification_failed, "missing final-y");
        PointSet y(static_cast<std::size_t>(g.num_points()));
        for (std::size_t k = 1; k < yl->size(); ++k) {
          require(cls.count((*yl)[k]), errc::verification_failed, "final-y names unknown point");
          y.set(cls[(*yl)[k]]);
        }
        require(top.space.is_open(y) && top.space.is_dense(y), errc::verification_failed,
                "final Y is not a dense open");
        require(top.saturate(y) == y, errc::verification_failed, "final Y is not invariant");
        const auto* ul = find_line(pc.payload, "core-uset");
        require(ul != nullptr, errc::verification_failed, "missing core-uset");
        PointSet u(static_cast<std::size_t>(g.num_points()));
        for (std::size_t k = 1; k < ul->size(); ++k) u.set(cls.at((*ul)[k]));
        require(u.is_subset_of(y), errc::verification_failed, "core U not inside final Y");
        for (const auto& l : pc.payload) {
          if (l.empty() || l[0] != "core-pair") continue;
          require(l.size() == 4, errc::invalid_certificate, "bad core-pair line");
          std::vector<int> perm =
              top.word_perm(g.group().word_from_string(l[3]));
          int a = cls.at(l[1]), b = cls.at(l[2]);
          require(top.embedded.test(perm[a]) && top.embedded.test(perm[b]),
                  errc::verification_failed,
                  "core pair witness does not move the pair into the base chart");
        }
      }
    }
  } catch (const error& e) {
    res.reject(e.what());
  }
  return res;
}

}  // namespace pact

#endif
