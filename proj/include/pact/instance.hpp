#ifndef PACT_INSTANCE_HPP
#define PACT_INSTANCE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pact/error.hpp"
#include "pact/finite_space.hpp"
#include "pact/partial_action.hpp"
#include "pact/zset.hpp"

namespace pact {

// One problem instance, as read from (or written to) an instance file. Finite
// instances carry a carrier with its topology, a group, and a partial action;
// symbolic instances carry the infinite-cyclic shift and zset descriptions.
struct Instance {
  std::optional<FiniteSpace> space;
  std::optional<Carrier> carrier;
  std::optional<GroupHandle> group;
  std::optional<PartialAction> action;
  std::vector<std::pair<std::string, PointSet>> subsets;
  std::vector<std::pair<std::string, ZSubset>> zsubsets;

  bool symbolic() const { return !carrier.has_value(); }

  const PointSet& subset(const std::string& name) const {
    for (const auto& [n, s] : subsets)
      if (n == name) return s;
    fail(errc::unknown_symbol, "instance has no subset '" + name + "'");
  }

  const ZSubset& zsubset(const std::string& name) const {
    for (const auto& [n, s] : zsubsets)
      if (n == name) return s;
    fail(errc::unknown_symbol, "instance has no zset '" + name + "'");
  }

  bool has_subset(const std::string& name) const {
    for (const auto& [n, s] : subsets) {
      (void)s;
      if (n == name) return true;
    }
    return false;
  }

  bool has_zsubset(const std::string& name) const {
    for (const auto& [n, s] : zsubsets) {
      (void)s;
      if (n == name) return true;
    }
    return false;
  }
};

// --- serialization -----------------------------------------------------------

inline std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "pact instance v1\n";
  if (inst.carrier) {
    out << "space\n";
    for (const auto& name : inst.carrier->names()) out << "point " << name << "\n";
    if (inst.space)
      for (auto [a, b] : inst.space->relation_pairs())
        out << "le " << inst.carrier->name(a) << " " << inst.carrier->name(b) << "\n";
  }
  if (inst.group) {
    const GroupHandle& g = *inst.group;
    out << "group " << group_kind_name(g.kind()) << "\n";
    if (g.is_finite()) {
      out << "elements";
      for (const auto& s : g.symbols()) out << " " << s;
      out << "\n";
      for (int a = 0; a < g.num_symbols(); ++a)
        for (int b = 0; b < g.num_symbols(); ++b)
          out << "mul " << g.symbol(a) << " " << g.symbol(b) << " "
              << g.symbol(g.product(a, b)) << "\n";
    }
    out << "generators";
    for (int i = 0; i < g.num_generators(); ++i) out << " " << g.generator_name(i);
    out << "\n";
  }
  if (inst.action) {
    out << "action\n";
    const PartialAction& a = *inst.action;
    if (a.group().is_finite()) {
      for (int e = 0; e < a.group().num_symbols(); ++e) {
        if (e == a.group().identity_element()) continue;
        for (auto [src, dst] : a.element_image(e).pairs())
          out << "map " << a.group().symbol(e) << ": " << a.carrier().name(src) << " -> "
              << a.carrier().name(dst) << "\n";
      }
    } else {
      for (int s = 0; s < a.group().num_generators(); ++s)
        for (auto [src, dst] : a.generator_image(s).pairs())
          out << "map " << a.group().generator_name(s) << ": " << a.carrier().name(src)
              << " -> " << a.carrier().name(dst) << "\n";
    }
  }
  for (const auto& [name, set] : inst.subsets) {
    out << "subset " << name << "\n";
    for (auto i = set.find_first(); i != PointSet::npos; i = set.find_next(i))
      out << "in " << inst.carrier->name(static_cast<int>(i)) << "\n";
  }
  for (const auto& [name, zs] : inst.zsubsets) {
    out << "zset " << name << "\n";
    if (std::holds_alternative<SymbolicZSet>(zs)) {
      const auto& s = std::get<SymbolicZSet>(zs);
      out << "base " << SymbolicZSet::base_name(s.base()) << "\n";
      if (!s.delta().empty()) {
        out << "delta";
        for (auto d : s.delta()) out << " " << d;
        out << "\n";
      }
    } else {
      const auto& p = std::get<PeriodicZSet>(zs);
      out << "periodic " << p.modulus;
      for (int r : p.residues) out << " " << r;
      out << "\n";
    }
  }
  return out.str();
}

// --- parsing -----------------------------------------------------------------

namespace detail {

struct TokenLine {
  int number = 0;
  std::vector<std::string> tokens;
};

inline std::vector<TokenLine> tokenize_lines(const std::string& text) {
  std::vector<TokenLine> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    TokenLine tl;
    tl.number = number;
    std::string tok;
    while (ls >> tok) tl.tokens.push_back(tok);
    if (!tl.tokens.empty()) out.push_back(std::move(tl));
  }
  return out;
}

[[noreturn]] inline void parse_fail(const TokenLine& tl, int column, const std::string& msg) {
  fail(errc::parse_error,
       "line " + std::to_string(tl.number) + ", column " + std::to_string(column) + ": " + msg);
}

inline std::int64_t parse_int(const TokenLine& tl, int col) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(tl.tokens[col], &used);
    if (used != tl.tokens[col].size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    parse_fail(tl, col + 1, "expected an integer, got '" + tl.tokens[col] + "'");
  }
}

}  // namespace detail

inline Instance parse_instance(const std::string& text) {
  using detail::TokenLine;
  std::vector<TokenLine> lines = detail::tokenize_lines(text);
  require(!lines.empty() && lines[0].tokens.size() == 3 && lines[0].tokens[0] == "pact" &&
              lines[0].tokens[1] == "instance" && lines[0].tokens[2] == "v1",
          errc::parse_error, "missing 'pact instance v1' header");

  Instance inst;
  std::vector<std::string> points;
  std::vector<std::pair<std::string, std::string>> le_names;
  std::string group_kind;
  std::vector<std::string> elements, generators;
  std::vector<std::array<std::string, 3>> muls;
  struct MapLine {
    std::string gen, src, dst;
    TokenLine tl;
  };
  std::vector<MapLine> maps;
  struct SubsetDecl {
    std::string name;
    std::vector<std::pair<std::string, TokenLine>> members;
  };
  std::vector<SubsetDecl> subset_decls;
  struct ZDecl {
    std::string name;
    std::optional<std::string> base;
    std::vector<std::int64_t> delta;
    std::optional<std::pair<std::int64_t, std::vector<int>>> periodic;
  };
  std::vector<ZDecl> zdecls;

  enum class Section { none, space, group, action, subset, zset };
  Section section = Section::none;

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const TokenLine& tl = lines[li];
    const std::string& head = tl.tokens[0];
    if (head == "space") {
      section = Section::space;
    } else if (head == "group") {
      if (tl.tokens.size() != 2) detail::parse_fail(tl, 1, "expected 'group free|cyclic|finite'");
      group_kind = tl.tokens[1];
      section = Section::group;
    } else if (head == "action") {
      section = Section::action;
    } else if (head == "subset") {
      if (tl.tokens.size() != 2) detail::parse_fail(tl, 1, "expected 'subset NAME'");
      subset_decls.push_back({tl.tokens[1], {}});
      section = Section::subset;
    } else if (head == "zset") {
      if (tl.tokens.size() != 2) detail::parse_fail(tl, 1, "expected 'zset NAME'");
      zdecls.push_back({tl.tokens[1], std::nullopt, {}, std::nullopt});
      section = Section::zset;
    } else if (head == "point" && section == Section::space) {
      if (tl.tokens.size() != 2) detail::parse_fail(tl, 1, "expected 'point NAME'");
      for (char c : tl.tokens[1])
        if (c == '[' || c == ']' || c == ',')
          detail::parse_fail(tl, 2, "point names may not contain '[', ']' or ','");
      points.push_back(tl.tokens[1]);
    } else if (head == "le" && section == Section::space) {
      if (tl.tokens.size() != 3) detail::parse_fail(tl, 1, "expected 'le A B'");
      le_names.emplace_back(tl.tokens[1], tl.tokens[2]);
    } else if (head == "elements" && section == Section::group) {
      elements.assign(tl.tokens.begin() + 1, tl.tokens.end());
    } else if (head == "mul" && section == Section::group) {
      if (tl.tokens.size() != 4) detail::parse_fail(tl, 1, "expected 'mul A B C'");
      muls.push_back({tl.tokens[1], tl.tokens[2], tl.tokens[3]});
    } else if (head == "generators" && section == Section::group) {
      generators.assign(tl.tokens.begin() + 1, tl.tokens.end());
    } else if (head == "map" && section == Section::action) {
      // map GEN: A -> B
      if (tl.tokens.size() != 5 || tl.tokens[3] != "->" || tl.tokens[1].empty() ||
          tl.tokens[1].back() != ':')
        detail::parse_fail(tl, 1, "expected 'map GEN: A -> B'");
      maps.push_back({tl.tokens[1].substr(0, tl.tokens[1].size() - 1), tl.tokens[2],
                      tl.tokens[4], tl});
    } else if (head == "in" && section == Section::subset) {
      if (tl.tokens.size() != 2) detail::parse_fail(tl, 1, "expected 'in POINT'");
      subset_decls.back().members.emplace_back(tl.tokens[1], tl);
    } else if (head == "base" && section == Section::zset) {
      if (tl.tokens.size() != 2) detail::parse_fail(tl, 1, "expected 'base NAME'");
      zdecls.back().base = tl.tokens[1];
    } else if (head == "delta" && section == Section::zset) {
      for (std::size_t c = 1; c < tl.tokens.size(); ++c)
        zdecls.back().delta.push_back(detail::parse_int(tl, static_cast<int>(c)));
    } else if (head == "periodic" && section == Section::zset) {
      if (tl.tokens.size() < 2) detail::parse_fail(tl, 1, "expected 'periodic M r...'");
      std::vector<int> rs;
      for (std::size_t c = 2; c < tl.tokens.size(); ++c)
        rs.push_back(static_cast<int>(detail::parse_int(tl, static_cast<int>(c))));
      zdecls.back().periodic = {detail::parse_int(tl, 1), std::move(rs)};
    } else {
      detail::parse_fail(tl, 1, "unexpected '" + head + "' here");
    }
  }

  if (!points.empty()) {
    inst.carrier = Carrier(points);
    std::vector<std::pair<int, int>> rel;
    for (const auto& [a, b] : le_names)
      rel.emplace_back(inst.carrier->index_of(a), inst.carrier->index_of(b));
    inst.space = FiniteSpace::from_relations(inst.carrier->size(), rel);
  }

  if (!group_kind.empty()) {
    if (group_kind == "free") {
      require(!generators.empty(), errc::parse_error, "free group needs generators");
      inst.group = GroupHandle::free_group(generators);
    } else if (group_kind == "cyclic") {
      require(generators.size() == 1, errc::parse_error, "cyclic group needs one generator");
      inst.group = GroupHandle::cyclic_infinite(generators[0]);
    } else if (group_kind == "finite") {
      require(!elements.empty(), errc::parse_error, "finite group needs elements");
      std::map<std::string, int> eidx;
      for (int i = 0; i < static_cast<int>(elements.size()); ++i) eidx[elements[i]] = i;
      std::vector<std::vector<int>> table(elements.size(),
                                          std::vector<int>(elements.size(), -1));
      for (const auto& m : muls) {
        for (const auto& s : m)
          require(eidx.count(s), errc::unknown_symbol, "mul uses unknown element '" + s + "'");
        table[eidx[m[0]]][eidx[m[1]]] = eidx[m[2]];
      }
      for (const auto& row : table)
        for (int v : row)
          require(v >= 0, errc::parse_error, "multiplication table is incomplete");
      inst.group = GroupHandle::finite(elements, table, generators);
    } else {
      fail(errc::parse_error, "unknown group kind '" + group_kind + "'");
    }
  }

  if (inst.carrier && inst.group) {
    const int n = inst.carrier->size();
    std::map<std::string, std::vector<std::pair<int, int>>> pairs_by_gen;
    for (const auto& m : maps) {
      auto src = inst.carrier->find(m.src);
      if (!src) detail::parse_fail(m.tl, 3, "unknown point '" + m.src + "'");
      auto dst = inst.carrier->find(m.dst);
      if (!dst) detail::parse_fail(m.tl, 5, "unknown point '" + m.dst + "'");
      pairs_by_gen[m.gen].emplace_back(*src, *dst);
    }
    if (inst.group->is_finite()) {
      std::map<std::string, PartialBijection> by_element;
      for (auto& [gen, prs] : pairs_by_gen)
        by_element.emplace(gen, PartialBijection::from_pairs(n, prs));
      inst.action = PartialAction::make_finite(*inst.group, *inst.carrier, by_element);
    } else {
      std::vector<PartialBijection> images;
      for (int s = 0; s < inst.group->num_generators(); ++s) {
        auto it = pairs_by_gen.find(inst.group->generator_name(s));
        images.push_back(it == pairs_by_gen.end()
                             ? PartialBijection::empty_map(n)
                             : PartialBijection::from_pairs(n, it->second));
        if (it != pairs_by_gen.end()) pairs_by_gen.erase(it);
      }
      for (const auto& [gen, prs] : pairs_by_gen) {
        (void)prs;
        fail(errc::unknown_symbol, "action maps unknown generator '" + gen + "'");
      }
      inst.action = PartialAction::make_free(*inst.group, *inst.carrier, images);
    }
  } else if (!maps.empty()) {
    fail(errc::parse_error, "action section requires both a space and a group");
  }

  for (const auto& d : subset_decls) {
    require(inst.carrier.has_value(), errc::parse_error, "subset section requires a space");
    PointSet s(static_cast<std::size_t>(inst.carrier->size()));
    for (const auto& [name, tl] : d.members) {
      auto idx = inst.carrier->find(name);
      if (!idx) detail::parse_fail(tl, 2, "unknown point '" + name + "'");
      s.set(*idx);
    }
    inst.subsets.emplace_back(d.name, std::move(s));
  }

  for (const auto& d : zdecls) {
    require(!d.base.has_value() || !d.periodic.has_value(), errc::parse_error,
            "zset '" + d.name + "' mixes base and periodic forms");
    if (d.periodic) {
      inst.zsubsets.emplace_back(d.name,
                                 PeriodicZSet::make(d.periodic->first, d.periodic->second));
    } else {
      require(d.base.has_value(), errc::parse_error, "zset '" + d.name + "' has no base");
      inst.zsubsets.emplace_back(
          d.name, SymbolicZSet::make(SymbolicZSet::base_from_name(*d.base), d.delta));
    }
  }
  return inst;
}

// FNV-1a 64 over the canonical serialized text; binds certificates to the
// instances they talk about.
inline std::string instance_digest(const std::string& canonical_text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical_text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out = "fnv1a64:";
  for (int shift = 60; shift >= 0; shift -= 4) out += hex[(h >> shift) & 0xf];
  return out;
}

}  // namespace pact

#endif
