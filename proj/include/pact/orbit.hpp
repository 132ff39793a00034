#ifndef PACT_ORBIT_HPP
#define PACT_ORBIT_HPP

#include <map>
#include <string>
#include <vector>

#include "pact/error.hpp"
#include "pact/group.hpp"
#include "pact/point_set.hpp"

namespace pact {

struct WordPerm {
  Word word;               // length-lex minimal word over the named generators
  std::vector<int> perm;   // total bijection on the point range
};

inline std::vector<int> perm_inverse(const std::vector<int>& p) {
  std::vector<int> q(p.size());
  for (int i = 0; i < static_cast<int>(p.size()); ++i) q[p[i]] = i;
  return q;
}

inline std::vector<int> perm_compose_apply_first(const std::vector<int>& first,
                                                 const std::vector<int>& then) {
  std::vector<int> out(first.size());
  for (int i = 0; i < static_cast<int>(first.size()); ++i) out[i] = then[first[i]];
  return out;
}

// Close a generating set of permutations into the finite group it generates.
// Elements come back in BFS discovery order, which is length-lex word order,
// so the first match in a scan is always the canonical witness.
inline std::vector<WordPerm> close_generators(const std::vector<std::vector<int>>& gens,
                                              std::size_t element_cap = 500000) {
  require(!gens.empty(), errc::bad_group, "no generators");
  const int n = static_cast<int>(gens[0].size());
  std::vector<std::vector<int>> letters;  // positive generators then inverses
  for (const auto& g : gens) {
    require(static_cast<int>(g.size()) == n, errc::carrier_mismatch, "generator size mismatch");
    letters.push_back(g);
  }
  for (const auto& g : gens) letters.push_back(perm_inverse(g));

  std::vector<WordPerm> out;
  std::map<std::vector<int>, int> seen;
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  out.push_back({Word{}, id});
  seen.emplace(id, 0);
  for (std::size_t head = 0; head < out.size(); ++head) {
    // out grows while we iterate; index-based loop keeps BFS order intact
    std::vector<int> base = out[head].perm;
    Word base_word = out[head].word;
    for (int rank = 0; rank < static_cast<int>(letters.size()); ++rank) {
      // word base·letter acts by applying the letter first, then base;
      // appending keeps BFS discovery in length-lex order
      std::vector<int> next = perm_compose_apply_first(letters[rank], base);
      if (seen.count(next)) continue;
      require(out.size() < element_cap, errc::cap_exceeded, "generated group too large");
      Letter l{rank % static_cast<int>(gens.size()), rank >= static_cast<int>(gens.size())};
      Word w = base_word;
      w.letters.push_back(l);
      seen.emplace(next, static_cast<int>(out.size()));
      out.push_back({std::move(w), std::move(next)});
    }
  }
  return out;
}

// Orbits of the group generated by total bijections, as connected components.
inline std::vector<std::vector<int>> perm_orbits(int n, const std::vector<std::vector<int>>& gens) {
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> orbits;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    int id = static_cast<int>(orbits.size());
    orbits.emplace_back();
    std::vector<int> stack = {start};
    comp[start] = id;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      orbits[id].push_back(x);
      for (const auto& g : gens) {
        int y = g[x];
        if (comp[y] < 0) {
          comp[y] = id;
          stack.push_back(y);
        }
        int z = perm_inverse(g)[x];
        if (comp[z] < 0) {
          comp[z] = id;
          stack.push_back(z);
        }
      }
    }
    std::sort(orbits[id].begin(), orbits[id].end());
  }
  return orbits;
}

}  // namespace pact

#endif
