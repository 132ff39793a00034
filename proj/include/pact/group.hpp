#ifndef PACT_GROUP_HPP
#define PACT_GROUP_HPP

#include <algorithm>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "pact/error.hpp"

namespace pact {

enum class GroupKind { free_kind, cyclic_kind, finite_kind };

inline const char* group_kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::free_kind: return "free";
    case GroupKind::cyclic_kind: return "cyclic";
    case GroupKind::finite_kind: return "finite";
  }
  return "?";
}

// One letter of a word: a generator symbol (index into the group's generator
// list) possibly inverted.
struct Letter {
  int gen = 0;
  bool inverse = false;

  bool operator==(const Letter& o) const { return gen == o.gen && inverse == o.inverse; }
  bool operator!=(const Letter& o) const { return !(*this == o); }
};

// Letters are ranked with all positive generators before all inverses, in
// declared generator order; words compare length first, then lexicographically
// by rank. This is the enumeration order every witness search uses.
struct Word {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t length() const { return letters.size(); }

  bool operator==(const Word& o) const { return letters == o.letters; }
  bool operator!=(const Word& o) const { return letters != o.letters; }
};

class GroupHandle {
 public:
  GroupHandle() = default;

  static GroupHandle free_group(std::vector<std::string> generators) {
    GroupHandle g;
    g.kind_ = GroupKind::free_kind;
    g.symbols_ = std::move(generators);
    g.check_symbols();
    for (int i = 0; i < static_cast<int>(g.symbols_.size()); ++i) g.generators_.push_back(i);
    return g;
  }

  static GroupHandle cyclic_infinite(std::string generator) {
    GroupHandle g;
    g.kind_ = GroupKind::cyclic_kind;
    g.symbols_ = {std::move(generator)};
    g.check_symbols();
    g.generators_ = {0};
    return g;
  }

  // `table[a][b]` is the product ab over element indices. Associativity,
  // identity and inverses are checked, as is generation by `generators`.
  static GroupHandle finite(std::vector<std::string> elements,
                            std::vector<std::vector<int>> table,
                            std::vector<std::string> generators) {
    GroupHandle g;
    g.kind_ = GroupKind::finite_kind;
    g.symbols_ = std::move(elements);
    g.check_symbols();
    g.table_ = std::move(table);
    const int n = static_cast<int>(g.symbols_.size());
    require(static_cast<int>(g.table_.size()) == n, errc::bad_group, "table has wrong row count");
    for (const auto& row : g.table_) {
      require(static_cast<int>(row.size()) == n, errc::bad_group, "table has wrong column count");
      for (int v : row) require(v >= 0 && v < n, errc::bad_group, "table entry out of range");
    }
    // identity
    g.identity_ = -1;
    for (int e = 0; e < n; ++e) {
      bool ok = true;
      for (int a = 0; a < n && ok; ++a) ok = g.table_[e][a] == a && g.table_[a][e] == a;
      if (ok) {
        g.identity_ = e;
        break;
      }
    }
    require(g.identity_ >= 0, errc::bad_group, "table has no identity element");
    // inverses
    g.inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b)
        if (g.table_[a][b] == g.identity_ && g.table_[b][a] == g.identity_) {
          g.inverse_[a] = b;
          break;
        }
      require(g.inverse_[a] >= 0, errc::bad_group,
              "element '" + g.symbols_[a] + "' has no inverse");
    }
    // associativity
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          require(g.table_[g.table_[a][b]][c] == g.table_[a][g.table_[b][c]], errc::bad_group,
                  "table is not associative");
    // generators (the trivial group is the one group that needs none)
    require(!generators.empty() || n == 1, errc::bad_group,
            "finite group needs a generator list");
    for (const auto& s : generators) {
      auto it = std::find(g.symbols_.begin(), g.symbols_.end(), s);
      require(it != g.symbols_.end(), errc::unknown_symbol, "generator '" + s + "' not an element");
      int idx = static_cast<int>(it - g.symbols_.begin());
      require(idx != g.identity_, errc::bad_group, "identity listed as generator");
      g.generators_.push_back(idx);
    }
    // closure check + minimal words per element (BFS in enumeration order)
    g.build_min_words();
    for (int a = 0; a < n; ++a)
      require(g.reached_[a], errc::bad_group,
              "generators do not generate: '" + g.symbols_[a] + "' unreachable");
    return g;
  }

  GroupKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == GroupKind::finite_kind; }
  int order() const { return is_finite() ? static_cast<int>(symbols_.size()) : -1; }

  int num_generators() const { return static_cast<int>(generators_.size()); }
  int generator_element(int i) const { return generators_[i]; }  // finite kind
  const std::string& generator_name(int i) const { return symbols_[generators_[i]]; }

  int num_symbols() const { return static_cast<int>(symbols_.size()); }
  const std::string& symbol(int i) const { return symbols_[i]; }
  const std::vector<std::string>& symbols() const { return symbols_; }

  int identity_element() const { return identity_; }
  int inverse_element(int a) const { return inverse_[a]; }
  int product(int a, int b) const { return table_[a][b]; }

  int generator_index(const std::string& name) const {
    for (int i = 0; i < num_generators(); ++i)
      if (generator_name(i) == name) return i;
    fail(errc::unknown_symbol, "unknown generator '" + name + "'");
  }

  // ---- words -------------------------------------------------------------

  int letter_rank(const Letter& l) const { return l.inverse ? num_generators() + l.gen : l.gen; }

  bool word_less(const Word& a, const Word& b) const {
    if (a.length() != b.length()) return a.length() < b.length();
    for (std::size_t i = 0; i < a.length(); ++i) {
      int ra = letter_rank(a.letters[i]), rb = letter_rank(b.letters[i]);
      if (ra != rb) return ra < rb;
    }
    return false;
  }

  Word reduce(const Word& w) const {
    Word out;
    for (const Letter& l : w.letters) {
      if (!out.letters.empty() && out.letters.back().gen == l.gen &&
          out.letters.back().inverse != l.inverse)
        out.letters.pop_back();
      else
        out.letters.push_back(l);
    }
    return out;
  }

  Word concat_reduced(const Word& a, const Word& b) const {
    Word w = a;
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return reduce(w);
  }

  Word inverse_word(const Word& w) const {
    Word out;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
      out.letters.push_back(Letter{it->gen, !it->inverse});
    return out;
  }

  // Element of a finite group named by a word over the generators.
  int element_of(const Word& w) const {
    require(is_finite(), errc::internal, "element_of on infinite group");
    int e = identity_;
    for (const Letter& l : w.letters) {
      int g = generators_[l.gen];
      e = table_[e][l.inverse ? inverse_[g] : g];
    }
    return e;
  }

  // Length-lex minimal generator word for a finite-group element.
  const Word& min_word(int element) const { return min_words_[element]; }

  // Canonical form: free/cyclic words freely reduced, finite-kind words
  // replaced by the minimal word of the element they denote.
  Word normalize(const Word& w) const {
    if (is_finite()) return min_words_[element_of(w)];
    return reduce(w);
  }

  std::string word_to_string(const Word& w) const {
    if (w.letters.empty()) return "1";
    std::string out;
    for (const Letter& l : w.letters) {
      if (!out.empty()) out += '.';
      out += generator_name(l.gen);
      if (l.inverse) out += '\'';
    }
    return out;
  }

  Word word_from_string(const std::string& s) const {
    Word w;
    if (s == "1") return w;
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t dot = s.find('.', pos);
      std::string tok = s.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
      pos = dot == std::string::npos ? s.size() : dot + 1;
      require(!tok.empty(), errc::parse_error, "bad word '" + s + "'");
      Letter l;
      if (tok.back() == '\'') {
        l.inverse = true;
        tok.pop_back();
      }
      l.gen = generator_index(tok);
      w.letters.push_back(l);
    }
    return w;
  }

  // All reduced words of length <= radius in enumeration order (free/cyclic),
  // or the minimal words of all elements (finite; radius ignored).
  std::vector<Word> ball(int radius) const {
    std::vector<Word> out;
    if (is_finite()) {
      out = min_words_;
      std::sort(out.begin(), out.end(),
                [this](const Word& a, const Word& b) { return word_less(a, b); });
      return out;
    }
    out.push_back(Word{});
    std::vector<Word> layer = {Word{}};
    for (int len = 1; len <= radius; ++len) {
      std::vector<Word> next;
      for (const Word& w : layer) {
        for (int rank = 0; rank < 2 * num_generators(); ++rank) {
          Letter l{rank % num_generators(), rank >= num_generators()};
          if (!w.letters.empty() && w.letters.back().gen == l.gen &&
              w.letters.back().inverse != l.inverse)
            continue;  // would cancel
          Word w2 = w;
          w2.letters.push_back(l);
          next.push_back(std::move(w2));
        }
      }
      // Words were produced grandparent-major; re-sort the layer lexicographically.
      std::sort(next.begin(), next.end(),
                [this](const Word& a, const Word& b) { return word_less(a, b); });
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  bool operator==(const GroupHandle& o) const {
    return kind_ == o.kind_ && symbols_ == o.symbols_ && generators_ == o.generators_ &&
           table_ == o.table_;
  }

 private:
  void check_symbols() {
    require(!symbols_.empty(), errc::bad_group, "group needs at least one symbol");
    for (const auto& s : symbols_) {
      require(!s.empty(), errc::bad_group, "empty group symbol");
      require(std::count(symbols_.begin(), symbols_.end(), s) == 1, errc::bad_group,
              "duplicate group symbol '" + s + "'");
    }
  }

  void build_min_words() {
    const int n = static_cast<int>(symbols_.size());
    min_words_.assign(n, Word{});
    reached_.assign(n, false);
    reached_[identity_] = true;
    std::queue<int> q;
    q.push(identity_);
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int rank = 0; rank < 2 * static_cast<int>(generators_.size()); ++rank) {
        Letter l{rank % static_cast<int>(generators_.size()),
                 rank >= static_cast<int>(generators_.size())};
        int g = generators_[l.gen];
        int b = table_[a][l.inverse ? inverse_[g] : g];
        if (!reached_[b]) {
          reached_[b] = true;
          min_words_[b] = min_words_[a];
          min_words_[b].letters.push_back(l);
          q.push(b);
        }
      }
    }
  }

  GroupKind kind_ = GroupKind::free_kind;
  std::vector<std::string> symbols_;   // free/cyclic: generator names; finite: element names
  std::vector<int> generators_;        // indices into symbols_
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = -1;
  std::vector<Word> min_words_;
  std::vector<bool> reached_;
};

}  // namespace pact

#endif
