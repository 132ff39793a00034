#ifndef PACT_CARRIER_HPP
#define PACT_CARRIER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pact/error.hpp"
#include "pact/point_set.hpp"

namespace pact {

// A finite ordered set of opaque point identifiers. The declaration order is
// total and fixed; every set, map and certificate below is reported in this
// order so output is reproducible.
class Carrier {
 public:
  Carrier() = default;

  explicit Carrier(std::vector<std::string> names) : names_(std::move(names)) {
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
      require(!names_[i].empty(), errc::parse_error, "empty point name");
      auto [it, fresh] = index_.emplace(names_[i], i);
      (void)it;
      require(fresh, errc::parse_error, "duplicate point name '" + names_[i] + "'");
    }
  }

  int size() const { return static_cast<int>(names_.size()); }

  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<int> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int index_of(const std::string& name) const {
    auto i = find(name);
    require(i.has_value(), errc::unknown_symbol, "unknown point '" + name + "'");
    return *i;
  }

  PointSet all() const { return full_set(names_.size()); }
  PointSet none() const { return empty_set(names_.size()); }

  // Sub-carrier on the given subset, keeping the original iteration order.
  Carrier restricted(const PointSet& subset) const {
    std::vector<std::string> sub;
    for (auto i = subset.find_first(); i != PointSet::npos; i = subset.find_next(i))
      sub.push_back(names_[i]);
    return Carrier(std::move(sub));
  }

  std::string set_to_string(const PointSet& s) const {
    std::string out;
    for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) {
      if (!out.empty()) out += ' ';
      out += names_[i];
    }
    return out;
  }

  bool operator==(const Carrier& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

}  // namespace pact

#endif
