#ifndef PACT_POINT_SET_HPP
#define PACT_POINT_SET_HPP

#include <boost/dynamic_bitset.hpp>
#include <vector>

namespace pact {

// Subsets of a finite carrier are plain bitsets indexed by carrier position.
using PointSet = boost::dynamic_bitset<>;

inline PointSet empty_set(std::size_t n) { return PointSet(n); }

inline PointSet full_set(std::size_t n) {
  PointSet s(n);
  s.set();
  return s;
}

inline PointSet set_of(std::size_t n, std::initializer_list<std::size_t> points) {
  PointSet s(n);
  for (auto p : points) s.set(p);
  return s;
}

inline std::vector<int> set_to_indices(const PointSet& s) {
  std::vector<int> out;
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i))
    out.push_back(static_cast<int>(i));
  return out;
}

inline PointSet set_from_indices(std::size_t n, const std::vector<int>& idx) {
  PointSet s(n);
  for (int i : idx) s.set(static_cast<std::size_t>(i));
  return s;
}

// Image of a set under a total map given as an index vector.
inline PointSet set_image(const PointSet& s, const std::vector<int>& perm) {
  PointSet out(s.size());
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) out.set(perm[i]);
  return out;
}

}  // namespace pact

#endif
