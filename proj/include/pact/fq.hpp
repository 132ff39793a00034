#ifndef PACT_FQ_HPP
#define PACT_FQ_HPP

#include <array>
#include <string>
#include <vector>

#include "pact/error.hpp"

namespace pact {

// Arithmetic tables for F_q, q = p^k <= 9. Prime fields use integers mod p;
// F4, F8, F9 use fixed irreducible polynomials with elements encoded by their
// coefficient vector read as a base-p integer:
//   F4 = F2[t]/(t^2+t+1),  F8 = F2[t]/(t^3+t+1),  F9 = F3[t]/(t^2+1).
class Fq {
 public:
  explicit Fq(int q) : q_(q) {
    int p = 0, k = 0;
    switch (q) {
      case 2: case 3: case 5: case 7: p = q; k = 1; break;
      case 4: p = 2; k = 2; break;
      case 8: p = 2; k = 3; break;
      case 9: p = 3; k = 2; break;
      default: fail(errc::parse_error, "unsupported field size q=" + std::to_string(q));
    }
    p_ = p;
    k_ = k;
    // reduction of t^k, as coefficients of 1, t, t^2, ...
    std::vector<int> red;
    if (q == 4) red = {1, 1};
    if (q == 8) red = {1, 1, 0};
    if (q == 9) red = {2, 0};

    add_.assign(q, std::vector<int>(q));
    mul_.assign(q, std::vector<int>(q));
    inv_.assign(q, 0);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        std::vector<int> ca = digits(a), cb = digits(b);
        std::vector<int> sum(k_);
        for (int i = 0; i < k_; ++i) sum[i] = (ca[i] + cb[i]) % p_;
        add_[a][b] = value(sum);
        // polynomial product, then reduce degrees >= k using t^k = red
        std::vector<int> prod(2 * k_ - 1, 0);
        for (int i = 0; i < k_; ++i)
          for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
        for (int d = 2 * k_ - 2; d >= k_; --d) {
          int c = prod[d];
          if (c == 0) continue;
          prod[d] = 0;
          for (int i = 0; i < k_; ++i) prod[d - k_ + i] = (prod[d - k_ + i] + c * red[i]) % p_;
        }
        prod.resize(k_);
        mul_[a][b] = value(prod);
      }
    for (int a = 1; a < q; ++a) {
      for (int b = 1; b < q; ++b)
        if (mul_[a][b] == 1) inv_[a] = b;
      require(inv_[a] != 0, errc::internal, "field element has no inverse");
    }
  }

  int q() const { return q_; }
  int add(int a, int b) const { return add_[a][b]; }
  int mul(int a, int b) const { return mul_[a][b]; }
  int inv(int a) const {
    require(a != 0, errc::internal, "inverse of zero");
    return inv_[a];
  }

 private:
  std::vector<int> digits(int a) const {
    std::vector<int> d(k_);
    for (int i = 0; i < k_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  int value(const std::vector<int>& d) const {
    int v = 0;
    for (int i = k_ - 1; i >= 0; --i) v = v * p_ + d[i];
    return v;
  }

  int q_, p_ = 0, k_ = 0;
  std::vector<std::vector<int>> add_, mul_;
  std::vector<int> inv_;
};

// Canonical homogeneous coordinates on P^2(F_q): first nonzero coordinate
// scaled to 1; the q^2+q+1 points are ordered lexicographically.
struct ProjectivePoint {
  std::array<int, 3> c;

  bool operator<(const ProjectivePoint& o) const { return c < o.c; }
  bool operator==(const ProjectivePoint& o) const { return c == o.c; }

  std::string name() const {
    return std::to_string(c[0]) + ":" + std::to_string(c[1]) + ":" + std::to_string(c[2]);
  }
};

inline ProjectivePoint projective_canonical(const Fq& f, std::array<int, 3> c) {
  for (int i = 0; i < 3; ++i)
    if (c[i] != 0) {
      int s = f.inv(c[i]);
      for (int j = 0; j < 3; ++j) c[j] = f.mul(c[j], s);
      break;
    }
  return ProjectivePoint{c};
}

inline std::vector<ProjectivePoint> projective_plane(const Fq& f) {
  std::vector<ProjectivePoint> pts;
  for (int y = 0; y < f.q(); ++y)
    for (int z = 0; z < f.q(); ++z) pts.push_back({{1, y, z}});
  for (int z = 0; z < f.q(); ++z) pts.push_back({{0, 1, z}});
  pts.push_back({{0, 0, 1}});
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace pact

#endif
