#pragma once
// Independent brute-force oracles on small integer data. Plain int64
// arithmetic only; nothing here calls into the library.

#include <cstdint>
#include <cstdlib>
#include <set>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<std::int64_t>>;
using Vec = std::vector<std::int64_t>;

inline std::int64_t cofactor_det(const Mat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  std::int64_t det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Mat minor;
    for (std::size_t i = 1; i < n; ++i) {
      Vec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    std::int64_t c = cofactor_det(minor) * m[0][j];
    det += (j % 2 == 0) ? c : -c;
  }
  return det;
}

inline Mat adjugate(const Mat& m) {
  const std::size_t n = m.size();
  Mat adj(n, Vec(n));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        Vec row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(m[r][c]);
        minor.push_back(row);
      }
      std::int64_t v = cofactor_det(minor);
      adj[j][i] = ((i + j) % 2 == 0) ? v : -v;
    }
  return adj;
}

// Z^n modulo the columns of a nonsingular square matrix R. Cosets are
// identified by adj(R) x mod |det R|, which is injective on cosets.
struct FiniteGroup {
  Mat R;
  Mat adj;
  std::int64_t d;

  explicit FiniteGroup(Mat r) : R(std::move(r)), adj(adjugate(R)) {
    d = std::llabs(cofactor_det(R));
  }
  std::size_t dim() const { return R.size(); }

  Vec key(const Vec& x) const {
    Vec k(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < dim(); ++j) s += adj[i][j] * x[j];
      k[i] = ((s % d) + d) % d;
    }
    return k;
  }
  bool is_zero(const Vec& x) const {
    for (auto v : key(x))
      if (v != 0) return false;
    return true;
  }
  Vec add_keys(const Vec& a, const Vec& b) const {
    Vec out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = (a[i] + b[i]) % d;
    return out;
  }
  // All elements as representatives in the box [0, d)^n.
  std::vector<Vec> elements() const {
    std::vector<Vec> out;
    std::set<Vec> seen;
    Vec x(dim(), 0);
    for (;;) {
      if (seen.insert(key(x)).second) out.push_back(x);
      std::size_t i = 0;
      while (i < dim() && ++x[i] == d) x[i++] = 0;
      if (i == dim()) break;
    }
    return out;
  }
  std::set<Vec> span(const std::vector<Vec>& gens) const {
    std::set<Vec> out{key(Vec(dim(), 0))};
    std::vector<Vec> frontier(out.begin(), out.end());
    while (!frontier.empty()) {
      std::vector<Vec> next;
      for (const auto& e : frontier)
        for (const auto& g : gens) {
          Vec s = add_keys(e, key(g));
          if (out.insert(s).second) next.push_back(s);
        }
      frontier = std::move(next);
    }
    return out;
  }
};

inline Vec mat_vec(const Mat& m, const Vec& x) {
  Vec out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += m[i][j] * x[j];
  return out;
}

}  // namespace oracle
