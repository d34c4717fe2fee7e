#pragma once
// Independent reference computations used only by the tests. None of these
// call into the library's algorithms beyond plain data accessors.

#include "kmx/diagram.hpp"
#include "kmx/lattice.hpp"
#include "kmx/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

inline IntMatrix gcm_of(int n, const std::vector<std::pair<int, int>>& edges) {
  IntMatrix g(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) g[i][i] = 2;
  for (auto [a, b] : edges) g[a][b] = g[b][a] = -1;
  return g;
}

inline IntMatrix gcm_of(const kmx::Diagram& d) {
  return gcm_of(d.rank(), {d.edges().begin(), d.edges().end()});
}

/// Fraction-free (Bareiss) determinant; exact for small integer matrices.
inline kmx::Integer bareiss_det(IntMatrix m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  std::vector<std::vector<kmx::Integer>> a(n, std::vector<kmx::Integer>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
  kmx::Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline IntMatrix principal(const IntMatrix& m, const std::vector<int>& idx) {
  IntMatrix s(idx.size(), std::vector<std::int64_t>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) s[i][j] = m[idx[i]][idx[j]];
  return s;
}

/// Positive semidefinite iff every principal minor is >= 0.
inline bool is_psd(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    if (bareiss_det(principal(m, idx)) < 0) return false;
  }
  return true;
}

inline bool is_pd(const IntMatrix& m) {
  for (int k = 1; k <= static_cast<int>(m.size()); ++k) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (bareiss_det(principal(m, idx)) <= 0) return false;
  }
  return true;
}

enum class Type { Finite, Affine, Indefinite };

/// Connected GCM: finite iff PD, affine iff PSD and singular.
inline Type classify(const IntMatrix& g) {
  if (is_pd(g)) return Type::Finite;
  if (is_psd(g) && bareiss_det(g) == 0) return Type::Affine;
  return Type::Indefinite;
}

inline bool connected(int n, const std::vector<std::pair<int, int>>& edges, const std::vector<int>& nodes) {
  if (nodes.empty()) return false;
  std::set<int> in(nodes.begin(), nodes.end()), seen{nodes[0]};
  std::vector<int> stack{nodes[0]};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (auto [a, b] : edges) {
      int w = a == v ? b : b == v ? a : -1;
      if (w >= 0 && in.count(w) && seen.insert(w).second) stack.push_back(w);
    }
  }
  (void)n;
  return seen.size() == in.size();
}

/// Straight from the definition: connected, indefinite, all proper connected
/// induced subdiagrams finite or affine.
inline bool is_hyperbolic(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  if (!connected(n, edges, all)) return false;
  const IntMatrix g = gcm_of(n, edges);
  if (classify(g) != Type::Indefinite) return false;
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    if (!connected(n, edges, idx)) continue;
    if (classify(principal(g, idx)) == Type::Indefinite) return false;
  }
  return true;
}

/// Brute-force graph isomorphism over all permutations.
inline bool isomorphic(int n, const std::vector<std::pair<int, int>>& e1,
                       const std::vector<std::pair<int, int>>& e2) {
  if (e1.size() != e2.size()) return false;
  std::set<std::pair<int, int>> target;
  for (auto [a, b] : e2) target.insert({std::min(a, b), std::max(a, b)});
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (auto [a, b] : e1)
      if (!target.count({std::min(p[a], p[b]), std::max(p[a], p[b])})) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

inline std::int64_t form(const std::vector<std::int64_t>& v, const std::vector<std::int64_t>& w,
                         const IntMatrix& g) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) s += v[i] * g[i][j] * w[j];
  return s;
}

/// Words over simple reflections by plain breadth-first search, up to
/// length L: is there w with w(a), w(b) both in the sign class `positive`?
inline bool bfs_same_sign(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, const IntMatrix& g,
                          int L, bool positive) {
  const int n = static_cast<int>(g.size());
  auto sign_ok = [&](const std::vector<std::int64_t>& v) {
    bool any = false;
    for (auto c : v) {
      if (positive ? c < 0 : c > 0) return false;
      any |= c != 0;
    }
    return any;
  };
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::vector<std::int64_t>> layer;
  std::vector<std::int64_t> start = a;
  start.insert(start.end(), b.begin(), b.end());
  layer.push_back(start);
  seen.insert(start);
  for (int len = 0; len <= L; ++len) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& s : layer) {
      std::vector<std::int64_t> x(s.begin(), s.begin() + n), y(s.begin() + n, s.end());
      if (sign_ok(x) && sign_ok(y)) return true;
      if (len == L) continue;
      for (int i = 0; i < n; ++i) {
        auto r = s;
        std::int64_t cx = 0, cy = 0;
        for (int j = 0; j < n; ++j) {
          cx += g[i][j] * x[j];
          cy += g[i][j] * y[j];
        }
        r[i] -= cx;
        r[n + i] -= cy;
        if (seen.insert(r).second) next.push_back(std::move(r));
      }
    }
    layer = std::move(next);
  }
  return false;
}

}  // namespace oracle
