#include "kmx/rational.hpp"

#include "kmx/errors.hpp"

#include <utility>

namespace kmx {

std::string to_pq_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw DomainError("cannot parse rational '" + s + "'");
  }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Inertia inertia(RationalMatrix m) {
  const std::size_t n = m.size();
  Inertia out;
  std::size_t k = 0;
  while (k < n) {
    // Find a nonzero diagonal pivot in the trailing block.
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i) {
      if (m[i][i] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == n) {
      // No diagonal pivot: look for an off-diagonal entry; adding row/col j
      // to row/col i makes the (i,i) entry 2*m[i][j] != 0.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (m[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        out.null += static_cast<int>(n - k);
        break;
      }
      for (std::size_t c = k; c < n; ++c) m[pi][c] += m[pj][c];
      for (std::size_t r = k; r < n; ++r) m[r][pi] += m[r][pj];
      piv = pi;
    }
    if (piv != k) {
      std::swap(m[piv], m[k]);
      for (std::size_t r = 0; r < n; ++r) std::swap(m[r][piv], m[r][k]);
    }
    const Rational p = m[k][k];
    if (p > 0)
      ++out.pos;
    else
      ++out.neg;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const Rational f = m[i][k] / p;
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] -= f * m[k][j];
    }
    // Keep the trailing block symmetric by mirroring the updated upper part.
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m[j][i] = m[i][j];
    ++k;
  }
  return out;
}

Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

std::vector<Rational> solve(RationalMatrix m, std::vector<Rational> rhs) {
  const std::size_t n = m.size();
  if (rhs.size() != n) throw DomainError("solve: dimension mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) throw DomainError("solve: singular matrix");
    std::swap(m[piv], m[k]);
    std::swap(rhs[piv], rhs[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m[i][k] == 0) continue;
      const Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      rhs[i] -= f * rhs[k];
    }
  }
  for (std::size_t k = 0; k < n; ++k) rhs[k] /= m[k][k];
  return rhs;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix out(n, std::vector<Rational>(n));
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Rational> e(n, Rational(0));
    e[c] = 1;
    auto col = solve(m, std::move(e));
    for (std::size_t r = 0; r < n; ++r) out[r][c] = col[r];
  }
  return out;
}

}  // namespace kmx
