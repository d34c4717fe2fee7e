#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace kmx {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// "p/q" with q > 0 always present, e.g. "-1/2", "3/1".
std::string to_pq_string(const Rational& r);

/// Accepts "p/q" or "p".
Rational parse_rational(const std::string& s);

double to_double(const Rational& r);

/// Dense rational matrix; row-major vector of rows. Only used for the small
/// (rank <= 10) systems that appear here.
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Counts of positive, negative and zero entries in a congruence-diagonal form.
struct Inertia {
  int pos = 0;
  int neg = 0;
  int null = 0;
  bool operator==(const Inertia&) const = default;
};

/// Sylvester inertia of a symmetric rational matrix by exact symmetric
/// elimination (congruence), with the 2x2 trick when no diagonal pivot is left.
Inertia inertia(RationalMatrix m);

/// Exact determinant by fraction-based Gaussian elimination.
Rational determinant(RationalMatrix m);

/// Solves m x = rhs for square nonsingular m; returns nullopt-equivalent by
/// throwing DomainError when singular.
std::vector<Rational> solve(RationalMatrix m, std::vector<Rational> rhs);

/// Inverse of a nonsingular square matrix; throws DomainError when singular.
RationalMatrix inverse(const RationalMatrix& m);

template <class IntMatrix>
RationalMatrix to_rational_matrix(const IntMatrix& a) {
  RationalMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i].reserve(a[i].size());
    for (auto v : a[i]) out[i].emplace_back(v);
  }
  return out;
}

}  // namespace kmx
