#pragma once

#include "kmx/diagram.hpp"
#include "kmx/parallel.hpp"
#include "kmx/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kmx {

/// Symmetric integer inner-product matrix. A diagram's GCM is one; the
/// abstract rank-3 models in geometry use others.
using GramMatrix = std::vector<std::vector<int>>;

/// Integer coordinates in the simple-root basis.
struct LatticeVector {
  std::vector<std::int64_t> coords;

  LatticeVector() = default;
  explicit LatticeVector(std::vector<std::int64_t> c) : coords(std::move(c)) {}
  LatticeVector(std::initializer_list<std::int64_t> c) : coords(c) {}

  static LatticeVector zero(int rank) { return LatticeVector(std::vector<std::int64_t>(rank, 0)); }
  static LatticeVector simple(int rank, int i);

  int size() const { return static_cast<int>(coords.size()); }
  std::int64_t operator[](int i) const { return coords[i]; }
  std::int64_t& operator[](int i) { return coords[i]; }

  /// Sum of absolute values of the coordinates.
  std::int64_t height() const;
  /// Plain coordinate sum.
  std::int64_t coordinate_sum() const;
  bool is_zero() const;
  /// All coordinates >= 0 and not all zero.
  bool is_positive() const;
  /// All coordinates <= 0 and not all zero.
  bool is_negative() const;

  LatticeVector operator-() const;
  LatticeVector& operator+=(const LatticeVector& o);
  LatticeVector& operator-=(const LatticeVector& o);
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(std::int64_t s, LatticeVector a) {
    for (auto& c : a.coords) c *= s;
    return a;
  }

  auto operator<=>(const LatticeVector&) const = default;
  bool operator==(const LatticeVector&) const = default;
};

/// Rational coordinates in the simple-root basis.
struct RationalVector {
  std::vector<Rational> coords;

  RationalVector() = default;
  explicit RationalVector(std::vector<Rational> c) : coords(std::move(c)) {}
  explicit RationalVector(const LatticeVector& v);

  int size() const { return static_cast<int>(coords.size()); }

  RationalVector operator-() const;
  RationalVector& operator+=(const RationalVector& o);
  RationalVector& operator-=(const RationalVector& o);
  friend RationalVector operator+(RationalVector a, const RationalVector& b) { return a += b; }
  friend RationalVector operator-(RationalVector a, const RationalVector& b) { return a -= b; }
  friend RationalVector operator*(const Rational& s, RationalVector a) {
    for (auto& c : a.coords) c *= s;
    return a;
  }
  bool operator==(const RationalVector&) const = default;
};

/// Sequence of simple-reflection indices. apply_word applies letters in order:
/// the first letter acts first.
using WeylWord = std::vector<int>;

std::string to_string(const LatticeVector& v);
std::string to_string(const RationalVector& v);

/// Parses "1,0,-2" or "[1,0,-2]".
LatticeVector parse_lattice_vector(const std::string& s);

// Inner products. All throw DomainError on a length mismatch.
std::int64_t inner(const LatticeVector& v, const LatticeVector& w, const GramMatrix& g);
Rational inner(const RationalVector& v, const RationalVector& w, const GramMatrix& g);
Rational inner(const RationalVector& v, const LatticeVector& w, const GramMatrix& g);
inline std::int64_t inner(const LatticeVector& v, const LatticeVector& w, const Diagram& d) {
  return inner(v, w, d.gcm());
}
inline Rational inner(const RationalVector& v, const RationalVector& w, const Diagram& d) {
  return inner(v, w, d.gcm());
}
inline Rational inner(const RationalVector& v, const LatticeVector& w, const Diagram& d) {
  return inner(v, w, d.gcm());
}

/// v . alpha_i, computed from the diagram's adjacency.
std::int64_t inner_simple(const LatticeVector& v, int i, const Diagram& d);

/// Inertia of the GCM.
Inertia signature(const Diagram& d);

/// omega_i = -(gcm^-1) e_i, so omega_i . alpha_j = -delta_ij. Throws
/// DomainError for a singular GCM.
std::vector<RationalVector> fundamental_weights(const Diagram& d);

/// v - (v.r) r. Throws DomainError unless r has norm 2.
LatticeVector reflect(const LatticeVector& v, const LatticeVector& r, const Diagram& d);
RationalVector reflect(const RationalVector& v, const LatticeVector& r, const Diagram& d);

/// Reflection in the simple root alpha_i.
LatticeVector reflect_simple(LatticeVector v, int i, const Diagram& d);

LatticeVector apply_word(LatticeVector v, const WeylWord& w, const Diagram& d);
/// Inverse of apply_word: letters applied last to first.
LatticeVector apply_inverse_word(LatticeVector v, const WeylWord& w, const Diagram& d);

/// Orbit-based membership test for W.{+-alpha_i}: norm 2, sign-uniform, and
/// height reduction (lowest-index pivot) reaches a simple root.
bool is_real_root(const LatticeVector& v, const Diagram& d);

/// Like is_real_root for a positive root but also returns the reduction word w
/// with apply_word(v, w) = alpha_{simple}. Empty optional if v is not a
/// positive real root. Pivots are restricted to `allowed` when non-empty.
struct RootReduction {
  WeylWord word;
  int simple = -1;
};
std::optional<RootReduction> reduce_positive_root(const LatticeVector& v, const Diagram& d,
                                                  const std::vector<int>& allowed = {});

/// All real roots with height <= h, sorted by (height, coordinates).
std::vector<LatticeVector> real_roots_up_to_height(const Diagram& d, int h,
                                                   Exec exec = Exec::Parallel);

struct ChamberReduction {
  LatticeVector vector;  // v0 with v0 . alpha_i <= 0 for all i
  WeylWord word;         // apply_word(v or -v, word) = v0
  bool negated = false;  // input was in the past cone and was negated first
};

/// Root lattice of a diagram with nonsingular GCM, caching the fundamental
/// weights and rho* = sum omega_i, which fixes the future-cone orientation.
class RootLattice {
 public:
  explicit RootLattice(Diagram d);

  const Diagram& diagram() const { return d_; }
  int rank() const { return d_.rank(); }
  const std::vector<RationalVector>& weights() const { return weights_; }
  const RationalVector& rho_star() const { return rho_star_; }
  const Rational& determinant() const { return det_; }

  bool in_future_cone(const LatticeVector& v) const;
  bool in_future_cone(const RationalVector& v) const;

  /// Moves v (norm <= 0) into the fundamental chamber C by simple
  /// reflections, lowest-index pivot first. Past-cone input is negated and
  /// flagged. Throws DomainError for spacelike input.
  ChamberReduction weyl_reduce_to_chamber(const LatticeVector& v) const;

 private:
  Diagram d_;
  std::vector<RationalVector> weights_;
  RationalVector rho_star_;
  Rational det_;
};

}  // namespace kmx
