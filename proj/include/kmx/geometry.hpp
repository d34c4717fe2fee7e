#pragma once

#include "kmx/diagram.hpp"
#include "kmx/lattice.hpp"
#include "kmx/parallel.hpp"
#include "kmx/rational.hpp"

#include <string>
#include <vector>

namespace kmx {

/// Squared hyperbolic cosine of a distance in the Minkowski model, kept exact.
struct Cosh2Value {
  Rational value;

  /// acosh(sqrt(value)); presentation only.
  double distance() const;
  bool operator==(const Cosh2Value&) const = default;
};

/// The facet bound cosh^2 = 4/3.
Rational facet_bound();

/// v minus its component in span(span), solved through the span's Gram
/// matrix. Throws DomainError when that Gram matrix is singular.
RationalVector project_orthogonal(const RationalVector& v, const std::vector<LatticeVector>& span,
                                  const GramMatrix& g);

/// (x.y)^2 / (x^2 y^2) for timelike x, y in the same cone component.
Cosh2Value cosh2_point_distance(const RationalVector& x, const RationalVector& y,
                                const GramMatrix& g);

/// cosh^2 of the distance from [x] to the projectivised subspace span^perp:
/// x*.x* / x.x, where x* is the projection of x to span^perp.
Cosh2Value cosh2_point_to_subspace(const RationalVector& x, const std::vector<LatticeVector>& span,
                                   const GramMatrix& g);

struct FacetEntry {
  int facet = 0;     // node i
  int neighbor = 0;  // joined node j
  Rational cosh2;
  bool attains_bound = false;
};

struct FacetReport {
  std::string diagram;
  std::vector<FacetEntry> entries;      // ordered by (facet, neighbor)
  std::vector<Rational> facet_maximum;  // indexed by facet
  Rational global_maximum;
  int equality_count = 0;
};

/// For every facet i with neighbour set J: q = sum_{j in J} omega_j, and for
/// each j in J the exact cosh^2 of the distance from q to the codimension-2
/// face phi_i cap phi_j. Throws InvariantViolation if any value exceeds 4/3 or
/// q fails to be a timelike vector orthogonal to alpha_i.
FacetReport facet_check(const Diagram& d);

/// facet_check over the whole catalog, in catalog order.
std::vector<FacetReport> facet_check_catalog(Exec exec = Exec::Parallel);

/// Inner-product matrix of (alpha, alpha', beta): [[2,1,k],[1,2,m],[k,m,2]].
GramMatrix pq_gram(int k, int m);

/// Closed-form radicand (4/3)(3 + km - k^2 - m^2)/(4 - k^2). Throws
/// DomainError unless k >= 3, m <= 0 and pq_gram has signature (2,1).
Rational pq_cosh2(int k, int m);

/// The same quantity computed directly in the abstract rank-3 model:
/// p = proj of beta to alpha^perp, q = p - (alpha - 2 alpha')(p.(alpha - 2 alpha'))/6.
Rational pq_cosh2_by_projection(int k, int m);

}  // namespace kmx
