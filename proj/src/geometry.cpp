#include "kmx/geometry.hpp"

#include "kmx/errors.hpp"

#include <cmath>

namespace kmx {

double Cosh2Value::distance() const { return std::acosh(std::sqrt(to_double(value))); }

Rational facet_bound() { return Rational(4, 3); }

RationalVector project_orthogonal(const RationalVector& v, const std::vector<LatticeVector>& span,
                                  const GramMatrix& g) {
  const std::size_t k = span.size();
  if (k == 0) return v;
  RationalMatrix gram(k, std::vector<Rational>(k));
  std::vector<Rational> rhs(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) gram[a][b] = inner(span[a], span[b], g);
    rhs[a] = inner(v, span[a], g);
  }
  std::vector<Rational> c;
  try {
    c = solve(std::move(gram), std::move(rhs));
  } catch (const DomainError&) {
    throw DomainError("project_orthogonal: span Gram matrix is singular");
  }
  RationalVector out = v;
  for (std::size_t a = 0; a < k; ++a) out -= c[a] * RationalVector(span[a]);
  return out;
}

Cosh2Value cosh2_point_distance(const RationalVector& x, const RationalVector& y,
                                const GramMatrix& g) {
  const Rational xx = inner(x, x, g);
  const Rational yy = inner(y, y, g);
  if (xx >= 0 || yy >= 0) throw DomainError("cosh2_point_distance: inputs must be timelike");
  const Rational xy = inner(x, y, g);
  // Timelike vectors in one component pair negatively.
  if (xy >= 0) throw DomainError("cosh2_point_distance: inputs lie in opposite cone components");
  return {xy * xy / (xx * yy)};
}

Cosh2Value cosh2_point_to_subspace(const RationalVector& x, const std::vector<LatticeVector>& span,
                                   const GramMatrix& g) {
  const Rational xx = inner(x, x, g);
  if (xx >= 0) throw DomainError("cosh2_point_to_subspace: point must be timelike");
  const RationalVector xs = project_orthogonal(x, span, g);
  const Rational ss = inner(xs, xs, g);
  if (ss >= 0)
    throw DomainError("cosh2_point_to_subspace: projection is not timelike; the subspace misses H^n");
  return {ss / xx};
}

FacetReport facet_check(const Diagram& d) {
  if (!is_hyperbolic(d)) throw DomainError("facet_check: diagram " + d.label() + " is not hyperbolic");
  const RootLattice lat(d);
  const int n = d.rank();
  const GramMatrix& g = d.gcm();
  FacetReport rep;
  rep.diagram = d.label();
  rep.facet_maximum.assign(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    const auto alpha_i = LatticeVector::simple(n, i);
    RationalVector q(std::vector<Rational>(n, Rational(0)));
    for (int j : d.neighbors(i)) q += lat.weights()[j];
    if (inner(q, alpha_i, g) != 0)
      throw InvariantViolation("facet_check: q is not orthogonal to alpha_" + std::to_string(i));
    if (!lat.in_future_cone(q))
      throw InvariantViolation("facet_check: q is not a future timelike vector at facet " +
                               std::to_string(i) + " of " + d.label());
    for (int j : d.neighbors(i)) {
      const Cosh2Value c = cosh2_point_to_subspace(q, {alpha_i, LatticeVector::simple(n, j)}, g);
      if (c.value > facet_bound())
        throw InvariantViolation("facet_check: cosh^2 = " + to_pq_string(c.value) + " > 4/3 at (" +
                                 std::to_string(i) + "," + std::to_string(j) + ") of " + d.label());
      FacetEntry e{i, j, c.value, c.value == facet_bound()};
      if (e.attains_bound) ++rep.equality_count;
      if (e.cosh2 > rep.facet_maximum[i]) rep.facet_maximum[i] = e.cosh2;
      if (e.cosh2 > rep.global_maximum) rep.global_maximum = e.cosh2;
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

std::vector<FacetReport> facet_check_catalog(Exec exec) {
  const auto& cat = catalog();
  std::vector<FacetReport> out(cat.size());
  const auto count = static_cast<std::int64_t>(cat.size());
  if (exec == Exec::Serial) {
    for (std::int64_t k = 0; k < count; ++k) out[k] = facet_check(cat[k]);
    return out;
  }
  // Exceptions may not escape an OpenMP region; carry the first one out.
  std::vector<std::exception_ptr> errors(cat.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < count; ++k) {
    try {
      out[k] = facet_check(cat[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

GramMatrix pq_gram(int k, int m) { return {{2, 1, k}, {1, 2, m}, {k, m, 2}}; }

namespace {
void check_pq_domain(int k, int m) {
  if (k < 3 || m > 0) throw DomainError("pq_cosh2: requires k >= 3 and m <= 0");
  const Inertia in = inertia(to_rational_matrix(pq_gram(k, m)));
  if (!(in.pos == 2 && in.neg == 1 && in.null == 0))
    throw DomainError("pq_cosh2: Gram matrix does not have signature (2,1)");
}
}  // namespace

Rational pq_cosh2(int k, int m) {
  check_pq_domain(k, m);
  const Rational kk(k), mm(m);
  return Rational(4, 3) * (3 + kk * mm - kk * kk - mm * mm) / (4 - kk * kk);
}

Rational pq_cosh2_by_projection(int k, int m) {
  check_pq_domain(k, m);
  // Basis: alpha = e0, alpha' = e1, beta = e2.
  const GramMatrix g = pq_gram(k, m);
  const LatticeVector alpha{1, 0, 0};
  const LatticeVector alpha2{0, 1, 0};
  const LatticeVector beta{0, 0, 1};
  const RationalVector p = project_orthogonal(RationalVector(beta), {alpha}, g);
  const LatticeVector dir = alpha - 2 * alpha2;  // alpha'' - alpha', norm 6
  const RationalVector q = p - (inner(p, dir, g) / 6) * RationalVector(dir);
  // p, q may lie in the past component; the distance is projective.
  RationalVector pf = p, qf = q;
  if (inner(pf, qf, g) > 0) qf = -qf;
  return cosh2_point_distance(pf, qf, g).value;
}

}  // namespace kmx
