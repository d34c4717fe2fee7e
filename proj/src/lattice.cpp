#include "kmx/lattice.hpp"

#include "kmx/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace kmx {

// --- LatticeVector ---------------------------------------------------------

LatticeVector LatticeVector::simple(int rank, int i) {
  auto v = zero(rank);
  v.coords.at(i) = 1;
  return v;
}

std::int64_t LatticeVector::height() const {
  std::int64_t h = 0;
  for (auto c : coords) h += c < 0 ? -c : c;
  return h;
}

std::int64_t LatticeVector::coordinate_sum() const {
  std::int64_t s = 0;
  for (auto c : coords) s += c;
  return s;
}

bool LatticeVector::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](auto c) { return c == 0; });
}

bool LatticeVector::is_positive() const {
  return !is_zero() && std::all_of(coords.begin(), coords.end(), [](auto c) { return c >= 0; });
}

bool LatticeVector::is_negative() const {
  return !is_zero() && std::all_of(coords.begin(), coords.end(), [](auto c) { return c <= 0; });
}

LatticeVector LatticeVector::operator-() const {
  LatticeVector r = *this;
  for (auto& c : r.coords) c = -c;
  return r;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& o) {
  if (o.size() != size()) throw DomainError("vector length mismatch");
  for (int i = 0; i < size(); ++i) coords[i] += o.coords[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& o) {
  if (o.size() != size()) throw DomainError("vector length mismatch");
  for (int i = 0; i < size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

// --- RationalVector --------------------------------------------------------

RationalVector::RationalVector(const LatticeVector& v) {
  coords.reserve(v.coords.size());
  for (auto c : v.coords) coords.emplace_back(c);
}

RationalVector RationalVector::operator-() const {
  RationalVector r = *this;
  for (auto& c : r.coords) c = -c;
  return r;
}

RationalVector& RationalVector::operator+=(const RationalVector& o) {
  if (o.size() != size()) throw DomainError("vector length mismatch");
  for (int i = 0; i < size(); ++i) coords[i] += o.coords[i];
  return *this;
}

RationalVector& RationalVector::operator-=(const RationalVector& o) {
  if (o.size() != size()) throw DomainError("vector length mismatch");
  for (int i = 0; i < size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < v.size(); ++i) os << (i ? "," : "") << v.coords[i];
  os << ']';
  return os.str();
}

std::string to_string(const RationalVector& v) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < v.size(); ++i) os << (i ? "," : "") << v.coords[i];
  os << ']';
  return os.str();
}

LatticeVector parse_lattice_vector(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != '[' && c != ']' && c != ' ') t += c;
  LatticeVector v;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.coords.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("cannot parse vector '" + s + "'");
    }
  }
  if (v.coords.empty()) throw DomainError("empty vector '" + s + "'");
  return v;
}

// --- inner products --------------------------------------------------------

namespace {
void check_len(std::size_t a, std::size_t b, std::size_t n) {
  if (a != n || b != n) throw DomainError("inner: vector length does not match form rank");
}
}  // namespace

std::int64_t inner(const LatticeVector& v, const LatticeVector& w, const GramMatrix& g) {
  check_len(v.coords.size(), w.coords.size(), g.size());
  std::int64_t s = 0;
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (v.coords[i] == 0) continue;
    std::int64_t row = 0;
    for (std::size_t j = 0; j < n; ++j) row += g[i][j] * w.coords[j];
    s += v.coords[i] * row;
  }
  return s;
}

Rational inner(const RationalVector& v, const RationalVector& w, const GramMatrix& g) {
  check_len(v.coords.size(), w.coords.size(), g.size());
  Rational s = 0;
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (v.coords[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (g[i][j] != 0) row += g[i][j] * w.coords[j];
    s += v.coords[i] * row;
  }
  return s;
}

Rational inner(const RationalVector& v, const LatticeVector& w, const GramMatrix& g) {
  check_len(v.coords.size(), w.coords.size(), g.size());
  Rational s = 0;
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (v.coords[i] == 0) continue;
    std::int64_t row = 0;
    for (std::size_t j = 0; j < n; ++j) row += g[i][j] * w.coords[j];
    s += v.coords[i] * row;
  }
  return s;
}

std::int64_t inner_simple(const LatticeVector& v, int i, const Diagram& d) {
  std::int64_t s = 2 * v.coords[i];
  for (int j : d.neighbors(i)) s -= v.coords[j];
  return s;
}

Inertia signature(const Diagram& d) { return inertia(to_rational_matrix(d.gcm())); }

std::vector<RationalVector> fundamental_weights(const Diagram& d) {
  const int n = d.rank();
  RationalMatrix inv;
  try {
    inv = inverse(to_rational_matrix(d.gcm()));
  } catch (const DomainError&) {
    throw DomainError("fundamental_weights: GCM is singular (affine diagram?)");
  }
  std::vector<RationalVector> out;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> c(n);
    for (int r = 0; r < n; ++r) c[r] = -inv[r][i];
    out.emplace_back(std::move(c));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (inner(out[i], LatticeVector::simple(n, j), d) != (i == j ? -1 : 0))
        throw InvariantViolation("fundamental weight check failed");
  return out;
}

// --- reflections -----------------------------------------------------------

LatticeVector reflect(const LatticeVector& v, const LatticeVector& r, const Diagram& d) {
  if (inner(r, r, d) != 2) throw DomainError("reflect: mirror vector must have norm 2");
  const std::int64_t c = inner(v, r, d);
  return v - c * r;
}

RationalVector reflect(const RationalVector& v, const LatticeVector& r, const Diagram& d) {
  if (inner(r, r, d) != 2) throw DomainError("reflect: mirror vector must have norm 2");
  const Rational c = inner(v, r, d);
  return v - c * RationalVector(r);
}

LatticeVector reflect_simple(LatticeVector v, int i, const Diagram& d) {
  v.coords[i] -= inner_simple(v, i, d);
  return v;
}

LatticeVector apply_word(LatticeVector v, const WeylWord& w, const Diagram& d) {
  for (int i : w) {
    if (i < 0 || i >= d.rank()) throw DomainError("Weyl word letter out of range");
    v = reflect_simple(std::move(v), i, d);
  }
  return v;
}

LatticeVector apply_inverse_word(LatticeVector v, const WeylWord& w, const Diagram& d) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (*it < 0 || *it >= d.rank()) throw DomainError("Weyl word letter out of range");
    v = reflect_simple(std::move(v), *it, d);
  }
  return v;
}

// --- real roots ------------------------------------------------------------

std::optional<RootReduction> reduce_positive_root(const LatticeVector& v, const Diagram& d,
                                                  const std::vector<int>& allowed) {
  if (v.size() != d.rank() || !v.is_positive() || inner(v, v, d) != 2) return std::nullopt;
  std::vector<char> ok(d.rank(), allowed.empty() ? 1 : 0);
  for (int i : allowed) ok.at(i) = 1;
  RootReduction out;
  LatticeVector cur = v;
  for (;;) {
    if (cur.coordinate_sum() == 1) {
      for (int i = 0; i < d.rank(); ++i)
        if (cur.coords[i] == 1) out.simple = i;
      if (!ok[out.simple]) return std::nullopt;
      return out;
    }
    int pivot = -1;
    std::int64_t c = 0;
    for (int i = 0; i < d.rank(); ++i) {
      if (!ok[i]) continue;
      c = inner_simple(cur, i, d);
      if (c > 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    cur.coords[pivot] -= c;
    out.word.push_back(pivot);
    if (cur.coords[pivot] < 0) return std::nullopt;  // mixed signs
  }
}

bool is_real_root(const LatticeVector& v, const Diagram& d) {
  if (v.size() != d.rank()) return false;
  if (v.is_negative()) return reduce_positive_root(-v, d).has_value();
  return reduce_positive_root(v, d).has_value();
}

std::vector<LatticeVector> real_roots_up_to_height(const Diagram& d, int h, Exec exec) {
  const int n = d.rank();
  std::vector<LatticeVector> positive;
  if (h >= 1) {
    std::set<LatticeVector> seen;
    std::vector<LatticeVector> frontier;
    for (int i = 0; i < n; ++i) {
      frontier.push_back(LatticeVector::simple(n, i));
      seen.insert(frontier.back());
    }
    while (!frontier.empty()) {
      // Expand: each frontier root reflected in each simple root; a
      // reflection only changes the sign of alpha_i itself, which we skip.
      std::vector<std::vector<LatticeVector>> produced(frontier.size());
      auto expand = [&](std::size_t k) {
        const auto& r = frontier[k];
        for (int i = 0; i < n; ++i) {
          const std::int64_t c = inner_simple(r, i, d);
          if (c >= 0) continue;  // does not increase height
          LatticeVector s = r;
          s.coords[i] -= c;
          if (s.height() <= h) produced[k].push_back(std::move(s));
        }
      };
      if (exec == Exec::Parallel) {
        const auto count = static_cast<std::int64_t>(frontier.size());
#pragma omp parallel for schedule(dynamic, 64)
        for (std::int64_t k = 0; k < count; ++k) expand(static_cast<std::size_t>(k));
      } else {
        for (std::size_t k = 0; k < frontier.size(); ++k) expand(k);
      }
      std::vector<LatticeVector> next;
      for (auto& batch : produced)
        for (auto& s : batch)
          if (seen.insert(s).second) next.push_back(std::move(s));
      for (auto& r : frontier) positive.push_back(std::move(r));
      frontier = std::move(next);
    }
  }
  std::vector<LatticeVector> out;
  out.reserve(2 * positive.size());
  for (const auto& r : positive) {
    out.push_back(r);
    out.push_back(-r);
  }
  std::sort(out.begin(), out.end(), [](const LatticeVector& a, const LatticeVector& b) {
    const auto ha = a.height(), hb = b.height();
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return out;
}

// --- RootLattice -----------------------------------------------------------

RootLattice::RootLattice(Diagram d) : d_(std::move(d)) {
  weights_ = fundamental_weights(d_);
  det_ = kmx::determinant(to_rational_matrix(d_.gcm()));
  rho_star_ = RationalVector(std::vector<Rational>(d_.rank(), Rational(0)));
  for (const auto& w : weights_) rho_star_ += w;
  const Inertia sig = signature(d_);
  if (sig.neg == 1 && sig.null == 0 && inner(rho_star_, rho_star_, d_) >= 0)
    throw InvariantViolation("rho* is not timelike for Lorentzian diagram " + d_.label());
}

bool RootLattice::in_future_cone(const LatticeVector& v) const {
  return inner(v, v, d_) < 0 && inner(rho_star_, v, d_) < 0;
}

bool RootLattice::in_future_cone(const RationalVector& v) const {
  return inner(v, v, d_) < 0 && inner(rho_star_, v, d_) < 0;
}

ChamberReduction RootLattice::weyl_reduce_to_chamber(const LatticeVector& v) const {
  if (v.size() != rank()) throw DomainError("weyl_reduce_to_chamber: length mismatch");
  if (inner(v, v, d_) > 0)
    throw DomainError("weyl_reduce_to_chamber: vector " + to_string(v) + " is spacelike");
  ChamberReduction out{v, {}, false};
  if (v.is_zero()) return out;
  if (inner(rho_star_, v, d_) > 0) {
    out.vector = -v;
    out.negated = true;
  }
  // v . rho* = -(coordinate sum) strictly increases toward 0 with each step,
  // so the loop runs at most coordinate_sum times.
  const std::int64_t budget = out.vector.coordinate_sum() + 1;
  for (std::int64_t step = 0;; ++step) {
    if (step > budget) throw InvariantViolation("chamber reduction failed to terminate");
    int pivot = -1;
    for (int i = 0; i < rank(); ++i)
      if (inner_simple(out.vector, i, d_) > 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) break;
    out.vector = reflect_simple(std::move(out.vector), pivot, d_);
    out.word.push_back(pivot);
  }
  return out;
}

}  // namespace kmx
