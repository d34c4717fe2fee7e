#include "kmx/matrixcheck.hpp"

#include "kmx/errors.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>
#include <sstream>

namespace kmx {

// --- Matrix -------------------------------------------------------------------

Matrix::Matrix(const RingSpec& r, int n) : r_(&r), n_(n), e_(static_cast<std::size_t>(n) * n, r.zero().value) {
  if (n < 1 || n > 4) throw DomainError("matrix size must be in [1, 4]");
}

Matrix Matrix::identity(const RingSpec& r, int n) {
  Matrix m(r, n);
  for (int i = 0; i < n; ++i) m.set(i, i, r.one());
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (n_ != o.n_) throw DomainError("matrix size mismatch");
  Matrix m(*r_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      RingElement s = r_->zero();
      for (int k = 0; k < n_; ++k) s = r_->add(s, r_->mul(at(i, k), o.at(k, j)));
      m.set(i, j, s);
    }
  return m;
}

namespace {

/// Determinant of the submatrix on the given rows and columns (Laplace
/// expansion along the first row).
RingElement minor_det(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  const RingSpec& r = m.ring();
  if (rows.empty()) return r.one();
  if (rows.size() == 1) return m.at(rows[0], cols[0]);
  RingElement s = r.zero();
  const std::vector<int> rest(rows.begin() + 1, rows.end());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    std::vector<int> sub;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (k != c) sub.push_back(cols[k]);
    RingElement term = r.mul(m.at(rows[0], cols[c]), minor_det(m, rest, sub));
    s = c % 2 == 0 ? r.add(s, term) : r.sub(s, term);
  }
  return s;
}

std::vector<int> range_without(int n, int skip) {
  std::vector<int> v;
  for (int k = 0; k < n; ++k)
    if (k != skip) v.push_back(k);
  return v;
}

}  // namespace

RingElement Matrix::determinant() const { return minor_det(*this, range_without(n_, -1), range_without(n_, -1)); }

Matrix Matrix::inverse() const {
  const RingElement dinv = r_->inv(determinant());
  Matrix m(*r_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      // adj(A)_{ij} = (-1)^{i+j} det(A without row j, column i)
      RingElement c = minor_det(*this, range_without(n_, j), range_without(n_, i));
      if ((i + j) % 2) c = r_->neg(c);
      m.set(i, j, r_->mul(c, dinv));
    }
  return m;
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (int i = 0; i < n_; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < n_; ++j) s += (j ? "," : "") + r_->format(at(i, j));
    s += "]";
  }
  return s + "]";
}

// --- Assignment -----------------------------------------------------------------

std::string to_string(Assignment::Model m) {
  switch (m) {
    case Assignment::Model::Rank1: return "rank1";
    case Assignment::Model::Joined: return "joined";
    case Assignment::Model::Unjoined: return "unjoined";
  }
  return "?";
}

int Assignment::size() const {
  switch (model) {
    case Model::Rank1: return 2;
    case Model::Joined: return 3;
    case Model::Unjoined: return 4;
  }
  return 0;
}

namespace {
int block_start(Assignment::Model m, int slot) {
  if (slot == 0) return 0;
  return m == Assignment::Model::Joined ? 1 : 2;
}
}  // namespace

Matrix Assignment::x(int slot, const RingElement& t) const {
  const RingSpec& r = *ring;
  Matrix m = Matrix::identity(r, size());
  const int p = block_start(model, slot);
  m.set(p, p + 1, r.mul(r.from_int(x_sign[slot]), t));
  return m;
}

Matrix Assignment::s(int slot) const {
  const RingSpec& r = *ring;
  Matrix m = Matrix::identity(r, size());
  const int p = block_start(model, slot);
  const RingElement sg = r.from_int(s_sign[slot]);
  m.set(p, p, r.zero());
  m.set(p + 1, p + 1, r.zero());
  m.set(p, p + 1, sg);
  m.set(p + 1, p, r.neg(sg));
  return m;
}

Matrix Assignment::eval(const Word& w, const std::vector<int>& nodes) const {
  const RingSpec& r = *ring;
  Matrix acc = Matrix::identity(r, size());
  for (const auto& l : w) {
    const auto it = std::find(nodes.begin(), nodes.end(), l.node);
    if (it == nodes.end()) throw DomainError("letter node " + std::to_string(l.node) + " not in the model");
    const int slot = static_cast<int>(it - nodes.begin());
    if (slot >= slots()) throw DomainError("model has too few slots");
    Matrix g = l.kind == Letter::Kind::S ? s(slot) : x(slot, RingElement{&r, l.param});
    acc = acc * (l.inverse ? g.inverse() : g);
  }
  return acc;
}

nlohmann::json Assignment::to_json() const {
  nlohmann::json j;
  j["model"] = kmx::to_string(model);
  j["x_sign"] = std::vector<int>(x_sign.begin(), x_sign.begin() + slots());
  j["s_sign"] = std::vector<int>(s_sign.begin(), s_sign.begin() + slots());
  return j;
}

// --- instances ----------------------------------------------------------------------

std::vector<RingElement> parameter_range(const RingSpec& r, int window) {
  if (r.is_finite()) return r.elements();
  if (window < 0) throw DomainError("window must be >= 0");
  std::vector<RingElement> v;
  for (int t = -window; t <= window; ++t) v.push_back(r.from_int(t));
  return v;
}

namespace {

void instances_of(const std::string& tag, int i, int j, const RingSpec& r,
                  const std::vector<RingElement>& params, CommutatorConvention conv,
                  std::vector<Relation>& out) {
  RelationParams p;
  p.i = i;
  if (j >= 0) p.j = j;
  switch (schema_arity(tag)) {
    case 0:
      out.push_back(instantiate(tag, r, p, conv));
      break;
    case 1:
      for (const auto& t : params) {
        p.t = t.value;
        out.push_back(instantiate(tag, r, p, conv));
      }
      break;
    default:
      for (const auto& t : params)
        for (const auto& u : params) {
          p.t = t.value;
          p.u = u.value;
          out.push_back(instantiate(tag, r, p, conv));
        }
  }
}

/// Block instances for nodes i < j (or just i when j < 0), both orientations.
void block_instances(Assignment::Model m, int i, int j, const RingSpec& r,
                     const std::vector<RingElement>& params, CommutatorConvention conv,
                     std::vector<Relation>& out) {
  if (m == Assignment::Model::Rank1) {
    for (const auto& tag : node_schemas()) instances_of(tag, i, -1, r, params, conv, out);
    return;
  }
  const auto& tags = m == Assignment::Model::Joined ? joined_schemas() : unjoined_schemas();
  for (const auto& tag : tags) {
    instances_of(tag, i, j, r, params, conv, out);
    if (schema_is_asymmetric(tag)) instances_of(tag, j, i, r, params, conv, out);
  }
}

std::vector<int> relation_nodes(const Relation& rel) {
  std::set<int> s;
  for (const auto& l : rel.left) s.insert(l.node);
  for (const auto& l : rel.right) s.insert(l.node);
  if (rel.left.empty() && rel.right.empty()) s.insert(rel.params.i);
  return {s.begin(), s.end()};
}

bool holds(const Assignment& a, const Relation& rel, const std::vector<int>& nodes) {
  return a.eval(rel.left, nodes) == a.eval(rel.right, nodes);
}

std::string describe(const Relation& rel, const RingSpec& r) {
  std::string s = rel.schema + " i=" + std::to_string(rel.params.i);
  if (rel.params.j) s += " j=" + std::to_string(*rel.params.j);
  auto put = [&](const char* k, const std::optional<std::int64_t>& v) {
    if (v) s += std::string(" ") + k + "=" + r.format({&r, *v});
  };
  put("t", rel.params.t);
  put("u", rel.params.u);
  put("a", rel.params.a);
  put("b", rel.params.b);
  return s;
}

}  // namespace

std::vector<Relation> schema_instances(Assignment::Model m, const RingSpec& r, int window,
                                       CommutatorConvention conv) {
  const auto params = parameter_range(r, window);
  std::vector<Relation> out;
  block_instances(Assignment::Model::Rank1, 0, -1, r, params, conv, out);
  if (m != Assignment::Model::Rank1) {
    block_instances(Assignment::Model::Rank1, 1, -1, r, params, conv, out);
    block_instances(m, 0, 1, r, params, conv, out);
  }
  return out;
}

std::optional<Assignment> find_assignment(Assignment::Model m, const RingSpec& r, const CheckOptions& opt) {
  const auto rels = schema_instances(m, r, opt.window, opt.convention);
  const std::vector<int> nodes = m == Assignment::Model::Rank1 ? std::vector<int>{0} : std::vector<int>{0, 1};
  const int bits = m == Assignment::Model::Rank1 ? 2 : 4;
  for (int mask = 0; mask < (1 << bits); ++mask) {
    Assignment a;
    a.ring = &r;
    a.model = m;
    // bit order: x_sign[0], x_sign[1], s_sign[0], s_sign[1] (rank-1: x, s)
    if (bits == 2) {
      a.x_sign[0] = mask & 1 ? -1 : 1;
      a.s_sign[0] = mask & 2 ? -1 : 1;
    } else {
      a.x_sign[0] = mask & 1 ? -1 : 1;
      a.x_sign[1] = mask & 2 ? -1 : 1;
      a.s_sign[0] = mask & 4 ? -1 : 1;
      a.s_sign[1] = mask & 8 ? -1 : 1;
    }
    if (std::all_of(rels.begin(), rels.end(), [&](const Relation& rel) { return holds(a, rel, nodes); }))
      return a;
  }
  return std::nullopt;
}

namespace {
Assignment require_assignment(Assignment::Model m, const RingSpec& r, const CheckOptions& opt) {
  auto a = find_assignment(m, r, opt);
  if (!a)
    throw InvariantViolation("no sign assignment satisfies the " + to_string(m) + " schemas over " + r.name());
  return *a;
}
}  // namespace

Assignment rank1_assignment(const RingSpec& r, const CheckOptions& opt) {
  return require_assignment(Assignment::Model::Rank1, r, opt);
}
Assignment joined_pair_assignment(const RingSpec& r, const CheckOptions& opt) {
  return require_assignment(Assignment::Model::Joined, r, opt);
}
Assignment unjoined_pair_assignment(const RingSpec& r, const CheckOptions& opt) {
  return require_assignment(Assignment::Model::Unjoined, r, opt);
}

// --- h identities ---------------------------------------------------------------------

bool HIdentityReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.ok(); });
}

nlohmann::json HIdentityReport::to_json() const {
  nlohmann::json j;
  j["ring"] = ring;
  j["ok"] = ok();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"instances", c.instances}, {"passed", c.passed}});
  return j;
}

HIdentityReport h_identities_check(const RingSpec& r) {
  HIdentityReport rep;
  rep.ring = r.name();
  const Assignment a = rank1_assignment(r);
  const std::vector<int> nodes{0};
  const auto units = r.units();
  const RingElement one = r.one(), minus_one = r.neg(one);
  auto check = [&](std::string name) -> IdentityCheck& {
    rep.checks.push_back({std::move(name), 0, 0});
    return rep.checks.back();
  };
  auto tally = [](IdentityCheck& c, bool ok) {
    ++c.instances;
    c.passed += ok;
  };

  auto& mult = check("h(a)h(b)=h(ab)");
  for (const auto& x : units)
    for (const auto& y : units) {
      Word w = h_tilde(0, x);
      const Word hy = h_tilde(0, y);
      w.insert(w.end(), hy.begin(), hy.end());
      tally(mult, a.eval(w, nodes) == a.eval(h_tilde(0, r.mul(x, y)), nodes));
    }

  auto& diag = check("h(a)=diag(a,a^-1)");
  for (const auto& x : units) {
    Matrix d = Matrix::identity(r, 2);
    d.set(0, 0, x);
    d.set(1, 1, r.inv(x));
    tally(diag, a.eval(h_tilde(0, x), nodes) == d);
  }

  const Letter s{Letter::Kind::S, 0, 0, false};
  const Letter sinv{Letter::Kind::S, 0, 0, true};
  tally(check("h(-1)=S^-2"), a.eval(h_tilde(0, minus_one), nodes) == a.eval({sinv, sinv}, nodes));
  tally(check("S^4=1"), a.eval({s, s, s, s}, nodes) == Matrix::identity(r, 2));

  Matrix rot(r, 2);
  rot.set(0, 1, one);
  rot.set(1, 0, minus_one);
  tally(check("s(1)=[[0,1],[-1,0]]"), a.eval(s_tilde(0, one), nodes) == rot);
  tally(check("s(1)=S"), a.eval(s_tilde(0, one), nodes) == a.s(0));
  return rep;
}

// --- verify_all ------------------------------------------------------------------------

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["diagram"] = diagram;
  j["ring"] = ring;
  if (window) j["window"] = *window;
  j["convention"] = convention == CommutatorConvention::AbAinvBinv ? "aba^-1b^-1" : "bab^-1a^-1";
  j["assignments_found"] = assignments_found;
  j["assignments"] = nlohmann::json::array();
  for (const auto& a : assignments) j["assignments"].push_back(a.to_json());
  j["instances"] = instances;
  j["failures"] = failures;
  j["ok"] = ok();
  j["schemas"] = nlohmann::json::array();
  for (const auto& s : schemas)
    j["schemas"].push_back(
        {{"schema", s.schema}, {"instances", s.instances}, {"passed", s.passed}, {"failed", s.failed}});
  return j;
}

VerificationReport verify_all(const Diagram& d, const RingSpec& r, const CheckOptions& opt,
                              const PresentationOptions& popt) {
  VerificationReport rep;
  rep.diagram = d.label();
  rep.ring = r.name();
  rep.convention = opt.convention;
  if (!r.is_finite()) rep.window = opt.window;

  std::map<Assignment::Model, Assignment> models;
  for (auto m : {Assignment::Model::Rank1, Assignment::Model::Joined, Assignment::Model::Unjoined}) {
    auto a = find_assignment(m, r, opt);
    if (!a) {
      rep.assignments_found = false;
      a = Assignment{&r, m, {1, 1}, {1, 1}};
    }
    models.emplace(m, *a);
    rep.assignments.push_back(*a);
  }

  // Every presentation relation, both pair orientations, rebuilt under the
  // requested convention; over Z also the windowed block instances.
  PresentationOptions po = popt;
  po.ordered_pairs = true;
  const Presentation p = kac_moody_presentation(d, r, 0, po);
  std::vector<Relation> rels;
  for (const auto* list : {&p.relations, &p.equivalent_forms})
    for (const auto& rel : *list) rels.push_back(instantiate(rel.schema, p.ring, rel.params, opt.convention));
  if (!r.is_finite()) {
    const auto params = parameter_range(r, opt.window);
    const int n = d.rank();
    for (int i = 0; i < n; ++i) block_instances(Assignment::Model::Rank1, i, -1, r, params, opt.convention, rels);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        block_instances(d.joined(i, j) ? Assignment::Model::Joined : Assignment::Model::Unjoined, i, j, r,
                        params, opt.convention, rels);
  }

  std::vector<char> pass(rels.size(), 0);
  std::vector<std::exception_ptr> errors(rels.size());
  const auto count = static_cast<std::int64_t>(rels.size());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t k = 0; k < count; ++k) {
    try {
      const auto& rel = rels[k];
      const auto nodes = relation_nodes(rel);
      if (nodes.size() > 2) continue;  // counted as a failure: no rank <= 2 model
      Assignment::Model m = Assignment::Model::Rank1;
      if (nodes.size() == 2) m = d.joined(nodes[0], nodes[1]) ? Assignment::Model::Joined : Assignment::Model::Unjoined;
      pass[k] = holds(models.at(m), rel, nodes);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::map<std::string, SchemaResult> by;
  for (std::size_t k = 0; k < rels.size(); ++k) {
    auto& s = by[rels[k].schema];
    s.schema = rels[k].schema;
    ++s.instances;
    if (pass[k]) {
      ++s.passed;
    } else {
      ++rep.failures;
      if (s.failed.size() < 5) s.failed.push_back(describe(rels[k], r));
    }
  }
  rep.instances = rels.size();
  for (auto& [tag, s] : by) rep.schemas.push_back(std::move(s));
  return rep;
}

}  // namespace kmx
