#include "kmx/pairs.hpp"

#include "kmx/errors.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace kmx {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Prenilpotent: return "prenilpotent";
    case Verdict::NotPrenilpotent: return "not_prenilpotent";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(VerdictMethod m) {
  switch (m) {
    case VerdictMethod::Criterion: return "criterion";
    case VerdictMethod::WeylSearch: return "weyl_search";
    case VerdictMethod::SpanScan: return "span_scan";
  }
  return "?";
}

std::string to_string(SplitKind k) {
  switch (k) {
    case SplitKind::Leaf: return "leaf";
    case SplitKind::SplitK2: return "split_k2";
    case SplitKind::SplitKGe3: return "split_k_ge_3";
  }
  return "?";
}

namespace {

void require_root(const LatticeVector& v, const Diagram& d, const char* what) {
  if (v.size() != d.rank())
    throw DomainError(std::string(what) + " has " + std::to_string(v.size()) +
                      " coordinates, diagram rank is " + std::to_string(d.rank()));
  if (!is_real_root(v, d))
    throw DomainError(std::string(what) + " = " + to_string(v) + " is not a real root");
}

// --- best-first pair search -------------------------------------------------

struct PairKey {
  std::vector<std::int64_t> c;
  bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const { return boost::hash_range(k.c.begin(), k.c.end()); }
};

std::int64_t negative_weight(const LatticeVector& a, const LatticeVector& b) {
  std::int64_t w = 0;
  if (a.is_negative()) w += a.height();
  if (b.is_negative()) w += b.height();
  return w;
}

struct SearchResult {
  std::optional<WeylWord> word;
  std::size_t explored = 0;
};

/// Word sending both roots into Phi+, or nothing within the limits.
SearchResult positivize(const LatticeVector& a0, const LatticeVector& b0, const Diagram& d,
                        int max_length, std::size_t budget) {
  SearchResult out;
  const int n = d.rank();
  struct Node {
    LatticeVector a, b;
    std::int64_t parent;
    int letter;
    int depth;
  };
  std::vector<Node> nodes;
  std::unordered_map<PairKey, std::size_t, PairKeyHash> seen;
  auto key = [](const LatticeVector& a, const LatticeVector& b) {
    PairKey k;
    k.c = a.coords;
    k.c.insert(k.c.end(), b.coords.begin(), b.coords.end());
    return k;
  };
  using Entry = std::tuple<std::int64_t, int, std::size_t>;  // weight, depth, id
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  nodes.push_back({a0, b0, -1, -1, 0});
  seen.emplace(key(a0, b0), 0);
  open.emplace(negative_weight(a0, b0), 0, 0);

  while (!open.empty() && out.explored < budget) {
    auto [w, depth, id] = open.top();
    open.pop();
    ++out.explored;
    if (w == 0) {
      WeylWord word;
      for (auto cur = static_cast<std::int64_t>(id); nodes[cur].parent >= 0; cur = nodes[cur].parent)
        word.push_back(nodes[cur].letter);
      std::reverse(word.begin(), word.end());
      out.word = std::move(word);
      return out;
    }
    if (depth >= max_length) continue;
    for (int i = 0; i < n; ++i) {
      LatticeVector a = reflect_simple(nodes[id].a, i, d);
      LatticeVector b = reflect_simple(nodes[id].b, i, d);
      auto [it, fresh] = seen.emplace(key(a, b), nodes.size());
      if (!fresh) continue;
      const std::int64_t nw = negative_weight(a, b);
      nodes.push_back({std::move(a), std::move(b), static_cast<std::int64_t>(id), i, depth + 1});
      open.emplace(nw, depth + 1, nodes.size() - 1);
    }
  }
  return out;
}

std::vector<LatticeVector> predicted_span(const LatticeVector& a, const LatticeVector& b,
                                          std::int64_t k) {
  std::set<LatticeVector> s{a, b};
  if (k == -1) s.insert(a + b);
  return {s.begin(), s.end()};
}

}  // namespace

// --- criterion and oracles ----------------------------------------------------

bool is_prenilpotent(const LatticeVector& alpha, const LatticeVector& beta, const Diagram& d) {
  require_root(alpha, d, "alpha");
  require_root(beta, d, "beta");
  if (alpha == beta) return true;
  if (alpha == -beta) return false;
  return inner(alpha, beta, d) >= -1;
}

PrenilpotencyVerdict oracle_weyl(const LatticeVector& alpha, const LatticeVector& beta,
                                 const Diagram& d, int max_length, std::size_t state_budget) {
  require_root(alpha, d, "alpha");
  require_root(beta, d, "beta");
  if (max_length < 0) throw DomainError("max_length must be >= 0");
  PrenilpotencyVerdict v;
  v.method = VerdictMethod::WeylSearch;
  auto up = positivize(alpha, beta, d, max_length, state_budget);
  v.states_explored = up.explored;
  if (!up.word) return v;
  auto down = positivize(-alpha, -beta, d, max_length, state_budget);
  v.states_explored += down.explored;
  if (!down.word) return v;
  v.positive_word = std::move(up.word);
  v.negative_word = std::move(down.word);
  v.verdict = Verdict::Prenilpotent;
  return v;
}

SpanRoots roots_in_nonneg_span(const LatticeVector& alpha, const LatticeVector& beta, int bound,
                               const Diagram& d) {
  require_root(alpha, d, "alpha");
  require_root(beta, d, "beta");
  if (bound < 0) throw DomainError("span bound must be >= 0");
  std::set<LatticeVector> found;
  for (std::int64_t m = 0; m <= bound; ++m)
    for (std::int64_t n = 0; n <= bound; ++n) {
      if (m == 0 && n == 0) continue;
      LatticeVector v = m * alpha + n * beta;
      if (!v.is_zero() && is_real_root(v, d)) found.insert(std::move(v));
    }
  SpanRoots out;
  out.roots.assign(found.begin(), found.end());
  out.provably_complete = bound >= 1 && alpha != -beta && inner(alpha, beta, d) >= -1;
  return out;
}

PrenilpotencyVerdict oracle_span(const LatticeVector& alpha, const LatticeVector& beta, int bound,
                                 const Diagram& d) {
  PrenilpotencyVerdict v;
  v.method = VerdictMethod::SpanScan;
  const auto first = roots_in_nonneg_span(alpha, beta, bound, d);
  if (first.provably_complete) {
    v.verdict = Verdict::Prenilpotent;
    return v;
  }
  // Consecutive solutions of m^2 + k m n + n^2 = 1 grow by at most a factor |k|.
  const std::int64_t k = inner(alpha, beta, d);
  const int wider = static_cast<int>(std::max<std::int64_t>(2, -k) * std::max(bound, 1));
  const auto second = roots_in_nonneg_span(alpha, beta, wider, d);
  if (second.roots.size() > first.roots.size()) {
    v.verdict = Verdict::NotPrenilpotent;
    v.unbounded_family = true;
  }
  return v;
}

bool is_classically_prenilpotent(const LatticeVector& alpha, const LatticeVector& beta,
                                 const Diagram& d) {
  require_root(alpha, d, "alpha");
  require_root(beta, d, "beta");
  if (alpha == beta) return true;
  const std::int64_t k = inner(alpha, beta, d);
  return k >= -1 && k <= 1;
}

CommutatorForm commutator_form(const LatticeVector& alpha, const LatticeVector& beta,
                               const Diagram& d) {
  if (!is_prenilpotent(alpha, beta, d)) throw DomainError("pair is not prenilpotent");
  if (alpha == beta) throw DomainError("commutator form needs distinct roots");
  CommutatorForm f;
  if (inner(alpha, beta, d) == -1) {
    LatticeVector s = alpha + beta;
    if (!is_real_root(s, d))
      throw InvariantViolation("alpha + beta = " + to_string(s) + " is not a real root");
    f.kind = CommutatorKind::SingleRoot;
    f.sum_root = std::move(s);
    f.coefficient_rule = "X_{a+b}(+-tu)";
  } else {
    f.coefficient_rule = "1";
  }
  return f;
}

// --- splitting ----------------------------------------------------------------

namespace {

Split split_k2(const LatticeVector& alpha, const LatticeVector& beta, const RootLattice& lat) {
  const Diagram& d = lat.diagram();
  const int n = d.rank();
  Split out;
  LatticeVector a = alpha, b = beta;
  // Orient nu = a - b (null) towards the future: nu . rho* < 0.
  if (inner(lat.rho_star(), a - b, d) > 0) {
    std::swap(a, b);
    out.swapped = true;
  }
  const LatticeVector nu = a - b;
  const ChamberReduction red = lat.weyl_reduce_to_chamber(nu);
  if (red.negated) throw InvariantViolation("null vector " + to_string(nu) + " left the future cone");
  WeylWord word = red.word;
  LatticeVector a1 = apply_word(a, word, d);

  std::vector<int> stab;
  std::vector<char> in_stab(n, 0);
  for (int i = 0; i < n; ++i)
    if (inner_simple(red.vector, i, d) == 0) {
      stab.push_back(i);
      in_stab[i] = 1;
    }
  for (int i = 0; i < n; ++i)
    if (a1[i] != 0 && !in_stab[i])
      throw InvariantViolation("transported root " + to_string(a1) +
                               " is not supported on the stabilizer of " + to_string(red.vector));

  int simple = -1;
  if (a1.is_negative()) {
    auto r = reduce_positive_root(-a1, d, stab);
    if (!r) throw InvariantViolation("root " + to_string(a1) + " does not reduce inside the stabilizer");
    word.insert(word.end(), r->word.begin(), r->word.end());
    word.push_back(r->simple);
    simple = r->simple;
  } else {
    auto r = reduce_positive_root(a1, d, stab);
    if (!r) throw InvariantViolation("root " + to_string(a1) + " does not reduce inside the stabilizer");
    word.insert(word.end(), r->word.begin(), r->word.end());
    simple = r->simple;
  }
  if (apply_word(a, word, d) != LatticeVector::simple(n, simple))
    throw InvariantViolation("conjugating word does not reach a simple root");

  // Component of the stabilizer through `simple`; it should be affine.
  std::vector<int> comp{simple};
  std::vector<char> mark(n, 0);
  mark[simple] = 1;
  for (std::size_t q = 0; q < comp.size(); ++q)
    for (int j : d.neighbors(comp[q]))
      if (in_stab[j] && !mark[j]) {
        mark[j] = 1;
        comp.push_back(j);
      }
  std::sort(comp.begin(), comp.end());
  if (comp.size() < 2 || classify(d.induced(comp)) != DiagramType::Affine)
    throw InvariantViolation("stabilizer component through node " + std::to_string(simple) +
                             " is not affine");

  int j = -1;
  for (int c : d.neighbors(simple))
    if (in_stab[c] && (j < 0 || c < j)) j = c;

  const LatticeVector frame = LatticeVector::simple(n, simple) + LatticeVector::simple(n, j);
  out.alpha1 = apply_inverse_word(frame, word, d);
  out.alpha2 = alpha - out.alpha1;
  out.word = std::move(word);
  out.stabilizer_nodes = std::move(stab);
  return out;
}

Split split_kge3(const LatticeVector& alpha, const LatticeVector& beta, std::int64_t k,
                 const RootLattice& lat) {
  const Diagram& d = lat.diagram();
  Split out;
  // alpha - beta has norm 4 - 2k < 0; its chamber form keeps the pair's
  // heights small, which keeps the search short.
  const ChamberReduction red = lat.weyl_reduce_to_chamber(alpha - beta);
  const LatticeVector a = apply_word(alpha, red.word, d);
  const LatticeVector b = apply_word(beta, red.word, d);
  constexpr int kMaxHeight = 64;
  for (int cap = 2; cap <= kMaxHeight; cap *= 2) {
    for (const auto& r : real_roots_up_to_height(d, cap, Exec::Serial)) {
      if (inner(r, a, d) != 1) continue;
      const std::int64_t rb = inner(r, b, d);
      if (rb < 1 || rb > k - 1) continue;
      out.alpha1 = apply_inverse_word(r, red.word, d);
      out.alpha2 = alpha - out.alpha1;
      out.word = red.word;
      return out;
    }
  }
  throw InvariantViolation("no splitting root of height <= 64 for " + to_string(alpha) + ", " +
                           to_string(beta));
}

}  // namespace

Split split_pair(const LatticeVector& alpha, const LatticeVector& beta, const RootLattice& lat) {
  const Diagram& d = lat.diagram();
  require_root(alpha, d, "alpha");
  require_root(beta, d, "beta");
  if (alpha == beta) throw DomainError("split_pair needs distinct roots");
  const std::int64_t k = inner(alpha, beta, d);
  if (k < 2) throw DomainError("split_pair needs alpha.beta >= 2, got " + std::to_string(k));
  Split s = k == 2 ? split_k2(alpha, beta, lat) : split_kge3(alpha, beta, k, lat);

  if (s.alpha1 + s.alpha2 != alpha) throw InvariantViolation("split does not sum to alpha");
  if (!is_real_root(s.alpha1, d) || !is_real_root(s.alpha2, d))
    throw InvariantViolation("split produced a non-root");
  const std::int64_t p1 = inner(s.alpha1, beta, d), p2 = inner(s.alpha2, beta, d);
  if (p1 < 1 || p2 < 1 || p1 + p2 != k) throw InvariantViolation("split products out of range");
  return s;
}

// --- certificates ---------------------------------------------------------------

int ReductionCertificate::depth() const {
  int m = 0;
  for (const auto& c : children) m = std::max(m, c.depth() + 1);
  return m;
}

std::size_t ReductionCertificate::leaf_count() const {
  if (children.empty()) return 1;
  std::size_t s = 0;
  for (const auto& c : children) s += c.leaf_count();
  return s;
}

namespace {

ReductionCertificate reduce_rec(const LatticeVector& alpha, const LatticeVector& beta,
                                const RootLattice& lat) {
  const Diagram& d = lat.diagram();
  ReductionCertificate c;
  c.alpha = alpha;
  c.beta = beta;
  c.k = inner(alpha, beta, d);
  if (is_classically_prenilpotent(alpha, beta, d)) return c;
  Split s = split_pair(alpha, beta, lat);
  c.kind = c.k == 2 ? SplitKind::SplitK2 : SplitKind::SplitKGe3;
  c.alpha1 = s.alpha1;
  c.alpha2 = s.alpha2;
  c.word = std::move(s.word);
  c.children.push_back(reduce_rec(c.alpha1, beta, lat));
  c.children.push_back(reduce_rec(c.alpha2, beta, lat));
  return c;
}

CertificateCheck fail(std::string why) { return {false, std::move(why)}; }

CertificateCheck verify_rec(const ReductionCertificate& c, const Diagram& d) {
  const int n = d.rank();
  if (c.alpha.size() != n || c.beta.size() != n) return fail("coordinate length mismatch");
  if (!is_real_root(c.alpha, d)) return fail("alpha " + to_string(c.alpha) + " is not a real root");
  if (!is_real_root(c.beta, d)) return fail("beta " + to_string(c.beta) + " is not a real root");
  const std::int64_t k = inner(c.alpha, c.beta, d);
  if (k != c.k) return fail("recorded k = " + std::to_string(c.k) + " but alpha.beta = " + std::to_string(k));
  for (int letter : c.word)
    if (letter < 0 || letter >= n) return fail("Weyl word letter out of range");

  if (c.kind == SplitKind::Leaf) {
    if (!c.children.empty()) return fail("leaf has children");
    if (c.alpha != c.beta && (k < -1 || k > 1))
      return fail("leaf not classically prenilpotent: k = " + std::to_string(k));
    return {};
  }
  if ((c.kind == SplitKind::SplitK2) != (k == 2) || k < 2)
    return fail("split kind " + to_string(c.kind) + " does not match k = " + std::to_string(k));
  if (c.alpha1.size() != n || c.alpha2.size() != n) return fail("coordinate length mismatch");
  if (c.alpha1 + c.alpha2 != c.alpha) return fail("sum mismatch: alpha' + alpha'' != alpha");
  if (!is_real_root(c.alpha1, d)) return fail("alpha' " + to_string(c.alpha1) + " is not a real root");
  if (!is_real_root(c.alpha2, d)) return fail("alpha'' " + to_string(c.alpha2) + " is not a real root");
  const std::int64_t p1 = inner(c.alpha1, c.beta, d), p2 = inner(c.alpha2, c.beta, d);
  if (p1 < 1 || p1 >= k || p2 < 1 || p2 >= k) return fail("child product out of range");
  if (c.children.size() != 2) return fail("split node needs two children");
  if (c.children[0].alpha != c.alpha1 || c.children[0].beta != c.beta ||
      c.children[1].alpha != c.alpha2 || c.children[1].beta != c.beta)
    return fail("children do not match the split");
  for (const auto& ch : c.children) {
    auto r = verify_rec(ch, d);
    if (!r.ok) return r;
  }
  return {};
}

}  // namespace

ReductionCertificate reduce_to_certificate(const LatticeVector& alpha, const LatticeVector& beta,
                                           const RootLattice& lat) {
  if (!is_prenilpotent(alpha, beta, lat.diagram()))
    throw DomainError("pair " + to_string(alpha) + ", " + to_string(beta) + " is not prenilpotent");
  return reduce_rec(alpha, beta, lat);
}

CertificateCheck verify_certificate(const ReductionCertificate& c, const Diagram& d) {
  auto r = verify_rec(c, d);
  if (!r.ok) return r;
  if (c.depth() > std::max<std::int64_t>(c.k, 0))
    return fail("depth " + std::to_string(c.depth()) + " exceeds k = " + std::to_string(c.k));
  return r;
}

nlohmann::json to_json(const ReductionCertificate& c) {
  nlohmann::json j;
  j["alpha"] = c.alpha.coords;
  j["beta"] = c.beta.coords;
  j["k"] = c.k;
  j["kind"] = to_string(c.kind);
  if (c.kind != SplitKind::Leaf) {
    j["alpha_prime"] = c.alpha1.coords;
    j["alpha_double_prime"] = c.alpha2.coords;
    j["weyl_word"] = c.word;
    j["children"] = nlohmann::json::array();
    for (const auto& ch : c.children) j["children"].push_back(to_json(ch));
  }
  return j;
}

ReductionCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    ReductionCertificate c;
    c.alpha = LatticeVector(j.at("alpha").get<std::vector<std::int64_t>>());
    c.beta = LatticeVector(j.at("beta").get<std::vector<std::int64_t>>());
    c.k = j.at("k").get<std::int64_t>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "leaf") {
      c.kind = SplitKind::Leaf;
      return c;
    }
    if (kind == "split_k2") c.kind = SplitKind::SplitK2;
    else if (kind == "split_k_ge_3") c.kind = SplitKind::SplitKGe3;
    else throw DomainError("unknown certificate node kind '" + kind + "'");
    c.alpha1 = LatticeVector(j.at("alpha_prime").get<std::vector<std::int64_t>>());
    c.alpha2 = LatticeVector(j.at("alpha_double_prime").get<std::vector<std::int64_t>>());
    c.word = j.at("weyl_word").get<WeylWord>();
    for (const auto& ch : j.at("children")) c.children.push_back(certificate_from_json(ch));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed certificate: ") + e.what());
  }
}

namespace {
void render_rec(const ReductionCertificate& c, int indent, std::ostringstream& os) {
  os << std::string(2 * indent, ' ') << "(" << to_string(c.alpha) << ", " << to_string(c.beta)
     << ") k=" << c.k;
  if (c.kind == SplitKind::Leaf) {
    os << " leaf\n";
    return;
  }
  os << " " << to_string(c.kind) << " -> " << to_string(c.alpha1) << " + " << to_string(c.alpha2)
     << "\n";
  for (const auto& ch : c.children) render_rec(ch, indent + 1, os);
}
}  // namespace

std::string render_tree(const ReductionCertificate& c) {
  std::ostringstream os;
  render_rec(c, 0, os);
  return os.str();
}

// --- sweep ------------------------------------------------------------------------

PrenilpotencySweep sweep_prenilpotency(const Diagram& d, int height, int max_length,
                                       std::size_t state_budget, Exec exec) {
  PrenilpotencySweep out;
  const auto roots = real_roots_up_to_height(d, height, exec);
  out.roots = roots.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) pairs.emplace_back(i, j);
  out.pairs = pairs.size();

  std::size_t crit = 0, concl = 0, contra = 0, span = 0, span_bad = 0;
  std::vector<char> bad(pairs.size(), 0);
  auto one = [&](std::size_t p, std::size_t& c1, std::size_t& c2, std::size_t& c3, std::size_t& c4,
                 std::size_t& c5) {
    const auto& a = roots[pairs[p].first];
    const auto& b = roots[pairs[p].second];
    const bool truth = is_prenilpotent(a, b, d);
    c1 += truth;
    const auto v = oracle_weyl(a, b, d, max_length, state_budget);
    if (v.verdict != Verdict::Inconclusive) {
      ++c2;
      if ((v.verdict == Verdict::Prenilpotent) != truth) {
        ++c3;
        bad[p] = 1;
      }
    }
    const std::int64_t k = inner(a, b, d);
    if (k >= -1 && a != -b) {
      ++c4;
      const auto s = roots_in_nonneg_span(a, b, 3, d);
      if (!s.provably_complete || s.roots != predicted_span(a, b, k)) ++c5;
    }
  };
  const auto count = static_cast<std::int64_t>(pairs.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : crit, concl, contra, span, span_bad)
    for (std::int64_t p = 0; p < count; ++p)
      one(static_cast<std::size_t>(p), crit, concl, contra, span, span_bad);
  } else {
    for (std::int64_t p = 0; p < count; ++p)
      one(static_cast<std::size_t>(p), crit, concl, contra, span, span_bad);
  }
  out.criterion_true = crit;
  out.oracle_conclusive = concl;
  out.contradictions = contra;
  out.span_checked = span;
  out.span_mismatches = span_bad;
  for (std::size_t p = 0; p < pairs.size() && out.contradiction_examples.size() < 10; ++p)
    if (bad[p]) out.contradiction_examples.emplace_back(roots[pairs[p].first], roots[pairs[p].second]);
  return out;
}

}  // namespace kmx
