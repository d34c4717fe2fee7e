#include "kmx/diagram.hpp"

#include "kmx/errors.hpp"
#include "kmx/rational.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <numeric>
#include <set>

namespace kmx {

namespace detail {
extern const char* const kCatalogJson;
}

Diagram::Diagram(int rank, std::vector<Edge> edges, std::string name, std::string alias)
    : rank_(rank), name_(std::move(name)), alias_(std::move(alias)) {
  if (rank <= 0) throw DomainError("diagram rank must be positive");
  for (auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= rank || b >= rank)
      throw DomainError("edge {" + std::to_string(a) + "," + std::to_string(b) +
                        "} out of range for rank " + std::to_string(rank));
    if (a == b) throw DomainError("self-loop at node " + std::to_string(a));
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw DomainError("duplicate edge");
  edges_ = std::move(edges);
  gcm_.assign(rank, std::vector<int>(rank, 0));
  adj_.assign(rank, {});
  for (int i = 0; i < rank; ++i) gcm_[i][i] = 2;
  for (auto [a, b] : edges_) {
    gcm_[a][b] = gcm_[b][a] = -1;
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& n : adj_) std::sort(n.begin(), n.end());
}

std::string Diagram::label() const {
  if (!alias_.empty()) return alias_;
  if (!name_.empty()) return name_;
  return "rank" + std::to_string(rank_) + "-custom";
}

bool Diagram::is_connected() const {
  std::vector<char> seen(rank_, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj_[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == rank_;
}

Diagram Diagram::induced(const std::vector<int>& nodes) const {
  std::vector<int> pos(rank_, -1);
  for (std::size_t k = 0; k < nodes.size(); ++k) pos[nodes[k]] = static_cast<int>(k);
  std::vector<Edge> e;
  for (auto [a, b] : edges_)
    if (pos[a] >= 0 && pos[b] >= 0) e.emplace_back(pos[a], pos[b]);
  return Diagram(static_cast<int>(nodes.size()), std::move(e));
}

Diagram Diagram::relabeled(const std::vector<int>& perm) const {
  std::vector<int> inv(rank_);
  for (int i = 0; i < rank_; ++i) inv[perm[i]] = i;
  std::vector<Edge> e;
  for (auto [a, b] : edges_) e.emplace_back(inv[a], inv[b]);
  return Diagram(rank_, std::move(e), name_, alias_);
}

Diagram build_diagram(int rank, const std::vector<Edge>& edges) { return Diagram(rank, edges); }

std::string to_string(DiagramType t) {
  switch (t) {
    case DiagramType::Finite: return "finite";
    case DiagramType::Affine: return "affine";
    case DiagramType::Indefinite: return "indefinite";
  }
  return "?";
}

std::vector<std::int64_t> leading_principal_minors(const Diagram& d) {
  std::vector<std::int64_t> out;
  const auto& g = d.gcm();
  for (int k = 1; k <= d.rank(); ++k) {
    RationalMatrix m(k, std::vector<Rational>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m[i][j] = g[i][j];
    out.push_back(determinant(std::move(m)).convert_to<std::int64_t>());
  }
  return out;
}

DiagramType classify(const Diagram& d) {
  if (!d.is_connected()) throw DomainError("classify: diagram is not connected");
  auto minors = leading_principal_minors(d);
  if (std::all_of(minors.begin(), minors.end(), [](auto m) { return m > 0; }))
    return DiagramType::Finite;
  const Inertia in = inertia(to_rational_matrix(d.gcm()));
  if (in.neg == 0 && in.null >= 1) return DiagramType::Affine;
  return DiagramType::Indefinite;
}

void for_each_proper_irreducible_subdiagram(
    const Diagram& d, const std::function<bool(const Subdiagram&)>& visit) {
  const int n = d.rank();
  if (n <= 1) return;
  if (n > 20) throw DomainError("subdiagram walk limited to rank 20");
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t s = 1; s < full; ++s) subsets.push_back(s);
  std::stable_sort(subsets.begin(), subsets.end(), [](auto a, auto b) {
    return std::popcount(a) < std::popcount(b);
  });
  for (auto s : subsets) {
    std::vector<int> nodes;
    for (int i = 0; i < n; ++i)
      if (s >> i & 1u) nodes.push_back(i);
    Diagram sub = d.induced(nodes);
    if (!sub.is_connected()) continue;
    if (!visit(Subdiagram{std::move(nodes), std::move(sub)})) return;
  }
}

std::vector<Subdiagram> proper_irreducible_subdiagrams(const Diagram& d) {
  std::vector<Subdiagram> out;
  for_each_proper_irreducible_subdiagram(d, [&](const Subdiagram& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

bool is_hyperbolic(const Diagram& d) {
  if (!d.is_connected()) return false;
  bool ok = true;
  for_each_proper_irreducible_subdiagram(d, [&](const Subdiagram& s) {
    if (classify(s.diagram) == DiagramType::Indefinite) ok = false;
    return ok;
  });
  return ok && classify(d) == DiagramType::Indefinite;
}

// ---------------------------------------------------------------------------
// Catalog

std::string_view catalog_json() { return detail::kCatalogJson; }

const std::vector<Diagram>& catalog() {
  static const std::vector<Diagram> table = [] {
    std::vector<Diagram> out;
    auto j = nlohmann::json::parse(detail::kCatalogJson);
    for (const auto& e : j) {
      std::vector<Edge> edges;
      for (const auto& p : e.at("edges")) edges.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
      out.emplace_back(e.at("rank").get<int>(), std::move(edges), e.at("name").get<std::string>(),
                       e.value("alias", std::string{}));
    }
    return out;
  }();
  return table;
}

const Diagram& catalog_lookup(std::string_view name) {
  for (const auto& d : catalog())
    if (d.name() == name || (!d.alias().empty() && d.alias() == name)) return d;
  throw DomainError("unknown catalog diagram '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Canonical forms and exhaustive enumeration.
//
// Graphs on k <= 7 nodes are handled as edge bitmasks: bit index of pair
// (a,b), a<b, follows the upper-triangular row order (0,1),(0,2),...,(1,2),...

namespace {

constexpr int pair_index(int n, int a, int b) {
  // number of pairs in rows before a, then offset within row a
  return a * n - a * (a + 1) / 2 + (b - a - 1);
}

std::vector<Edge> edges_of(int n, std::uint32_t mask) {
  std::vector<Edge> e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mask >> pair_index(n, a, b) & 1u) e.emplace_back(a, b);
  return e;
}

/// Bitstring value with pair (0,1) as most significant bit, so integer order
/// equals lexicographic order of the '0'/'1' strings.
std::uint64_t bitstring_value(int n, const std::vector<std::vector<char>>& adj,
                              const std::vector<int>& perm) {
  std::uint64_t v = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) v = (v << 1) | static_cast<std::uint64_t>(adj[perm[a]][perm[b]]);
  return v;
}

std::pair<std::uint64_t, std::vector<int>> canonical_value(const Diagram& d) {
  const int n = d.rank();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [a, b] : d.edges()) adj[a][b] = adj[b][a] = 1;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = bitstring_value(n, adj, perm);
  std::vector<int> best_perm = perm;
  while (std::next_permutation(perm.begin(), perm.end())) {
    auto v = bitstring_value(n, adj, perm);
    if (v < best) {
      best = v;
      best_perm = perm;
    }
  }
  return {best, best_perm};
}

std::string value_to_bits(int n, std::uint64_t v) {
  const int len = n * (n - 1) / 2;
  std::string s(len, '0');
  for (int k = 0; k < len; ++k)
    if (v >> (len - 1 - k) & 1u) s[k] = '1';
  return s;
}

/// Adjacency of node i as a node bitmask.
void node_adjacency(int n, std::uint32_t mask, std::uint32_t* adj) {
  for (int a = 0; a < n; ++a) adj[a] = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mask >> pair_index(n, a, b) & 1u) {
        adj[a] |= 1u << b;
        adj[b] |= 1u << a;
      }
}

bool subset_connected(const std::uint32_t* adj, std::uint32_t subset) {
  std::uint32_t seen = subset & (~subset + 1);
  std::uint32_t frontier = seen;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
    next &= subset & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == subset;
}

/// Edge mask of the subgraph induced on `subset`, relabelled in increasing order.
std::uint32_t induced_mask(const std::uint32_t* adj, std::uint32_t subset, int& k_out) {
  int nodes[32];
  int k = 0;
  for (std::uint32_t s = subset; s; s &= s - 1) nodes[k++] = std::countr_zero(s);
  std::uint32_t m = 0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (adj[nodes[a]] >> nodes[b] & 1u) m |= 1u << pair_index(k, a, b);
  k_out = k;
  return m;
}

/// Memoized classification of connected labelled graphs on <= 7 nodes.
/// 0 = unknown, otherwise 1 + DiagramType.
class ClassificationMemo {
 public:
  ClassificationMemo() {
    for (int k = 1; k <= kMaxEnumerationRank; ++k)
      table_[k] = std::vector<std::atomic<std::uint8_t>>(std::size_t{1} << (k * (k - 1) / 2));
  }

  DiagramType get(int k, std::uint32_t mask) {
    auto& slot = table_[k][mask];
    std::uint8_t v = slot.load(std::memory_order_relaxed);
    if (v == 0) {
      v = static_cast<std::uint8_t>(1 + static_cast<int>(classify(Diagram(k, edges_of(k, mask)))));
      slot.store(v, std::memory_order_relaxed);
    }
    return static_cast<DiagramType>(v - 1);
  }

 private:
  std::vector<std::atomic<std::uint8_t>> table_[kMaxEnumerationRank + 1];
};

bool mask_is_hyperbolic(int n, std::uint32_t mask, ClassificationMemo& memo,
                        const std::vector<std::uint32_t>& subset_order) {
  std::uint32_t adj[32];
  node_adjacency(n, mask, adj);
  const std::uint32_t full = (1u << n) - 1;
  if (!subset_connected(adj, full)) return false;
  for (auto s : subset_order) {
    if (!subset_connected(adj, s)) continue;
    int k = 0;
    auto m = induced_mask(adj, s, k);
    if (memo.get(k, m) == DiagramType::Indefinite) return false;
  }
  return memo.get(n, mask) == DiagramType::Indefinite;
}

}  // namespace

std::string canonical_form(const Diagram& d) {
  if (d.rank() > 10) throw DomainError("canonical_form limited to rank 10");
  return value_to_bits(d.rank(), canonical_value(d).first);
}

Diagram from_canonical_form(int rank, std::string_view bits, std::string name) {
  const auto len = static_cast<std::size_t>(rank * (rank - 1) / 2);
  if (bits.size() != len) throw DomainError("canonical bitstring has wrong length");
  std::vector<Edge> e;
  std::size_t k = 0;
  for (int a = 0; a < rank; ++a)
    for (int b = a + 1; b < rank; ++b, ++k)
      if (bits[k] == '1') e.emplace_back(a, b);
  return Diagram(rank, std::move(e), std::move(name));
}

std::vector<Diagram> enumerate_hyperbolic(int rank, Exec exec) {
  if (rank > kMaxEnumerationRank)
    throw DomainError("enumerate_hyperbolic: rank " + std::to_string(rank) +
                      " exceeds the exhaustive-search cap of 7 (2^" +
                      std::to_string(rank * (rank - 1) / 2) + " edge subsets); use the catalog");
  if (rank < 2) throw DomainError("enumerate_hyperbolic: rank must be in [2,7]");

  const int pairs = rank * (rank - 1) / 2;
  const std::int64_t total = std::int64_t{1} << pairs;
  const std::uint32_t full = (1u << rank) - 1;
  std::vector<std::uint32_t> subset_order;
  for (std::uint32_t s = 1; s < full; ++s) subset_order.push_back(s);
  std::stable_sort(subset_order.begin(), subset_order.end(),
                   [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });

  ClassificationMemo memo;
  std::vector<std::uint32_t> hits;

  if (exec == Exec::Serial) {
    for (std::int64_t m = 0; m < total; ++m)
      if (mask_is_hyperbolic(rank, static_cast<std::uint32_t>(m), memo, subset_order))
        hits.push_back(static_cast<std::uint32_t>(m));
  } else {
#pragma omp parallel
    {
      std::vector<std::uint32_t> local;
#pragma omp for schedule(dynamic, 4096) nowait
      for (std::int64_t m = 0; m < total; ++m)
        if (mask_is_hyperbolic(rank, static_cast<std::uint32_t>(m), memo, subset_order))
          local.push_back(static_cast<std::uint32_t>(m));
#pragma omp critical
      hits.insert(hits.end(), local.begin(), local.end());
    }
    std::sort(hits.begin(), hits.end());
  }

  std::set<std::uint64_t> canon;
  for (auto m : hits) canon.insert(canonical_value(Diagram(rank, edges_of(rank, m))).first);

  std::vector<Diagram> out;
  int idx = 0;
  for (auto v : canon)
    out.push_back(from_canonical_form(rank, value_to_bits(rank, v),
                                      "enum" + std::to_string(rank) + "-" + std::to_string(++idx)));
  return out;
}

}  // namespace kmx
