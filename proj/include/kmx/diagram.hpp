#pragma once

#include "kmx/parallel.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kmx {

using Edge = std::pair<int, int>;
using Gcm = std::vector<std::vector<int>>;

/// A simply-laced Dynkin diagram together with its generalized Cartan matrix.
///
/// Edges are stored normalized (smaller index first) and sorted; the GCM has 2
/// on the diagonal, -1 for joined pairs and 0 otherwise, so it doubles as the
/// inner-product matrix of the simple roots.
class Diagram {
 public:
  /// Throws DomainError on out-of-range indices, self-loops or duplicates.
  Diagram(int rank, std::vector<Edge> edges, std::string name = {},
          std::string alias = {});

  int rank() const { return rank_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Gcm& gcm() const { return gcm_; }
  const std::vector<int>& neighbors(int i) const { return adj_[i]; }
  bool joined(int i, int j) const { return gcm_[i][j] == -1; }
  const std::string& name() const { return name_; }
  const std::string& alias() const { return alias_; }

  /// Display label: the alias when present, otherwise the name.
  std::string label() const;

  bool is_connected() const;

  /// Induced subdiagram on `nodes` (relabelled 0..k-1 in the given order).
  Diagram induced(const std::vector<int>& nodes) const;

  /// Diagram whose node perm[i] plays the role of node i here.
  Diagram relabeled(const std::vector<int>& perm) const;

  bool operator==(const Diagram& o) const {
    return rank_ == o.rank_ && edges_ == o.edges_;
  }

 private:
  int rank_;
  std::vector<Edge> edges_;
  Gcm gcm_;
  std::vector<std::vector<int>> adj_;
  std::string name_;
  std::string alias_;
};

Diagram build_diagram(int rank, const std::vector<Edge>& edges);

enum class DiagramType { Finite, Affine, Indefinite };

std::string to_string(DiagramType t);

/// Finite / affine / indefinite trichotomy for a connected diagram, decided in
/// exact arithmetic. Throws DomainError for disconnected input.
DiagramType classify(const Diagram& d);

/// Leading principal minors of the GCM, all exact.
std::vector<std::int64_t> leading_principal_minors(const Diagram& d);

struct Subdiagram {
  std::vector<int> nodes;  // indices into the parent diagram
  Diagram diagram;
};

/// Visits every connected induced subdiagram on a proper nonempty node subset,
/// smallest subsets first. Returning false from `visit` stops the walk.
void for_each_proper_irreducible_subdiagram(
    const Diagram& d, const std::function<bool(const Subdiagram&)>& visit);

std::vector<Subdiagram> proper_irreducible_subdiagrams(const Diagram& d);

/// Connected, indefinite, and every proper connected subdiagram finite or affine.
bool is_hyperbolic(const Diagram& d);

/// The stored table of the 18 simply-laced hyperbolic diagrams (ranks 4..10).
const std::vector<Diagram>& catalog();

/// Catalog lookup by name ("rank7-2") or alias ("E10"); throws DomainError.
const Diagram& catalog_lookup(std::string_view name);

/// The raw JSON text the catalog is parsed from.
std::string_view catalog_json();

/// Lexicographically minimal upper-triangular adjacency bitstring over all node
/// permutations. Intended for rank <= 8.
std::string canonical_form(const Diagram& d);

/// Diagram rebuilt from a canonical bitstring.
Diagram from_canonical_form(int rank, std::string_view bits, std::string name = {});

constexpr int kMaxEnumerationRank = 7;

/// Exhaustive scan of all graphs on `rank` nodes, keeping the hyperbolic ones,
/// deduplicated up to isomorphism and sorted by canonical form.
/// Throws DomainError unless 2 <= rank <= 7.
std::vector<Diagram> enumerate_hyperbolic(int rank, Exec exec = Exec::Parallel);

}  // namespace kmx
