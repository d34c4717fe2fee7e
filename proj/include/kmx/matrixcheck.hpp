#pragma once

#include "kmx/diagram.hpp"
#include "kmx/presentation.hpp"
#include "kmx/ring.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kmx {

/// n x n matrix over a RingSpec, n <= 4.
class Matrix {
 public:
  Matrix(const RingSpec& r, int n);
  static Matrix identity(const RingSpec& r, int n);

  int size() const { return n_; }
  const RingSpec& ring() const { return *r_; }
  RingElement at(int i, int j) const { return {r_, e_[i * n_ + j]}; }
  void set(int i, int j, const RingElement& v) { e_[i * n_ + j] = v.value; }

  Matrix operator*(const Matrix& o) const;
  bool operator==(const Matrix& o) const { return n_ == o.n_ && e_ == o.e_; }

  RingElement determinant() const;
  /// Adjugate divided by the determinant; DomainError if that is not a unit.
  Matrix inverse() const;

  std::string to_string() const;

 private:
  const RingSpec* r_;
  int n_;
  std::vector<std::int64_t> e_;
};

/// Images of S and X for one or two nodes ("slots"). A model has size 2
/// (one node), 3 (joined pair: blocks at rows 0-1 and 1-2) or 4 (unjoined
/// pair: blocks at rows 0-1 and 2-3). X_k(t) = I + x_sign[k] t E, and S_k is
/// s_sign[k] times the rotation with rows (0,1), (-1,0) in its block.
struct Assignment {
  enum class Model { Rank1, Joined, Unjoined };
  const RingSpec* ring = nullptr;
  Model model = Model::Rank1;
  std::array<int, 2> x_sign{1, 1};
  std::array<int, 2> s_sign{1, 1};

  int size() const;
  int slots() const { return model == Model::Rank1 ? 1 : 2; }
  Matrix x(int slot, const RingElement& t) const;
  Matrix s(int slot) const;
  /// Evaluates a word; node_slot maps diagram node -> slot, by position:
  /// nodes[0] -> slot 0, nodes[1] -> slot 1.
  Matrix eval(const Word& w, const std::vector<int>& nodes) const;

  nlohmann::json to_json() const;
};

std::string to_string(Assignment::Model m);

/// Parameters for checks over Z: t, u in [-window, window].
struct CheckOptions {
  int window = 3;
  CommutatorConvention convention = CommutatorConvention::AbAinvBinv;
};

/// First sign choice (x_sign, s_sign in order +1, -1) satisfying all per-node
/// schemas. Throws InvariantViolation if none does.
Assignment rank1_assignment(const RingSpec& r, const CheckOptions& opt = {});
/// First of the 16 sign choices satisfying the per-node schemas on both slots
/// and the joined schemas in both orientations.
Assignment joined_pair_assignment(const RingSpec& r, const CheckOptions& opt = {});
Assignment unjoined_pair_assignment(const RingSpec& r, const CheckOptions& opt = {});

/// Same searches, returning nothing instead of throwing.
std::optional<Assignment> find_assignment(Assignment::Model m, const RingSpec& r, const CheckOptions& opt);

/// Ring parameters a check ranges over: all elements, or the window for Z.
std::vector<RingElement> parameter_range(const RingSpec& r, int window);

/// Every instance of the given schemas for slots (0) or (0,1) and, for pair
/// schemas, both orientations.
std::vector<Relation> schema_instances(Assignment::Model m, const RingSpec& r, int window,
                                       CommutatorConvention conv);

struct IdentityCheck {
  std::string name;
  std::size_t instances = 0;
  std::size_t passed = 0;
  bool ok() const { return passed == instances; }
};

struct HIdentityReport {
  std::string ring;
  std::vector<IdentityCheck> checks;
  bool ok() const;
  nlohmann::json to_json() const;
};

/// Rank-1 identities: h(a)h(b) = h(ab) on units, h(a) = diag(a, a^-1),
/// h(-1) = S^-2, S^4 = 1, s(1) = S.
HIdentityReport h_identities_check(const RingSpec& r);

struct SchemaResult {
  std::string schema;
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::vector<std::string> failed;  // first few failing instances
};

struct VerificationReport {
  std::string diagram;
  std::string ring;
  std::optional<int> window;  // Z only
  CommutatorConvention convention = CommutatorConvention::AbAinvBinv;
  bool assignments_found = true;
  std::vector<Assignment> assignments;  // rank-1, joined, unjoined
  std::vector<SchemaResult> schemas;    // sorted by tag
  std::size_t instances = 0;
  std::size_t failures = 0;

  bool ok() const { return assignments_found && failures == 0; }
  nlohmann::json to_json() const;
};

/// Evaluates every relation of the Kac-Moody presentation (both pair
/// orientations) in the rank <= 2 models; over Z also every block schema at
/// t, u in [-window, window] through X_i(u) = X_i^u.
VerificationReport verify_all(const Diagram& d, const RingSpec& r, const CheckOptions& opt = {},
                              const PresentationOptions& popt = {});

}  // namespace kmx
