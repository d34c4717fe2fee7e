#pragma once

#include "kmx/diagram.hpp"
#include "kmx/lattice.hpp"
#include "kmx/parallel.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kmx {

// ---------------------------------------------------------------------------
// Prenilpotency

enum class Verdict { Prenilpotent, NotPrenilpotent, Inconclusive };
enum class VerdictMethod { Criterion, WeylSearch, SpanScan };

std::string to_string(Verdict v);
std::string to_string(VerdictMethod m);

struct PrenilpotencyVerdict {
  Verdict verdict = Verdict::Inconclusive;
  VerdictMethod method = VerdictMethod::Criterion;
  std::optional<WeylWord> positive_word;  // w with w(alpha), w(beta) positive
  std::optional<WeylWord> negative_word;  // w' with w'(alpha), w'(beta) negative
  bool unbounded_family = false;          // span scan kept finding roots
  std::size_t states_explored = 0;
};

/// alpha == beta -> true; alpha == -beta -> false; otherwise alpha.beta >= -1.
/// Throws DomainError if either input is not a real root.
bool is_prenilpotent(const LatticeVector& alpha, const LatticeVector& beta, const Diagram& d);

inline PrenilpotencyVerdict criterion_verdict(const LatticeVector& a, const LatticeVector& b,
                                              const Diagram& d) {
  PrenilpotencyVerdict v;
  v.verdict = is_prenilpotent(a, b, d) ? Verdict::Prenilpotent : Verdict::NotPrenilpotent;
  return v;
}

constexpr std::size_t kDefaultSearchBudget = 4096;

/// Searches Weyl words of length <= max_length for w sending both roots to
/// Phi+ and w' sending both to Phi-. Best-first over pair states (fewest
/// negative-root height first), at most `state_budget` states per direction.
/// Conclusive (Prenilpotent) only with both witnesses; never concludes
/// NotPrenilpotent.
PrenilpotencyVerdict oracle_weyl(const LatticeVector& alpha, const LatticeVector& beta,
                                 const Diagram& d, int max_length = 16,
                                 std::size_t state_budget = kDefaultSearchBudget);

struct SpanRoots {
  std::vector<LatticeVector> roots;  // distinct, sorted
  bool provably_complete = false;
};

/// Real roots among m alpha + n beta, 0 <= m,n <= bound, (m,n) != (0,0).
/// Provably complete when alpha.beta >= -1 and alpha != -beta: then
/// 2m^2 + 2kmn + 2n^2 = 2 has no solutions beyond m + n = 1 (and m = n = 1 for
/// k = -1).
SpanRoots roots_in_nonneg_span(const LatticeVector& alpha, const LatticeVector& beta, int bound,
                               const Diagram& d);

/// Verdict from scanning at `bound` and 2*bound: complete list -> Prenilpotent,
/// strictly growing list -> NotPrenilpotent with the unbounded marker.
PrenilpotencyVerdict oracle_span(const LatticeVector& alpha, const LatticeVector& beta, int bound,
                                 const Diagram& d);

/// alpha == beta or alpha.beta in {-1, 0, 1}.
bool is_classically_prenilpotent(const LatticeVector& alpha, const LatticeVector& beta,
                                 const Diagram& d);

enum class CommutatorKind { Trivial, SingleRoot };

struct CommutatorForm {
  CommutatorKind kind = CommutatorKind::Trivial;
  std::optional<LatticeVector> sum_root;
  std::string coefficient_rule;  // "X_{a+b}(+-tu)" or "1"; sign left symbolic
};

/// [X_a(t), X_b(u)] for a distinct prenilpotent pair.
CommutatorForm commutator_form(const LatticeVector& alpha, const LatticeVector& beta,
                               const Diagram& d);

// ---------------------------------------------------------------------------
// Root splitting

enum class SplitKind { Leaf, SplitK2, SplitKGe3 };
std::string to_string(SplitKind k);

struct Split {
  LatticeVector alpha1;  // alpha'
  LatticeVector alpha2;  // alpha'' = alpha - alpha'
  /// Conjugating word: the search ran on apply_word(., word) of the pair.
  WeylWord word;
  bool swapped = false;              // k = 2: nu = beta - alpha was the future one
  std::vector<int> stabilizer_nodes;  // k = 2: nodes orthogonal to the reduced null vector
};

/// Finds real roots alpha', alpha'' with alpha' + alpha'' = alpha and both
/// products with beta positive, for k = alpha.beta >= 2.
/// Throws DomainError for bad input and InvariantViolation if the
/// construction fails (which would contradict the splitting theorem).
Split split_pair(const LatticeVector& alpha, const LatticeVector& beta, const RootLattice& lat);

struct ReductionCertificate {
  LatticeVector alpha;
  LatticeVector beta;
  std::int64_t k = 0;
  SplitKind kind = SplitKind::Leaf;
  LatticeVector alpha1;
  LatticeVector alpha2;
  WeylWord word;
  std::vector<ReductionCertificate> children;

  int depth() const;
  std::size_t leaf_count() const;
};

/// Recursively splits until every leaf is classically prenilpotent.
ReductionCertificate reduce_to_certificate(const LatticeVector& alpha, const LatticeVector& beta,
                                           const RootLattice& lat);

struct CertificateCheck {
  bool ok = true;
  std::string diagnosis;  // empty when ok
};

/// Re-validates every recorded fact from scratch.
CertificateCheck verify_certificate(const ReductionCertificate& c, const Diagram& d);

nlohmann::json to_json(const ReductionCertificate& c);
ReductionCertificate certificate_from_json(const nlohmann::json& j);
std::string render_tree(const ReductionCertificate& c);

// ---------------------------------------------------------------------------
// Bulk agreement check over all pairs of roots of bounded height.

struct PrenilpotencySweep {
  std::size_t roots = 0;
  std::size_t pairs = 0;
  std::size_t criterion_true = 0;
  std::size_t oracle_conclusive = 0;
  std::size_t contradictions = 0;
  std::size_t span_checked = 0;       // pairs with product >= -1
  std::size_t span_mismatches = 0;    // incomplete, or not the predicted list
  std::vector<std::pair<LatticeVector, LatticeVector>> contradiction_examples;
};

PrenilpotencySweep sweep_prenilpotency(const Diagram& d, int height, int max_length,
                                       std::size_t state_budget = kDefaultSearchBudget,
                                       Exec exec = Exec::Parallel);

}  // namespace kmx
