#pragma once

#include "kmx/diagram.hpp"
#include "kmx/ring.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kmx {

/// S_i or X_i(t), possibly as a formal inverse. `param` is the raw value of a
/// ring element of the presentation's ring (unused for S).
struct Letter {
  enum class Kind { S, X };
  Kind kind = Kind::S;
  int node = 0;
  std::int64_t param = 0;
  bool inverse = false;

  bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

Word inverse(const Word& w);
/// [a,b] = a b a^-1 b^-1.
Word commutator(const Word& a, const Word& b);

/// Node indices and ring parameters of one relation instance.
struct RelationParams {
  int i = -1;
  std::optional<int> j;
  std::optional<std::int64_t> t, u;  // ring element values
  std::optional<std::int64_t> a, b;  // units for torus relations

  bool operator==(const RelationParams&) const = default;
};

struct Relation {
  std::string schema;
  RelationParams params;
  Word left;
  Word right;

  bool operator==(const Relation&) const = default;
};

/// Schema tags, in emission order within each block.
namespace schema {
inline constexpr const char* kXAdditive = "X_additive";          // X_i(t)X_i(u) = X_i(t+u)
inline constexpr const char* kS2XCommute = "S2_X_commute";       // [S_i^2, X_i(t)] = 1
inline constexpr const char* kSExpression = "S_expression";      // S_i = X_i(1)S_iX_i(1)S_i^-1X_i(1)
inline constexpr const char* kSSCommute = "S_S_commute";         // S_iS_j = S_jS_i
inline constexpr const char* kSXCommute = "S_X_commute";         // [S_i, X_j(t)] = 1
inline constexpr const char* kXXCommute = "X_X_commute";         // [X_i(t), X_j(u)] = 1
inline constexpr const char* kBraid = "braid";                   // S_iS_jS_i = S_jS_iS_j
inline constexpr const char* kS2SInverse = "S2_S_inverse";       // S_i^2 S_j S_i^-2 = S_j^-1
inline constexpr const char* kXSSTwist = "X_SS_twist";           // X_i(t)S_jS_i = S_jS_iX_j(t)
inline constexpr const char* kS2XInverse = "S2_X_inverse";       // S_i^2 X_j(t) S_i^-2 = X_j(t)^-1
inline constexpr const char* kXConjCommute = "X_conj_commute";   // [X_i(t), S_iX_j(u)S_i^-1] = 1
inline constexpr const char* kXXCommutator = "X_X_commutator";   // [X_i(t),X_j(u)] = S_iX_j(tu)S_i^-1
inline constexpr const char* kTorus = "km_torus";                // h_i(a)h_i(b) = h_i(ab)
inline constexpr const char* kTorusSquare = "km_torus_square";   // h_i(-1)^2 = 1 (over Z)
inline constexpr const char* kS4 = "km_S4";                      // S_i^4 = 1 (equivalent form)
}  // namespace schema

/// Schemas that change meaning when i and j are swapped.
bool schema_is_asymmetric(const std::string& tag);

/// Schema blocks: per node, per unjoined pair, per joined pair.
const std::vector<std::string>& node_schemas();
const std::vector<std::string>& unjoined_schemas();
const std::vector<std::string>& joined_schemas();
/// Number of ring parameters (t, u) a block schema takes.
int schema_arity(const std::string& tag);

/// How [a,b] expands. The presentation uses AbAinvBinv; the other order only
/// exists for the negative control in matrix verification.
enum class CommutatorConvention { AbAinvBinv, BaBinvAinv };

Word commutator(const Word& a, const Word& b, CommutatorConvention c);

/// Builds one relation of the given schema. Ring parameters are ring element
/// values in `r`. Throws DomainError for an unknown tag or missing parameter.
Relation instantiate(const std::string& tag, const RingSpec& r, const RelationParams& p,
                     CommutatorConvention conv = CommutatorConvention::AbAinvBinv);

/// s~_i(a) = X_i(a) S_i X_i(1/a) S_i^-1 X_i(a), for a unit a.
Word s_tilde(int i, const RingElement& a);
/// h~_i(a) = s~_i(a) s~_i(-1).
Word h_tilde(int i, const RingElement& a);

struct PresentationOptions {
  /// Also emit the asymmetric pair schemas with i and j swapped.
  bool ordered_pairs = false;
  /// Reject diagrams that are not hyperbolic. Tests turn this off to emit
  /// presentations for small diagrams.
  bool require_hyperbolic = true;
};

struct Presentation {
  Diagram diagram;
  RingSpec ring;
  bool kac_moody = false;
  int torus_node = 0;
  bool ordered_pairs = false;
  std::vector<Letter> generators;
  std::vector<Relation> relations;
  /// Relations equivalent to ones in `relations`, kept for reference and not
  /// counted (S_i^4 = 1 over Z).
  std::vector<Relation> equivalent_forms;
};

/// Over a finite ring: generators S_i, X_i(t) and every relation schema over
/// all t, u. Over Z: generators S_i, X_i = X_i(1) and the schemas at t = u = 1
/// (additivity is implicit in X_i(u) = X_i^u).
Presentation steinberg_presentation(const Diagram& d, const RingSpec& r,
                                    const PresentationOptions& opt = {});

/// Adds the torus relations at node i0: all unit pairs (a, b) over a finite
/// ring, the single relation h~(-1)^2 = 1 over Z.
Presentation kac_moody_presentation(const Diagram& d, const RingSpec& r, int i0 = 0,
                                    const PresentationOptions& opt = {});

/// Number of distinct node indices a relation mentions.
int relation_node_count(const Relation& rel);
/// Every relation mentions at most two nodes.
bool check_locality(const Presentation& p);

/// Count per schema tag.
std::map<std::string, std::size_t> schema_counts(const Presentation& p);

std::string format_letter(const Letter& l, const RingSpec& r);
std::string format_word(const Word& w, const RingSpec& r);
Letter parse_letter(const std::string& s, const RingSpec& r);

enum class PresentationFormat { Json, Text, Gap };
PresentationFormat parse_presentation_format(const std::string& s);

nlohmann::json to_json(const Presentation& p);
Presentation presentation_from_json(const nlohmann::json& j);
std::string serialize(const Presentation& p, PresentationFormat f);

nlohmann::json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const nlohmann::json& j);
RingSpec ring_from_json(const nlohmann::json& j);

}  // namespace kmx
