#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kmx {

class RingSpec;

/// An element of a coefficient ring. Holds a non-owning pointer to its ring,
/// which must outlive it.
struct RingElement {
  const RingSpec* ring = nullptr;
  std::int64_t value = 0;  // integer, residue, or table index

  bool operator==(const RingElement& o) const;
};

/// Exact model of Z, Z/n, F_p, or a finite commutative ring given by tables.
class RingSpec {
 public:
  enum class Kind { Integers, IntegersMod, PrimeField, Table };

  static RingSpec integers();
  /// n >= 1; Z/1 is the zero ring.
  static RingSpec integers_mod(std::int64_t n);
  /// Throws DomainError unless p is prime.
  static RingSpec prime_field(std::int64_t p);
  /// Tables are validated for the commutative-ring-with-1 axioms.
  static RingSpec table(std::string name, std::vector<std::string> elements,
                        std::vector<std::vector<int>> add, std::vector<std::vector<int>> mul,
                        int zero, int one);
  static RingSpec table_from_json(const nlohmann::json& j);

  /// "Z", "Z/7", "F5", or a path to a JSON table file.
  static RingSpec parse(const std::string& spec);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ != Kind::Integers; }
  /// Number of elements (finite rings only).
  std::int64_t size() const;
  /// Modulus for Z/n and F_p.
  std::int64_t modulus() const { return modulus_; }

  /// Canonical spec string: "Z", "Z/7", "F5", or the table name.
  std::string name() const;

  RingElement zero() const;
  RingElement one() const;
  /// Integer image: n * 1.
  RingElement from_int(std::int64_t n) const;
  /// All elements in index order (finite rings only).
  std::vector<RingElement> elements() const;

  RingElement add(const RingElement& x, const RingElement& y) const;
  RingElement mul(const RingElement& x, const RingElement& y) const;
  RingElement neg(const RingElement& x) const;
  RingElement sub(const RingElement& x, const RingElement& y) const { return add(x, neg(y)); }

  bool is_unit(const RingElement& a) const;
  /// Throws DomainError for a non-unit.
  RingElement inv(const RingElement& a) const;
  /// Units: brute-force scan for finite rings, {1, -1} for Z.
  std::vector<RingElement> units() const;

  std::string format(const RingElement& x) const;
  /// Parses the display form produced by format().
  RingElement parse_element(const std::string& s) const;

  nlohmann::json to_json() const;

  bool operator==(const RingSpec& o) const;

 private:
  RingSpec() = default;
  void check(const RingElement& x) const;
  std::int64_t reduce(std::int64_t v) const;

  Kind kind_ = Kind::Integers;
  std::int64_t modulus_ = 0;
  std::string table_name_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> add_, mul_;
  int zero_ = 0, one_ = 0;
  std::vector<int> neg_;
};

RingElement operator+(const RingElement& x, const RingElement& y);
RingElement operator*(const RingElement& x, const RingElement& y);
RingElement operator-(const RingElement& x);
RingElement operator-(const RingElement& x, const RingElement& y);

bool is_prime(std::int64_t p);

}  // namespace kmx
