#include "kmx/ring.hpp"

#include "kmx/errors.hpp"

#include <fstream>
#include <regex>

namespace kmx {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

bool RingElement::operator==(const RingElement& o) const {
  return value == o.value && (ring == o.ring || (ring && o.ring && *ring == *o.ring));
}

RingSpec RingSpec::integers() { return RingSpec{}; }

RingSpec RingSpec::integers_mod(std::int64_t n) {
  if (n < 1) throw DomainError("Z/n requires n >= 1");
  if (n > (std::int64_t{1} << 31)) throw DomainError("Z/n modulus too large");
  RingSpec r;
  r.kind_ = Kind::IntegersMod;
  r.modulus_ = n;
  return r;
}

RingSpec RingSpec::prime_field(std::int64_t p) {
  if (!is_prime(p)) throw DomainError("F" + std::to_string(p) + ": " + std::to_string(p) + " is not prime");
  RingSpec r = integers_mod(p);
  r.kind_ = Kind::PrimeField;
  return r;
}

RingSpec RingSpec::table(std::string name, std::vector<std::string> elements,
                         std::vector<std::vector<int>> add, std::vector<std::vector<int>> mul,
                         int zero, int one) {
  const int n = static_cast<int>(elements.size());
  if (n < 1) throw DomainError("table ring needs at least one element");
  auto square = [n](const std::vector<std::vector<int>>& t) {
    if (static_cast<int>(t.size()) != n) return false;
    for (const auto& row : t) {
      if (static_cast<int>(row.size()) != n) return false;
      for (int v : row)
        if (v < 0 || v >= n) return false;
    }
    return true;
  };
  if (!square(add) || !square(mul)) throw DomainError("table ring: tables must be n x n with entries in [0,n)");
  if (zero < 0 || zero >= n || one < 0 || one >= n) throw DomainError("table ring: zero/one out of range");
  for (int a = 0; a < n; ++a) {
    if (add[zero][a] != a) throw DomainError("table ring: zero is not an additive identity");
    if (mul[one][a] != a) throw DomainError("table ring: one is not a multiplicative identity");
    for (int b = 0; b < n; ++b) {
      if (add[a][b] != add[b][a]) throw DomainError("table ring: addition is not commutative");
      if (mul[a][b] != mul[b][a]) throw DomainError("table ring: multiplication is not commutative");
      for (int c = 0; c < n; ++c) {
        if (add[add[a][b]][c] != add[a][add[b][c]]) throw DomainError("table ring: addition is not associative");
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          throw DomainError("table ring: multiplication is not associative");
        if (mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]])
          throw DomainError("table ring: distributivity fails");
      }
    }
  }
  RingSpec r;
  r.kind_ = Kind::Table;
  r.table_name_ = std::move(name);
  r.names_ = std::move(elements);
  r.add_ = std::move(add);
  r.mul_ = std::move(mul);
  r.zero_ = zero;
  r.one_ = one;
  r.neg_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (r.add_[a][b] == zero) r.neg_[a] = b;
  for (int a = 0; a < n; ++a)
    if (r.neg_[a] < 0) throw DomainError("table ring: missing additive inverse");
  return r;
}

RingSpec RingSpec::table_from_json(const nlohmann::json& j) {
  try {
    return table(j.value("name", std::string("table")), j.at("elements").get<std::vector<std::string>>(),
                 j.at("add").get<std::vector<std::vector<int>>>(),
                 j.at("mul").get<std::vector<std::vector<int>>>(), j.at("zero").get<int>(),
                 j.at("one").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("table ring JSON: ") + e.what());
  }
}

RingSpec RingSpec::parse(const std::string& spec) {
  static const std::regex zmod(R"(Z/(\d+))");
  static const std::regex field(R"(F(\d+))");
  std::smatch m;
  if (spec == "Z") return integers();
  if (std::regex_match(spec, m, zmod)) return integers_mod(std::stoll(m[1]));
  if (std::regex_match(spec, m, field)) return prime_field(std::stoll(m[1]));
  std::ifstream in(spec);
  if (!in) throw DomainError("unknown ring spec '" + spec + "' (expected Z, Z/n, Fp, or a JSON table file)");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("ring table '" + spec + "': " + e.what());
  }
  return table_from_json(j);
}

std::int64_t RingSpec::size() const {
  switch (kind_) {
    case Kind::Integers: throw DomainError("Z is infinite");
    case Kind::IntegersMod:
    case Kind::PrimeField: return modulus_;
    case Kind::Table: return static_cast<std::int64_t>(names_.size());
  }
  return 0;
}

std::string RingSpec::name() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::IntegersMod: return "Z/" + std::to_string(modulus_);
    case Kind::PrimeField: return "F" + std::to_string(modulus_);
    case Kind::Table: return table_name_;
  }
  return "?";
}

std::int64_t RingSpec::reduce(std::int64_t v) const {
  if (kind_ == Kind::Integers || kind_ == Kind::Table) return v;
  v %= modulus_;
  return v < 0 ? v + modulus_ : v;
}

void RingSpec::check(const RingElement& x) const {
  if (x.ring != this && !(x.ring && *x.ring == *this))
    throw DomainError("ring element belongs to a different ring");
}

RingElement RingSpec::zero() const { return {this, kind_ == Kind::Table ? zero_ : 0}; }

RingElement RingSpec::one() const {
  if (kind_ == Kind::Table) return {this, one_};
  return {this, reduce(1)};
}

RingElement RingSpec::from_int(std::int64_t n) const {
  if (kind_ != Kind::Table) return {this, reduce(n)};
  RingElement acc = zero();
  const RingElement unit = n >= 0 ? one() : neg(one());
  for (std::int64_t k = 0; k < (n >= 0 ? n : -n); ++k) acc = add(acc, unit);
  return acc;
}

std::vector<RingElement> RingSpec::elements() const {
  std::vector<RingElement> out;
  for (std::int64_t v = 0; v < size(); ++v) out.push_back({this, v});
  return out;
}

RingElement RingSpec::add(const RingElement& x, const RingElement& y) const {
  check(x);
  check(y);
  if (kind_ == Kind::Table) return {this, add_[x.value][y.value]};
  if (kind_ == Kind::Integers) {
    std::int64_t r;
    if (__builtin_add_overflow(x.value, y.value, &r)) throw DomainError("integer overflow in Z");
    return {this, r};
  }
  return {this, reduce(x.value + y.value)};
}

RingElement RingSpec::mul(const RingElement& x, const RingElement& y) const {
  check(x);
  check(y);
  if (kind_ == Kind::Table) return {this, mul_[x.value][y.value]};
  if (kind_ == Kind::Integers) {
    std::int64_t r;
    if (__builtin_mul_overflow(x.value, y.value, &r)) throw DomainError("integer overflow in Z");
    return {this, r};
  }
  return {this, reduce(x.value * y.value)};
}

RingElement RingSpec::neg(const RingElement& x) const {
  check(x);
  if (kind_ == Kind::Table) return {this, neg_[x.value]};
  return {this, reduce(-x.value)};
}

bool RingSpec::is_unit(const RingElement& a) const {
  check(a);
  if (kind_ == Kind::Integers) return a.value == 1 || a.value == -1;
  for (const auto& b : elements())
    if (mul(a, b) == one()) return true;
  return false;
}

RingElement RingSpec::inv(const RingElement& a) const {
  check(a);
  if (kind_ == Kind::Integers) {
    if (a.value == 1 || a.value == -1) return a;
    throw DomainError("inv: " + format(a) + " is not a unit of Z");
  }
  for (const auto& b : elements())
    if (mul(a, b) == one()) return b;
  throw DomainError("inv: " + format(a) + " is not a unit of " + name());
}

std::vector<RingElement> RingSpec::units() const {
  if (kind_ == Kind::Integers) return {{this, 1}, {this, -1}};
  std::vector<RingElement> out;
  for (const auto& a : elements())
    if (is_unit(a)) out.push_back(a);
  return out;
}

std::string RingSpec::format(const RingElement& x) const {
  check(x);
  if (kind_ == Kind::Table) return names_[x.value];
  return std::to_string(x.value);
}

RingElement RingSpec::parse_element(const std::string& s) const {
  if (kind_ == Kind::Table) {
    for (std::size_t k = 0; k < names_.size(); ++k)
      if (names_[k] == s) return {this, static_cast<std::int64_t>(k)};
    throw DomainError("'" + s + "' is not an element of " + name());
  }
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    if (kind_ != Kind::Integers && (v < 0 || v >= modulus_)) throw std::out_of_range(s);
    return {this, v};
  } catch (const std::exception&) {
    throw DomainError("'" + s + "' is not an element of " + name());
  }
}

nlohmann::json RingSpec::to_json() const {
  if (kind_ != Kind::Table) return name();
  return {{"name", table_name_}, {"elements", names_}, {"add", add_},
          {"mul", mul_},         {"zero", zero_},      {"one", one_}};
}

bool RingSpec::operator==(const RingSpec& o) const {
  return kind_ == o.kind_ && modulus_ == o.modulus_ && table_name_ == o.table_name_ && names_ == o.names_ &&
         add_ == o.add_ && mul_ == o.mul_ && zero_ == o.zero_ && one_ == o.one_;
}

RingElement operator+(const RingElement& x, const RingElement& y) { return x.ring->add(x, y); }
RingElement operator*(const RingElement& x, const RingElement& y) { return x.ring->mul(x, y); }
RingElement operator-(const RingElement& x) { return x.ring->neg(x); }
RingElement operator-(const RingElement& x, const RingElement& y) { return x.ring->sub(x, y); }

}  // namespace kmx
