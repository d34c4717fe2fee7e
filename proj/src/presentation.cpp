#include "kmx/presentation.hpp"

#include "kmx/errors.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

namespace kmx {

namespace {

Letter S(int i, bool inv = false) { return {Letter::Kind::S, i, 0, inv}; }
Letter X(int i, const RingElement& t, bool inv = false) { return {Letter::Kind::X, i, t.value, inv}; }

Word cat(std::initializer_list<Word> parts) {
  Word w;
  for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
  return w;
}

RingElement param(const RingSpec& r, const std::optional<std::int64_t>& v, const char* what) {
  if (!v) throw DomainError(std::string("relation parameter '") + what + "' missing");
  return {&r, *v};
}

int other(const RelationParams& p) {
  if (!p.j) throw DomainError("relation parameter 'j' missing");
  return *p.j;
}

}  // namespace

const std::vector<std::string>& node_schemas() {
  static const std::vector<std::string> v{schema::kXAdditive, schema::kS2XCommute, schema::kSExpression};
  return v;
}
const std::vector<std::string>& unjoined_schemas() {
  static const std::vector<std::string> v{schema::kSSCommute, schema::kSXCommute, schema::kXXCommute};
  return v;
}
const std::vector<std::string>& joined_schemas() {
  static const std::vector<std::string> v{schema::kBraid,      schema::kS2SInverse,   schema::kXSSTwist,
                                          schema::kS2XInverse, schema::kXConjCommute, schema::kXXCommutator};
  return v;
}

int schema_arity(const std::string& tag) {
  if (tag == schema::kXAdditive || tag == schema::kXXCommute || tag == schema::kXConjCommute ||
      tag == schema::kXXCommutator)
    return 2;
  if (tag == schema::kS2XCommute || tag == schema::kSXCommute || tag == schema::kXSSTwist ||
      tag == schema::kS2XInverse)
    return 1;
  return 0;
}

namespace {

/// All instances of one schema for the ordered pair (i, j) (j < 0 for the
/// node block).
void emit_schema(const std::string& tag, int i, int j, const RingSpec& r, std::vector<Relation>& out) {
  RelationParams p;
  p.i = i;
  if (j >= 0) p.j = j;
  const int arity = schema_arity(tag);
  if (!r.is_finite()) {
    if (tag == schema::kXAdditive) return;  // X_i(u) = X_i^u
    if (arity >= 1) p.t = 1;
    if (arity >= 2) p.u = 1;
    out.push_back(instantiate(tag, r, p));
    return;
  }
  const auto elems = r.elements();
  if (arity == 0) {
    out.push_back(instantiate(tag, r, p));
  } else if (arity == 1) {
    for (const auto& t : elems) {
      p.t = t.value;
      out.push_back(instantiate(tag, r, p));
    }
  } else {
    for (const auto& t : elems)
      for (const auto& u : elems) {
        p.t = t.value;
        p.u = u.value;
        out.push_back(instantiate(tag, r, p));
      }
  }
}

void check_diagram(const Diagram& d, const PresentationOptions& opt) {
  if (opt.require_hyperbolic && !is_hyperbolic(d))
    throw DomainError("diagram " + d.label() + " is not hyperbolic");
}

}  // namespace

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.inverse = !l.inverse;
  return out;
}

Word commutator(const Word& a, const Word& b) { return cat({a, b, inverse(a), inverse(b)}); }

Word commutator(const Word& a, const Word& b, CommutatorConvention c) {
  return c == CommutatorConvention::AbAinvBinv ? commutator(a, b) : cat({b, a, inverse(b), inverse(a)});
}

bool schema_is_asymmetric(const std::string& tag) {
  return tag == schema::kSXCommute || tag == schema::kS2SInverse || tag == schema::kXSSTwist ||
         tag == schema::kS2XInverse || tag == schema::kXConjCommute || tag == schema::kXXCommutator;
}

Word s_tilde(int i, const RingElement& a) {
  const RingSpec& r = *a.ring;
  const RingElement ainv = r.inv(a);
  return {X(i, a), S(i), X(i, ainv), S(i, true), X(i, a)};
}

Word h_tilde(int i, const RingElement& a) {
  const RingSpec& r = *a.ring;
  return cat({s_tilde(i, a), s_tilde(i, r.neg(r.one()))});
}

Relation instantiate(const std::string& tag, const RingSpec& r, const RelationParams& p,
                     CommutatorConvention conv) {
  auto commutator = [conv](const Word& a, const Word& b) { return kmx::commutator(a, b, conv); };
  Relation rel;
  rel.schema = tag;
  rel.params = p;
  const int i = p.i;
  const RingElement one = r.one();
  if (tag == schema::kXAdditive) {
    const auto t = param(r, p.t, "t"), u = param(r, p.u, "u");
    rel.left = {X(i, t), X(i, u)};
    rel.right = {X(i, t + u)};
  } else if (tag == schema::kS2XCommute) {
    rel.left = commutator({S(i), S(i)}, {X(i, param(r, p.t, "t"))});
  } else if (tag == schema::kSExpression) {
    rel.left = {S(i)};
    rel.right = {X(i, one), S(i), X(i, one), S(i, true), X(i, one)};
  } else if (tag == schema::kSSCommute) {
    const int j = other(p);
    rel.left = {S(i), S(j)};
    rel.right = {S(j), S(i)};
  } else if (tag == schema::kSXCommute) {
    rel.left = commutator({S(i)}, {X(other(p), param(r, p.t, "t"))});
  } else if (tag == schema::kXXCommute) {
    rel.left = commutator({X(i, param(r, p.t, "t"))}, {X(other(p), param(r, p.u, "u"))});
  } else if (tag == schema::kBraid) {
    const int j = other(p);
    rel.left = {S(i), S(j), S(i)};
    rel.right = {S(j), S(i), S(j)};
  } else if (tag == schema::kS2SInverse) {
    const int j = other(p);
    rel.left = {S(i), S(i), S(j), S(i, true), S(i, true)};
    rel.right = {S(j, true)};
  } else if (tag == schema::kXSSTwist) {
    const int j = other(p);
    const auto t = param(r, p.t, "t");
    rel.left = {X(i, t), S(j), S(i)};
    rel.right = {S(j), S(i), X(j, t)};
  } else if (tag == schema::kS2XInverse) {
    const int j = other(p);
    const auto t = param(r, p.t, "t");
    rel.left = {S(i), S(i), X(j, t), S(i, true), S(i, true)};
    rel.right = {X(j, t, true)};
  } else if (tag == schema::kXConjCommute) {
    const int j = other(p);
    rel.left = commutator({X(i, param(r, p.t, "t"))}, {S(i), X(j, param(r, p.u, "u")), S(i, true)});
  } else if (tag == schema::kXXCommutator) {
    const int j = other(p);
    const auto t = param(r, p.t, "t"), u = param(r, p.u, "u");
    rel.left = commutator({X(i, t)}, {X(j, u)});
    rel.right = {S(i), X(j, t * u), S(i, true)};
  } else if (tag == schema::kTorus) {
    const auto a = param(r, p.a, "a"), b = param(r, p.b, "b");
    rel.left = cat({h_tilde(i, a), h_tilde(i, b)});
    rel.right = h_tilde(i, a * b);
  } else if (tag == schema::kTorusSquare) {
    const auto m = r.neg(one);
    rel.left = cat({h_tilde(i, m), h_tilde(i, m)});
  } else if (tag == schema::kS4) {
    rel.left = {S(i), S(i), S(i), S(i)};
  } else {
    throw DomainError("unknown relation schema '" + tag + "'");
  }
  return rel;
}

Presentation steinberg_presentation(const Diagram& d, const RingSpec& r, const PresentationOptions& opt) {
  check_diagram(d, opt);
  Presentation p{d, r, false, 0, opt.ordered_pairs, {}, {}, {}};
  const int n = d.rank();
  for (int i = 0; i < n; ++i) p.generators.push_back(S(i));
  for (int i = 0; i < n; ++i) {
    if (r.is_finite())
      for (const auto& t : r.elements()) p.generators.push_back(X(i, t));
    else
      p.generators.push_back(X(i, r.one()));
  }

  // One block per node, then per unordered pair; filled in parallel and
  // concatenated in this fixed order.
  struct Block {
    int i, j;
  };
  std::vector<Block> blocks;
  for (int i = 0; i < n; ++i) blocks.push_back({i, -1});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!d.joined(i, j)) blocks.push_back({i, j});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (d.joined(i, j)) blocks.push_back({i, j});

  std::vector<std::vector<Relation>> filled(blocks.size());
  std::vector<std::exception_ptr> errors(blocks.size());
  const auto count = static_cast<std::int64_t>(blocks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < count; ++k) {
    try {
      const auto [i, j] = blocks[k];
      auto& out = filled[k];
      if (j < 0) {
        for (const auto& tag : node_schemas()) emit_schema(tag, i, -1, r, out);
        continue;
      }
      const auto& tags = d.joined(i, j) ? joined_schemas() : unjoined_schemas();
      for (const auto& tag : tags) emit_schema(tag, i, j, r, out);
      if (opt.ordered_pairs)
        for (const auto& tag : tags)
          if (schema_is_asymmetric(tag)) emit_schema(tag, j, i, r, out);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& f : filled) p.relations.insert(p.relations.end(), f.begin(), f.end());
  return p;
}

Presentation kac_moody_presentation(const Diagram& d, const RingSpec& r, int i0,
                                    const PresentationOptions& opt) {
  if (i0 < 0 || i0 >= d.rank())
    throw DomainError("torus node " + std::to_string(i0) + " out of range");
  Presentation p = steinberg_presentation(d, r, opt);
  p.kac_moody = true;
  p.torus_node = i0;
  RelationParams params;
  params.i = i0;
  if (!r.is_finite()) {
    p.relations.push_back(instantiate(schema::kTorusSquare, r, params));
    p.equivalent_forms.push_back(instantiate(schema::kS4, r, params));
    return p;
  }
  const auto units = r.units();
  for (const auto& a : units)
    for (const auto& b : units) {
      params.a = a.value;
      params.b = b.value;
      p.relations.push_back(instantiate(schema::kTorus, p.ring, params));
    }
  return p;
}

int relation_node_count(const Relation& rel) {
  std::set<int> nodes;
  for (const auto& l : rel.left) nodes.insert(l.node);
  for (const auto& l : rel.right) nodes.insert(l.node);
  return static_cast<int>(nodes.size());
}

bool check_locality(const Presentation& p) {
  for (const auto* list : {&p.relations, &p.equivalent_forms})
    for (const auto& rel : *list)
      if (relation_node_count(rel) > 2) return false;
  return true;
}

std::map<std::string, std::size_t> schema_counts(const Presentation& p) {
  std::map<std::string, std::size_t> m;
  for (const auto& rel : p.relations) ++m[rel.schema];
  return m;
}

// --- formatting -------------------------------------------------------------

std::string format_letter(const Letter& l, const RingSpec& r) {
  std::string s = l.kind == Letter::Kind::S ? "S" : "X";
  s += std::to_string(l.node);
  if (l.kind == Letter::Kind::X) s += "(" + r.format({&r, l.param}) + ")";
  if (l.inverse) s += "^-1";
  return s;
}

std::string format_word(const Word& w, const RingSpec& r) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ' ';
    s += format_letter(w[k], r);
  }
  return s;
}

Letter parse_letter(const std::string& s, const RingSpec& r) {
  static const std::regex re(R"(^(S|X)(\d+)(?:\((.+)\))?(\^-1)?$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw DomainError("malformed letter '" + s + "'");
  Letter l;
  l.kind = m[1] == "S" ? Letter::Kind::S : Letter::Kind::X;
  l.node = std::stoi(m[2]);
  if (l.kind == Letter::Kind::X) {
    if (!m[3].matched) throw DomainError("letter '" + s + "' lacks a parameter");
    l.param = r.parse_element(m[3]).value;
  } else if (m[3].matched) {
    throw DomainError("letter '" + s + "' has an unexpected parameter");
  }
  l.inverse = m[4].matched;
  return l;
}

PresentationFormat parse_presentation_format(const std::string& s) {
  if (s == "json") return PresentationFormat::Json;
  if (s == "text") return PresentationFormat::Text;
  if (s == "gap") return PresentationFormat::Gap;
  throw DomainError("unknown format '" + s + "' (json, text, gap)");
}

nlohmann::json diagram_to_json(const Diagram& d) {
  nlohmann::json j;
  j["name"] = d.name();
  if (!d.alias().empty()) j["alias"] = d.alias();
  j["rank"] = d.rank();
  j["edges"] = nlohmann::json::array();
  for (auto [a, b] : d.edges()) j["edges"].push_back({a, b});
  return j;
}

Diagram diagram_from_json(const nlohmann::json& j) {
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return Diagram(j.at("rank").get<int>(), std::move(edges), j.value("name", std::string()),
                   j.value("alias", std::string()));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("diagram JSON: ") + e.what());
  }
}

RingSpec ring_from_json(const nlohmann::json& j) {
  if (j.is_string()) return RingSpec::parse(j.get<std::string>());
  return RingSpec::table_from_json(j);
}

namespace {

nlohmann::json params_to_json(const RelationParams& p, const RingSpec& r) {
  nlohmann::json j;
  j["i"] = p.i;
  if (p.j) j["j"] = *p.j;
  auto put = [&](const char* key, const std::optional<std::int64_t>& v) {
    if (v) j[key] = r.format({&r, *v});
  };
  put("t", p.t);
  put("u", p.u);
  put("a", p.a);
  put("b", p.b);
  return j;
}

RelationParams params_from_json(const nlohmann::json& j, const RingSpec& r) {
  RelationParams p;
  p.i = j.at("i").get<int>();
  if (j.contains("j")) p.j = j.at("j").get<int>();
  auto get = [&](const char* key, std::optional<std::int64_t>& v) {
    if (j.contains(key)) v = r.parse_element(j.at(key).get<std::string>()).value;
  };
  get("t", p.t);
  get("u", p.u);
  get("a", p.a);
  get("b", p.b);
  return p;
}

nlohmann::json word_to_json(const Word& w, const RingSpec& r) {
  auto a = nlohmann::json::array();
  for (const auto& l : w) a.push_back(format_letter(l, r));
  return a;
}

Word word_from_json(const nlohmann::json& j, const RingSpec& r) {
  Word w;
  for (const auto& s : j) w.push_back(parse_letter(s.get<std::string>(), r));
  return w;
}

nlohmann::json relation_to_json(const Relation& rel, const RingSpec& r) {
  return {{"schema", rel.schema},
          {"params", params_to_json(rel.params, r)},
          {"left", word_to_json(rel.left, r)},
          {"right", word_to_json(rel.right, r)}};
}

Relation relation_from_json(const nlohmann::json& j, const RingSpec& r) {
  Relation rel;
  rel.schema = j.at("schema").get<std::string>();
  rel.params = params_from_json(j.at("params"), r);
  rel.left = word_from_json(j.at("left"), r);
  rel.right = word_from_json(j.at("right"), r);
  return rel;
}

std::string gap_generator(const Letter& l, const RingSpec& r) {
  std::string s = (l.kind == Letter::Kind::S ? "S" : "X") + std::to_string(l.node);
  if (l.kind == Letter::Kind::X && r.is_finite()) s += "_" + std::to_string(l.param);
  return s;
}

std::string gap_relator(const Relation& rel, const RingSpec& r) {
  const Word w = cat({rel.left, inverse(rel.right)});
  if (w.empty()) return "One(F)";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += '*';
    s += gap_generator(w[k], r);
    if (w[k].inverse) s += "^-1";
  }
  return s;
}

std::string title(const Presentation& p) {
  return std::string(p.kac_moody ? "G" : "St") + "(" + p.diagram.label() + ", " + p.ring.name() + ")";
}

}  // namespace

nlohmann::json to_json(const Presentation& p) {
  nlohmann::json j;
  j["diagram"] = diagram_to_json(p.diagram);
  j["ring"] = p.ring.to_json();
  j["convention"] = "aba^-1b^-1";
  j["kind"] = p.kac_moody ? "kac_moody" : "steinberg";
  if (p.kac_moody) j["torus_node"] = p.torus_node;
  j["ordered_pairs"] = p.ordered_pairs;
  if (!p.ring.is_finite()) j["integer_generators"] = "X_i(u) = X_i^u";
  j["generators"] = word_to_json(p.generators, p.ring);
  j["relations"] = nlohmann::json::array();
  for (const auto& rel : p.relations) j["relations"].push_back(relation_to_json(rel, p.ring));
  j["equivalent_forms"] = nlohmann::json::array();
  for (const auto& rel : p.equivalent_forms) j["equivalent_forms"].push_back(relation_to_json(rel, p.ring));
  return j;
}

Presentation presentation_from_json(const nlohmann::json& j) {
  try {
    if (j.at("convention").get<std::string>() != "aba^-1b^-1")
      throw DomainError("unsupported commutator convention");
    Presentation p{diagram_from_json(j.at("diagram")), ring_from_json(j.at("ring")), false, 0, false, {}, {}, {}};
    p.kac_moody = j.at("kind").get<std::string>() == "kac_moody";
    if (p.kac_moody) p.torus_node = j.at("torus_node").get<int>();
    p.ordered_pairs = j.at("ordered_pairs").get<bool>();
    p.generators = word_from_json(j.at("generators"), p.ring);
    for (const auto& r : j.at("relations")) p.relations.push_back(relation_from_json(r, p.ring));
    for (const auto& r : j.at("equivalent_forms")) p.equivalent_forms.push_back(relation_from_json(r, p.ring));
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("presentation JSON: ") + e.what());
  }
}

std::string serialize(const Presentation& p, PresentationFormat f) {
  std::ostringstream os;
  switch (f) {
    case PresentationFormat::Json:
      os << to_json(p).dump(2) << '\n';
      break;
    case PresentationFormat::Text: {
      os << "presentation " << title(p) << '\n';
      os << "convention [a,b] = a b a^-1 b^-1\n";
      if (!p.ring.is_finite()) os << "generators X_i stand for X_i(1); X_i(u) = X_i^u\n";
      os << "generators " << p.generators.size() << '\n';
      os << "relations " << p.relations.size() << '\n';
      for (const auto& [tag, c] : schema_counts(p)) os << "  " << tag << " " << c << '\n';
      for (const auto& rel : p.relations)
        os << format_word(rel.left, p.ring) << " = " << format_word(rel.right, p.ring) << '\n';
      for (const auto& rel : p.equivalent_forms)
        os << "equivalent: " << format_word(rel.left, p.ring) << " = " << format_word(rel.right, p.ring)
           << '\n';
      break;
    }
    case PresentationFormat::Gap: {
      os << "# " << title(p) << '\n';
      os << "# convention: [a,b] = a*b*a^-1*b^-1\n";
      os << "# relators: " << p.relations.size() << '\n';
      os << "F := FreeGroup(";
      for (std::size_t k = 0; k < p.generators.size(); ++k)
        os << (k ? ", " : "") << '"' << gap_generator(p.generators[k], p.ring) << '"';
      os << ");;\n";
      os << "AssignGeneratorVariables(F);;\n";
      os << "rels := [\n";
      for (std::size_t k = 0; k < p.relations.size(); ++k)
        os << "  " << gap_relator(p.relations[k], p.ring) << (k + 1 < p.relations.size() ? ",\n" : "\n");
      os << "];;\n";
      os << "G := F / rels;;\n";
      break;
    }
  }
  return os.str();
}

}  // namespace kmx
