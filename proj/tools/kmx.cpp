// kmx: command-line front end.
//
// Exit codes: 0 success, 1 domain error (bad input), 2 invariant violation
// (a computed fact contradicts an expected theorem), 64 usage error.

#include "kmx/diagram.hpp"
#include "kmx/errors.hpp"
#include "kmx/geometry.hpp"
#include "kmx/lattice.hpp"
#include "kmx/matrixcheck.hpp"
#include "kmx/pairs.hpp"
#include "kmx/parallel.hpp"
#include "kmx/presentation.hpp"
#include "kmx/rational.hpp"
#include "kmx/ring.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;
using namespace kmx;

constexpr int kExitDomain = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitUsage = 64;

struct Common {
  std::string diagram;
  std::string edges;
  int rank = 0;
  bool json = false;
  std::string out;
};

void add_diagram_flags(CLI::App* app, Common& c) {
  app->add_option("--diagram", c.diagram, "catalog name or alias (e.g. E10, rank4-1)");
  app->add_option("--edges", c.edges, "inline edge list, e.g. 0-1,1-2,2-3 (with --rank)");
  app->add_option("--rank", c.rank, "rank for --edges");
}

Diagram resolve_diagram(const Common& c) {
  if (!c.diagram.empty() && !c.edges.empty()) throw DomainError("give either --diagram or --edges, not both");
  if (!c.diagram.empty()) return catalog_lookup(c.diagram);
  if (c.rank <= 0) throw DomainError("--edges needs --rank");
  std::vector<Edge> edges;
  std::stringstream ss(c.edges);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw DomainError("edge '" + item + "' is not of the form a-b");
    try {
      edges.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
    } catch (const std::exception&) {
      throw DomainError("edge '" + item + "' is not of the form a-b");
    }
  }
  return Diagram(c.rank, std::move(edges), "user");
}

json rational_json(const Rational& q) { return to_pq_string(q); }

json facet_json(const FacetReport& r) {
  json j;
  j["diagram"] = r.diagram;
  j["global_maximum"] = rational_json(r.global_maximum);
  j["equality_count"] = r.equality_count;
  j["entries"] = json::array();
  for (const auto& e : r.entries)
    j["entries"].push_back({{"facet", e.facet},
                            {"neighbor", e.neighbor},
                            {"cosh2", rational_json(e.cosh2)},
                            {"attains_bound", e.attains_bound}});
  j["facet_maximum"] = json::array();
  for (const auto& m : r.facet_maximum) j["facet_maximum"].push_back(rational_json(m));
  return j;
}

json diagram_summary(const Diagram& d) {
  json j = diagram_to_json(d);
  const Inertia s = signature(d);
  j["type"] = to_string(classify(d));
  j["hyperbolic"] = is_hyperbolic(d);
  j["signature"] = {{"pos", s.pos}, {"neg", s.neg}, {"null", s.null}};
  j["canonical_form"] = canonical_form(d);
  return j;
}

json verdict_json(const PrenilpotencyVerdict& v) {
  json j;
  j["verdict"] = to_string(v.verdict);
  j["method"] = to_string(v.method);
  if (v.positive_word) j["positive_word"] = *v.positive_word;
  if (v.negative_word) j["negative_word"] = *v.negative_word;
  if (v.unbounded_family) j["unbounded_family"] = true;
  if (v.method == VerdictMethod::WeylSearch) j["states_explored"] = v.states_explored;
  return j;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DomainError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();
  CLI::App app{"Simply laced hyperbolic Kac-Moody toolkit"};
  app.require_subcommand(1);
  Common c;

  auto* catalog_cmd = app.add_subcommand("catalog", "list the 18 catalog diagrams");
  auto* classify_cmd = app.add_subcommand("classify", "finite / affine / indefinite, hyperbolicity, signature");
  auto* enumerate_cmd = app.add_subcommand("enumerate", "all hyperbolic diagrams of a rank (2..7)");
  auto* roots_cmd = app.add_subcommand("roots", "real roots up to a height");
  auto* facet_cmd = app.add_subcommand("facet-check", "cosh^2 distances from facet points to codim-2 faces");
  auto* pren_cmd = app.add_subcommand("prenilpotent", "prenilpotency of a pair of real roots");
  auto* reduce_cmd = app.add_subcommand("reduce", "reduction certificate for a prenilpotent pair");
  auto* emit_cmd = app.add_subcommand("emit", "emit the Steinberg / Kac-Moody presentation");
  auto* verify_cmd = app.add_subcommand("verify-matrix", "check every relation in SL2 / SL3 / SL2xSL2 models");
  auto* pq_cmd = app.add_subcommand("pq-formula", "closed-form vs direct cosh^2 in the rank-3 model");

  for (auto* s : {catalog_cmd, classify_cmd, enumerate_cmd, roots_cmd, facet_cmd, pren_cmd, reduce_cmd, emit_cmd,
                  verify_cmd, pq_cmd}) {
    s->add_flag("--json", c.json, "JSON output (errors too)");
    s->add_option("--out", c.out, "write output to FILE");
  }
  for (auto* s : {classify_cmd, roots_cmd, facet_cmd, pren_cmd, reduce_cmd, emit_cmd, verify_cmd})
    add_diagram_flags(s, c);
  enumerate_cmd->add_option("--rank", c.rank, "rank")->required();

  int height = 4;
  roots_cmd->add_option("--height", height, "maximum height");

  bool all = false;
  facet_cmd->add_flag("--all", all, "every catalog diagram");

  std::string alpha_s, beta_s;
  int bound = 16;
  for (auto* s : {pren_cmd, reduce_cmd}) {
    s->add_option("--alpha", alpha_s, "root coordinates, e.g. 1,0,0")->required();
    s->add_option("--beta", beta_s, "root coordinates")->required();
  }
  pren_cmd->add_option("--bound", bound, "Weyl word length bound for the search oracle");
  std::string format = "json";
  reduce_cmd->add_option("--format", format, "json or text");

  std::string ring_s = "Z";
  int node = 0;
  bool kac_moody = false, ordered_pairs = false;
  emit_cmd->add_option("--ring", ring_s, "Z, Z/n, Fp or a ring table JSON file");
  emit_cmd->add_option("--node", node, "torus node i0");
  emit_cmd->add_flag("--kac-moody", kac_moody, "add the torus relations");
  emit_cmd->add_flag("--ordered-pairs", ordered_pairs, "also emit asymmetric pair schemas with i, j swapped");
  emit_cmd->add_option("--format", format, "json, text or gap");

  int window = 3;
  bool flip = false;
  verify_cmd->add_option("--ring", ring_s, "Z, Z/n, Fp or a ring table JSON file");
  verify_cmd->add_option("--bound", window, "parameter window [-B, B] over Z");
  verify_cmd->add_flag("--flip-convention", flip, "use [a,b] = b a b^-1 a^-1 (negative control)");

  int pk = 3, pm = 0;
  pq_cmd->add_option("--k", pk, "k >= 3");
  pq_cmd->add_option("--m", pm, "m <= 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Output out(c.out);
    std::ostream& os = out.os();
    int code = 0;

    if (*catalog_cmd) {
      json j = json::array();
      for (const auto& d : catalog()) j.push_back(diagram_summary(d));
      if (c.json) {
        os << j.dump(2) << '\n';
      } else {
        for (const auto& d : catalog()) {
          os << d.label() << "  rank " << d.rank() << "  edges";
          for (auto [a, b] : d.edges()) os << ' ' << a << '-' << b;
          os << '\n';
        }
      }
    } else if (*classify_cmd) {
      const Diagram d = resolve_diagram(c);
      json j = diagram_summary(d);
      j["leading_principal_minors"] = leading_principal_minors(d);
      if (c.json) {
        os << j.dump(2) << '\n';
      } else {
        os << d.label() << ": " << j["type"].get<std::string>() << (is_hyperbolic(d) ? ", hyperbolic" : "")
           << ", signature (" << j["signature"]["pos"] << "," << j["signature"]["neg"] << ","
           << j["signature"]["null"] << ")\n";
      }
    } else if (*enumerate_cmd) {
      const auto found = enumerate_hyperbolic(c.rank);
      json j = json::array();
      for (const auto& d : found) {
        json e = diagram_summary(d);
        for (const auto& k : catalog())
          if (k.rank() == d.rank() && canonical_form(k) == canonical_form(d)) e["catalog"] = k.label();
        j.push_back(e);
      }
      if (c.json) {
        os << j.dump(2) << '\n';
      } else {
        os << found.size() << " hyperbolic diagrams of rank " << c.rank << '\n';
        for (const auto& e : j)
          os << "  " << e["canonical_form"].get<std::string>() << "  " << e.value("catalog", std::string("?"))
             << '\n';
      }
    } else if (*roots_cmd) {
      const Diagram d = resolve_diagram(c);
      const auto roots = real_roots_up_to_height(d, height);
      if (c.json) {
        json j;
        j["diagram"] = d.label();
        j["height"] = height;
        j["count"] = roots.size();
        j["roots"] = json::array();
        for (const auto& r : roots) j["roots"].push_back(r.coords);
        os << j.dump(2) << '\n';
      } else {
        os << roots.size() << " real roots of height <= " << height << '\n';
        for (const auto& r : roots) os << "  " << to_string(r) << '\n';
      }
    } else if (*facet_cmd) {
      std::vector<FacetReport> reports;
      if (all)
        reports = facet_check_catalog();
      else
        reports.push_back(facet_check(resolve_diagram(c)));
      if (c.json) {
        json j = json::array();
        for (const auto& r : reports) j.push_back(facet_json(r));
        os << j.dump(2) << '\n';
      } else {
        for (const auto& r : reports)
          os << r.diagram << "  max cosh^2 = " << to_pq_string(r.global_maximum) << "  equality cases "
             << r.equality_count << '\n';
      }
    } else if (*pren_cmd) {
      const Diagram d = resolve_diagram(c);
      const LatticeVector a = parse_lattice_vector(alpha_s), b = parse_lattice_vector(beta_s);
      const bool crit = is_prenilpotent(a, b, d);
      const auto weyl = oracle_weyl(a, b, d, bound);
      const auto span = oracle_span(a, b, 3, d);
      json j;
      j["alpha"] = a.coords;
      j["beta"] = b.coords;
      j["inner"] = inner(a, b, d);
      j["prenilpotent"] = crit;
      j["classically_prenilpotent"] = is_classically_prenilpotent(a, b, d);
      j["weyl_oracle"] = verdict_json(weyl);
      j["span_oracle"] = verdict_json(span);
      if (crit && a != b) {
        const auto f = commutator_form(a, b, d);
        j["commutator"] = {{"kind", f.kind == CommutatorKind::SingleRoot ? "single_root" : "trivial"},
                           {"rule", f.coefficient_rule}};
        if (f.sum_root) j["commutator"]["sum_root"] = f.sum_root->coords;
      }
      if (c.json) {
        os << j.dump(2) << '\n';
      } else {
        os << "alpha.beta = " << j["inner"] << "  prenilpotent: " << (crit ? "yes" : "no")
           << "  classically: " << (j["classically_prenilpotent"].get<bool>() ? "yes" : "no") << '\n';
        os << "weyl search: " << to_string(weyl.verdict) << "  span scan: " << to_string(span.verdict) << '\n';
      }
    } else if (*reduce_cmd) {
      const RootLattice lat(resolve_diagram(c));
      const LatticeVector a = parse_lattice_vector(alpha_s), b = parse_lattice_vector(beta_s);
      const auto cert = reduce_to_certificate(a, b, lat);
      const auto check = verify_certificate(cert, lat.diagram());
      if (!check.ok) throw InvariantViolation("certificate rejected: " + check.diagnosis);
      if (c.json || format == "json") {
        json j = to_json(cert);
        j["verified"] = true;
        os << j.dump(2) << '\n';
      } else if (format == "text") {
        os << render_tree(cert) << "verified, depth " << cert.depth() << ", leaves " << cert.leaf_count() << '\n';
      } else {
        throw DomainError("unknown format '" + format + "' (json, text)");
      }
    } else if (*emit_cmd) {
      const Diagram d = resolve_diagram(c);
      const RingSpec ring = RingSpec::parse(ring_s);
      PresentationOptions po;
      po.ordered_pairs = ordered_pairs;
      const Presentation p = kac_moody ? kac_moody_presentation(d, ring, node, po) : steinberg_presentation(d, ring, po);
      if (!check_locality(p)) throw InvariantViolation("emitted relation mentions more than two nodes");
      os << serialize(p, c.json ? PresentationFormat::Json : parse_presentation_format(format));
    } else if (*verify_cmd) {
      const Diagram d = resolve_diagram(c);
      const RingSpec ring = RingSpec::parse(ring_s);
      CheckOptions opt;
      opt.window = window;
      if (flip) opt.convention = CommutatorConvention::BaBinvAinv;
      const auto rep = verify_all(d, ring, opt);
      const auto h = h_identities_check(ring);
      if (c.json) {
        json j = rep.to_json();
        j["h_identities"] = h.to_json();
        os << j.dump(2) << '\n';
      } else {
        os << rep.diagram << " over " << rep.ring << ": " << rep.instances << " instances, " << rep.failures
           << " failures" << (rep.assignments_found ? "" : " (no sign assignment)") << '\n';
        for (const auto& s : rep.schemas) os << "  " << s.schema << " " << s.passed << "/" << s.instances << '\n';
        for (const auto& ch : h.checks) os << "  " << ch.name << " " << ch.passed << "/" << ch.instances << '\n';
      }
      if (!rep.ok() || !h.ok()) code = kExitInvariant;
    } else if (*pq_cmd) {
      const Rational closed = pq_cosh2(pk, pm), direct = pq_cosh2_by_projection(pk, pm);
      if (c.json) {
        os << json{{"k", pk},
                   {"m", pm},
                   {"closed_form", to_pq_string(closed)},
                   {"direct", to_pq_string(direct)},
                   {"agree", closed == direct},
                   {"distance", Cosh2Value{closed}.distance()}}
                  .dump(2)
           << '\n';
      } else {
        os << "cosh^2 = " << to_pq_string(closed) << " (direct " << to_pq_string(direct) << ")\n";
      }
      if (closed != direct) code = kExitInvariant;
    }
    return code;
  } catch (const DomainError& e) {
    if (c.json)
      std::cout << json{{"error", "domain"}, {"message", e.what()}}.dump() << '\n';
    else
      std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const InvariantViolation& e) {
    if (c.json)
      std::cout << json{{"error", "invariant"}, {"message", e.what()}}.dump() << '\n';
    else
      std::cerr << "invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  }
}
