// coarsegrp: command-line front end. JSON on stdout, diagnostics on stderr.
// Exit codes: 0 ok, 2 parse error, 3 domain error, 4 theorem violation or
// audit findings.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "coarsegrp/audit.hpp"
#include "coarsegrp/bigrank.hpp"
#include "coarsegrp/cgcat.hpp"
#include "coarsegrp/errors.hpp"
#include "coarsegrp/geom.hpp"
#include "coarsegrp/literals.hpp"
#include "coarsegrp/morph.hpp"
#include "coarsegrp/quasihom.hpp"
#include "coarsegrp/serialize.hpp"

namespace {

using namespace cg;
using serialize::json;

struct Globals {
  std::uint64_t seed = 42;
  std::string format = "json";
};

int emit(const Globals& g, const std::string& command, json result, int code = 0) {
  const json doc = serialize::envelope(command, std::move(result));
  std::cout << (g.format == "text" ? serialize::dump_text(doc) : serialize::dump(doc));
  return code;
}

coarse::IdealKind ideal_kind(const std::string& name) {
  if (name == "finitary") return coarse::IdealKind::Finitary;
  if (name == "bounded") return coarse::IdealKind::Bounded;
  throw ParseError("ideal kind '" + name + "': expected finitary or bounded");
}

int run(int argc, char** argv) {
  CLI::App app{"Coarse groups on finitely generated abelian groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--seed", globals.seed, "Seed for every randomized step")->capture_default_str();
  app.add_option("--format", globals.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::string group_text, source, target, matrix, ideals = "finitary,finitary", endo;
  std::string primes;
  auto* analyze_group = app.add_subcommand("analyze-group", "Cardinal invariants of a group");
  analyze_group->add_option("--group", group_text)->required();
  analyze_group->add_option("--primes", primes, "Extra primes for r_p, comma separated");

  auto* check_hom = app.add_subcommand("check-hom", "Large-scale properties of a homomorphism");
  check_hom->add_option("--source", source);
  check_hom->add_option("--target", target);
  check_hom->add_option("--matrix", matrix);
  check_hom->add_option("--ideals", ideals)->capture_default_str();
  check_hom->add_option("--endo", endo, "Structured endomorphism of the countable sum of Z");

  std::string g_text, h_text, ideal = "finitary";
  auto* classify = app.add_subcommand("classify", "Coarse classification of two groups");
  classify->set_help_flag("--help", "Print this help message and exit");
  classify->add_option("--g", g_text)->required();
  classify->add_option("--h", h_text)->required();
  classify->add_option("--ideal", ideal)->capture_default_str();

  std::string map_text, radii_text;
  std::size_t samples = 100000;
  std::string qh_ideal = "finitary";
  auto* qh_defect = app.add_subcommand("qh-defect", "Defect set of a map Z^n -> G");
  qh_defect->add_option("--map", map_text)->required();
  qh_defect->add_option("--radii", radii_text)->required();
  qh_defect->add_option("--ideal", qh_ideal)->capture_default_str();
  qh_defect->add_option("--samples", samples, "Sampled pairs per radius")->capture_default_str();

  auto* qh_section = app.add_subcommand("qh-section", "Section of a surjection Z -> Z");
  qh_section->add_option("--map", map_text)->required();
  qh_section->add_option("--radii", radii_text)->required();

  std::string first, second;
  long bound = 8;
  auto* span_compose = app.add_subcommand("span-compose", "Compose two spans");
  span_compose->add_option("--first", first)->required();
  span_compose->add_option("--second", second)->required();
  auto* span_equal = app.add_subcommand("span-equal", "Decide equivalence of two spans");
  span_equal->add_option("--first", first)->required();
  span_equal->add_option("--second", second)->required();
  span_equal->add_option("--bound", bound, "Witness search entry bound")->capture_default_str();

  std::string x_text, y_text, z_text, w_matrix, f_matrix;
  auto* ore = app.add_subcommand("ore", "Ore square for w : X -> Z in W and f : Y -> Z");
  ore->add_option("--x", x_text)->required();
  ore->add_option("--y", y_text)->required();
  ore->add_option("--z", z_text)->required();
  ore->add_option("--w", w_matrix)->required();
  ore->add_option("--f", f_matrix)->required();

  std::size_t dim = 1;
  long radius = 1, window = 100;
  std::string set_text;
  auto* asdim = app.add_subcommand("asdim-witness", "Cover witness for asymptotic dimension of Z^d");
  asdim->add_option("--dim", dim)->capture_default_str();
  asdim->add_option("--radius", radius, "S = [-radius, radius]^d")->capture_default_str();
  asdim->add_option("--set", set_text, "Explicit symmetric S, e.g. [-1,0,1]");
  asdim->add_option("--window", window)->capture_default_str();

  std::string periodic_text;
  auto* smallset = app.add_subcommand("smallset", "Large/small decision for an eventually periodic set");
  smallset->add_option("--set", periodic_text)->required();

  std::size_t cases = 40;
  auto* audit = app.add_subcommand("audit", "Randomized invariant suite");
  audit->add_option("--cases", cases, "Random cases per section")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*analyze_group) {
    const auto g = literals::parse_group(group_text);
    std::vector<unsigned long> extra;
    if (!primes.empty())
      for (long p : literals::parse_long_list(primes)) {
        if (p < 2) throw DomainError("primes must be at least 2");
        extra.push_back(static_cast<unsigned long>(p));
      }
    json out = serialize::to_json(fgab::invariants(g, extra));
    out["group"] = g.to_string();
    return emit(globals, "analyze-group", out);
  }
  if (*check_hom) {
    if (!endo.empty()) {
      const auto f = literals::parse_endo(endo);
      json out = serialize::to_json(bigrank::analyze_structured(f));
      out["endo"] = f.to_string();
      out["ideal_pair"] = {"finite-rank", "finite-rank"};
      return emit(globals, "check-hom", out);
    }
    if (source.empty() || target.empty() || matrix.empty())
      throw ParseError("check-hom needs --source, --target and --matrix (or --endo)");
    const auto src = literals::parse_group(source);
    const auto tgt = literals::parse_group(target);
    const auto f = literals::parse_hom(src, tgt, matrix);
    const auto parts = literals::split_top_level(ideals);
    if (parts.size() != 2) throw ParseError("--ideals expects two ideals separated by a comma");
    const auto ig = literals::parse_ideal(parts[0], src);
    const auto ih = literals::parse_ideal(parts[1], tgt);
    return emit(globals, "check-hom", serialize::to_json(morph::analyze_hom(f, ig, ih)));
  }
  if (*classify) {
    const auto g = literals::parse_group(g_text);
    const auto h = literals::parse_group(h_text);
    coarse::IdealKind kind = coarse::IdealKind::Finitary;
    if (ideal == "bounded") kind = coarse::IdealKind::Bounded;
    else if (ideal == "discrete") kind = coarse::IdealKind::Discrete;
    else if (ideal != "finitary") throw ParseError("classify --ideal: expected finitary, bounded or discrete");
    return emit(globals, "classify", serialize::to_json(morph::classify_fg(g, h, kind)));
  }
  if (*qh_defect || *qh_section) {
    const auto f = literals::parse_map(map_text);
    quasihom::DefectOptions opts;
    opts.radii = literals::parse_long_list(radii_text);
    opts.seed = globals.seed;
    opts.samples_per_radius = samples;
    if (*qh_defect) {
      opts.target_ideal = ideal_kind(qh_ideal);
      return emit(globals, "qh-defect", serialize::to_json(quasihom::defect(f, opts)));
    }
    const auto rep = quasihom::section_as_coarse_inverse(f, opts);
    return emit(globals, "qh-section", serialize::to_json(rep),
                rep.status == quasihom::CheckStatus::Violation ? 4 : 0);
  }
  if (*span_compose) {
    const auto s = cgcat::compose_spans(literals::parse_span(first), literals::parse_span(second));
    return emit(globals, "span-compose", serialize::to_json(s));
  }
  if (*span_equal) {
    const auto rep =
        cgcat::spans_equivalent(literals::parse_span(first), literals::parse_span(second), bound);
    return emit(globals, "span-equal", serialize::to_json(rep));
  }
  if (*ore) {
    const auto x = literals::parse_group(x_text);
    const auto y = literals::parse_group(y_text);
    const auto z = literals::parse_group(z_text);
    const auto sq = cgcat::ore_square(literals::parse_hom(x, z, w_matrix), literals::parse_hom(y, z, f_matrix));
    return emit(globals, "ore", serialize::to_json(sq));
  }
  if (*asdim) {
    std::vector<geom::Point> sset =
        set_text.empty() ? geom::cube(dim, radius) : literals::parse_point_set(set_text);
    const auto w = geom::make_asdim_witness(dim, sset, window);
    return emit(globals, "asdim-witness", serialize::to_json(w, geom::check_cover(w)));
  }
  if (*smallset) {
    return emit(globals, "smallset", serialize::to_json(literals::parse_periodic(periodic_text)));
  }
  if (*audit) {
    audit::AuditOptions opts;
    opts.seed = globals.seed;
    opts.cases = cases;
#ifdef COARSEGRP_INJECT_FAULT
    opts.inject_fault = true;
#endif
    const auto rep = audit::run_audit(opts);
    if (rep.violation_count() > 0)
      std::cerr << "audit: " << rep.violation_count() << " finding(s)\n";
    return emit(globals, "audit", serialize::to_json(rep), rep.violation_count() ? 4 : 0);
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const cg::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const cg::TheoremViolation& e) {
    std::cerr << "theorem violation: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
