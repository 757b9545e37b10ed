#include "coarsegrp/audit.hpp"

#include <functional>

#include "coarsegrp/bigrank.hpp"
#include "coarsegrp/cgcat.hpp"
#include "coarsegrp/coarse.hpp"
#include "coarsegrp/errors.hpp"
#include "coarsegrp/fgab.hpp"
#include "coarsegrp/geom.hpp"
#include "coarsegrp/intlat.hpp"
#include "coarsegrp/morph.hpp"
#include "coarsegrp/quasihom.hpp"
#include "coarsegrp/random.hpp"
#include "coarsegrp/sample.hpp"

namespace cg::audit {

using coarse::GroupIdeal;
using fgab::FgAbGroup;
using fgab::Hom;
using fgab::Subgroup;
using intlat::IntMatrix;
using intlat::Integer;

std::size_t AuditReport::violation_count() const {
  std::size_t n = 0;
  for (const auto& s : sections) n += s.violations.size();
  return n;
}

namespace {

struct Ctx {
  Rng rng;
  std::size_t cases;
  bool fault;
};

using SectionFn = std::function<void(Ctx&, AuditSection&)>;

Subgroup random_subgroup(Rng& rng, const FgAbGroup& g) {
  std::vector<fgab::Element> gens;
  const auto k = rng.uniform(0, 2);
  for (long i = 0; i < k; ++i) gens.push_back(sample::element(rng, g, 3));
  return Subgroup(g, std::move(gens));
}

GroupIdeal random_ideal(Rng& rng, const FgAbGroup& g) {
  switch (rng.uniform(0, 3)) {
    case 0: return GroupIdeal::finitary(g);
    case 1: return GroupIdeal::bounded(g);
    case 2: return GroupIdeal::discrete(g);
    default: return GroupIdeal::linear(random_subgroup(rng, g));
  }
}

bool is_hnf(const IntMatrix& h, std::size_t rank) {
  std::size_t col = 0;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    if (r >= rank) {
      for (std::size_t j = 0; j < h.cols(); ++j)
        if (h(r, j) != 0) return false;
      continue;
    }
    while (col < h.cols() && h(r, col) == 0) ++col;
    if (col == h.cols() || h(r, col) <= 0) return false;
    for (std::size_t above = 0; above < r; ++above)
      if (h(above, col) < 0 || h(above, col) >= h(r, col)) return false;
    for (std::size_t below = r + 1; below < h.rows(); ++below)
      if (h(below, col) != 0) return false;
    ++col;
  }
  return true;
}

void intlat_section(Ctx& ctx, AuditSection& s) {
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const auto rows = static_cast<std::size_t>(ctx.rng.uniform(1, 4));
    const auto cols = static_cast<std::size_t>(ctx.rng.uniform(1, 4));
    const IntMatrix a = sample::matrix(ctx.rng, rows, cols, 10);
    ++s.cases;
    const auto h = intlat::hermite_normal_form(a);
    if (!(h.U * a == h.H) || !is_hnf(h.H, h.rank))
      s.violations.push_back("HNF of " + a.to_string() + " gave " + h.H.to_string());
    const auto d = intlat::smith_normal_form(a);
    bool ok = d.P * a * d.Q == d.D && d.U * d.D * d.V == a;
    const auto f = d.invariant_factors();
    for (std::size_t i = 0; i + 1 < f.size() && ok; ++i) ok = intlat::floor_mod(f[i + 1], f[i]) == 0;
    if (!ok) s.violations.push_back("SNF of " + a.to_string() + " gave " + d.D.to_string());
  }
}

void fgab_section(Ctx& ctx, AuditSection& s) {
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const FgAbGroup g = sample::group(ctx.rng, 3, 12);
    const FgAbGroup h = sample::group(ctx.rng, 3, 12);
    const Hom f = sample::hom(ctx.rng, g, h, 4);
    ++s.cases;
    const auto k = fgab::kernel(f);
    if (!(fgab::compose(f, k.inclusion) == Hom::zero(k.group, h)))
      s.violations.push_back("f o ker(f) != 0 for " + f.to_string());
    const Subgroup img = fgab::image_subgroup(f);
    if (g.free_rank() != k.group.free_rank() + fgab::subgroup_free_rank(img))
      s.violations.push_back("rank-nullity fails for " + f.to_string());
    if (g.is_finite()) {
      const Integer lhs = g.order().value();
      const Integer rhs = k.group.order().value() * fgab::subgroup_order(img).value();
      if (lhs != rhs) s.violations.push_back("|G| != |ker| |im| for " + f.to_string());
    }
  }
}

void ideal_section(Ctx& ctx, AuditSection& s) {
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const FgAbGroup g = sample::group(ctx.rng, 2, 8);
    const GroupIdeal ideal = random_ideal(ctx.rng, g);
    ++s.cases;
    const auto a = coarse::audit_ideal_axioms(ideal, 6, ctx.rng.next());
    if (!a.passed) s.violations.push_back(ideal.to_string() + ": " + a.counterexample.value_or("?"));
  }
}

void morph_section(Ctx& ctx, AuditSection& s) {
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const FgAbGroup g = sample::group(ctx.rng, 3, 12);
    const FgAbGroup h = sample::group(ctx.rng, 3, 12);
    const Hom f = sample::hom(ctx.rng, g, h, 4);
    const GroupIdeal ig = random_ideal(ctx.rng, g);
    const GroupIdeal ih = random_ideal(ctx.rng, h);
    ++s.cases;
    const auto r = morph::analyze_hom(f, ig, ih);
    bool ce = r.coarse_equivalence.value;
    if (ctx.fault && c == 0) ce = !ce;
    const bool four = r.large_scale_injective.value && r.large_scale_surjective.value &&
                      r.bornologous.value && r.uniformly_bounded_copreserving.value;
    const std::string where = f.to_string() + " with " + ig.to_string() + " / " + ih.to_string();
    if (ce != four) s.violations.push_back("coarse_equivalence flag disagrees with its definition: " + where);
    if (r.effectively_proper.value && !r.uniformly_bounded_copreserving.value)
      s.violations.push_back("effectively proper but not copreserving: " + where);
    if (r.large_scale_injective.value) {
      ++s.premises;
      if (r.effectively_proper.value != r.uniformly_bounded_copreserving.value)
        s.violations.push_back("injective but proper != copreserving: " + where);
    }
  }
  // Composition closure under the finitary ideals.
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const FgAbGroup a = sample::group(ctx.rng, 2, 6);
    const FgAbGroup b = sample::group(ctx.rng, 2, 6);
    const FgAbGroup d = sample::group(ctx.rng, 2, 6);
    const Hom f = sample::hom(ctx.rng, a, b, 3);
    const Hom g = sample::hom(ctx.rng, b, d, 3);
    ++s.cases;
    auto ana = [](const Hom& x) {
      return morph::analyze_hom(x, GroupIdeal::finitary(x.source()), GroupIdeal::finitary(x.target()));
    };
    const auto rf = ana(f), rg = ana(g), rgf = ana(fgab::compose(g, f));
    if (rf.coarse_equivalence.value && rg.coarse_equivalence.value) {
      ++s.premises;
      if (!rgf.coarse_equivalence.value)
        s.violations.push_back("composite of coarse equivalences is not one: " + f.to_string() + ", " +
                               g.to_string());
    }
    if (!rgf.bornologous.value) s.violations.push_back("composite not bornologous: " + g.to_string());
  }
  // G -> 0 under the r0 structure.
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const FgAbGroup g = sample::group(ctx.rng, 4, 12);
    ++s.cases;
    const GroupIdeal src = morph::omega_ideal(g, {morph::Invariant::R0, 0});
    const Hom z = Hom::zero(g, FgAbGroup::trivial());
    if (!morph::analyze_hom(z, src, GroupIdeal::bounded(FgAbGroup::trivial())).coarse_equivalence.value)
      s.violations.push_back("G -> 0 is not a coarse equivalence for bounded G = " + g.to_string());
  }
}

void quotient_pullback_section(Ctx& ctx, AuditSection& s) {
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const FgAbGroup g = sample::group(ctx.rng, 3, 12);
    const Subgroup n = random_subgroup(ctx.rng, g);
    const GroupIdeal ideal = ctx.rng.coin() ? GroupIdeal::finitary(g) : random_ideal(ctx.rng, g);
    ++s.cases;
    if (morph::quotient_is_ce(g, n, ideal) != coarse::ideal_contains(ideal, n))
      s.violations.push_back("quotient by " + n.to_string() + " under " + ideal.to_string());
  }
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const FgAbGroup z = sample::group(ctx.rng, 3, 6);
    const FgAbGroup x = FgAbGroup::from_cyclic_orders([&] {
      intlat::IntVector o(z.free_rank(), 0);
      if (ctx.rng.coin()) o.emplace_back(static_cast<long>(ctx.rng.uniform(2, 6)));
      return o;
    }());
    const FgAbGroup y = sample::group(ctx.rng, 3, 6);
    const Hom g = sample::finitary_equivalence(ctx.rng, x, z, 3);
    const Hom f = sample::hom(ctx.rng, y, z, 3);
    ++s.cases;
    const auto pb = fgab::pullback(f, g);
    const auto rv = morph::analyze_hom(pb.to_y, GroupIdeal::finitary(pb.apex), GroupIdeal::finitary(y));
    ++s.premises;
    if (!rv.coarse_equivalence.value)
      s.violations.push_back("pullback of coarse equivalence " + g.to_string() + " along " + f.to_string());
  }
}

void classif2_section(Ctx& ctx, AuditSection& s) {
  const morph::Invariant kinds[] = {morph::Invariant::R0, morph::Invariant::R, morph::Invariant::Ell,
                                    morph::Invariant::Rd, morph::Invariant::Wd,
                                    morph::Invariant::WdTilde};
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const FgAbGroup g = sample::group(ctx.rng, 2, 12);
    const FgAbGroup h = sample::group(ctx.rng, 2, 12);
    const Hom f = sample::hom(ctx.rng, g, h, 3);
    const morph::InvariantSelector sel{kinds[ctx.rng.uniform(0, 5)], 0};
    ++s.cases;
    const auto d = morph::consistency_classif2(f, sel);
    if (d.status != morph::DichotomyStatus::NotApplicable) ++s.premises;
    if (d.status == morph::DichotomyStatus::Violated)
      s.violations.push_back("dichotomy fails for " + f.to_string() + ": " + d.reason);
  }
}

quasihom::QhMap random_floor(Rng& rng) {
  const long q = rng.uniform(1, 6);
  long p = rng.uniform(-6, 6);
  if (p == 0) p = 1;
  return quasihom::QhMap::affine_floor({mpq_class(p, q)}, mpq_class(rng.uniform(0, q - 1), q));
}

void quasihom_section(Ctx& ctx, AuditSection& s) {
  quasihom::DefectOptions opts;
  opts.radii = {30, 60};
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const auto f = random_floor(ctx.rng);
    std::vector<quasihom::TableEntry> entries;
    for (int i = 0; i < 3; ++i)
      entries.push_back({{Integer(static_cast<long>(ctx.rng.uniform(-10, 10)))},
                         {Integer(static_cast<long>(ctx.rng.uniform(-5, 5)))}});
    const auto g = quasihom::QhMap::table(1, FgAbGroup::free(1), entries, f, "perturbed");
    ++s.cases;
    const auto r = quasihom::perturb_and_check(f, g, opts);
    if (r.status == quasihom::CheckStatus::Ok) ++s.premises;
    if (r.status == quasihom::CheckStatus::Violation)
      s.violations.push_back("closeness stability: " + f.to_string() + ": " + r.reason);
  }
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const auto outer = random_floor(ctx.rng);
    const auto inner = random_floor(ctx.rng);
    ++s.cases;
    const auto r = quasihom::compose_qh(outer, inner, coarse::IdealKind::Finitary, opts);
    if (r.status == quasihom::CheckStatus::Ok) ++s.premises;
    if (r.status == quasihom::CheckStatus::Violation)
      s.violations.push_back("composition: " + outer.to_string() + " o " + inner.to_string());
  }
}

void cgcat_section(Ctx& ctx, AuditSection& s) {
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const FgAbGroup a = sample::group(ctx.rng, 3, 6);
    const FgAbGroup b = sample::group(ctx.rng, 3, 6);
    const FgAbGroup d = sample::group(ctx.rng, 3, 6);
    const Hom f = sample::hom(ctx.rng, a, b, 3);
    const Hom g = sample::hom(ctx.rng, b, d, 3);
    ++s.cases;
    if (!(cgcat::rationalize(fgab::compose(g, f)) == cgcat::rationalize(g) * cgcat::rationalize(f)))
      s.violations.push_back("rationalize is not functorial on " + f.to_string() + ", " + g.to_string());
    if (cgcat::rationalize(f).is_invertible() != cgcat::is_weak_equivalence(f))
      s.violations.push_back("rationalize does not invert exactly W at " + f.to_string());
    IntMatrix t = sample::hom(ctx.rng, a, b, 3).matrix();
    for (std::size_t i = 0; i < b.free_rank(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) t(i, j) = 0;
    const Hom f2 = f + Hom(a, b, t);
    if (cgcat::same_class(cgcat::HomClass{f}, cgcat::HomClass{f2}) &&
        !(cgcat::rationalize(f) == cgcat::rationalize(f2)))
      s.violations.push_back("close homs with different rational maps: " + f.to_string());
  }
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    auto free_group = [&] { return FgAbGroup::free(static_cast<std::size_t>(ctx.rng.uniform(1, 2))); };
    const FgAbGroup x0 = free_group(), x1 = free_group(), x2 = free_group(), x3 = free_group();
    auto span = [&](const FgAbGroup& src, const FgAbGroup& tgt) {
      const Hom left = sample::finitary_equivalence(ctx.rng, src, src, 2);
      return cgcat::Span(left, sample::hom(ctx.rng, src, tgt, 2));
    };
    const auto s1 = span(x0, x1), s2 = span(x1, x2), s3 = span(x2, x3);
    ++s.cases;
    const auto lhs = cgcat::compose_spans(cgcat::compose_spans(s1, s2), s3);
    const auto rhs = cgcat::compose_spans(s1, cgcat::compose_spans(s2, s3));
    if (cgcat::spans_equivalent(lhs, rhs, 2).verdict != cgcat::Equivalence::Equivalent)
      s.violations.push_back("span composition is not associative on " + s1.to_string());
    const auto unit = cgcat::compose_spans(cgcat::Span::identity(x0), s1);
    if (cgcat::spans_equivalent(unit, s1, 2).verdict != cgcat::Equivalence::Equivalent)
      s.violations.push_back("identity span is not a unit for " + s1.to_string());
  }
  const auto h = cgcat::check_homotopical_axioms(ctx.rng.next(), ctx.cases);
  s.cases += h.cancellation_cases + h.two_of_six_cases;
  s.premises += h.cancellation_premises + h.two_of_six_premises;
  for (const auto& v : h.violations) s.violations.push_back(v.axiom + ": " + v.certificate);
}

void bigrank_section(Ctx& ctx, AuditSection& s) {
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const auto f = bigrank::random_endo(ctx.rng, 5, 3);
    const auto g = bigrank::random_endo(ctx.rng, 5, 3);
    const auto gf = bigrank::compose(g, f);
    ++s.cases;
    for (int t = 0; t < 5; ++t) {
      const auto x = bigrank::random_vec(ctx.rng, 15, 4, 5);
      if (!(gf(x) == g(f(x)))) {
        s.violations.push_back("composed descriptor " + gf.to_string() + " differs at " + x.to_string());
        break;
      }
    }
    const auto d = bigrank::classif2_check(f);
    if (d.status == morph::DichotomyStatus::Holds) ++s.premises;
    if (d.status == morph::DichotomyStatus::Violated)
      s.violations.push_back("rank dichotomy fails for " + f.to_string());
  }
  const auto fa = bigrank::functoriality_audit(ctx.rng.next(), ctx.cases);
  s.cases += fa.cases;
  for (const auto& v : fa.violations) s.violations.push_back(v);
}

void geom_section(Ctx& ctx, AuditSection& s) {
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const long rho = ctx.rng.uniform(1, 20);
    const long window = ctx.rng.uniform(50, 2000);
    const auto sset = geom::cube(1, rho);
    const auto w = geom::make_asdim_witness(1, sset, window);
    ++s.cases;
    const auto check = geom::check_cover(w);
    if (!check.ok || check.unbounded_suspect)
      s.violations.push_back("d = 1 witness fails: " + check.violation);
    if (geom::check_cover(geom::merge_families(w)).ok)
      s.violations.push_back("merged d = 1 witness passes for rho = " + std::to_string(rho));
  }
  for (std::size_t c = 0; c < ctx.cases; ++c) {
    const auto a = geom::random_periodic(ctx.rng, 8, 3, 30);
    ++s.cases;
    const auto d = geom::dlt_vs_small(a);
    if (!d.equal_here) s.violations.push_back("D_< and S disagree on " + a.to_string());
    if (!geom::is_small(a).value) continue;
    ++s.premises;
    for (int t = 0; t < 4; ++t) {
      auto l = geom::random_periodic(ctx.rng, 12, 2, 30);
      if (!geom::is_large(l).value) continue;
      std::vector<long> toggles(l.exceptions());
      for (long x : a.exceptions())
        if (l.contains(x)) toggles.push_back(x);
      const geom::PeriodicSet diff(l.period(), l.residues(), toggles);
      if (!geom::is_large(diff).value)
        s.violations.push_back("L \\ A not large for small A = " + a.to_string() + ", L = " + l.to_string());
    }
  }
}

}  // namespace

AuditReport run_audit(const AuditOptions& opts) {
  const std::pair<const char*, SectionFn> sections[] = {
      {"intlat.normal_forms", intlat_section},
      {"fgab.exactness", fgab_section},
      {"coarse.ideal_axioms", ideal_section},
      {"morph.flags", morph_section},
      {"morph.quotient_pullback", quotient_pullback_section},
      {"morph.classif2", classif2_section},
      {"quasihom.stability", quasihom_section},
      {"cgcat.localization", cgcat_section},
      {"bigrank.structured", bigrank_section},
      {"geom.covers_and_small_sets", geom_section},
  };
  AuditReport rep;
  rep.seed = opts.seed;
  rep.cases_per_section = opts.cases;
  Rng root(opts.seed);
  for (const auto& [name, fn] : sections) {
    Ctx ctx{root.fork(), opts.cases, opts.inject_fault};
    AuditSection sec;
    sec.name = name;
    try {
      fn(ctx, sec);
    } catch (const TheoremViolation& e) {
      sec.violations.push_back(std::string("theorem violation: ") + e.what());
    }
    rep.sections.push_back(std::move(sec));
  }
  return rep;
}

}  // namespace cg::audit
