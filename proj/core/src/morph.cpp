#include "coarsegrp/morph.hpp"

#include "coarsegrp/errors.hpp"

namespace cg::morph {

using coarse::IdealKind;
using coarse::ideal_contains;
using intlat::ExtNat;
using intlat::IntMatrix;

namespace {

Flag yes(std::string reason) { return Flag{true, std::move(reason)}; }
Flag no(std::string reason) { return Flag{false, std::move(reason)}; }
Flag decide(bool v, const std::string& if_true, const std::string& if_false) {
  return Flag{v, v ? if_true : if_false};
}

Flag bornologous(const Hom& f, const GroupIdeal& ig, const GroupIdeal& ih, const Subgroup& img) {
  switch (ig.kind()) {
    case IdealKind::Discrete: return yes("f({0}) = {0} lies in every ideal");
    case IdealKind::Bounded:
      return decide(ideal_contains(ih, img), "f(G) lies in the target ideal",
                    "f(G) is not in the target ideal");
    case IdealKind::Linear: {
      const Subgroup fs = fgab::image(f, ig.linear_subgroup());
      return decide(ideal_contains(ih, fs), "f(S) lies in the target ideal",
                    "f(S) = " + fs.to_string() + " is not in the target ideal");
    }
    case IdealKind::Finitary:
      return decide(coarse::ideal_contains_finite_subsets_of(ih, img),
                    "images of finite sets are finite subsets of f(G), all in the target ideal",
                    "some singleton of f(G) is not in the target ideal");
    case IdealKind::FiniteRank: break;
  }
  throw DomainError("finite-rank ideals are analyzed in the countable-rank layer");
}

Flag effectively_proper(const Hom& f, const GroupIdeal& ig, const GroupIdeal& ih,
                        const Subgroup& ker) {
  switch (ih.kind()) {
    case IdealKind::Discrete:
      return decide(ideal_contains(ig, ker), "f^-1(0) = ker f lies in the source ideal",
                    "f^-1(0) = ker f is not in the source ideal");
    case IdealKind::Bounded:
      return decide(ideal_contains(ig, Subgroup::whole(f.source())),
                    "f^-1(H) = G lies in the source ideal", "f^-1(H) = G is not in the source ideal");
    case IdealKind::Linear: {
      const Subgroup pre = fgab::preimage(f, ih.linear_subgroup());
      return decide(ideal_contains(ig, pre), "f^-1(H0) lies in the source ideal",
                    "f^-1(H0) = " + pre.to_string() + " is not in the source ideal");
    }
    case IdealKind::Finitary:
      // Preimages of finite sets are finite unions of cosets of ker f.
      switch (ig.kind()) {
        case IdealKind::Bounded: return yes("every subset of G is in the source ideal");
        case IdealKind::Finitary:
          return decide(fgab::subgroup_free_rank(ker) == 0, "ker f is finite",
                        "ker f is infinite, so f^-1(0) is not finite");
        case IdealKind::Discrete:
          return decide(f.source().is_trivial(), "G is trivial",
                        "a coset x + ker f with x != 0 is not inside {0}");
        case IdealKind::Linear:
          return decide(ig.linear_subgroup().is_whole(), "S = G",
                        "preimages of singletons cover G, which is not inside S");
        case IdealKind::FiniteRank: break;
      }
      break;
    case IdealKind::FiniteRank: break;
  }
  throw DomainError("finite-rank ideals are analyzed in the countable-rank layer");
}

Flag uniformly_bounded_copreserving(const Hom& f, const GroupIdeal& ig, const GroupIdeal& ih,
                                    const Subgroup& img) {
  switch (ih.kind()) {
    case IdealKind::Discrete: return yes("K = {0} is covered by f({0})");
    case IdealKind::Bounded:
      return decide(coverable(ig, f, img), "f(G) = f(L) for some L in the source ideal",
                    "f(G) is not the image of a member of the source ideal");
    case IdealKind::Linear: {
      const Subgroup t = fgab::intersection(ih.linear_subgroup(), img);
      return decide(coverable(ig, f, t), "H0 n f(G) lies in f(L) for some L in the source ideal",
                    "H0 n f(G) = " + t.to_string() + " is not covered by f(L) for any L");
    }
    case IdealKind::Finitary:
      switch (ig.kind()) {
        case IdealKind::Bounded:
        case IdealKind::Finitary: return yes("finite subsets of f(G) have finite preimage sets");
        case IdealKind::Discrete:
          return decide(img.is_trivial(), "f(G) = {0}", "a nonzero singleton of f(G) is not f(L)");
        case IdealKind::Linear: {
          const Subgroup fs = fgab::image(f, ig.linear_subgroup());
          return decide(fs.contains(img), "f(G) = f(S)", "f(G) is not contained in f(S)");
        }
        case IdealKind::FiniteRank: break;
      }
      break;
    case IdealKind::FiniteRank: break;
  }
  throw DomainError("finite-rank ideals are analyzed in the countable-rank layer");
}

Flag large_scale_surjective(const GroupIdeal& ih, const Subgroup& img, const ExtNat& index) {
  switch (ih.kind()) {
    case IdealKind::Bounded: return yes("f(G) + H = H");
    case IdealKind::Discrete:
      return decide(img.is_whole(), "f is surjective", "f is not surjective");
    case IdealKind::Finitary:
      return decide(index.is_finite(), "[H : f(G)] = " + index.to_string(),
                    "[H : f(G)] is infinite");
    case IdealKind::Linear:
      return decide(fgab::sum(img, ih.linear_subgroup()).is_whole(), "f(G) + H0 = H",
                    "f(G) + H0 is a proper subgroup");
    case IdealKind::FiniteRank: break;
  }
  throw DomainError("finite-rank ideals are analyzed in the countable-rank layer");
}

}  // namespace

bool coverable(const GroupIdeal& ig, const Hom& f, const Subgroup& t) {
  switch (ig.kind()) {
    case IdealKind::Bounded: return true;
    case IdealKind::Discrete: return t.is_trivial();
    case IdealKind::Linear: return fgab::image(f, ig.linear_subgroup()).contains(t);
    case IdealKind::Finitary: return fgab::subgroup_free_rank(t) == 0;
    case IdealKind::FiniteRank: break;
  }
  throw DomainError("finite-rank ideals are analyzed in the countable-rank layer");
}

MorphismReport analyze_hom(const Hom& f, const GroupIdeal& ig, const GroupIdeal& ih) {
  if (!(ig.group() == f.source()))
    throw DomainError("source ideal lives on " + ig.group().to_string() + ", not " +
                      f.source().to_string());
  if (!(ih.group() == f.target()))
    throw DomainError("target ideal lives on " + ih.group().to_string() + ", not " +
                      f.target().to_string());
  MorphismReport r;
  r.kernel = fgab::kernel_subgroup(f);
  r.kernel_group = fgab::subgroup_as_group(r.kernel).group;
  r.image = fgab::image_subgroup(f);
  r.image_index = fgab::subgroup_index(r.image);
  r.source_ideal = ig.to_string();
  r.target_ideal = ih.to_string();

  r.large_scale_injective =
      decide(ideal_contains(ig, r.kernel), "ker f = " + r.kernel_group.to_string() + " lies in the source ideal",
             "ker f = " + r.kernel_group.to_string() + " is not in the source ideal");
  r.bornologous = bornologous(f, ig, ih, r.image);
  r.effectively_proper = effectively_proper(f, ig, ih, r.kernel);
  r.uniformly_bounded_copreserving = uniformly_bounded_copreserving(f, ig, ih, r.image);
  r.large_scale_surjective = large_scale_surjective(ih, r.image, r.image_index);

  const bool four = r.large_scale_injective.value && r.large_scale_surjective.value &&
                    r.bornologous.value && r.uniformly_bounded_copreserving.value;
  const bool direct = r.bornologous.value && r.effectively_proper.value &&
                      r.large_scale_surjective.value;
  if (four != direct)
    throw TheoremViolation("coarse equivalence criteria disagree for " + f.to_string() +
                           " with ideals " + r.source_ideal + " / " + r.target_ideal);
  r.coarse_equivalence =
      four ? yes("ker f in I_G, f large-scale surjective, bornologous, uniformly bounded copreserving")
           : no("one of the four coarse-equivalence conditions fails");
  return r;
}

bool quotient_is_ce(const FgAbGroup& g, const Subgroup& n, const GroupIdeal& ideal) {
  const fgab::QuotientResult q = fgab::quotient(g, n);
  const GroupIdeal qi = coarse::image_ideal(q.projection, ideal);
  const MorphismReport rep = analyze_hom(q.projection, ideal, qi);
  const bool expected = ideal_contains(ideal, n);
  if (!rep.bornologous.value || !rep.uniformly_bounded_copreserving.value)
    throw TheoremViolation("quotient map with the image ideal must be bornologous and "
                           "uniformly bounded copreserving");
  if (rep.coarse_equivalence.value != expected)
    throw TheoremViolation("quotient by " + n.to_string() + ": membership N in I is " +
                           (expected ? "true" : "false") + " but the projection analysis disagrees");
  return expected;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::CoarselyEquivalent: return "COARSELY_EQUIVALENT";
    case Classification::NotEquivalent: return "NOT_EQUIVALENT";
    case Classification::Unsupported: return "UNSUPPORTED";
  }
  return "?";
}

Hom torsion_free_quotient(const FgAbGroup& g) {
  IntMatrix m(g.free_rank(), g.dim());
  for (std::size_t i = 0; i < g.free_rank(); ++i) m(i, i) = 1;
  return Hom(g, FgAbGroup::free(g.free_rank()), std::move(m));
}

ClassifyResult classify_fg(const FgAbGroup& g, const FgAbGroup& h) {
  ClassifyResult out;
  if (g.free_rank() != h.free_rank()) {
    out.verdict = Classification::NotEquivalent;
    out.reason = "r0 differs: " + std::to_string(g.free_rank()) + " vs " +
                 std::to_string(h.free_rank());
    return out;
  }
  out.verdict = Classification::CoarselyEquivalent;
  out.reason = "r0 = " + std::to_string(g.free_rank()) + " on both sides";
  const std::pair<const char*, const FgAbGroup*> sides[] = {{"G -> G/Tor(G)", &g},
                                                           {"H -> H/Tor(H)", &h}};
  for (const auto& [label, grp] : sides) {
    const Hom q = torsion_free_quotient(*grp);
    MorphismReport rep = analyze_hom(q, GroupIdeal::finitary(q.source()),
                                     GroupIdeal::finitary(q.target()));
    if (!rep.coarse_equivalence.value)
      throw TheoremViolation(std::string("witness step ") + label + " is not a coarse equivalence");
    out.chain.push_back(ChainStep{label, q, std::move(rep)});
  }
  return out;
}

ClassifyResult classify_fg(const FgAbGroup& g, const FgAbGroup& h, IdealKind kind) {
  if (kind != IdealKind::Finitary) {
    ClassifyResult out;
    out.verdict = Classification::Unsupported;
    out.reason = "classification is only available for the finitary structure";
    return out;
  }
  return classify_fg(g, h);
}

std::string to_string(const InvariantSelector& sel) {
  switch (sel.which) {
    case Invariant::R0: return "r0";
    case Invariant::Rp: return "r" + std::to_string(sel.prime);
    case Invariant::R: return "r";
    case Invariant::Ell: return "ell";
    case Invariant::Rd: return "r_d";
    case Invariant::Wd: return "w_d";
    case Invariant::WdTilde: return "w_d~";
  }
  return "?";
}

ExtNat invariant_value(const FgAbGroup& g, const InvariantSelector& sel) {
  std::vector<unsigned long> extra;
  if (sel.which == Invariant::Rp) extra.push_back(sel.prime);
  const fgab::Invariants inv = fgab::invariants(g, extra);
  switch (sel.which) {
    case Invariant::R0: return ExtNat(static_cast<long>(inv.r0));
    case Invariant::Rp: return ExtNat(static_cast<long>(inv.r_p.at(sel.prime)));
    case Invariant::R: return inv.r;
    // ell = log2 |G| is not an integer; equality of finite values is
    // equality of orders, so the order stands in for it.
    case Invariant::Ell: return inv.order;
    case Invariant::Rd: return inv.r_d;
    case Invariant::Wd: return inv.w_d;
    case Invariant::WdTilde: return inv.w_d_tilde;
  }
  return ExtNat::infinite();
}

GroupIdeal omega_ideal(const FgAbGroup& g, const InvariantSelector& sel) {
  switch (sel.which) {
    case Invariant::Ell:
    case Invariant::Wd:
    case Invariant::WdTilde: return GroupIdeal::linear(Subgroup::torsion(g));
    default: return GroupIdeal::bounded(g);
  }
}

std::string to_string(DichotomyStatus s) {
  switch (s) {
    case DichotomyStatus::Holds: return "HOLDS";
    case DichotomyStatus::Violated: return "VIOLATED";
    case DichotomyStatus::NotApplicable: return "NOT_APPLICABLE";
  }
  return "?";
}

DichotomyCheck consistency_classif2(const Hom& f, const InvariantSelector& sel) {
  DichotomyCheck out;
  const MorphismReport rep = analyze_hom(f, omega_ideal(f.source(), sel), omega_ideal(f.target(), sel));
  out.source_value = invariant_value(f.source(), sel);
  out.target_value = invariant_value(f.target(), sel);
  if (!rep.coarse_equivalence.value) {
    out.status = DichotomyStatus::NotApplicable;
    out.reason = "f is not a coarse equivalence for the " + to_string(sel) + " structures";
    return out;
  }
  const bool both_small = out.source_value.is_finite() && out.target_value.is_finite();
  const bool equal = out.source_value == out.target_value;
  out.status = both_small || equal ? DichotomyStatus::Holds : DichotomyStatus::Violated;
  out.reason = both_small ? "both invariants are below omega"
               : equal    ? "the invariants coincide"
                          : "invariants differ and one is infinite";
  return out;
}

}  // namespace cg::morph
