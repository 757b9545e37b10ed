#pragma once

// Large-scale properties of homomorphisms between coarse groups, decided
// from the ideal kinds on both sides, plus the quotient and classification
// results as executable checks.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coarsegrp/coarse.hpp"
#include "coarsegrp/fgab.hpp"

namespace cg::morph {

using coarse::GroupIdeal;
using fgab::FgAbGroup;
using fgab::Hom;
using fgab::Subgroup;

struct Flag {
  bool value = false;
  std::string reason;
};

struct MorphismReport {
  Flag bornologous;
  Flag large_scale_injective;
  Flag effectively_proper;
  Flag uniformly_bounded_copreserving;
  Flag large_scale_surjective;
  Flag coarse_equivalence;

  Subgroup kernel;
  FgAbGroup kernel_group;
  Subgroup image;
  intlat::ExtNat image_index;
  std::string source_ideal;
  std::string target_ideal;
};

/// Every flag is decided by a procedure specific to the (source kind,
/// target kind) pair. Throws DomainError when an ideal does not live on the
/// corresponding group.
MorphismReport analyze_hom(const Hom& f, const GroupIdeal& source_ideal,
                           const GroupIdeal& target_ideal);

/// Exists L in I with T contained in f(L).
bool coverable(const GroupIdeal& source_ideal, const Hom& f, const Subgroup& t);

/// q : G -> G/N with the image ideal q(I) on the quotient. The answer is
/// N in I; the projection is analyzed as well and a disagreement raises
/// TheoremViolation.
bool quotient_is_ce(const FgAbGroup& g, const Subgroup& n, const GroupIdeal& ideal);

enum class Classification { CoarselyEquivalent, NotEquivalent, Unsupported };
std::string to_string(Classification c);

struct ChainStep {
  std::string label;
  Hom hom;
  MorphismReport report;
};

struct ClassifyResult {
  Classification verdict = Classification::Unsupported;
  std::string reason;
  /// G -> Z^n <- H, each step a coarse equivalence of finitary coarse groups.
  std::vector<ChainStep> chain;
};

/// Finitary structures on both sides.
ClassifyResult classify_fg(const FgAbGroup& g, const FgAbGroup& h);
/// Only IdealKind::Finitary is supported; anything else is Unsupported.
ClassifyResult classify_fg(const FgAbGroup& g, const FgAbGroup& h, coarse::IdealKind kind);

/// Projection G -> G/Tor(G) = Z^n in coordinates.
Hom torsion_free_quotient(const FgAbGroup& g);

enum class Invariant { R0, Rp, R, Ell, Rd, Wd, WdTilde };

struct InvariantSelector {
  Invariant which = Invariant::R0;
  unsigned long prime = 0;  // for Rp
};

std::string to_string(const InvariantSelector& sel);

/// i(G), as a value of the countable cardinal scale.
intlat::ExtNat invariant_value(const FgAbGroup& g, const InvariantSelector& sel);

/// The ideal generated by subgroups K with i(K) < omega. On finitely
/// generated groups this is Bounded (r0, r_p, r, r_d) or the subsets of the
/// torsion subgroup (ell, w_d, w_d tilde).
GroupIdeal omega_ideal(const FgAbGroup& g, const InvariantSelector& sel);

enum class DichotomyStatus { Holds, Violated, NotApplicable };
std::string to_string(DichotomyStatus s);

struct DichotomyCheck {
  DichotomyStatus status = DichotomyStatus::NotApplicable;
  intlat::ExtNat source_value;
  intlat::ExtNat target_value;
  std::string reason;
};

/// If f is a coarse equivalence for the I_{i,omega} structures then either
/// both invariants are finite or they coincide.
DichotomyCheck consistency_classif2(const Hom& f, const InvariantSelector& sel);

}  // namespace cg::morph
