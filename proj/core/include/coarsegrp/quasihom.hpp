#pragma once

// Structured maps Z^n -> G and their defect sets
//   D_r = { f(x+y) - f(x) - f(y) : x, y in [-r, r]^n }.
// Quasi-homomorphy is only semi-decidable by evaluation, so verdicts are
// relative to the examined windows. Closed-form maps also carry an exact
// defect set that the window data must be contained in.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coarsegrp/coarse.hpp"
#include "coarsegrp/fgab.hpp"

namespace cg::quasihom {

using fgab::Element;
using fgab::FgAbGroup;
using fgab::Hom;
using intlat::Integer;
using intlat::IntVector;
using Rational = mpq_class;

enum class MapKind { AffineFloor, LargestEvenBelow, Table, Compose, HomMap, AbsValue };

class QhMap;

struct TableEntry {
  IntVector x;
  Element y;
};

/// A map Z^n -> G. Cheap to copy (shared immutable node).
class QhMap {
 public:
  /// x -> floor(sum_i slopes_i x_i + offset), into Z.
  static QhMap affine_floor(std::vector<Rational> slopes, Rational offset = 0);
  /// n -> largest even number strictly below n, into Z.
  static QhMap largest_even_below();
  static QhMap abs_value();
  /// Source must be free.
  static QhMap hom(const Hom& h);
  /// outer o inner; the free coordinates of inner's values feed outer.
  static QhMap compose(const QhMap& outer, const QhMap& inner);
  /// Explicit values on finitely many points; elsewhere zero, or the
  /// value of `fallback` when given.
  static QhMap table(std::size_t source_rank, FgAbGroup target, std::vector<TableEntry> entries,
                     std::optional<QhMap> fallback = std::nullopt, std::string label = "");

  MapKind kind() const;
  std::size_t source_rank() const;
  const FgAbGroup& target() const;
  Element operator()(const IntVector& x) const;

  /// Literal form accepted by the parser (tables print their label).
  std::string to_string() const;

  /// Components, for the kinds that have them.
  const std::vector<Rational>& slopes() const;
  const Rational& offset() const;
  const Hom& hom_matrix() const;
  const QhMap& outer() const;
  const QhMap& inner() const;

  /// Source points with tabulated values, here or in an inner map or fallback.
  std::vector<IntVector> table_points() const;

  struct Node;

 private:
  explicit QhMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class Verdict { CertifiedOnWindow, Rejected };
std::string to_string(Verdict v);

struct Witness {
  IntVector x;
  IntVector y;
  Element defect;
};

struct RadiusData {
  long radius = 0;
  /// D_r, sorted.
  std::vector<Element> defects;
  /// A pair realizing a defect of maximal norm within the window.
  std::optional<Witness> max_witness;
};

struct DefectOptions {
  std::vector<long> radii;
  /// Finitary or Bounded.
  coarse::IdealKind target_ideal = coarse::IdealKind::Finitary;
  std::uint64_t seed = 0x5eed;
  std::size_t samples_per_radius = 100000;
  /// Largest radius scanned exhaustively for one-dimensional sources.
  long exhaustive_limit = 2000;
};

struct DefectReport {
  std::string map;
  std::string ideal;
  /// Radii examined, ascending; includes the half of the largest radius.
  std::vector<RadiusData> windows;
  bool exhaustive = false;
  std::uint64_t pairs_examined = 0;
  Verdict verdict = Verdict::Rejected;
  /// Raw defect set at the largest radius.
  std::vector<Element> defect;
  /// M: defect plus f(0), closed under negation.
  std::vector<Element> normalized;
  /// Exact defect set, when the map has a closed form with bounded defect.
  std::optional<std::vector<Element>> exact;
  bool exact_unbounded = false;
  std::string reason;
};

/// Throws DomainError for target ideals other than Finitary and Bounded.
DefectReport defect(const QhMap& f, const DefectOptions& opts);

/// Exact defect set of a closed-form map; nullopt when unknown, and an
/// empty optional with `unbounded` set when the defect is unbounded.
std::optional<std::vector<Element>> exact_defect(const QhMap& f, bool* unbounded);

enum class CheckStatus { Ok, NotApplicable, Violation };
std::string to_string(CheckStatus s);

/// Sorted range {f(x) : x in [-r, r]^n} (exhaustive up to a size limit).
std::vector<Element> window_range(const QhMap& f, long radius);

struct PerturbReport {
  CheckStatus status = CheckStatus::NotApplicable;
  /// {g(x) - f(x)} on the largest window.
  std::vector<Element> closeness_bound;
  bool difference_stabilized = false;
  DefectReport f_report;
  DefectReport g_report;
  std::string reason;
};

/// Maps close to a quasi-homomorphism are quasi-homomorphisms.
PerturbReport perturb_and_check(const QhMap& f, const QhMap& g, const DefectOptions& opts);

struct ComposeReport {
  CheckStatus status = CheckStatus::NotApplicable;
  DefectReport inner_report;
  DefectReport outer_report;
  DefectReport composite_report;
  bool outer_bornologous_on_window = false;
  std::string reason;
};

/// inner : Z^n -> (mid, mid_ideal), outer : mid -> (out, opts.target_ideal).
/// When both certify and outer is bornologous on the window, the composite
/// must certify.
ComposeReport compose_qh(const QhMap& outer, const QhMap& inner, coarse::IdealKind mid_ideal,
                         const DefectOptions& opts);

struct SectionReport {
  CheckStatus status = CheckStatus::NotApplicable;
  /// f(Z) = step * Z on the window.
  Integer codomain_step;
  /// k -> least-|.| preimage of step * k (ties to the nonnegative one).
  std::optional<QhMap> section;
  bool f_effectively_proper_on_window = false;
  DefectReport f_report;
  DefectReport section_report;
  std::string reason;
};

/// f : Z -> Z. Throws DomainError if some window value of f(Z) has no
/// preimage within the search bound.
SectionReport section_as_coarse_inverse(const QhMap& f, const DefectOptions& opts);

struct InverseReport {
  CheckStatus status = CheckStatus::NotApplicable;
  /// {g(f(x)) - x} and {f(g(y)) - y} on the largest window.
  std::vector<Element> gf_displacement;
  std::vector<Element> fg_displacement;
  DefectReport f_report;
  DefectReport g_report;
  std::string reason;
};

/// g a coarse inverse of f (checked on windows; DomainError otherwise).
InverseReport coarse_inverse_is_qh_check(const QhMap& f, const QhMap& g,
                                         const DefectOptions& opts);

struct RankProbe {
  long radius = 0;
  std::size_t image_rank = 0;
};

/// Free rank of the subgroup generated by f([-r, r]^n), per radius. A probe
/// for the open rank-preservation question; nothing is asserted.
std::vector<RankProbe> image_rank_on_window(const QhMap& f, const std::vector<long>& radii);

/// Max-abs norm with torsion residues measured to the nearest multiple.
Integer element_norm(const FgAbGroup& g, const Element& x);

}  // namespace cg::quasihom
