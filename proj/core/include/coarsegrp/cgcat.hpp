#pragma once

// Morphism classes up to closeness, spans whose left leg is a coarse
// equivalence, their composition through pullbacks, and the rational model
// X -> Q (x) X of the localization at coarse equivalences (finitary ideals
// throughout).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarsegrp/fgab.hpp"

namespace cg::cgcat {

using fgab::FgAbGroup;
using fgab::Hom;
using Rational = mpq_class;

/// Coarse equivalence for the finitary ideals on both sides.
bool is_weak_equivalence(const Hom& f);

struct HomClass {
  Hom representative;
};

/// Same class iff the representatives are close.
bool same_class(const HomClass& a, const HomClass& b);

class Span {
 public:
  /// X <- apex -> Y. Throws DomainError unless the legs share a source and
  /// the left leg is a coarse equivalence. With `normalize` the apex is
  /// replaced by its free summand, which is in W and does not change the
  /// class.
  Span(Hom left, Hom right, bool normalize = true);

  static Span identity(const FgAbGroup& x);
  /// X <-id- X -f-> Y.
  static Span from_hom(const Hom& f);

  const FgAbGroup& apex() const { return left_.source(); }
  const FgAbGroup& source() const { return left_.target(); }
  const FgAbGroup& target() const { return right_.target(); }
  const Hom& left() const { return left_; }
  const Hom& right() const { return right_; }

  std::string to_string() const;

 private:
  Hom left_;
  Hom right_;
};

/// Exact rational matrix, rows x cols; column j is the image of basis vector j.
class RationalMap {
 public:
  RationalMap() = default;
  RationalMap(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMap identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_invertible() const;
  /// Throws DomainError when singular or not square.
  RationalMap inverse() const;

  friend bool operator==(const RationalMap&, const RationalMap&) = default;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RationalMap operator*(const RationalMap& a, const RationalMap& b);

/// Free block of f, shape r0(target) x r0(source).
RationalMap rationalize(const Hom& f);
RationalMap rationalize(const HomClass& f);
/// (Q (x) right) (Q (x) left)^-1.
RationalMap rationalize(const Span& s);

/// X <- P1 -> Y composed with Y <- P2 -> Z through the pullback of
/// P1 -> Y <- P2.
Span compose_spans(const Span& first, const Span& second);

enum class Equivalence { Equivalent, NotEquivalent };
std::string to_string(Equivalence e);

struct SpanWitness {
  /// Z' with s : Z' -> P1 and t : Z' -> P2.
  FgAbGroup apex;
  Hom s;
  Hom t;
  std::string origin;
};

struct EquivalenceReport {
  Equivalence verdict = Equivalence::NotEquivalent;
  RationalMap first_form;
  RationalMap second_form;
  bool rational_equal = false;
  std::optional<SpanWitness> witness;
  std::size_t candidates_tried = 0;
  std::string reason;
};

/// Rational channel decides; a bounded witness search (entries |.| <= bound)
/// runs alongside and must never find a witness for unequal forms.
EquivalenceReport spans_equivalent(const Span& first, const Span& second, long bound = 8);

/// Checks the definitional conditions for a proposed witness.
bool verify_witness(const Span& first, const Span& second, const SpanWitness& w);

struct OreSquare {
  FgAbGroup apex;
  Hom w_prime;  // T -> Y, a coarse equivalence
  Hom f_prime;  // T -> X
};

/// For w : X -> Z in W and f : Y -> Z, a square w o f' = f o w'.
OreSquare ore_square(const Hom& w, const Hom& f);

struct AxiomFinding {
  std::string axiom;
  std::string certificate;
};

struct HomotopicalReport {
  std::size_t cancellation_cases = 0;
  std::size_t cancellation_premises = 0;
  std::size_t two_of_six_cases = 0;
  std::size_t two_of_six_premises = 0;
  std::vector<AxiomFinding> violations;
};

/// Right cancellability (w f ~ w g with w in W gives f ~ g) and 2-out-of-6
/// over random composable data.
HomotopicalReport check_homotopical_axioms(std::uint64_t seed, std::size_t cases);

}  // namespace cg::cgcat
