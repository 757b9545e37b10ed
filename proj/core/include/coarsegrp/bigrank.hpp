#pragma once

// The countable direct sum of copies of Z with endomorphisms of the form
// "finite head matrix + uniform tail rule", and the coarse structure whose
// members are the subsets of finite-rank subgroups.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coarsegrp/coarse.hpp"
#include "coarsegrp/intlat.hpp"
#include "coarsegrp/morph.hpp"

namespace cg::bigrank {

using intlat::ExtNat;
using intlat::IntMatrix;
using intlat::Integer;

/// Finitely supported sequence; stored coefficients are nonzero.
class SparseVec {
 public:
  SparseVec() = default;
  explicit SparseVec(std::map<std::size_t, Integer> coeffs);
  static SparseVec basis(std::size_t i);

  const std::map<std::size_t, Integer>& coeffs() const { return coeffs_; }
  Integer at(std::size_t i) const;
  void add(std::size_t i, const Integer& v);
  bool is_zero() const { return coeffs_.empty(); }
  /// One past the largest index in the support (0 for the zero vector).
  std::size_t support_end() const;

  friend bool operator==(const SparseVec&, const SparseVec&) = default;
  std::string to_string() const;

 private:
  std::map<std::size_t, Integer> coeffs_;
};

/// Tail rule e_j -> scale * e_{j + shift} for j >= head columns, dropped
/// when j + shift < 0. identity = (1, 0), shift(k) = (1, k), zero = (0, 0),
/// scale(c) = (c, 0); composition can produce general scaled shifts.
struct Tail {
  Integer scale = 1;
  long shift = 0;

  static Tail identity() { return {1, 0}; }
  static Tail shift_by(long k) { return {1, k}; }
  static Tail zero() { return {0, 0}; }
  static Tail scale_by(const Integer& c) { return {c, 0}; }

  friend bool operator==(const Tail&, const Tail&) = default;
  std::string to_string() const;
};

class StructuredEndo {
 public:
  /// head column j (j < head.cols()) is the image of e_j.
  StructuredEndo(IntMatrix head, Tail tail);

  static StructuredEndo shift(long k) { return StructuredEndo(IntMatrix(0, 0), Tail::shift_by(k)); }
  static StructuredEndo scale(const Integer& c) { return StructuredEndo(IntMatrix(0, 0), Tail::scale_by(c)); }

  const IntMatrix& head() const { return head_; }
  const Tail& tail() const { return tail_; }
  std::size_t head_cols() const { return head_.cols(); }

  SparseVec image_of_basis(std::size_t j) const;
  SparseVec operator()(const SparseVec& x) const;

  /// Literal form endo{head: [[..]], tail: ...}.
  std::string to_string() const;

 private:
  IntMatrix head_;
  Tail tail_;
};

/// g o f, exact.
StructuredEndo compose(const StructuredEndo& g, const StructuredEndo& f);

/// r0(f(G)): ALEPH0 for a nonzero tail, otherwise the rank of the head.
ExtNat rank_of_image(const StructuredEndo& f);

/// Rank of ker f (ALEPH0 when the tail is zero).
ExtNat kernel_rank(const StructuredEndo& f);

struct StructuredReport {
  morph::Flag bornologous;
  morph::Flag large_scale_injective;
  morph::Flag effectively_proper;
  morph::Flag uniformly_bounded_copreserving;
  morph::Flag large_scale_surjective;
  morph::Flag coarse_equivalence;
  ExtNat kernel_rank;
  ExtNat image_rank;
  /// Cokernel of the finite block when the tail is a unit shift: a finitely
  /// generated complement K with f(G) + K = G is lifted from it.
  std::optional<fgab::FgAbGroup> cokernel;
  /// Set when large-scale surjectivity fails: a basis index i such that
  /// e_i is outside f(G) + K for any K supported below i.
  std::optional<std::string> escape_certificate;
};

/// All flags for the finite-rank ideal on both sides.
StructuredReport analyze_structured(const StructuredEndo& f);

/// Is G -> 0 a coarse equivalence: never for the countable sum under the
/// finite-rank ideal, always for a finitely generated group under the
/// bounded ideal. Cross-checked against i(G) < omega.
bool classif1_check(const coarse::BigSumGroup& g);
bool classif1_check(const fgab::FgAbGroup& g);

/// Dichotomy for a structured coarse equivalence: ranks of source and
/// target either both finite or equal.
morph::DichotomyCheck classif2_check(const StructuredEndo& f);

/// Random descriptor: head up to max_head x max_head with entries in
/// [-bound, bound], any tail kind.
StructuredEndo random_endo(Rng& rng, std::size_t max_head, long bound);
SparseVec random_vec(Rng& rng, std::size_t max_index, long bound, std::size_t max_terms);

struct FunctorialityReport {
  std::size_t cases = 0;
  std::vector<std::string> violations;
};

/// For random f and random finitely generated K: f(K) has finite rank, at
/// most the number of generators of K.
FunctorialityReport functoriality_audit(std::uint64_t seed, std::size_t cases);

/// Free rank of the subgroup generated by the given vectors.
std::size_t span_rank(const std::vector<SparseVec>& gens);

}  // namespace cg::bigrank
