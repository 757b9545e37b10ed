#pragma once

// Finitely generated abelian groups Z^n + Z/d_1 + ... + Z/d_k in invariant
// factor normal form, homomorphisms as integer matrices, subgroups, and the
// standard constructions (kernel, image, index, quotient, sums, pullbacks).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coarsegrp/intlat.hpp"

namespace cg::fgab {

using intlat::ExtNat;
using intlat::IntMatrix;
using intlat::Integer;
using intlat::IntVector;

/// Coordinates of an element: n free coordinates followed by k torsion
/// residues, the i-th reduced into [0, d_i).
using Element = IntVector;

class FgAbGroup {
 public:
  FgAbGroup() = default;
  /// Throws DomainError unless every d_i >= 2 and d_i | d_{i+1}.
  FgAbGroup(std::size_t free_rank, IntVector torsion);

  static FgAbGroup free(std::size_t n) { return FgAbGroup(n, {}); }
  static FgAbGroup cyclic(const Integer& d);
  static FgAbGroup trivial() { return FgAbGroup(); }
  /// Normalizes an arbitrary list of cyclic orders (0 meaning Z, 1 ignored).
  static FgAbGroup from_cyclic_orders(const IntVector& orders);

  std::size_t free_rank() const { return free_rank_; }
  const IntVector& torsion() const { return torsion_; }
  std::size_t torsion_count() const { return torsion_.size(); }
  /// Number of coordinates, n + k.
  std::size_t dim() const { return free_rank_ + torsion_.size(); }

  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return dim() == 0; }
  /// |G| when finite.
  ExtNat order() const;
  /// Exponent of the torsion part (1 when torsion-free).
  Integer torsion_exponent() const;

  Element zero() const { return Element(dim()); }
  /// Modulus of coordinate i: 0 for free coordinates, d_j for torsion.
  Integer modulus(std::size_t coord) const;
  Element reduce(Element x) const;
  Element add(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element sub(const Element& a, const Element& b) const;
  Element scale(const Integer& m, const Element& a) const;
  bool is_zero(const Element& a) const;
  void check_element(const Element& a) const;

  /// Relation lattice of the free cover Z^dim -> G (rows d_j e_{n+j}).
  IntMatrix relations() const;

  /// Literal form, e.g. "Z^2 + Z/4 + Z/12"; the trivial group prints as "0".
  std::string to_string() const;

  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

 private:
  std::size_t free_rank_ = 0;
  IntVector torsion_;
};

/// Homomorphism given by a (target.dim x source.dim) matrix whose column j is
/// the image of source generator j. Torsion rows are kept reduced.
class Hom {
 public:
  Hom() = default;
  /// Validates shape and well-definedness; throws DomainError otherwise.
  Hom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

  static Hom identity(const FgAbGroup& g);
  static Hom zero(const FgAbGroup& source, const FgAbGroup& target);
  static Hom scalar(const FgAbGroup& g, const Integer& m);

  const FgAbGroup& source() const { return source_; }
  const FgAbGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  Element apply(const Element& x) const;
  /// Image of the cover vector x in Z^source.dim (x need not be reduced).
  Element apply_cover(const IntVector& x) const;

  friend bool operator==(const Hom&, const Hom&) = default;

  std::string to_string() const;

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  IntMatrix matrix_;
};

/// g o f. Throws DomainError unless f.target == g.source.
Hom compose(const Hom& g, const Hom& f);
Hom operator+(const Hom& a, const Hom& b);
Hom operator-(const Hom& a, const Hom& b);
Hom operator-(const Hom& a);

/// Subgroup of an ambient group given by generators, with a canonical form:
/// the HNF basis of (lifted generators + ambient relations) in Z^dim.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(FgAbGroup ambient, std::vector<Element> generators);

  static Subgroup whole(const FgAbGroup& g);
  static Subgroup trivial(const FgAbGroup& g);
  static Subgroup torsion(const FgAbGroup& g);

  const FgAbGroup& ambient() const { return ambient_; }
  const std::vector<Element>& generators() const { return generators_; }
  /// HNF basis of the preimage lattice in the free cover.
  const IntMatrix& canonical() const { return canonical_; }

  bool contains(const Element& x) const;
  bool contains(const Subgroup& other) const;
  bool is_trivial() const;
  bool is_whole() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.ambient_ == b.ambient_ && a.canonical_ == b.canonical_;
  }

  std::string to_string() const;

 private:
  FgAbGroup ambient_;
  std::vector<Element> generators_;
  IntMatrix canonical_;
};

Subgroup sum(const Subgroup& a, const Subgroup& b);
/// m * S.
Subgroup multiple(const Subgroup& s, const Integer& m);
Subgroup intersection(const Subgroup& a, const Subgroup& b);

/// Quotient Z^n / L presented in normal form.
struct Presentation {
  FgAbGroup group;
  /// (group.dim x n): column j is the class of e_j.
  IntMatrix to_group;
  /// (n x group.dim): column t is a lift of generator t.
  IntMatrix lift;
};

Presentation present_quotient(std::size_t n, const IntMatrix& relations);

struct Embedded {
  FgAbGroup group;
  Hom inclusion;
};

/// Abstract normal form of a subgroup together with its inclusion.
Embedded subgroup_as_group(const Subgroup& s);
/// Kernel with an injective inclusion into the source.
Embedded kernel(const Hom& f);
Subgroup kernel_subgroup(const Hom& f);
Subgroup image_subgroup(const Hom& f);
/// Image of a subgroup.
Subgroup image(const Hom& f, const Subgroup& s);
/// Preimage f^-1(T) of a subgroup of the target.
Subgroup preimage(const Hom& f, const Subgroup& t);

/// [ambient : S]; infinite when there is a free-rank deficit.
ExtNat subgroup_index(const Subgroup& s);
/// Order of the subgroup (finite iff its free rank is 0).
ExtNat subgroup_order(const Subgroup& s);
std::size_t subgroup_free_rank(const Subgroup& s);

struct QuotientResult {
  FgAbGroup group;
  Hom projection;
};

QuotientResult quotient(const FgAbGroup& g, const Subgroup& n);

struct DirectSum {
  FgAbGroup group;
  std::vector<Hom> injections;
  std::vector<Hom> projections;
};

DirectSum direct_sum(const std::vector<FgAbGroup>& parts);

struct PullbackResult {
  FgAbGroup apex;
  Hom to_x;  // u : P -> X
  Hom to_y;  // v : P -> Y
};

/// P = {(x, y) in X + Y : g(x) = f(y)} for f : Y -> Z and g : X -> Z.
PullbackResult pullback(const Hom& f, const Hom& g);

/// Inclusion of the free summand Z^n -> G (free generators first).
Hom free_part_section(const FgAbGroup& g);

/// Cardinal/numerical invariants of a finitely generated abelian group.
/// Infinite values are ALEPH0 (every group here is countable).
struct Invariants {
  std::size_t r0 = 0;
  std::map<unsigned long, std::size_t> r_p;
  ExtNat r;
  /// |G| when finite; ell = log2 |G| (ALEPH0 when infinite).
  ExtNat order;
  std::optional<double> ell;
  ExtNat r_d;
  ExtNat w_d;
  /// Normalized divisible weight inf ell(mG): 0 for bounded groups.
  ExtNat w_d_tilde;
  /// m at which r_d and w_d are attained.
  Integer witness_m;
};

/// Always includes the primes dividing the torsion; `extra_primes` adds more.
Invariants invariants(const FgAbGroup& g, const std::vector<unsigned long>& extra_primes = {});

/// Number of invariant factors divisible by p.
std::size_t p_rank(const FgAbGroup& g, unsigned long p);

std::vector<unsigned long> prime_divisors(const Integer& n);

}  // namespace cg::fgab
