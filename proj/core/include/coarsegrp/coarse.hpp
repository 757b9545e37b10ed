#pragma once

// Group ideals as intensional values and the coarse structures they induce.
// An ideal I on G determines the left I-coarse structure with base
// {E_K : K in I}, E_K[x] = x + K. Membership is decided per ideal kind.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coarsegrp/fgab.hpp"
#include "coarsegrp/random.hpp"

namespace cg::coarse {

using fgab::Element;
using fgab::FgAbGroup;
using fgab::Hom;
using fgab::Subgroup;

/// Marker for the countable direct sum of copies of Z (see bigrank).
struct BigSumGroup {
  friend bool operator==(const BigSumGroup&, const BigSumGroup&) { return true; }
};

enum class IdealKind { Discrete, Bounded, Finitary, Linear, FiniteRank };

std::string to_string(IdealKind kind);

class GroupIdeal {
 public:
  static GroupIdeal discrete(const FgAbGroup& g);
  static GroupIdeal bounded(const FgAbGroup& g);
  static GroupIdeal finitary(const FgAbGroup& g);
  static GroupIdeal linear(const Subgroup& h);
  /// Subsets of finite-free-rank subgroups of the countable sum of Z.
  static GroupIdeal finite_rank();
  /// Finite-rank ideal requested on a finitely generated group: rejected,
  /// since there it would coincide with the bounded ideal.
  static GroupIdeal finite_rank(const FgAbGroup& g);
  /// Ideal of subsets of cardinality < kappa. Only "omega" is accepted:
  /// larger cardinals give the bounded ideal on a countable group.
  static GroupIdeal kappa(const FgAbGroup& g, const std::string& cardinal);

  IdealKind kind() const { return kind_; }
  bool on_big_sum() const { return std::holds_alternative<BigSumGroup>(ambient_); }
  /// Ambient group; throws DomainError for the countable-sum ambient.
  const FgAbGroup& group() const;
  /// The subgroup H of a Linear(H) ideal.
  const Subgroup& linear_subgroup() const;

  /// Discrete, Bounded and Linear ideals are Linear(H) for H = 0, G, H.
  std::optional<Subgroup> as_linear() const;

  /// Literal form: finitary | bounded | discrete | linear(...) | finite-rank.
  std::string to_string() const;

  friend bool operator==(const GroupIdeal& a, const GroupIdeal& b);

 private:
  GroupIdeal(std::variant<FgAbGroup, BigSumGroup> ambient, IdealKind kind,
             std::optional<Subgroup> sub = std::nullopt)
      : ambient_(std::move(ambient)), kind_(kind), sub_(std::move(sub)) {}

  std::variant<FgAbGroup, BigSumGroup> ambient_;
  IdealKind kind_;
  std::optional<Subgroup> sub_;
};

/// A finite subset of a group, stored reduced, sorted, and without repeats.
class FiniteSubset {
 public:
  FiniteSubset() = default;
  FiniteSubset(FgAbGroup ambient, std::vector<Element> elements);

  const FgAbGroup& ambient() const { return ambient_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(const Element& x) const;

  friend bool operator==(const FiniteSubset&, const FiniteSubset&) = default;

 private:
  FgAbGroup ambient_;
  std::vector<Element> elements_;
};

FiniteSubset set_sum(const FiniteSubset& a, const FiniteSubset& b);
FiniteSubset set_negate(const FiniteSubset& a);
FiniteSubset set_union(const FiniteSubset& a, const FiniteSubset& b);

struct CoarseGroup {
  FgAbGroup group;
  GroupIdeal ideal;
};

/// Connected iff the ideal covers the group.
bool is_connected(const GroupIdeal& ideal);

bool ideal_contains(const GroupIdeal& ideal, const FiniteSubset& k);
bool ideal_contains(const GroupIdeal& ideal, const Subgroup& k);
/// {y} in I for every y in T (the finite subsets of T lie in I).
bool ideal_contains_finite_subsets_of(const GroupIdeal& ideal, const Subgroup& t);

/// A family of subsets presented by a membership predicate and a sampler.
/// GroupIdeal provides one; tests and the auditor may supply others.
struct SubsetFamily {
  std::string name;
  FgAbGroup ambient;
  std::function<bool(const FiniteSubset&)> contains;
  std::function<FiniteSubset(Rng&)> sample;
};

SubsetFamily as_family(const GroupIdeal& ideal);

struct AxiomAudit {
  bool passed = true;
  std::size_t samples = 0;
  std::size_t checks = 0;
  /// Which axiom failed and on which sets.
  std::optional<std::string> counterexample;
};

/// Samples members K, J and checks {0}, K+J, -K, K u J and subsets of K.
AxiomAudit audit_ideal_axioms(const SubsetFamily& family, std::size_t samples,
                              std::uint64_t seed);
AxiomAudit audit_ideal_axioms(const GroupIdeal& ideal, std::size_t samples,
                              std::uint64_t seed);

struct Closeness {
  bool close = false;
  /// (g - f)(G): the ideal member witnessing closeness when close.
  Subgroup difference_image;
  std::string reason;
};

/// Homomorphisms are close iff (g - f)(G) lies in the target ideal.
Closeness are_close(const Hom& f, const Hom& g, const GroupIdeal& target_ideal);

/// x + K for finite K.
FiniteSubset entourage_ball(const FiniteSubset& k, const Element& x);
/// x + K for a subgroup K; DomainError unless K is finite.
FiniteSubset entourage_ball(const Subgroup& k, const Element& x);

/// All elements of a finite subgroup (DomainError when infinite).
std::vector<Element> enumerate_finite_subgroup(const Subgroup& k);

struct ProductIdeal {
  fgab::DirectSum sum;
  GroupIdeal ideal;
};

/// Ideal on the direct sum with base {K_1 x ... x K_m}. Representable when
/// all factors are finitary, or all are linear-type (Discrete, Bounded,
/// Linear); a mix on infinite factors raises DomainError.
ProductIdeal product_ideal(const std::vector<GroupIdeal>& factors);

/// q(I) for a surjective hom q.
GroupIdeal image_ideal(const Hom& q, const GroupIdeal& ideal);

}  // namespace cg::coarse
