#include "coarsegrp/coarse.hpp"

#include <algorithm>
#include <utility>

#include "coarsegrp/errors.hpp"

namespace cg::coarse {

using intlat::ExtNat;
using intlat::IntMatrix;
using intlat::Integer;

std::string to_string(IdealKind kind) {
  switch (kind) {
    case IdealKind::Discrete: return "discrete";
    case IdealKind::Bounded: return "bounded";
    case IdealKind::Finitary: return "finitary";
    case IdealKind::Linear: return "linear";
    case IdealKind::FiniteRank: return "finite-rank";
  }
  return "?";
}

GroupIdeal GroupIdeal::discrete(const FgAbGroup& g) { return GroupIdeal(g, IdealKind::Discrete); }
GroupIdeal GroupIdeal::bounded(const FgAbGroup& g) { return GroupIdeal(g, IdealKind::Bounded); }
GroupIdeal GroupIdeal::finitary(const FgAbGroup& g) { return GroupIdeal(g, IdealKind::Finitary); }

GroupIdeal GroupIdeal::linear(const Subgroup& h) {
  return GroupIdeal(h.ambient(), IdealKind::Linear, h);
}

GroupIdeal GroupIdeal::finite_rank() { return GroupIdeal(BigSumGroup{}, IdealKind::FiniteRank); }

GroupIdeal GroupIdeal::finite_rank(const FgAbGroup& g) {
  throw DomainError("finite-rank ideal on " + g.to_string() +
                    ": every subgroup of a finitely generated group has finite rank, so this "
                    "is the bounded ideal; use `bounded`");
}

GroupIdeal GroupIdeal::kappa(const FgAbGroup& g, const std::string& cardinal) {
  if (cardinal == "omega" || cardinal == "OMEGA") return finitary(g);
  throw DomainError("kappa = " + cardinal +
                    ": on a countable group every kappa > omega gives the bounded ideal; "
                    "only omega is accepted");
}

const FgAbGroup& GroupIdeal::group() const {
  if (const auto* g = std::get_if<FgAbGroup>(&ambient_)) return *g;
  throw DomainError("ideal lives on the countable direct sum of Z, not a finitely generated group");
}

const Subgroup& GroupIdeal::linear_subgroup() const {
  if (!sub_) throw DomainError(coarse::to_string(kind_) + " ideal has no defining subgroup");
  return *sub_;
}

std::optional<Subgroup> GroupIdeal::as_linear() const {
  if (on_big_sum()) return std::nullopt;
  const FgAbGroup& g = group();
  switch (kind_) {
    case IdealKind::Discrete: return Subgroup::trivial(g);
    case IdealKind::Bounded: return Subgroup::whole(g);
    case IdealKind::Linear: return *sub_;
    case IdealKind::Finitary:
      // On a finite group every subset is finite.
      if (g.is_finite()) return Subgroup::whole(g);
      return std::nullopt;
    case IdealKind::FiniteRank: return std::nullopt;
  }
  return std::nullopt;
}

std::string GroupIdeal::to_string() const {
  if (kind_ != IdealKind::Linear) return coarse::to_string(kind_);
  std::string out = "linear([";
  const auto& gens = sub_->generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < gens[i].size(); ++j) {
      if (j) out += ",";
      out += gens[i][j].get_str();
    }
    out += "]";
  }
  return out + "])";
}

bool operator==(const GroupIdeal& a, const GroupIdeal& b) {
  return a.kind_ == b.kind_ && a.ambient_ == b.ambient_ && a.sub_ == b.sub_;
}

// ---------------------------------------------------------------- finite subsets

FiniteSubset::FiniteSubset(FgAbGroup ambient, std::vector<Element> elements)
    : ambient_(std::move(ambient)) {
  for (auto& e : elements) elements_.push_back(ambient_.reduce(std::move(e)));
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool FiniteSubset::contains(const Element& x) const {
  return std::binary_search(elements_.begin(), elements_.end(), ambient_.reduce(x));
}

static void require_same(const FgAbGroup& a, const FgAbGroup& b, const char* what) {
  if (!(a == b))
    throw DomainError(std::string(what) + ": ambient mismatch (" + a.to_string() + " vs " +
                      b.to_string() + ")");
}

FiniteSubset set_sum(const FiniteSubset& a, const FiniteSubset& b) {
  require_same(a.ambient(), b.ambient(), "set sum");
  std::vector<Element> out;
  for (const auto& x : a.elements())
    for (const auto& y : b.elements()) out.push_back(a.ambient().add(x, y));
  return FiniteSubset(a.ambient(), std::move(out));
}

FiniteSubset set_negate(const FiniteSubset& a) {
  std::vector<Element> out;
  for (const auto& x : a.elements()) out.push_back(a.ambient().neg(x));
  return FiniteSubset(a.ambient(), std::move(out));
}

FiniteSubset set_union(const FiniteSubset& a, const FiniteSubset& b) {
  require_same(a.ambient(), b.ambient(), "set union");
  std::vector<Element> out = a.elements();
  out.insert(out.end(), b.elements().begin(), b.elements().end());
  return FiniteSubset(a.ambient(), std::move(out));
}

// ---------------------------------------------------------------- membership

bool is_connected(const GroupIdeal& ideal) {
  switch (ideal.kind()) {
    case IdealKind::Bounded:
    case IdealKind::Finitary:
    case IdealKind::FiniteRank: return true;
    case IdealKind::Discrete: return ideal.group().is_trivial();
    case IdealKind::Linear: return ideal.linear_subgroup().is_whole();
  }
  return false;
}

bool ideal_contains(const GroupIdeal& ideal, const FiniteSubset& k) {
  require_same(ideal.group(), k.ambient(), "ideal_contains");
  switch (ideal.kind()) {
    case IdealKind::Bounded:
    case IdealKind::Finitary: return true;
    case IdealKind::Discrete:
      return std::all_of(k.elements().begin(), k.elements().end(),
                         [&](const Element& x) { return k.ambient().is_zero(x); });
    case IdealKind::Linear:
      return std::all_of(k.elements().begin(), k.elements().end(),
                         [&](const Element& x) { return ideal.linear_subgroup().contains(x); });
    case IdealKind::FiniteRank: break;
  }
  throw DomainError("finite-rank ideal is decided in the countable-rank layer");
}

bool ideal_contains(const GroupIdeal& ideal, const Subgroup& k) {
  require_same(ideal.group(), k.ambient(), "ideal_contains");
  switch (ideal.kind()) {
    case IdealKind::Bounded: return true;
    case IdealKind::Finitary: return fgab::subgroup_free_rank(k) == 0;
    case IdealKind::Discrete: return k.is_trivial();
    case IdealKind::Linear: return ideal.linear_subgroup().contains(k);
    case IdealKind::FiniteRank: break;
  }
  throw DomainError("finite-rank ideal is decided in the countable-rank layer");
}

bool ideal_contains_finite_subsets_of(const GroupIdeal& ideal, const Subgroup& t) {
  require_same(ideal.group(), t.ambient(), "ideal_contains");
  switch (ideal.kind()) {
    case IdealKind::Bounded:
    case IdealKind::Finitary: return true;
    case IdealKind::Discrete: return t.is_trivial();
    case IdealKind::Linear: return ideal.linear_subgroup().contains(t);
    case IdealKind::FiniteRank: break;
  }
  throw DomainError("finite-rank ideal is decided in the countable-rank layer");
}

// ---------------------------------------------------------------- auditor

namespace {

Element random_element(const FgAbGroup& g, Rng& rng, std::int64_t bound) {
  Element x(g.dim());
  for (auto& v : x) v = Integer(static_cast<long>(rng.uniform(-bound, bound)));
  return g.reduce(std::move(x));
}

Element random_combination(const Subgroup& h, Rng& rng, std::int64_t bound) {
  Element x = h.ambient().zero();
  for (const auto& gen : h.generators())
    x = h.ambient().add(x, h.ambient().scale(Integer(static_cast<long>(rng.uniform(-bound, bound))), gen));
  return x;
}

}  // namespace

SubsetFamily as_family(const GroupIdeal& ideal) {
  const FgAbGroup g = ideal.group();
  SubsetFamily fam;
  fam.name = ideal.to_string() + " on " + g.to_string();
  fam.ambient = g;
  fam.contains = [ideal](const FiniteSubset& k) { return ideal_contains(ideal, k); };
  const std::optional<Subgroup> lin = ideal.as_linear();
  fam.sample = [g, lin](Rng& rng) {
    const auto size = static_cast<std::size_t>(rng.uniform(0, 4));
    std::vector<Element> elems{g.zero()};
    for (std::size_t i = 0; i < size; ++i)
      elems.push_back(lin ? random_combination(*lin, rng, 5) : random_element(g, rng, 6));
    return FiniteSubset(g, std::move(elems));
  };
  return fam;
}

AxiomAudit audit_ideal_axioms(const SubsetFamily& family, std::size_t samples,
                              std::uint64_t seed) {
  AxiomAudit report;
  Rng rng(seed);
  auto fail = [&](const std::string& axiom, const FiniteSubset& a, const FiniteSubset* b) {
    auto show = [](const FiniteSubset& s) {
      std::string out = "{";
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += intlat::to_string(s.elements()[i]);
      }
      return out + "}";
    };
    report.passed = false;
    std::string msg = axiom + " fails for K = " + show(a);
    if (b) msg += ", J = " + show(*b);
    report.counterexample = msg + " in " + family.name;
  };

  const FiniteSubset zero(family.ambient, {family.ambient.zero()});
  ++report.checks;
  if (!family.contains(zero)) {
    fail("{0} membership", zero, nullptr);
    return report;
  }
  for (std::size_t s = 0; s < samples; ++s) {
    ++report.samples;
    const FiniteSubset k = family.sample(rng);
    const FiniteSubset j = family.sample(rng);
    if (!family.contains(k) || !family.contains(j))
      throw TheoremViolation("sampler produced a non-member of " + family.name);
    report.checks += 4;
    if (!family.contains(set_sum(k, j))) {
      fail("sum closure K+J", k, &j);
      return report;
    }
    if (!family.contains(set_negate(k))) {
      fail("negation closure -K", k, nullptr);
      return report;
    }
    if (!family.contains(set_union(k, j))) {
      fail("union closure", k, &j);
      return report;
    }
    std::vector<Element> sub;
    for (const auto& x : k.elements())
      if (rng.coin()) sub.push_back(x);
    if (!family.contains(FiniteSubset(family.ambient, sub))) {
      fail("subset closure", k, nullptr);
      return report;
    }
  }
  return report;
}

AxiomAudit audit_ideal_axioms(const GroupIdeal& ideal, std::size_t samples, std::uint64_t seed) {
  return audit_ideal_axioms(as_family(ideal), samples, seed);
}

// ---------------------------------------------------------------- closeness, balls

Closeness are_close(const Hom& f, const Hom& g, const GroupIdeal& target_ideal) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw DomainError("are_close: signatures differ");
  require_same(target_ideal.group(), f.target(), "are_close");
  Closeness out;
  out.difference_image = fgab::image_subgroup(g - f);
  out.close = ideal_contains(target_ideal, out.difference_image);
  out.reason = out.close ? "(g-f)(G) lies in the target ideal"
                         : "(g-f)(G) = " + out.difference_image.to_string() + " is not in " +
                               target_ideal.to_string();
  return out;
}

FiniteSubset entourage_ball(const FiniteSubset& k, const Element& x) {
  std::vector<Element> out;
  for (const auto& y : k.elements()) out.push_back(k.ambient().add(x, y));
  return FiniteSubset(k.ambient(), std::move(out));
}

std::vector<Element> enumerate_finite_subgroup(const Subgroup& k) {
  if (fgab::subgroup_free_rank(k) != 0)
    throw DomainError("subgroup " + k.to_string() + " is infinite and cannot be materialized");
  const fgab::Embedded e = fgab::subgroup_as_group(k);
  const ExtNat order = e.group.order();
  if (order.value() > 1000000) throw DomainError("subgroup of order " + order.to_string() +
                                                  " is too large to enumerate");
  std::vector<Element> out;
  Element coords = e.group.zero();
  const std::size_t n = e.group.dim();
  while (true) {
    out.push_back(e.inclusion.apply(coords));
    std::size_t i = 0;
    while (i < n) {
      coords[i] += 1;
      if (coords[i] < e.group.torsion()[i]) break;
      coords[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

FiniteSubset entourage_ball(const Subgroup& k, const Element& x) {
  return entourage_ball(FiniteSubset(k.ambient(), enumerate_finite_subgroup(k)), x);
}

// ---------------------------------------------------------------- products, images

ProductIdeal product_ideal(const std::vector<GroupIdeal>& factors) {
  std::vector<FgAbGroup> groups;
  for (const auto& f : factors) groups.push_back(f.group());
  fgab::DirectSum sum = fgab::direct_sum(groups);

  bool all_linear = true;
  for (const auto& f : factors) all_linear = all_linear && f.as_linear().has_value();
  if (all_linear) {
    std::vector<Element> gens;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const Subgroup lin = *factors[i].as_linear();
      for (const auto& h : lin.generators()) gens.push_back(sum.injections[i].apply(h));
    }
    GroupIdeal ideal = GroupIdeal::linear(Subgroup(sum.group, std::move(gens)));
    return ProductIdeal{std::move(sum), std::move(ideal)};
  }
  // A finitary factor on an infinite group: the product is finitary exactly
  // when every other factor is the full power set of a finite group.
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (f.kind() == IdealKind::Finitary) continue;
    const auto lin = f.as_linear();
    if (!(groups[i].is_finite() && lin && lin->is_whole()))
      throw DomainError("product of " + f.to_string() + " on " + groups[i].to_string() +
                        " with a finitary factor on an infinite group is neither finitary nor "
                        "linear");
  }
  GroupIdeal ideal = GroupIdeal::finitary(sum.group);
  return ProductIdeal{std::move(sum), std::move(ideal)};
}

GroupIdeal image_ideal(const Hom& q, const GroupIdeal& ideal) {
  require_same(q.source(), ideal.group(), "image_ideal");
  if (!fgab::image_subgroup(q).is_whole())
    throw DomainError("image_ideal requires a surjective homomorphism");
  switch (ideal.kind()) {
    case IdealKind::Discrete: return GroupIdeal::discrete(q.target());
    case IdealKind::Bounded: return GroupIdeal::bounded(q.target());
    case IdealKind::Finitary: return GroupIdeal::finitary(q.target());
    case IdealKind::Linear: return GroupIdeal::linear(fgab::image(q, ideal.linear_subgroup()));
    case IdealKind::FiniteRank: break;
  }
  throw DomainError("finite-rank ideal has no image on a finitely generated group");
}

}  // namespace cg::coarse
